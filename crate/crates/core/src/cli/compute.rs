//! `fpfun compute`: one computation, printed as text or JSON.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::FieldMatrix;
use crate::fpfun::{
    agj_evaluate, defect, defect_sequence, dual_star, evaluate, evaluate_nat_with, nat_space,
    tr_star_evaluate, w1, w2, FpFunctor, FunctorFile,
};
use crate::modcat::{
    ext1_with, hom_space, stable_hom_inj_with, stable_hom_proj_with, tor1_with, transpose_with,
    FdModule, ModuleFile,
};

use super::expr::Expr;
use super::workspace::Workspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComputeKind {
    Hom,
    Ext1,
    Tor1,
    Transpose,
    StableHom,
    Defect,
    DefectSeq,
    Dual,
    W1,
    W2,
    Evaluate,
    Nat,
    Agj,
    Trstar,
}

impl ComputeKind {
    fn name(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }

    fn arity(self) -> usize {
        use ComputeKind::*;
        match self {
            Transpose | Defect | DefectSeq | Dual | W1 | W2 => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Debug)]
enum Artifact {
    Module(FdModule),
    Functor(FpFunctor),
}

#[derive(Clone, Debug)]
pub struct ComputeOutput {
    kind: ComputeKind,
    args: Vec<String>,
    lines: Vec<String>,
    fields: Map<String, Value>,
    result: Option<Artifact>,
}

impl ComputeOutput {
    pub fn text(&self, matrices: bool) -> String {
        let mut s = String::new();
        for l in &self.lines {
            s += l;
            s.push('\n');
        }
        if matrices {
            match &self.result {
                Some(Artifact::Module(m)) => {
                    for (label, a) in m.algebra().labels().iter().zip(m.actions()) {
                        s += &format!("action of {label}:\n{a}");
                    }
                }
                Some(Artifact::Functor(f)) => {
                    let p = f.presentation();
                    s += &format!(
                        "presentation ({} -> {}):\n{}",
                        p.source().dim(),
                        p.target().dim(),
                        p.matrix()
                    );
                }
                None => {}
            }
        }
        s
    }

    pub fn json(&self, matrices: bool) -> Value {
        let mut obj = Map::new();
        obj.insert("kind".into(), json!(self.kind.name()));
        obj.insert("args".into(), json!(self.args));
        obj.extend(self.fields.clone());
        if matrices {
            match &self.result {
                Some(Artifact::Module(m)) => {
                    obj.insert("module".into(), serde_json::to_value(ModuleFile::from_module(None, m)).unwrap_or(Value::Null));
                }
                Some(Artifact::Functor(f)) => {
                    obj.insert("functor".into(), json!({
                        "variance": f.variance(),
                        "source": ModuleFile::from_module(None, f.presentation().source()),
                        "target": ModuleFile::from_module(None, f.presentation().target()),
                        "matrix": rows(f.presentation().matrix()),
                    }));
                }
                None => {}
            }
        }
        Value::Object(obj)
    }

    /// Writes the result so that `--load <dir>` brings it back as `name`.
    pub fn save(&self, dir: &Path, name: &str) -> Result<()> {
        let result = self
            .result
            .as_ref()
            .ok_or_else(|| Error::Parse(format!("{} has no module or functor result to save", self.kind.name())))?;
        fs::create_dir_all(dir)?;
        let write = |file: &str, v: Value| -> Result<()> {
            fs::write(dir.join(file), serde_json::to_string_pretty(&v)? + "\n")?;
            Ok(())
        };
        let alg = match result {
            Artifact::Module(m) => m.algebra(),
            Artifact::Functor(f) => f.algebra(),
        };
        write(&format!("{name}.algebra.json"), serde_json::to_value(alg.to_file())?)?;
        match result {
            Artifact::Module(m) => {
                write(&format!("{name}.json"), serde_json::to_value(ModuleFile::from_module(Some(name.into()), m))?)?;
            }
            Artifact::Functor(f) => {
                let (src, tgt) = (format!("{name}.src"), format!("{name}.tgt"));
                let p = f.presentation();
                write(&format!("{src}.json"), serde_json::to_value(ModuleFile::from_module(Some(src.clone()), p.source()))?)?;
                write(&format!("{tgt}.json"), serde_json::to_value(ModuleFile::from_module(Some(tgt.clone()), p.target()))?)?;
                write(&format!("{name}.json"), serde_json::to_value(FunctorFile::from_functor(f, &src, &tgt))?)?;
            }
        }
        Ok(())
    }
}

fn rows(m: &FieldMatrix) -> Vec<Vec<u32>> {
    m.to_rows()
}

struct Ctx<'a> {
    ws: &'a Workspace,
    alg: &'a Arc<Algebra>,
    budget: usize,
}

impl Ctx<'_> {
    fn module(&self, s: &str) -> Result<FdModule> {
        self.ws.module(self.alg, &Expr::parse(s)?)
    }

    fn functor(&self, s: &str) -> Result<FpFunctor> {
        self.ws.functor(self.alg, &Expr::parse(s)?)
    }

    fn name_of(&self, m: &FdModule) -> String {
        if m.is_zero() {
            return "0".into();
        }
        self.ws.identify(m, self.budget).unwrap_or_else(|| "unnamed".into())
    }

    /// Evaluation dims of `f` on the probes of its algebra.
    fn table(&self, f: &FpFunctor) -> Result<Vec<(String, usize)>> {
        self.ws
            .probes(f.algebra())
            .iter()
            .map(|p| Ok((p.name.clone(), evaluate(f, &p.module)?.dimension)))
            .collect()
    }

    fn describe(&self, label: &str, f: &FpFunctor, out: &mut ComputeOutput) -> Result<()> {
        let p = f.presentation();
        out.lines.push(format!(
            "{label}: {} functor presented by dim {} -> dim {}",
            f.variance(),
            p.source().dim(),
            p.target().dim()
        ));
        let table = self.table(f)?;
        for (n, d) in &table {
            out.lines.push(format!("  {label}({n}) = {d}"));
        }
        out.fields.insert("variance".into(), json!(f.variance()));
        out.fields.insert(
            "values".into(),
            Value::Object(table.into_iter().map(|(n, d)| (n, json!(d))).collect()),
        );
        Ok(())
    }
}

pub fn cmd_compute(
    ws: &Workspace,
    alg: &Arc<Algebra>,
    kind: ComputeKind,
    args: &[String],
    budget: usize,
) -> Result<ComputeOutput> {
    if args.len() != kind.arity() {
        return Err(Error::Parse(format!(
            "{} takes {} argument(s), got {}",
            kind.name(),
            kind.arity(),
            args.len()
        )));
    }
    let cx = Ctx { ws, alg, budget };
    let s = ws.strategy;
    let mut out = ComputeOutput {
        kind,
        args: args.to_vec(),
        lines: Vec::new(),
        fields: Map::new(),
        result: None,
    };
    let a0 = args[0].as_str();
    let a1 = args.get(1).map(String::as_str).unwrap_or("");
    let dim = |out: &mut ComputeOutput, label: String, d: usize| {
        out.lines.push(format!("dim {label} = {d}"));
        out.fields.insert("dim".into(), json!(d));
    };
    use ComputeKind::*;
    match kind {
        Hom => {
            let d = hom_space(&cx.module(a0)?, &cx.module(a1)?)?.dim();
            dim(&mut out, format!("Hom({a0},{a1})"), d);
        }
        Ext1 => {
            let d = ext1_with(&cx.module(a0)?, &cx.module(a1)?, s)?.dim();
            dim(&mut out, format!("Ext1({a0},{a1})"), d);
        }
        Tor1 => {
            let d = tor1_with(&cx.module(a0)?, &cx.module(a1)?, s)?;
            dim(&mut out, format!("Tor1({a0},{a1})"), d);
        }
        StableHom => {
            let (x, y) = (cx.module(a0)?, cx.module(a1)?);
            let u = stable_hom_proj_with(&x, &y, s)?.dim();
            let o = stable_hom_inj_with(&x, &y, s)?.dim();
            out.lines.push(format!("dim underline-Hom({a0},{a1}) = {u}"));
            out.lines.push(format!("dim overline-Hom({a0},{a1}) = {o}"));
            out.fields.insert("underline".into(), json!(u));
            out.fields.insert("overline".into(), json!(o));
        }
        Transpose => {
            let t = transpose_with(&cx.module(a0)?, s).module;
            let name = cx.name_of(&t);
            out.lines.push(format!("Tr({a0}) = {name} (dim {})", t.dim()));
            out.fields.insert("dim".into(), json!(t.dim()));
            out.fields.insert("iso_to".into(), json!(name));
            out.result = Some(Artifact::Module(t));
        }
        Defect => {
            let w = defect(&cx.functor(a0)?);
            let name = cx.name_of(&w);
            out.lines.push(format!("w({a0}) = {name} (dim {})", w.dim()));
            out.fields.insert("dim".into(), json!(w.dim()));
            out.fields.insert("iso_to".into(), json!(name));
            out.result = Some(Artifact::Module(w));
        }
        DefectSeq => {
            let f = cx.functor(a0)?;
            let seq = defect_sequence(&f);
            let w = defect(&f);
            out.lines.push(format!("0 -> F0 -> F -> (w(F), -) -> F1 -> 0 with w(F) = {} (dim {})", cx.name_of(&w), w.dim()));
            out.lines.push(format!("{:<10} {:>4} {:>4} {:>6} {:>4} exact", "probe", "F0", "F", "(wF,-)", "F1"));
            let mut table = Vec::new();
            let mut all_exact = true;
            for p in ws.probes(f.algebra()) {
                let e0 = evaluate(&seq.f0, &p.module)?;
                let e = evaluate(&f, &p.module)?;
                let er = evaluate(&seq.represented, &p.module)?;
                let e1 = evaluate(&seq.f1, &p.module)?;
                let r0 = evaluate_nat_with(&seq.iota, &e0, &e).rank();
                let r1 = evaluate_nat_with(&seq.phi, &e, &er).rank();
                let r2 = evaluate_nat_with(&seq.pi, &er, &e1).rank();
                let dims = [e0.dimension, e.dimension, er.dimension, e1.dimension];
                let exact = r0 == dims[0] && r0 + r1 == dims[1] && r1 + r2 == dims[2] && r2 == dims[3];
                all_exact &= exact;
                out.lines.push(format!(
                    "{:<10} {:>4} {:>4} {:>6} {:>4} {}",
                    p.name, dims[0], dims[1], dims[2], dims[3],
                    if exact { "yes" } else { "no" }
                ));
                table.push(json!({ "probe": p.name, "dims": dims, "exact": exact }));
            }
            out.fields.insert("defect_dim".into(), json!(w.dim()));
            out.fields.insert("table".into(), Value::Array(table));
            out.fields.insert("exact".into(), json!(all_exact));
            out.result = Some(Artifact::Functor(f));
        }
        Dual | W1 | W2 => {
            let f = cx.functor(a0)?;
            let (label, g) = match kind {
                Dual => (format!("({a0})*"), dual_star(&f)),
                W1 => (format!("W1({a0})"), w1(&f)),
                _ => (format!("W2({a0})"), w2(&f)),
            };
            cx.describe(&label, &g, &mut out)?;
            out.result = Some(Artifact::Functor(g));
        }
        Evaluate => {
            let f = cx.functor(a0)?;
            let x = ws.module(f.algebra(), &Expr::parse(a1)?)?;
            dim(&mut out, format!("{a0}({a1})"), evaluate(&f, &x)?.dimension);
        }
        Nat => {
            let d = nat_space(&cx.functor(a0)?, &cx.functor(a1)?)?.len();
            dim(&mut out, format!("Nat({a0},{a1})"), d);
        }
        Agj => {
            let f = cx.functor(a0)?;
            let n = ws.module(f.algebra(), &Expr::parse(a1)?)?;
            dim(&mut out, format!("D_A {a0}({a1})"), agj_evaluate(&f, &n)?.dimension);
        }
        Trstar => {
            let f = cx.functor(a0)?;
            let m = ws.module(&f.algebra().opposite(), &Expr::parse(a1)?)?;
            dim(&mut out, format!("Tr_* {a0}({a1})"), tr_star_evaluate(&f, &m)?.dimension);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn compute(kind: ComputeKind, args: &[&str]) -> Result<ComputeOutput> {
        let mut ws = Workspace::new(2);
        let alg = ws.algebra("k2x2").unwrap();
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        cmd_compute(&ws, &alg, kind, &args, 256)
    }

    #[test]
    fn kinds_print_dimensions() {
        let t = |k, a: &[&str]| compute(k, a).unwrap().text(false);
        assert_eq!(t(ComputeKind::Ext1, &["S", "S"]), "dim Ext1(S,S) = 1\n");
        assert_eq!(t(ComputeKind::Hom, &["L", "S"]), "dim Hom(L,S) = 1\n");
        assert_eq!(t(ComputeKind::Tor1, &["op(S)", "S"]), "dim Tor1(op(S),S) = 1\n");
        assert_eq!(t(ComputeKind::Defect, &["rep(S)"]), "w(rep(S)) = S (dim 1)\n");
        assert_eq!(t(ComputeKind::Evaluate, &["w2(ext(S))", "S"]), "dim w2(ext(S))(S) = 1\n");
        assert_eq!(t(ComputeKind::Nat, &["rep(S)", "rep(S)"]), "dim Nat(rep(S),rep(S)) = 1\n");
        assert_eq!(t(ComputeKind::Trstar, &["ufrom(op(S))", "S"]), "dim Tr_* ufrom(op(S))(S) = 1\n");
        assert!(t(ComputeKind::StableHom, &["S", "S"]).contains("underline-Hom(S,S) = 1"));
        assert!(t(ComputeKind::Transpose, &["S"]).starts_with("Tr(S) = op(S) (dim 1)"));
        assert!(t(ComputeKind::DefectSeq, &["cok(S,L,0)"]).lines().skip(2).all(|l| l.ends_with("yes")));
        assert!(t(ComputeKind::W2, &["ext(S)"]).contains("W2(ext(S))(S) = 1"));
    }

    #[test]
    fn errors() {
        assert!(matches!(compute(ComputeKind::Hom, &["S"]), Err(Error::Parse(_))));
        assert!(matches!(compute(ComputeKind::Defect, &["F_nope"]), Err(Error::UnresolvedName(_))));
        assert!(matches!(
            compute(ComputeKind::Trstar, &["rep(op(L))", "S"]),
            Err(Error::TrStarUndefined(_))
        ));
    }

    #[test]
    fn json_and_matrices() {
        let o = compute(ComputeKind::W2, &["ext(S)"]).unwrap();
        let j = o.json(true);
        assert_eq!(j["kind"], "w2");
        assert_eq!(j["values"]["S"], 1);
        assert!(j["functor"]["matrix"].is_array());
        assert!(o.text(true).contains("presentation"));
    }

    #[test]
    fn save_and_reload() {
        let dir = tempfile::tempdir().unwrap();
        let o = compute(ComputeKind::W2, &["ext(S)"]).unwrap();
        o.save(dir.path(), "W").unwrap();
        let mut ws = Workspace::new(2);
        ws.load_paths(&[dir.path().to_path_buf()]).unwrap();
        let alg = ws.algebra("k2x2").unwrap();
        let back = cmd_compute(&ws, &alg, ComputeKind::Evaluate, &["W".into(), "S".into()], 256).unwrap();
        assert_eq!(back.text(false), "dim W(S) = 1\n");
    }
}

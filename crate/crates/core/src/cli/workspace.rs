//! Named algebras, modules and functors, and the expressions over them.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::Value;

use crate::algebra::{path_algebra_an, truncated_poly, Algebra, AlgebraFile};
use crate::error::{Error, Result};
use crate::fpfun::{
    dual_star, ext1_functor_with, l0_yoneda_with, stable_hom_functor_with, sub_zero, sup_zero, w1,
    w2, FpFunctor, FunctorFile, StableSide, Variance,
};
use crate::modcat::{
    direct_sum, find_isomorphism, hom_space, k_dual, syzygy_with, transpose_with, CoverStrategy,
    FdModule, ModuleFile,
};
use crate::verify::{probe_battery, Probe};

use super::expr::Expr;

pub struct Workspace {
    algebras: BTreeMap<String, Arc<Algebra>>,
    modules: BTreeMap<String, FdModule>,
    functors: BTreeMap<String, FpFunctor>,
    /// Prime for builtin algebras named without one.
    p: u64,
    pub output_dir: Option<PathBuf>,
    pub strategy: CoverStrategy,
}

/// What a loaded file contained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Loaded {
    Algebra(String),
    Module(String),
    Functor(String),
}

impl Workspace {
    pub fn new(p: u64) -> Self {
        Workspace {
            algebras: BTreeMap::new(),
            modules: BTreeMap::new(),
            functors: BTreeMap::new(),
            p,
            output_dir: None,
            strategy: CoverStrategy::Auto,
        }
    }

    /// Resolves a loaded or builtin algebra name, or loads an algebra file.
    ///
    /// Builtins: `k<p>x<n>` for `F_p[x]/(x^n)` and `A<n>` for the path
    /// algebra of `1 -> ... -> n` over the workspace prime. A `^op` suffix
    /// takes the opposite.
    pub fn algebra(&mut self, spec: &str) -> Result<Arc<Algebra>> {
        if let Some(a) = self.algebras.get(spec) {
            return Ok(a.clone());
        }
        if let Some(base) = spec.strip_suffix("^op") {
            return Ok(self.algebra(base)?.opposite());
        }
        let path = Path::new(spec);
        if path.is_file() {
            return match self.load_file(path)? {
                Loaded::Algebra(name) => Ok(self.algebras[&name].clone()),
                _ => Err(Error::Parse(format!("{spec} is not an algebra file"))),
            };
        }
        let alg = builtin(spec, self.p)?.ok_or_else(|| Error::UnresolvedName(spec.to_string()))?;
        self.algebras.insert(spec.to_string(), alg.clone());
        Ok(alg)
    }

    pub fn modules(&self) -> impl Iterator<Item = (&String, &FdModule)> {
        self.modules.iter()
    }

    /// Loaded modules as extra probes for the verification battery.
    pub fn extra_probes(&self) -> Vec<Probe> {
        self.modules
            .iter()
            .map(|(name, m)| Probe {
                name: name.clone(),
                module: m.clone(),
            })
            .collect()
    }

    /// Loads files and directories of `.json` files; algebras first, then
    /// modules, then functors, so references between them resolve.
    pub fn load_paths(&mut self, paths: &[PathBuf]) -> Result<Vec<Loaded>> {
        let mut files = Vec::new();
        for p in paths {
            if p.is_dir() {
                let mut entries: Vec<PathBuf> = fs::read_dir(p)?
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|e| e.extension().is_some_and(|x| x == "json"))
                    .collect();
                entries.sort();
                files.extend(entries);
            } else {
                files.push(p.clone());
            }
        }
        let mut docs = Vec::new();
        for f in files {
            let text = fs::read_to_string(&f)
                .map_err(|e| Error::Parse(format!("{}: {e}", f.display())))?;
            let v: Value = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("{}: {e}", f.display())))?;
            let rank = file_kind(&v).ok_or_else(|| {
                Error::Parse(format!(
                    "{}: not an algebra, module or functor file",
                    f.display()
                ))
            })?;
            docs.push((rank, f, v));
        }
        docs.sort_by_key(|d| d.0);
        docs.into_iter()
            .map(|(_, f, v)| {
                self.load_value(&f, v)
                    .map_err(|e| Error::Parse(format!("{}: {e}", f.display())))
            })
            .collect()
    }

    pub fn load_file(&mut self, path: &Path) -> Result<Loaded> {
        let text = fs::read_to_string(path)?;
        let v: Value = serde_json::from_str(&text)?;
        self.load_value(path, v)
    }

    fn load_value(&mut self, path: &Path, v: Value) -> Result<Loaded> {
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        match file_kind(&v) {
            Some(0) => {
                let file: AlgebraFile = serde_json::from_value(v)?;
                let alg = Algebra::from_file(&file)?;
                let name = alg.name().to_string();
                if let Some(old) = self.algebras.get(&name) {
                    if !old.same(&alg) {
                        return Err(Error::DuplicateName(name));
                    }
                    return Ok(Loaded::Algebra(name));
                }
                self.algebras.insert(name.clone(), alg);
                Ok(Loaded::Algebra(name))
            }
            Some(1) => {
                let file: ModuleFile = serde_json::from_value(v)?;
                let alg = self.algebra(&file.algebra)?;
                let m = file.to_module(&alg)?;
                let name = file.name.clone().unwrap_or(stem);
                self.insert_module(name.clone(), m)?;
                Ok(Loaded::Module(name))
            }
            Some(_) => {
                let file: FunctorFile = serde_json::from_value(v)?;
                let f = file.to_functor(|n| {
                    self.modules
                        .get(n)
                        .cloned()
                        .ok_or_else(|| Error::UnresolvedName(n.to_string()))
                })?;
                if self.functors.contains_key(&stem) {
                    return Err(Error::DuplicateName(stem));
                }
                self.functors.insert(stem.clone(), f);
                Ok(Loaded::Functor(stem))
            }
            None => Err(Error::Parse("not an algebra, module or functor file".into())),
        }
    }

    pub fn insert_module(&mut self, name: String, m: FdModule) -> Result<()> {
        if self.modules.contains_key(&name) {
            return Err(Error::DuplicateName(name));
        }
        self.modules.insert(name, m);
        Ok(())
    }

    pub fn insert_functor(&mut self, name: String, f: FpFunctor) -> Result<()> {
        if self.functors.contains_key(&name) {
            return Err(Error::DuplicateName(name));
        }
        self.functors.insert(name, f);
        Ok(())
    }

    /// Probe names for `alg`; over an opposite algebra they carry `op(...)`.
    pub fn probes(&self, alg: &Arc<Algebra>) -> Vec<Probe> {
        let over_op = alg.name().ends_with("^op");
        probe_battery(alg, &[])
            .into_iter()
            .map(|p| Probe {
                name: if over_op { format!("op({})", p.name) } else { p.name },
                module: p.module,
            })
            .collect()
    }

    /// A module expression over `alg`: a loaded module, a probe name, or
    /// `op(X)`, `D(X)`, `Tr(X)`, `Omega(X)`, `sum(X, Y)`.
    pub fn module(&self, alg: &Arc<Algebra>, e: &Expr) -> Result<FdModule> {
        let one = |what: &str| -> Result<&Expr> {
            match e.args.as_slice() {
                [x] => Ok(x),
                _ => Err(Error::Parse(format!("{what} takes one argument"))),
            }
        };
        match e.head.as_str() {
            _ if e.is_atom() => {
                if let Some(m) = self.modules.get(&e.head) {
                    return Ok(m.clone());
                }
                probe_battery(alg, &[])
                    .into_iter()
                    .find(|p| p.name == e.head)
                    .map(|p| p.module)
                    .ok_or_else(|| Error::UnresolvedName(e.head.clone()))
            }
            "op" => self.module(&alg.opposite(), one("op")?),
            "D" => Ok(k_dual(&self.module(alg, one("D")?)?)),
            "Tr" => Ok(transpose_with(&self.module(alg, one("Tr")?)?, self.strategy).module),
            "Omega" => Ok(syzygy_with(&self.module(alg, one("Omega")?)?, self.strategy).module),
            "sum" => match e.args.as_slice() {
                [x, y] => {
                    let (x, y) = (self.module(alg, x)?, self.module(alg, y)?);
                    if !x.algebra().same(y.algebra()) {
                        return Err(Error::AlgebraMismatch("sum".into()));
                    }
                    Ok(direct_sum(&x, &y))
                }
                _ => Err(Error::Parse("sum takes two arguments".into())),
            },
            other => Err(Error::UnresolvedName(other.to_string())),
        }
    }

    /// A functor expression over `alg`; see the README for the heads.
    pub fn functor(&self, alg: &Arc<Algebra>, e: &Expr) -> Result<FpFunctor> {
        if e.is_atom() {
            return match e.head.as_str() {
                "zero" => Ok(FpFunctor::zero(alg, Variance::Covariant)),
                "zeroc" => Ok(FpFunctor::zero(alg, Variance::Contravariant)),
                name => self
                    .functors
                    .get(name)
                    .cloned()
                    .ok_or_else(|| Error::UnresolvedName(name.to_string())),
            };
        }
        let s = self.strategy;
        let module_arg = || -> Result<FdModule> {
            match e.args.as_slice() {
                [x] => self.module(alg, x),
                _ => Err(Error::Parse(format!("{} takes one module", e.head))),
            }
        };
        let functor_arg = || -> Result<FpFunctor> {
            match e.args.as_slice() {
                [x] => self.functor(alg, x),
                _ => Err(Error::Parse(format!("{} takes one functor", e.head))),
            }
        };
        match e.head.as_str() {
            "op" => match e.args.as_slice() {
                [x] => self.functor(&alg.opposite(), x),
                _ => Err(Error::Parse("op takes one argument".into())),
            },
            "rep" => Ok(FpFunctor::representable(&module_arg()?, Variance::Covariant)),
            "corep" => Ok(FpFunctor::representable(&module_arg()?, Variance::Contravariant)),
            "ext" => Ok(ext1_functor_with(&module_arg()?, Variance::Covariant, s)),
            "extc" => Ok(ext1_functor_with(&module_arg()?, Variance::Contravariant, s)),
            "ustab" => Ok(stable_hom_functor_with(&module_arg()?, StableSide::UnderlineInto, s)),
            "ostab" => Ok(stable_hom_functor_with(&module_arg()?, StableSide::OverlineFrom, s)),
            "ufrom" => Ok(stable_hom_functor_with(&module_arg()?, StableSide::UnderlineFrom, s)),
            "ointo" => Ok(stable_hom_functor_with(&module_arg()?, StableSide::OverlineInto, s)),
            "l0y" => Ok(l0_yoneda_with(&module_arg()?, s)),
            "cok" | "cokc" => {
                let [x, y, k] = e.args.as_slice() else {
                    return Err(Error::Parse(format!("{} takes (X, Y, k)", e.head)));
                };
                let (x, y) = (self.module(alg, x)?, self.module(alg, y)?);
                let k: usize = k
                    .head
                    .parse()
                    .map_err(|_| Error::Parse(format!("`{k}` is not a basis index")))?;
                let hom = hom_space(&x, &y)?;
                if k >= hom.dim() {
                    return Err(Error::Parse(format!(
                        "Hom basis index {k} out of range (dim {})",
                        hom.dim()
                    )));
                }
                let v = if e.head == "cok" {
                    Variance::Covariant
                } else {
                    Variance::Contravariant
                };
                Ok(FpFunctor::new(v, hom.element(k)))
            }
            "w1" => Ok(w1(&functor_arg()?)),
            "w2" => Ok(w2(&functor_arg()?)),
            "dual" => Ok(dual_star(&functor_arg()?)),
            "sub0" => Ok(sub_zero(&functor_arg()?)),
            "sup0" => sup_zero(&functor_arg()?),
            "pad" => Ok(functor_arg()?.padded()),
            "kdual" => Ok(functor_arg()?.dualize()),
            other => Err(Error::UnresolvedName(other.to_string())),
        }
    }

    /// The name of a loaded module or probe isomorphic to `m`, if any.
    pub fn identify(&self, m: &FdModule, budget: usize) -> Option<String> {
        let iso = |x: &FdModule| {
            x.dim() == m.dim()
                && x.algebra().same(m.algebra())
                && matches!(find_isomorphism(x, m, 0, budget), Ok(Some(_)))
        };
        let over_op = m.algebra().name().ends_with("^op");
        probe_battery(m.algebra(), &[])
            .into_iter()
            .find(|p| iso(&p.module))
            .map(|p| if over_op { format!("op({})", p.name) } else { p.name })
            .or_else(|| self.modules.iter().find(|(_, x)| iso(x)).map(|(n, _)| n.clone()))
    }
}

/// 0 for algebra files, 1 for modules, 2 for functors.
fn file_kind(v: &Value) -> Option<u8> {
    let obj = v.as_object()?;
    if obj.contains_key("mul") {
        Some(0)
    } else if obj.contains_key("action") {
        Some(1)
    } else if obj.contains_key("presenting") {
        Some(2)
    } else {
        None
    }
}

fn builtin(name: &str, p: u64) -> Result<Option<Arc<Algebra>>> {
    if let Some(rest) = name.strip_prefix('k') {
        if let Some((pp, n)) = rest.split_once('x') {
            if let (Ok(pp), Ok(n)) = (pp.parse::<u64>(), n.parse::<usize>()) {
                return truncated_poly(pp, n).map(Some);
            }
        }
    }
    if let Some(n) = name.strip_prefix('A') {
        if let Ok(n) = n.parse::<usize>() {
            return path_algebra_an(p, n).map(Some);
        }
    }
    Ok(None)
}

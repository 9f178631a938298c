//! The checks behind each suite. Every theorem check goes through a canonical
//! map or an independent module-level computation; only `trtr` searches.

use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::error::Result;
use crate::exactla::FieldMatrix;
use crate::fpfun::{
    agj_evaluate, agj_evaluate_on, cokernel_nat, defect, defect_map, defect_sequence,
    defect_zero_duality_map, dual_star, evaluate, evaluate_nat_with, evaluate_on,
    ext1_functor_with, gar_canonical_map_with, is_iso_nat, is_zero_functor, l0_counit, nat_space,
    stable_hom_functor_with, sup_zero, tr_star_evaluate, w1, w2, w2_nat, w2w2_comparison, EvalResult,
    FpFunctor, GarSide, NatTransform, StableSide, Variance,
};
use crate::modcat::{
    cokernel, ext1_with, hom_space, k_dual, kernel, stable_hom_inj_with, stable_hom_proj_with,
    stable_iso, tor1_with, transpose_morphism_with, transpose_with, CoverStrategy, FdModule,
    ModMorphism, StableIsoVerdict,
};

use super::{algebra_label, functor_battery, probe_battery, Check, NamedFunctor, Probe, Status, SuiteConfig};

/// Hom-basis maps per probe pair used for naturality squares.
const MAPS_PER_PAIR: usize = 2;

pub(crate) struct Context<'a> {
    suite: &'a str,
    cfg: &'a SuiteConfig,
    alg: Arc<Algebra>,
    label: String,
    probes: Vec<Probe>,
    op_probes: Vec<Probe>,
    battery: Vec<NamedFunctor>,
    transposes: OnceLock<Transposes>,
}

/// Transposes of the probes (over `Λ`, then over `Λ^op`) and of the
/// Hom-basis maps between them.
struct Transposes {
    modules: [Vec<FdModule>; 2],
    maps: [Vec<ProbeMap>; 2],
}

struct ProbeMap {
    map: ModMorphism,
    transposed: ModMorphism,
}

type Outcome = Result<Option<(Value, Status)>>;

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn done(observed: Value, ok: bool) -> Outcome {
    Ok(Some((observed, verdict(ok))))
}

impl<'a> Context<'a> {
    pub(crate) fn new(suite: &'a str, alg: &Arc<Algebra>, cfg: &'a SuiteConfig) -> Self {
        let probes = probe_battery(alg, &cfg.extra_probes);
        let op = alg.opposite();
        let mut op_probes: Vec<Probe> = probe_battery(&op, &[])
            .into_iter()
            .map(|p| Probe {
                name: format!("op({})", p.name),
                module: p.module,
            })
            .collect();
        op_probes.extend(
            cfg.extra_probes
                .iter()
                .filter(|p| p.module.algebra().same(&op))
                .cloned(),
        );
        let mut battery = functor_battery(&probes, cfg.battery);
        if cfg.padded {
            for nf in &mut battery {
                nf.functor = nf.functor.padded();
            }
        }
        Context {
            suite,
            cfg,
            alg: alg.clone(),
            label: algebra_label(alg),
            probes,
            op_probes,
            battery,
            transposes: OnceLock::new(),
        }
    }

    fn strategy(&self) -> CoverStrategy {
        self.cfg.strategy()
    }

    fn pad(&self, f: FpFunctor) -> FpFunctor {
        if self.cfg.padded {
            f.padded()
        } else {
            f
        }
    }

    fn repro(&self, id: &str) -> String {
        let mut cmd = format!(
            "fpfun verify {} --algebra {} --p {} --seed {} --budget {}",
            self.suite,
            self.alg.name(),
            self.alg.field().p(),
            self.cfg.seed,
            self.cfg.budget
        );
        if self.cfg.battery == super::BatterySpec::RepresentablesOnly {
            cmd.push_str(" --battery representables-only");
        }
        if self.cfg.padded {
            cmd.push_str(" --pad");
        }
        cmd.push_str(&format!(" --only '{id}'"));
        cmd
    }

    fn make(&self, kind: &str, subject: &str, relation: &str, outcome: Outcome) -> Option<Check> {
        let id = format!("{}/{kind}/{subject}", self.label);
        let (observed, status) = match outcome {
            Ok(Some(v)) => v,
            Ok(None) => return None,
            Err(e) => (json!({ "error": e.to_string() }), Status::Fail),
        };
        let repro = (status != Status::Pass).then(|| self.repro(&id));
        Some(Check {
            id,
            inputs: vec![self.label.clone(), subject.to_string()],
            relation: relation.to_string(),
            observed,
            status,
            repro,
        })
    }

    fn per_functor<F>(&self, kind: &str, relation: &str, body: F) -> Vec<Check>
    where
        F: Fn(&FpFunctor) -> Outcome + Sync,
    {
        self.battery
            .par_iter()
            .filter_map(|nf| self.make(kind, &nf.name, relation, body(&nf.functor)))
            .collect()
    }

    fn per_probe<F>(&self, probes: &[Probe], kind: &str, relation: &str, body: F) -> Vec<Check>
    where
        F: Fn(&Probe) -> Outcome + Sync,
    {
        probes
            .par_iter()
            .filter_map(|p| self.make(kind, &p.name, relation, body(p)))
            .collect()
    }

    fn transposes(&self) -> &Transposes {
        self.transposes.get_or_init(|| {
            let s = self.strategy();
            let build = |probes: &[Probe]| {
                let modules: Vec<FdModule> = probes
                    .iter()
                    .map(|p| transpose_with(&p.module, s).module)
                    .collect();
                let mut maps = Vec::new();
                for x in probes {
                    for y in probes {
                        let hom = hom_space(&x.module, &y.module).expect("same algebra");
                        for k in 0..hom.dim().min(MAPS_PER_PAIR) {
                            let map = hom.element(k);
                            let transposed = transpose_morphism_with(&map, s);
                            maps.push(ProbeMap { map, transposed });
                        }
                    }
                }
                (modules, maps)
            };
            let (m0, h0) = build(&self.probes);
            let (m1, h1) = build(&self.op_probes);
            Transposes {
                modules: [m0, m1],
                maps: [h0, h1],
            }
        })
    }

    /// Hom-basis maps between probes, used for naturality.
    fn probe_maps(&self) -> Vec<ModMorphism> {
        let mut out = Vec::new();
        for x in &self.probes {
            for y in &self.probes {
                let hom = hom_space(&x.module, &y.module).expect("same algebra");
                out.extend((0..hom.dim().min(MAPS_PER_PAIR)).map(|k| hom.element(k)));
            }
        }
        out
    }
}

/// `0 -> d_0 -> ... -> d_n -> 0` with `maps[i]: d_i -> d_{i+1}` is exact.
fn exact_sequence(maps: &[FieldMatrix], dims: &[usize]) -> bool {
    let ranks: Vec<usize> = maps.iter().map(FieldMatrix::rank).collect();
    let n = dims.len();
    let counts = (0..n).all(|i| {
        let into = if i == 0 { 0 } else { ranks[i - 1] };
        let out = if i + 1 == n { 0 } else { ranks[i] };
        dims[i] == into + out
    });
    counts && maps.windows(2).all(|w| (&w[1] * &w[0]).is_zero())
}

fn eval_nat(eta: &NatTransform, a: &FdModule) -> Result<(EvalResult, EvalResult, FieldMatrix)> {
    let s = evaluate(eta.source(), a)?;
    let t = evaluate(eta.target(), a)?;
    let m = evaluate_nat_with(eta, &s, &t);
    Ok((s, t, m))
}

/// First-block projection `X ⊕ Λ^r -> X` or inclusion `X -> X ⊕ Λ^r`.
fn first_block(f: crate::exactla::PrimeField, small: usize, big: usize, project: bool) -> FieldMatrix {
    let id = FieldMatrix::identity(f, big);
    if project {
        id.block(0, 0, small, big)
    } else {
        id.block(0, 0, big, small)
    }
}

pub(crate) fn suite_defect(ctx: &Context) -> Vec<Check> {
    let mut out = Vec::new();
    out.extend(ctx.per_functor(
        "yoneda",
        "dim Nat(Y(C), F) = dim F(C) for every probe C",
        |f| {
            let mut rows = Vec::new();
            let mut ok = true;
            for c in &ctx.probes {
                let rep = ctx.pad(FpFunctor::representable(&c.module, f.variance()));
                let lhs = nat_space(&rep, f)?.len();
                let rhs = evaluate(f, &c.module)?.dimension;
                ok &= lhs == rhs;
                rows.push(json!([c.name, lhs, rhs]));
            }
            done(Value::Array(rows), ok)
        },
    ));
    out.extend(ctx.per_functor(
        "fp_dual",
        "dim Nat(F, Y(C)) = dim Hom(C, w F) (covariant) or dim Hom(v F, C) (contravariant)",
        |f| {
            let w = defect(f);
            let mut rows = Vec::new();
            let mut ok = true;
            for c in &ctx.probes {
                let rep = ctx.pad(FpFunctor::representable(&c.module, f.variance()));
                let lhs = nat_space(f, &rep)?.len();
                let rhs = match f.variance() {
                    Variance::Covariant => hom_space(&c.module, &w)?.dim(),
                    Variance::Contravariant => hom_space(&w, &c.module)?.dim(),
                };
                ok &= lhs == rhs;
                rows.push(json!([c.name, lhs, rhs]));
            }
            done(Value::Array(rows), ok)
        },
    ));
    out.extend(ctx.per_probe(
        &ctx.probes,
        "wy",
        "the canonical map between w(Y X) and X is an isomorphism, both variances",
        |x| {
            let m = &x.module;
            let f = m.field();
            let mut ok = true;
            for v in [Variance::Covariant, Variance::Contravariant] {
                let r = ctx.pad(FpFunctor::representable(m, v));
                let p = r.presentation();
                let canon = match v {
                    Variance::Covariant => {
                        let (w, k) = kernel(p);
                        let proj = first_block(f, m.dim(), p.source().dim(), true);
                        ModMorphism::new(w, m.clone(), &proj * k.matrix())?
                    }
                    Variance::Contravariant => {
                        let (c, q) = cokernel(p);
                        let inc = first_block(f, m.dim(), p.target().dim(), false);
                        ModMorphism::new(m.clone(), c, q.matrix() * &inc)?
                    }
                };
                ok &= canon.is_iso();
            }
            done(json!({ "dim": m.dim() }), ok)
        },
    ));
    out.extend(ctx.per_functor(
        "exact",
        "0 -> F0(A) -> F(A) -> R(A) -> F1(A) -> 0 is exact for every probe A",
        |f| {
            let seq = defect_sequence(f);
            let mut rows = Vec::new();
            let mut ok = true;
            for a in &ctx.probes {
                let a = &a.module;
                let e0 = evaluate(&seq.f0, a)?;
                let e = evaluate(f, a)?;
                let er = evaluate(&seq.represented, a)?;
                let e1 = evaluate(&seq.f1, a)?;
                let maps = [
                    evaluate_nat_with(&seq.iota, &e0, &e),
                    evaluate_nat_with(&seq.phi, &e, &er),
                    evaluate_nat_with(&seq.pi, &er, &e1),
                ];
                let dims = [e0.dimension, e.dimension, er.dimension, e1.dimension];
                ok &= exact_sequence(&maps, &dims);
                rows.push(json!(dims));
            }
            done(Value::Array(rows), ok)
        },
    ));
    out.extend(ctx.per_functor(
        "unit",
        "w applied to the unit F -> Y w F is an isomorphism",
        |f| {
            let seq = defect_sequence(f);
            let m = defect_map(&seq.phi)?;
            done(json!({ "defect_dim": m.source().dim() }), m.is_iso())
        },
    ));
    out.extend(ctx.per_probe(
        &ctx.probes,
        "unit_rep",
        "the unit Y X -> Y w Y X is an isomorphism, both variances",
        |x| {
            let mut ok = true;
            for v in [Variance::Covariant, Variance::Contravariant] {
                let r = ctx.pad(FpFunctor::representable(&x.module, v));
                ok &= is_iso_nat(&defect_sequence(&r).phi)?;
            }
            done(json!({ "dim": x.module.dim() }), ok)
        },
    ));
    out.extend(ctx.per_functor(
        "counit",
        "the counit L0Y(v G) -> G is a valid natural transformation and v of it is an isomorphism",
        |f| {
            let g = match f.variance() {
                Variance::Contravariant => f.clone(),
                Variance::Covariant => f.dualize(),
            };
            let eps = l0_counit(&g)?;
            let valid = NatTransform::new(
                eps.source().clone(),
                eps.target().clone(),
                eps.lift().clone(),
                eps.witness().clone(),
            )
            .is_ok();
            let iso = defect_map(&eps)?.is_iso();
            done(json!({ "valid": valid, "defect_iso": iso }), valid && iso)
        },
    ));
    out.extend(ctx.per_functor(
        "sub_zero",
        "w(F0) = 0 and F0(A) -> F(A) is injective for every probe A",
        |f| {
            let seq = defect_sequence(f);
            let zero = defect(&seq.f0).is_zero();
            let mut ok = zero;
            for a in &ctx.probes {
                let (s, _, m) = eval_nat(&seq.iota, &a.module)?;
                ok &= m.rank() == s.dimension;
            }
            done(json!({ "defect_zero": zero }), ok)
        },
    ));
    out.extend(ctx.per_functor(
        "sup_zero",
        "w(F^0) = 0, and G(A) -> G^0(A) is onto for contravariant G",
        |f| {
            let sup = sup_zero(f)?;
            let zero = defect(&sup).is_zero();
            let mut ok = zero;
            if f.variance() == Variance::Contravariant {
                let (_, pi) = cokernel_nat(&l0_counit(f)?);
                for a in &ctx.probes {
                    let (_, t, m) = eval_nat(&pi, &a.module)?;
                    ok &= m.rank() == t.dimension;
                }
            }
            done(json!({ "defect_zero": zero }), ok)
        },
    ));
    out
}

pub(crate) fn suite_w(ctx: &Context) -> Vec<Check> {
    let mut out = Vec::new();
    out.extend(ctx.per_functor(
        "w0",
        "dim Nat(F, Y(C)) = dim F*(C) for every probe C",
        |f| {
            let star = dual_star(f);
            let mut rows = Vec::new();
            let mut ok = true;
            for c in &ctx.probes {
                let rep = ctx.pad(FpFunctor::representable(&c.module, f.variance()));
                let lhs = nat_space(f, &rep)?.len();
                let rhs = evaluate(&star, &c.module)?.dimension;
                ok &= lhs == rhs;
                rows.push(json!([c.name, lhs, rhs]));
            }
            done(Value::Array(rows), ok)
        },
    ));
    out.extend(ctx.per_functor(
        "w1_vanish",
        "w(F) = 0 implies W1(F) = 0",
        |f| {
            if !defect(f).is_zero() {
                return Ok(None);
            }
            let z = is_zero_functor(&w1(f))?;
            done(json!({ "w1_zero": z }), z)
        },
    ));
    out.extend(ctx.per_functor(
        "w2w2",
        "the canonical W2 W2 F -> F0 is an isomorphism",
        |f| {
            let iso = is_iso_nat(&w2w2_comparison(f)?)?;
            done(json!({ "iso": iso }), iso)
        },
    ));
    out.extend(ctx.per_functor(
        "duality",
        "w(F) = 0 implies F -> W2 W2 F is an isomorphism and w(W2 F) = 0",
        |f| {
            if !defect(f).is_zero() {
                return Ok(None);
            }
            let iso = is_iso_nat(&defect_zero_duality_map(f)?)?;
            let zero = defect(&w2(f)).is_zero();
            done(json!({ "iso": iso, "w2_defect_zero": zero }), iso && zero)
        },
    ));
    out.extend(ctx.per_functor(
        "right_exact",
        "W2 H(A) -> W2 F(A) -> W2 F0(A) -> 0 is exact for 0 -> F0 -> F -> H -> 0",
        |f| {
            let seq = defect_sequence(f);
            let (_, pi) = cokernel_nat(&seq.iota);
            let w_iota = w2_nat(&seq.iota)?;
            let w_pi = w2_nat(&pi)?;
            let mut rows = Vec::new();
            let mut ok = true;
            for a in &ctx.probes {
                let a = &a.module;
                let eh = evaluate(w_pi.source(), a)?;
                let ef = evaluate(w_pi.target(), a)?;
                let e0 = evaluate(w_iota.target(), a)?;
                let ma = evaluate_nat_with(&w_pi, &eh, &ef);
                let mb = evaluate_nat_with(&w_iota, &ef, &e0);
                let (ra, rb) = (ma.rank(), mb.rank());
                ok &= (&mb * &ma).is_zero() && rb == e0.dimension && ef.dimension - rb == ra;
                rows.push(json!([eh.dimension, ef.dimension, e0.dimension]));
            }
            done(Value::Array(rows), ok)
        },
    ));
    out.extend(ctx.per_functor(
        "same_ses",
        "w(F) = 0: the presentation of W2 F completes the same short exact sequence",
        |f| {
            if !defect(f).is_zero() {
                return Ok(None);
            }
            let p = f.presentation();
            let q = w2(f);
            let q = q.presentation();
            let y = match f.variance() {
                Variance::Covariant => p.target(),
                Variance::Contravariant => p.source(),
            };
            let (ends_ok, composite) = match f.variance() {
                Variance::Covariant => (p.is_mono() && q.is_epi(), q.after(p)),
                Variance::Contravariant => (p.is_epi() && q.is_mono(), p.after(q)),
            };
            let ok = ends_ok && composite.is_zero() && p.rank() + q.rank() == y.dim();
            done(json!({ "middle_dim": y.dim(), "ranks": [p.rank(), q.rank()] }), ok)
        },
    ));
    out.extend(ctx.per_probe(
        &ctx.probes,
        "w2_rep",
        "W2 of a representable is zero, both variances",
        |x| {
            let mut ok = true;
            for v in [Variance::Covariant, Variance::Contravariant] {
                let r = ctx.pad(FpFunctor::representable(&x.module, v));
                ok &= is_zero_functor(&w2(&r))?;
            }
            done(json!({ "dim": x.module.dim() }), ok)
        },
    ));
    out
}

pub(crate) fn suite_gar(ctx: &Context) -> Vec<Check> {
    let s = ctx.strategy();
    let mut out = Vec::new();
    out.extend(ctx.per_probe(
        &ctx.probes,
        "projective",
        "W2 Ext1(C, -) -> underline-hom(-, C) is an isomorphism; dims match the module-level stable Hom",
        |c| {
            let eta = gar_canonical_map_with(&c.module, GarSide::Projective, s);
            let iso = is_iso_nat(&eta)?;
            let mut rows = Vec::new();
            let mut ok = iso;
            for a in &ctx.probes {
                let lhs = evaluate(eta.source(), &a.module)?.dimension;
                let rhs = stable_hom_proj_with(&a.module, &c.module, s)?.dim();
                ok &= lhs == rhs;
                rows.push(json!([a.name, lhs, rhs]));
            }
            done(json!({ "iso": iso, "dims": rows }), ok)
        },
    ));
    out.extend(ctx.per_probe(
        &ctx.probes,
        "injective",
        "W2 Ext1(-, C) -> overline-hom(C, -) is an isomorphism; dims match the module-level stable Hom",
        |c| {
            let eta = gar_canonical_map_with(&c.module, GarSide::Injective, s);
            let iso = is_iso_nat(&eta)?;
            let mut rows = Vec::new();
            let mut ok = iso;
            for a in &ctx.probes {
                let lhs = evaluate(eta.source(), &a.module)?.dimension;
                let rhs = stable_hom_inj_with(&c.module, &a.module, s)?.dim();
                ok &= lhs == rhs;
                rows.push(json!([a.name, lhs, rhs]));
            }
            done(json!({ "iso": iso, "dims": rows }), ok)
        },
    ));
    out
}

/// `T ∘ D_A` against `R ∘ W` for a covariant defect-zero `F` on the probes
/// of one side.
fn square(ctx: &Context, f: &FpFunctor, side: usize) -> Outcome {
    let tr = ctx.transposes();
    let probes = if side == 0 { &ctx.probes } else { &ctx.op_probes };
    let w = w2(f);
    let mut rows = Vec::new();
    let mut ok = true;
    for (p, t) in probes.iter().zip(&tr.modules[side]) {
        let lhs = agj_evaluate(f, t)?.dimension;
        let rhs = evaluate(&w, &p.module)?.dimension;
        ok &= lhs == rhs;
        rows.push(json!([p.name, lhs, rhs]));
    }
    let mut squares = 0;
    for pm in &tr.maps[side] {
        let a = agj_evaluate_on(f, &pm.transposed)?.rank();
        let b = evaluate_on(&w, &pm.map)?.rank();
        ok &= a == b;
        squares += 1;
    }
    done(json!({ "dims": rows, "naturality_squares": squares }), ok)
}

pub(crate) fn suite_transpose(ctx: &Context) -> Vec<Check> {
    let s = ctx.strategy();
    let mut out = Vec::new();
    out.extend(ctx.per_probe(
        &ctx.probes,
        "trtr",
        "Tr Tr M is stably isomorphic to M (seeded search)",
        |m| {
            let t = transpose_with(&m.module, s).module;
            let tt = transpose_with(&t, s).module;
            let v = stable_iso(&tt, &m.module, ctx.cfg.seed, ctx.cfg.budget)?;
            let status = match &v {
                StableIsoVerdict::Isomorphic => Status::Pass,
                StableIsoVerdict::NotIsomorphic { .. } => Status::Fail,
                StableIsoVerdict::Inconclusive { .. } => Status::Inconclusive,
            };
            Ok(Some((serde_json::to_value(&v)?, status)))
        },
    ));
    out.extend(ctx.per_probe(
        &ctx.probes,
        "tor_tr",
        "dim Tor1(Tr M, N) = dim underline-Hom(M, N) for every probe N",
        |m| {
            let t = &ctx.transposes().modules[0];
            let idx = ctx.probes.iter().position(|p| p.name == m.name).expect("probe");
            let mut rows = Vec::new();
            let mut ok = true;
            for n in &ctx.probes {
                let lhs = tor1_with(&t[idx], &n.module, s)?;
                let rhs = stable_hom_proj_with(&m.module, &n.module, s)?.dim();
                ok &= lhs == rhs;
                rows.push(json!([n.name, lhs, rhs]));
            }
            done(Value::Array(rows), ok)
        },
    ));
    out.extend(ctx.per_functor(
        "square",
        "w(F) = 0: dim D_A F(Tr M) = dim W2 F(M), and the naturality squares have equal ranks",
        |f| {
            if !defect(f).is_zero() {
                return Ok(None);
            }
            match f.variance() {
                Variance::Covariant => square(ctx, f, 0),
                Variance::Contravariant => square(ctx, &f.dualize(), 1),
            }
        },
    ));
    out.extend(ctx.per_functor(
        "tr_star",
        "F(Λ) = 0: Tr_* Tr_* F(N) = F(N) for every probe N",
        |f| {
            if evaluate(f, &ctx.probes.iter().find(|p| p.name == "L").expect("L").module)?.dimension != 0 {
                return Ok(None);
            }
            let t = &ctx.transposes().modules[0];
            let mut rows = Vec::new();
            let mut ok = true;
            for (n, tn) in ctx.probes.iter().zip(t) {
                let lhs = tr_star_evaluate(f, tn)?.dimension;
                let rhs = evaluate(f, &n.module)?.dimension;
                ok &= lhs == rhs;
                rows.push(json!([n.name, lhs, rhs]));
            }
            done(Value::Array(rows), ok)
        },
    ));
    out.extend(ctx.per_probe(
        &ctx.op_probes,
        "tr_star_stable",
        "Tr_* underline-hom(M, -) (X) = underline-hom(X, Tr M) for every probe X",
        |m| {
            let f = ctx.pad(stable_hom_functor_with(&m.module, StableSide::UnderlineFrom, s));
            let idx = ctx.op_probes.iter().position(|p| p.name == m.name).expect("probe");
            let trm = &ctx.transposes().modules[1][idx];
            let mut rows = Vec::new();
            let mut ok = true;
            for x in &ctx.probes {
                let lhs = tr_star_evaluate(&f, &x.module)?.dimension;
                let rhs = stable_hom_proj_with(&x.module, trm, s)?.dim();
                ok &= lhs == rhs;
                rows.push(json!([x.name, lhs, rhs]));
            }
            done(Value::Array(rows), ok)
        },
    ));
    out
}

pub(crate) fn suite_classical_ar(ctx: &Context) -> Vec<Check> {
    let s = ctx.strategy();
    let maps = ctx.probe_maps();
    let mut out = Vec::new();
    let tr = ctx.transposes();
    out.extend(ctx.per_probe(
        &ctx.probes,
        "ar1",
        "dim underline-Hom(M, C) = dim Ext1(C, D Tr M) for every probe C",
        |m| {
            let idx = ctx.probes.iter().position(|p| p.name == m.name).expect("probe");
            let tau = k_dual(&tr.modules[0][idx]);
            let mut rows = Vec::new();
            let mut ok = true;
            for c in &ctx.probes {
                let lhs = stable_hom_proj_with(&m.module, &c.module, s)?.dim();
                let rhs = ext1_with(&c.module, &tau, s)?.dim();
                ok &= lhs == rhs;
                rows.push(json!([c.name, lhs, rhs]));
            }
            done(Value::Array(rows), ok)
        },
    ));
    out.extend(ctx.per_probe(
        &ctx.op_probes,
        "ar2",
        "dim overline-Hom(C, D B) = dim Ext1(Tr B, C) for every probe C",
        |b| {
            let idx = ctx.op_probes.iter().position(|p| p.name == b.name).expect("probe");
            let db = k_dual(&b.module);
            let trb = &tr.modules[1][idx];
            let mut rows = Vec::new();
            let mut ok = true;
            for c in &ctx.probes {
                let lhs = stable_hom_inj_with(&c.module, &db, s)?.dim();
                let rhs = ext1_with(trb, &c.module, s)?.dim();
                ok &= lhs == rhs;
                rows.push(json!([c.name, lhs, rhs]));
            }
            done(Value::Array(rows), ok)
        },
    ));
    let natural = |f1: &FpFunctor, f2: &FpFunctor| -> Outcome {
        let mut ok = true;
        for h in &maps {
            ok &= evaluate_on(f1, h)?.rank() == evaluate_on(f2, h)?.rank();
        }
        done(json!({ "naturality_squares": maps.len() }), ok)
    };
    out.extend(ctx.per_probe(
        &ctx.probes,
        "ar1_natural",
        "underline-hom(M, h) and Ext1(h, D Tr M) have equal ranks along probe maps h",
        |m| {
            let idx = ctx.probes.iter().position(|p| p.name == m.name).expect("probe");
            let tau = k_dual(&tr.modules[0][idx]);
            let f1 = ctx.pad(stable_hom_functor_with(&m.module, StableSide::UnderlineFrom, s));
            let f2 = ctx.pad(ext1_functor_with(&tau, Variance::Contravariant, s));
            natural(&f1, &f2)
        },
    ));
    out.extend(ctx.per_probe(
        &ctx.op_probes,
        "ar2_natural",
        "overline-hom(h, D B) and Ext1(Tr B, h) have equal ranks along probe maps h",
        |b| {
            let idx = ctx.op_probes.iter().position(|p| p.name == b.name).expect("probe");
            let db = k_dual(&b.module);
            let f1 = ctx.pad(stable_hom_functor_with(&db, StableSide::OverlineInto, s));
            let f2 = ctx.pad(ext1_functor_with(&tr.modules[1][idx], Variance::Covariant, s));
            natural(&f1, &f2)
        },
    ));
    out
}

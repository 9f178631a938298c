//! Named probe modules and functors for the suites.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::fpfun::{
    ext1_functor, l0_yoneda, stable_hom_functor, sub_zero, FpFunctor, StableSide, Variance,
};
use crate::modcat::{
    find_isomorphism, hom_space, k_dual, orthogonal_idempotents, radical_submodule,
    regular_module, submodule, top, zero_module, FdModule,
};

#[derive(Clone, Debug)]
pub struct Probe {
    pub name: String,
    pub module: FdModule,
}

#[derive(Clone, Debug)]
pub struct NamedFunctor {
    pub name: String,
    pub functor: FpFunctor,
}

/// Which functors to generate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BatterySpec {
    #[default]
    Full,
    RepresentablesOnly,
}

/// How many probes feed the cokernel samples.
const SAMPLE_PROBES: usize = 4;

/// Dedupe budget for the isomorphism search between candidate probes.
const DEDUPE_BUDGET: usize = 512;

/// `0`, simples, indecomposable projectives and injectives, `Λ`, `D Λ`
/// and radical powers, with isomorphic repeats dropped, then `extra`.
pub fn probe_battery(alg: &Arc<Algebra>, extra: &[Probe]) -> Vec<Probe> {
    let mut cands: Vec<(String, FdModule)> = vec![("0".into(), zero_module(alg))];
    let l = regular_module(alg);
    let op = alg.opposite();
    let idems = orthogonal_idempotents(alg).filter(|e| e.len() > 1);
    match &idems {
        Some(idems) => {
            for (k, e) in idems.iter().enumerate() {
                let (p, _) = submodule(&l, std::slice::from_ref(e));
                if let Some((s, _)) = top(&p) {
                    cands.push((format!("S{}", k + 1), s));
                }
                cands.push((format!("P{}", k + 1), p));
            }
        }
        None => {
            if let Some((s, _)) = top(&l) {
                cands.push(("S".into(), s));
            }
        }
    }
    cands.push(("L".into(), l.clone()));
    let mut power = l;
    let mut k = 1;
    while let Some((r, _)) = radical_submodule(&power) {
        if r.is_zero() || r.dim() == power.dim() {
            break;
        }
        let name = if k == 1 { "rad".to_string() } else { format!("rad{k}") };
        cands.push((name, r.clone()));
        power = r;
        k += 1;
    }
    cands.push(("DL".into(), k_dual(&regular_module(&op))));
    if let Some(idems) = orthogonal_idempotents(&op).filter(|e| e.len() > 1) {
        let lop = regular_module(&op);
        for (k, e) in idems.iter().enumerate() {
            let (p, _) = submodule(&lop, std::slice::from_ref(e));
            cands.push((format!("I{}", k + 1), k_dual(&p)));
        }
    }
    let mut out: Vec<Probe> = Vec::new();
    for (name, module) in cands {
        let dup = out
            .iter()
            .any(|p| isomorphic(&p.module, &module));
        if !dup {
            out.push(Probe { name, module });
        }
    }
    for p in extra {
        if p.module.algebra().same(alg) && !out.iter().any(|q| q.name == p.name) {
            out.push(p.clone());
        }
    }
    out
}

fn isomorphic(x: &FdModule, y: &FdModule) -> bool {
    x.dim() == y.dim()
        && matches!(find_isomorphism(x, y, 0, DEDUPE_BUDGET), Ok(Some(_)))
}

/// Functors named in the CLI expression syntax.
pub fn functor_battery(probes: &[Probe], spec: BatterySpec) -> Vec<NamedFunctor> {
    let mut out = Vec::new();
    let nonzero: Vec<&Probe> = probes.iter().filter(|p| !p.module.is_zero()).collect();
    let named = |name: String, functor: FpFunctor| NamedFunctor { name, functor };
    for c in &nonzero {
        let (n, m) = (&c.name, &c.module);
        out.push(named(format!("rep({n})"), FpFunctor::representable(m, Variance::Covariant)));
        out.push(named(
            format!("corep({n})"),
            FpFunctor::representable(m, Variance::Contravariant),
        ));
    }
    if spec == BatterySpec::RepresentablesOnly {
        return out;
    }
    for c in &nonzero {
        let (n, m) = (&c.name, &c.module);
        out.push(named(format!("ext({n})"), ext1_functor(m, Variance::Covariant)));
        out.push(named(format!("extc({n})"), ext1_functor(m, Variance::Contravariant)));
        out.push(named(format!("ustab({n})"), stable_hom_functor(m, StableSide::UnderlineInto)));
        out.push(named(format!("ostab({n})"), stable_hom_functor(m, StableSide::OverlineFrom)));
        out.push(named(format!("l0y({n})"), l0_yoneda(m)));
    }
    let sample: Vec<&&Probe> = nonzero.iter().take(SAMPLE_PROBES).collect();
    let mut samples = Vec::new();
    for x in &sample {
        for y in &sample {
            let hom = hom_space(&x.module, &y.module).expect("same algebra");
            if hom.dim() == 0 {
                continue;
            }
            let f = hom.element(0);
            let args = format!("{},{},0", x.name, y.name);
            samples.push(named(format!("cok({args})"), FpFunctor::new(Variance::Covariant, f.clone())));
            samples.push(named(format!("cokc({args})"), FpFunctor::new(Variance::Contravariant, f)));
        }
    }
    for s in &samples {
        out.push(named(format!("sub0({})", s.name), sub_zero(&s.functor)));
    }
    out.extend(samples);
    out
}

/// Algebras used by `verify --all` for the prime `p`.
pub fn builder_algebras(p: u64) -> crate::error::Result<Vec<Arc<Algebra>>> {
    Ok(vec![
        crate::algebra::truncated_poly(p, 2)?,
        crate::algebra::truncated_poly(p, 3)?,
        crate::algebra::path_algebra_an(p, 2)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{path_algebra_an, truncated_poly};

    fn names(ps: &[Probe]) -> Vec<&str> {
        ps.iter().map(|p| p.name.as_str()).collect()
    }

    #[test]
    fn local_probes() {
        let a = truncated_poly(2, 2).unwrap();
        assert_eq!(names(&probe_battery(&a, &[])), ["0", "S", "L"]);
        let b = truncated_poly(2, 3).unwrap();
        assert_eq!(names(&probe_battery(&b, &[])), ["0", "S", "L", "rad"]);
    }

    #[test]
    fn path_algebra_probes_cover_indecomposables() {
        let a = path_algebra_an(2, 2).unwrap();
        let ps = probe_battery(&a, &[]);
        // three indecomposables plus 0, L and D L
        let dims: Vec<usize> = ps.iter().map(|p| p.module.dim()).collect();
        assert_eq!(dims.iter().filter(|&&d| d == 1).count(), 2, "{:?}", names(&ps));
        assert!(dims.contains(&2));
    }

    #[test]
    fn battery_is_deterministic() {
        let a = path_algebra_an(3, 2).unwrap();
        let ps = probe_battery(&a, &[]);
        let b1: Vec<String> = functor_battery(&ps, BatterySpec::Full).into_iter().map(|f| f.name).collect();
        let b2: Vec<String> = functor_battery(&ps, BatterySpec::Full).into_iter().map(|f| f.name).collect();
        assert_eq!(b1, b2);
        assert!(b1.iter().any(|n| n.starts_with("sub0(cok(")));
        let reps = functor_battery(&ps, BatterySpec::RepresentablesOnly);
        assert!(reps.iter().all(|f| f.name.starts_with("rep(") || f.name.starts_with("corep(")));
    }
}

//! Defect, duals, `W₁`, `W₂` and the defect sequence.

use crate::error::{Error, Result};
use crate::exactla::FieldMatrix;
use crate::modcat::{
    cokernel, direct_sum, extend_along, hom_space, image_factorization, kernel, lift_along,
    postcompose_matrix, precompose_matrix, FdModule, ModMorphism,
};

use super::{FpFunctor, NatTransform, Variance};

/// `ker f` for covariant, `coker g` for contravariant functors.
pub fn defect(f: &FpFunctor) -> FdModule {
    match f.variance() {
        Variance::Covariant => kernel(f.presentation()).0,
        Variance::Contravariant => cokernel(f.presentation()).0,
    }
}

/// `w(η)`: `w G -> w F` for covariant, `v F -> v G` for contravariant `η: F -> G`.
pub fn defect_map(eta: &NatTransform) -> Result<ModMorphism> {
    let (pf, pg) = (eta.source().presentation(), eta.target().presentation());
    let map = match eta.variance() {
        Variance::Covariant => {
            let (kf, kg) = (kernel(pf).1, kernel(pg).1);
            lift_along(&kf, &eta.lift().after(&kg))?
        }
        Variance::Contravariant => {
            let (qf, qg) = (cokernel(pf).1, cokernel(pg).1);
            extend_along(&qf, &qg.after(eta.lift()))?
        }
    };
    map.ok_or_else(|| unsolvable("defect_map"))
}

/// The representable of the other variance on the defect.
pub fn dual_star(f: &FpFunctor) -> FpFunctor {
    FpFunctor::representable(&defect(f), f.variance().flip())
}

/// Presented by the epi part `X -> V` of `f` (covariant input) or the mono
/// part `V -> Z` of `g` (contravariant input).
pub fn w1(f: &FpFunctor) -> FpFunctor {
    let im = image_factorization(f.presentation());
    match f.variance() {
        Variance::Covariant => FpFunctor::new(Variance::Contravariant, im.epi),
        Variance::Contravariant => FpFunctor::new(Variance::Covariant, im.mono),
    }
}

/// Presented by the cokernel map of `f` (covariant input) or the kernel
/// inclusion of `g` (contravariant input).
pub fn w2(f: &FpFunctor) -> FpFunctor {
    match f.variance() {
        Variance::Covariant => FpFunctor::new(Variance::Contravariant, cokernel(f.presentation()).1),
        Variance::Contravariant => FpFunctor::new(Variance::Covariant, kernel(f.presentation()).1),
    }
}

/// `0 -> F₀ -> F -> R -> F₁ -> 0`, with `R` the representable on the defect
/// (`(w F, -)` or `(-, v G)`).
#[derive(Clone, Debug)]
pub struct DefectSequence {
    pub f0: FpFunctor,
    pub iota: NatTransform,
    pub phi: NatTransform,
    pub represented: FpFunctor,
    pub pi: NatTransform,
    pub f1: FpFunctor,
}

pub fn defect_sequence(f: &FpFunctor) -> DefectSequence {
    let p = f.presentation();
    let im = image_factorization(p);
    match f.variance() {
        Variance::Covariant => {
            let (w, k) = kernel(p);
            let f0 = FpFunctor::new(Variance::Covariant, im.mono.clone());
            let represented = FpFunctor::representable(&w, Variance::Covariant);
            let f1 = FpFunctor::new(Variance::Covariant, k.clone());
            let iota = NatTransform::new_unchecked(
                f0.clone(),
                f.clone(),
                im.epi,
                ModMorphism::identity(p.target()),
            );
            let phi = NatTransform::new_unchecked(
                f.clone(),
                represented.clone(),
                k,
                ModMorphism::zero(represented.presentation().target(), p.target()),
            );
            let pi = NatTransform::new_unchecked(
                represented.clone(),
                f1.clone(),
                ModMorphism::identity(&w),
                ModMorphism::zero(p.source(), represented.presentation().target()),
            );
            DefectSequence {
                f0,
                iota,
                phi,
                represented,
                pi,
                f1,
            }
        }
        Variance::Contravariant => {
            let (c, q) = cokernel(p);
            let f0 = FpFunctor::new(Variance::Contravariant, im.epi.clone());
            let represented = FpFunctor::representable(&c, Variance::Contravariant);
            let f1 = FpFunctor::new(Variance::Contravariant, q.clone());
            let iota = NatTransform::new_unchecked(
                f0.clone(),
                f.clone(),
                im.mono,
                ModMorphism::identity(p.source()),
            );
            let phi = NatTransform::new_unchecked(
                f.clone(),
                represented.clone(),
                q,
                ModMorphism::zero(p.source(), represented.presentation().source()),
            );
            let pi = NatTransform::new_unchecked(
                represented.clone(),
                f1.clone(),
                ModMorphism::identity(&c),
                ModMorphism::zero(represented.presentation().source(), p.target()),
            );
            DefectSequence {
                f0,
                iota,
                phi,
                represented,
                pi,
                f1,
            }
        }
    }
}

/// The cokernel of `η` with its projection `G -> coker η`.
pub fn cokernel_nat(eta: &NatTransform) -> (FpFunctor, NatTransform) {
    let g = eta.target();
    let p2 = g.presentation();
    let a = eta.lift();
    let f = p2.field();
    match eta.variance() {
        Variance::Covariant => {
            // (f'; a): X' -> Y' ⊕ X
            let sum = direct_sum(p2.target(), a.target());
            let m = p2.matrix().vstack(a.matrix()).expect("same source");
            let pres = ModMorphism::new_unchecked(p2.source().clone(), sum.clone(), m);
            let h = FpFunctor::new(Variance::Covariant, pres);
            let proj = FieldMatrix::identity(f, p2.target().dim())
                .hstack(&FieldMatrix::zeros(f, p2.target().dim(), a.target().dim()))
                .expect("rows");
            let witness = ModMorphism::new_unchecked(sum, p2.target().clone(), proj);
            let pi = NatTransform::new_unchecked(
                g.clone(),
                h.clone(),
                ModMorphism::identity(p2.source()),
                witness,
            );
            (h, pi)
        }
        Variance::Contravariant => {
            // [g', c]: Y' ⊕ Z -> Z'
            let sum = direct_sum(p2.source(), a.source());
            let m = p2.matrix().hstack(a.matrix()).expect("same target");
            let pres = ModMorphism::new_unchecked(sum.clone(), p2.target().clone(), m);
            let h = FpFunctor::new(Variance::Contravariant, pres);
            let inc = FieldMatrix::identity(f, p2.source().dim())
                .vstack(&FieldMatrix::zeros(f, a.source().dim(), p2.source().dim()))
                .expect("cols");
            let witness = ModMorphism::new_unchecked(p2.source().clone(), sum, inc);
            let pi = NatTransform::new_unchecked(
                g.clone(),
                h.clone(),
                ModMorphism::identity(p2.target()),
                witness,
            );
            (h, pi)
        }
    }
}

/// `F = 0` iff `f` is split mono (covariant) or `g` split epi (contravariant).
pub fn is_zero_functor(f: &FpFunctor) -> Result<bool> {
    let p = f.presentation();
    match f.variance() {
        Variance::Covariant => {
            let from = hom_space(p.target(), p.source())?;
            let to = hom_space(p.source(), p.source())?;
            let sys = precompose_matrix(&from, &to, p);
            split_solvable(&to, &sys, p.source())
        }
        Variance::Contravariant => {
            let from = hom_space(p.target(), p.source())?;
            let to = hom_space(p.target(), p.target())?;
            let sys = postcompose_matrix(&from, &to, p);
            split_solvable(&to, &sys, p.target())
        }
    }
}

fn split_solvable(
    to: &crate::modcat::HomSpace,
    sys: &FieldMatrix,
    m: &FdModule,
) -> Result<bool> {
    let id = FieldMatrix::identity(m.field(), m.dim());
    let rhs = FieldMatrix::column(m.field(), &to.coordinates(&id));
    Ok(sys.solve(&rhs)?.is_some())
}

/// `W₂η: W₂G -> W₂F` for `η: F -> G`.
pub fn w2_nat(eta: &NatTransform) -> Result<NatTransform> {
    let (wf, wg) = (w2(eta.source()), w2(eta.target()));
    let (pf, pg) = (wf.presentation(), wg.presentation());
    match eta.variance() {
        Variance::Covariant => {
            // c q' = q b
            let rhs = pf.after(eta.witness());
            let c = extend_along(pg, &rhs)?.ok_or_else(|| unsolvable("w2_nat"))?;
            Ok(NatTransform::new_unchecked(wg, wf, c, eta.witness().clone()))
        }
        Variance::Contravariant => {
            // k' a = d k
            let rhs = eta.witness().after(pf);
            let a = lift_along(pg, &rhs)?.ok_or_else(|| unsolvable("w2_nat"))?;
            Ok(NatTransform::new_unchecked(wg, wf, a, eta.witness().clone()))
        }
    }
}

/// The canonical `W₂W₂F -> F₀`.
pub fn w2w2_comparison(f: &FpFunctor) -> Result<NatTransform> {
    let ww = w2(&w2(f));
    let f0 = defect_sequence(f).f0;
    let (pw, p0) = (ww.presentation(), f0.presentation());
    let lift = match f.variance() {
        Variance::Covariant => lift_along(pw, p0)?,
        Variance::Contravariant => extend_along(pw, p0)?,
    }
    .ok_or_else(|| unsolvable("w2w2_comparison"))?;
    let id = match f.variance() {
        Variance::Covariant => ModMorphism::identity(p0.target()),
        Variance::Contravariant => ModMorphism::identity(p0.source()),
    };
    Ok(NatTransform::new_unchecked(ww, f0, lift, id))
}

/// The canonical `F -> W₂W₂F`; exists when the defect vanishes.
pub fn defect_zero_duality_map(f: &FpFunctor) -> Result<NatTransform> {
    let w = defect(f);
    if !w.is_zero() {
        return Err(Error::DefectNonzero(format!(
            "defect has dimension {}; no canonical map to W2 W2",
            w.dim()
        )));
    }
    let ww = w2(&w2(f));
    let (p, pw) = (f.presentation(), ww.presentation());
    let (lift, id) = match f.variance() {
        Variance::Covariant => (lift_along(p, pw)?, ModMorphism::identity(p.target())),
        Variance::Contravariant => (extend_along(p, pw)?, ModMorphism::identity(p.source())),
    };
    let lift = lift.ok_or_else(|| unsolvable("defect_zero_duality_map"))?;
    Ok(NatTransform::new_unchecked(f.clone(), ww, lift, id))
}

fn unsolvable(op: &str) -> Error {
    Error::InvalidMorphism(format!("{op}: the lifting equation has no solution"))
}

#[cfg(test)]
mod tests {
    use super::super::test_support::*;
    use super::*;
    use crate::fpfun::{evaluate, evaluate_nat_with, ext1_functor, is_iso_nat};
    use crate::modcat::*;

    fn dims_on(f: &FpFunctor, probes: &[FdModule]) -> Vec<usize> {
        probes.iter().map(|m| evaluate(f, m).unwrap().dimension).collect()
    }

    #[test]
    fn defect_examples() {
        let alg = k2x2();
        let s = simple_top(&alg);
        let w = defect(&x_functor());
        assert_eq!(w.dim(), 1);
        assert!(find_isomorphism(&w, &s, 0, 16).unwrap().is_some());
        for x in small_probes(&alg) {
            for v in [Variance::Covariant, Variance::Contravariant] {
                assert_eq!(defect(&FpFunctor::representable(&x, v)), x);
            }
            assert!(defect(&ext1_functor(&x, Variance::Covariant)).is_zero());
            assert!(defect(&ext1_functor(&x, Variance::Contravariant)).is_zero());
        }
        let star = dual_star(&x_functor());
        assert_eq!(star.variance(), Variance::Contravariant);
        assert_eq!(evaluate(&star, &s).unwrap().dimension, 1);
    }

    #[test]
    fn w2_examples() {
        let alg = k2x2();
        let probes = small_probes(&alg);
        let s = simple_top(&alg);
        let l = regular_module(&alg);
        for x in &probes {
            let r = FpFunctor::representable(x, Variance::Covariant);
            assert!(is_zero_functor(&w2(&r)).unwrap());
        }
        let w = w2(&ext1_functor(&s, Variance::Covariant));
        assert_eq!(evaluate(&w, &s).unwrap().dimension, 1);
        assert_eq!(evaluate(&w, &l).unwrap().dimension, 0);
        let ww = w2(&w2(&x_functor()));
        let f0 = defect_sequence(&x_functor()).f0;
        assert_eq!(dims_on(&ww, &probes), dims_on(&f0, &probes));
    }

    #[test]
    fn w1_examples() {
        let alg = k2x2();
        let probes = small_probes(&alg);
        for func in small_battery(&alg) {
            if defect(&func).is_zero() {
                assert!(is_zero_functor(&w1(&func)).unwrap());
            }
        }
        // e: Λ -> S; W₁ F (Λ) = coker(Hom(Λ, Λ) -> Hom(Λ, S)) = 0
        let w = w1(&x_functor());
        assert_eq!(evaluate(&w, &regular_module(&alg)).unwrap().dimension, 0);
        let s = simple_top(&alg);
        // at S: Hom(S, S) = 1, image of Hom(S, Λ) under e is 0
        assert_eq!(evaluate(&w, &s).unwrap().dimension, 1);
        let _ = probes;
    }

    #[test]
    fn is_zero_examples() {
        let alg = k2x2();
        for x in small_probes(&alg) {
            let id = FpFunctor::new(Variance::Covariant, ModMorphism::identity(&x));
            assert!(is_zero_functor(&id).unwrap());
            let id = FpFunctor::new(Variance::Contravariant, ModMorphism::identity(&x));
            assert!(is_zero_functor(&id).unwrap());
        }
        assert!(is_zero_functor(&FpFunctor::zero(&alg, Variance::Covariant)).unwrap());
        assert!(!is_zero_functor(&x_functor()).unwrap());
    }

    /// Ranks of consecutive maps in `0 -> A -> B -> C -> D -> 0`.
    fn exact(maps: &[FieldMatrix], dims: &[usize]) -> bool {
        // dims has one more entry than maps
        let ranks: Vec<usize> = maps.iter().map(FieldMatrix::rank).collect();
        let n = dims.len();
        (0..n).all(|i| {
            let into = if i == 0 { 0 } else { ranks[i - 1] };
            let out = if i == n - 1 { 0 } else { ranks[i] };
            dims[i] == into + out
        }) && maps.windows(2).all(|w| (&w[1] * &w[0]).is_zero())
    }

    #[test]
    fn defect_sequence_is_exact() {
        for alg in all_small_algebras() {
            let probes = small_probes(&alg);
            for func in small_battery(&alg) {
                let seq = defect_sequence(&func);
                assert!(seq.iota.square_commutes());
                assert!(seq.phi.square_commutes());
                assert!(seq.pi.square_commutes());
                for a in &probes {
                    let e0 = evaluate(&seq.f0, a).unwrap();
                    let e = evaluate(&func, a).unwrap();
                    let er = evaluate(&seq.represented, a).unwrap();
                    let e1 = evaluate(&seq.f1, a).unwrap();
                    let maps = [
                        evaluate_nat_with(&seq.iota, &e0, &e),
                        evaluate_nat_with(&seq.phi, &e, &er),
                        evaluate_nat_with(&seq.pi, &er, &e1),
                    ];
                    let dims = [e0.dimension, e.dimension, er.dimension, e1.dimension];
                    assert!(exact(&maps, &dims), "{func:?} at {a:?}");
                }
            }
        }
    }

    #[test]
    fn cokernel_of_phi_is_f1() {
        for alg in all_small_algebras() {
            let probes = small_probes(&alg);
            for func in small_battery(&alg) {
                let seq = defect_sequence(&func);
                let (c, pi) = cokernel_nat(&seq.phi);
                assert!(pi.square_commutes());
                assert_eq!(dims_on(&c, &probes), dims_on(&seq.f1, &probes));
                let (z, _) = cokernel_nat(&crate::fpfun::identity_nat(&func));
                assert!(is_zero_functor(&z).unwrap());
            }
        }
    }

    #[test]
    fn w2w2_is_sub_zero() {
        for alg in all_small_algebras() {
            for func in small_battery(&alg) {
                let c = w2w2_comparison(&func).unwrap();
                assert!(c.square_commutes());
                assert!(is_iso_nat(&c).unwrap(), "{func:?}");
            }
        }
    }

    #[test]
    fn defect_zero_duality() {
        for alg in all_small_algebras() {
            for func in small_battery(&alg) {
                let r = defect_zero_duality_map(&func);
                if defect(&func).is_zero() {
                    let eta = r.unwrap();
                    assert!(is_iso_nat(&eta).unwrap(), "{func:?}");
                    assert!(defect(&w2(&func)).is_zero());
                } else {
                    assert!(matches!(r, Err(Error::DefectNonzero(_))));
                }
            }
        }
    }

    #[test]
    fn w2_nat_is_functorial_on_evaluations() {
        let alg = a2(2);
        let probes = small_probes(&alg);
        let battery = small_battery(&alg);
        for f in battery.iter().step_by(4) {
            for g in battery.iter().step_by(3) {
                if f.variance() != g.variance() {
                    continue;
                }
                for eta in crate::fpfun::nat_space(f, g).unwrap().iter().take(2) {
                    let w = w2_nat(eta).unwrap();
                    assert!(w.square_commutes());
                    for a in &probes {
                        // rank is bounded by both endpoint dimensions
                        let m = crate::fpfun::evaluate_nat(&w, a).unwrap();
                        assert_eq!(m.rows(), evaluate(&w2(f), a).unwrap().dimension);
                    }
                }
            }
        }
    }

    #[test]
    fn sub_zero_has_zero_defect() {
        for alg in all_small_algebras() {
            for func in small_battery(&alg) {
                assert!(defect(&defect_sequence(&func).f0).is_zero());
            }
        }
    }
}

//! The tensor-side dual `D_A` evaluated pointwise, and `Tr_*`.

use crate::error::{Error, Result};
use crate::exactla::{ColumnBasis, FieldMatrix};
use crate::modcat::{regular_module, tensor, tensor_map, transpose, FdModule, ModMorphism, TensorSpace};

use super::{evaluate, EvalResult, FpFunctor, Variance};

/// `D_A F (N) = ker(N ⊗ f)` inside `N ⊗ X`.
#[derive(Clone, Debug)]
pub struct AgjResult {
    pub dimension: usize,
    /// Kernel basis in the coordinates of `N ⊗ X`.
    basis: ColumnBasis,
    space: TensorSpace,
}

impl AgjResult {
    pub fn basis(&self) -> &FieldMatrix {
        self.basis.basis()
    }

    pub fn space(&self) -> &TensorSpace {
        &self.space
    }
}

/// `D_A F` at a right module `N` (stored over `Λ^op`), for covariant `F`.
pub fn agj_evaluate(f: &FpFunctor, n: &FdModule) -> Result<AgjResult> {
    f.expect_variance(Variance::Covariant, "agj_evaluate")?;
    let p = f.presentation();
    let src = tensor(n, p.source())?;
    let tgt = tensor(n, p.target())?;
    let id = FieldMatrix::identity(n.field(), n.dim());
    let kernel = tensor_map(&src, &tgt, &id, p.matrix()).kernel_basis();
    Ok(AgjResult {
        dimension: kernel.cols(),
        basis: ColumnBasis::new(kernel),
        space: src,
    })
}

/// `D_A F (h): D_A F (N) -> D_A F (N')` for `h: N -> N'`.
pub fn agj_evaluate_on(f: &FpFunctor, h: &ModMorphism) -> Result<FieldMatrix> {
    let a = agj_evaluate(f, h.source())?;
    let b = agj_evaluate(f, h.target())?;
    Ok(agj_map_with(f, h, &a, &b))
}

pub(crate) fn agj_map_with(
    f: &FpFunctor,
    h: &ModMorphism,
    src: &AgjResult,
    tgt: &AgjResult,
) -> FieldMatrix {
    let x = f.presentation().source();
    let id = FieldMatrix::identity(x.field(), x.dim());
    let m = tensor_map(&src.space, &tgt.space, h.matrix(), &id);
    tgt.basis.coordinates(&(&m * src.basis()))
}

/// `Tr_* F (M) = F(Tr M)` for `F` on `Λ^op`-modules and `M` over `Λ`.
///
/// Requires `F` to vanish on projectives, which makes the value independent
/// of the chosen transpose.
pub fn tr_star_evaluate(f: &FpFunctor, m: &FdModule) -> Result<EvalResult> {
    let at_free = evaluate(f, &regular_module(f.algebra()))?;
    if at_free.dimension != 0 {
        return Err(Error::TrStarUndefined(format!(
            "the functor does not vanish on projectives (value {} at the regular module)",
            at_free.dimension
        )));
    }
    evaluate(f, &transpose(m))
}

/// Restriction along finitely presented probes; the identity here.
pub fn restrict(f: &FpFunctor) -> FpFunctor {
    f.clone()
}

#[cfg(test)]
mod tests {
    use super::super::test_support::*;
    use super::*;
    use crate::fpfun::{ext1_functor, stable_hom_functor, StableSide};
    use crate::modcat::*;

    fn op_probes(alg: &std::sync::Arc<crate::algebra::Algebra>) -> Vec<FdModule> {
        small_probes(&alg.opposite())
    }

    #[test]
    fn representables_give_tensor() {
        for alg in all_small_algebras() {
            for x in small_probes(&alg) {
                let r = FpFunctor::representable(&x, Variance::Covariant);
                for n in op_probes(&alg) {
                    assert_eq!(
                        agj_evaluate(&r, &n).unwrap().dimension,
                        tensor(&n, &x).unwrap().dim()
                    );
                }
            }
            let z = FpFunctor::zero(&alg, Variance::Covariant);
            for n in op_probes(&alg) {
                assert_eq!(agj_evaluate(&z, &n).unwrap().dimension, 0);
            }
        }
    }

    #[test]
    fn ext_goes_to_tor() {
        for alg in all_small_algebras() {
            for c in small_probes(&alg) {
                let e = ext1_functor(&c, Variance::Covariant);
                for n in op_probes(&alg) {
                    assert_eq!(agj_evaluate(&e, &n).unwrap().dimension, tor1(&n, &c).unwrap());
                }
            }
        }
        let a = k2x2();
        let s = simple_top(&a);
        let sop = simple_top(&a.opposite());
        let e = ext1_functor(&s, Variance::Covariant);
        assert_eq!(agj_evaluate(&e, &sop).unwrap().dimension, 1);
    }

    #[test]
    fn agj_is_functorial() {
        let alg = a2(3);
        let probes = op_probes(&alg);
        for f in small_battery(&alg).iter().filter(|f| f.variance() == Variance::Covariant) {
            for x in &probes {
                let id = agj_evaluate_on(f, &ModMorphism::identity(x)).unwrap();
                assert_eq!(id, FieldMatrix::identity(alg.field(), id.rows()));
                for y in &probes {
                    for z in &probes {
                        let hxy = hom_space(x, y).unwrap().basis();
                        let hyz = hom_space(y, z).unwrap().basis();
                        for (u, v) in hxy.iter().zip(hyz.iter()).take(2) {
                            let lhs = agj_evaluate_on(f, &v.compose(u).unwrap()).unwrap();
                            let rhs = &agj_evaluate_on(f, v).unwrap() * &agj_evaluate_on(f, u).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tr_star_of_stable_hom() {
        // Tr_*(underline-hom(M, -)) ≅ underline-hom(-, Tr M), functors on mod Λ
        for alg in all_small_algebras() {
            let op = alg.opposite();
            for m in small_probes(&op) {
                let f = stable_hom_functor(&m, StableSide::UnderlineFrom);
                let trm = transpose(&m);
                for x in small_probes(&alg) {
                    let v = tr_star_evaluate(&f, &x).unwrap().dimension;
                    assert_eq!(v, stable_hom_proj(&x, &trm).unwrap().dim());
                }
            }
        }
    }

    #[test]
    fn tr_star_rejects_nonvanishing() {
        let a = k2x2();
        let l = regular_module(&a);
        let r = FpFunctor::representable(&l, Variance::Covariant);
        let err = tr_star_evaluate(&r, &simple_top(&a.opposite())).unwrap_err();
        assert!(matches!(err, Error::TrStarUndefined(_)));
        let z = FpFunctor::zero(&a, Variance::Contravariant);
        assert_eq!(tr_star_evaluate(&z, &simple_top(&a.opposite())).unwrap().dimension, 0);
    }

    #[test]
    fn tr_star_is_presentation_independent() {
        // a free summand added to M does not change the value
        for alg in all_small_algebras() {
            let op = alg.opposite();
            for c in small_probes(&op) {
                for side in [StableSide::UnderlineFrom, StableSide::UnderlineInto] {
                    let f = stable_hom_functor(&c, side);
                    for m in small_probes(&alg) {
                        let m2 = direct_sum(&m, &regular_module(&alg));
                        assert_eq!(
                            tr_star_evaluate(&f, &m).unwrap().dimension,
                            tr_star_evaluate(&f, &m2).unwrap().dimension
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn restrict_is_identity() {
        let f = x_functor();
        assert_eq!(restrict(&f), f);
    }
}

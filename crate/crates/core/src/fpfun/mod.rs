//! Finitely presented functors on `mod Λ`, stored as their presenting morphism.
//!
//! A covariant `F` presented by `f: X -> Y` is `F(A) = coker(Hom(Y, A) -> Hom(X, A))`;
//! a contravariant `G` presented by `g: Y -> Z` is `G(A) = coker(Hom(A, Y) -> Hom(A, Z))`.

mod agj;
mod build;
mod io;
mod nat;
mod ops;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{FieldMatrix, Quotient};
use crate::modcat::{
    direct_sum_morphisms, hom_space, k_dual_morphism, postcompose_matrix, precompose_matrix,
    regular_module, zero_module, FdModule, HomSpace, ModMorphism,
};

pub use agj::{agj_evaluate, agj_evaluate_on, restrict, tr_star_evaluate, AgjResult};
pub use build::{
    ext1_functor, ext1_functor_with, gar_canonical_map, gar_canonical_map_with, l0_counit,
    l0_yoneda, l0_yoneda_with, stable_hom_functor, stable_hom_functor_with, sub_zero, sup_zero,
    GarSide, StableSide,
};
pub use io::{FunctorFile, PresentingRef};
pub use nat::{
    compose, evaluate_nat, evaluate_nat_with, identity_nat, is_iso_nat, is_zero_nat, nat_space, NatTransform,
};
pub use ops::{
    cokernel_nat, defect, defect_map, defect_sequence, defect_zero_duality_map, dual_star, is_zero_functor,
    w1, w2, w2_nat, w2w2_comparison, DefectSequence,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variance {
    #[serde(rename = "co")]
    Covariant,
    #[serde(rename = "contra")]
    Contravariant,
}

impl Variance {
    pub fn flip(self) -> Self {
        match self {
            Variance::Covariant => Variance::Contravariant,
            Variance::Contravariant => Variance::Covariant,
        }
    }
}

impl fmt::Display for Variance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variance::Covariant => "co",
            Variance::Contravariant => "contra",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpFunctor {
    variance: Variance,
    presentation: ModMorphism,
}

impl FpFunctor {
    pub fn new(variance: Variance, presentation: ModMorphism) -> Self {
        FpFunctor {
            variance,
            presentation,
        }
    }

    /// `(X, -)` presented by `X -> 0`, or `(-, X)` presented by `0 -> X`.
    pub fn representable(x: &FdModule, variance: Variance) -> Self {
        let zero = zero_module(x.algebra());
        let pres = match variance {
            Variance::Covariant => ModMorphism::zero(x, &zero),
            Variance::Contravariant => ModMorphism::zero(&zero, x),
        };
        FpFunctor::new(variance, pres)
    }

    pub fn zero(alg: &Arc<Algebra>, variance: Variance) -> Self {
        FpFunctor::representable(&zero_module(alg), variance)
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn presentation(&self) -> &ModMorphism {
        &self.presentation
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.presentation.source().algebra()
    }

    /// The same functor seen on the dual side: `F^D(B) = F(D_k B)`, a functor
    /// over the opposite algebra of the other variance, presented by `D_k f`.
    pub fn dualize(&self) -> FpFunctor {
        FpFunctor::new(self.variance.flip(), k_dual_morphism(&self.presentation))
    }

    /// Presentation `f ⊕ id_Λ`; defines an isomorphic functor.
    pub fn padded(&self) -> FpFunctor {
        let l = regular_module(self.algebra());
        FpFunctor::new(
            self.variance,
            direct_sum_morphisms(&self.presentation, &ModMorphism::identity(&l)),
        )
    }

    pub(crate) fn expect_variance(&self, v: Variance, op: &str) -> Result<()> {
        if self.variance == v {
            Ok(())
        } else {
            Err(Error::VarianceMismatch(format!(
                "{op} expects a {v} functor, got a {} one",
                self.variance
            )))
        }
    }
}

/// `F(A)` as a quotient of an ambient Hom space.
#[derive(Clone, Debug)]
pub struct EvalResult {
    pub dimension: usize,
    /// `dimension x dim(ambient)`, full row rank.
    pub projection: FieldMatrix,
    section: FieldMatrix,
    ambient: HomSpace,
}

impl EvalResult {
    pub fn ambient(&self) -> &HomSpace {
        &self.ambient
    }

    /// Representatives of a basis of `F(A)`, as ambient coordinates (columns).
    pub fn section(&self) -> &FieldMatrix {
        &self.section
    }
}

fn quotient_result(ambient: HomSpace, relations: FieldMatrix) -> EvalResult {
    let q = Quotient::new(&relations);
    EvalResult {
        dimension: q.dim(),
        projection: q.projection(),
        section: q.section(),
        ambient,
    }
}

/// `F(A)`.
pub fn evaluate(functor: &FpFunctor, a: &FdModule) -> Result<EvalResult> {
    let p = &functor.presentation;
    p.source().same_algebra(a, "evaluate")?;
    match functor.variance {
        Variance::Covariant => {
            let from = hom_space(p.target(), a)?;
            let to = hom_space(p.source(), a)?;
            let rel = precompose_matrix(&from, &to, p);
            Ok(quotient_result(to, rel))
        }
        Variance::Contravariant => {
            let from = hom_space(a, p.source())?;
            let to = hom_space(a, p.target())?;
            let rel = postcompose_matrix(&from, &to, p);
            Ok(quotient_result(to, rel))
        }
    }
}

/// `F(h)` between already evaluated endpoints, in their quotient coordinates.
///
/// Covariant: `src = F(A)`, `tgt = F(A')` for `h: A -> A'`. Contravariant:
/// `src = F(A')`, `tgt = F(A)`.
pub fn evaluate_on_with(
    functor: &FpFunctor,
    h: &ModMorphism,
    src: &EvalResult,
    tgt: &EvalResult,
) -> FieldMatrix {
    let reps = src.section();
    let maps: Vec<FieldMatrix> = (0..reps.cols())
        .map(|k| {
            let u = src.ambient.combination(&reps.col(k));
            match functor.variance {
                Variance::Covariant => h.matrix() * u.matrix(),
                Variance::Contravariant => u.matrix() * h.matrix(),
            }
        })
        .collect();
    if maps.is_empty() {
        return FieldMatrix::zeros(h.field(), tgt.dimension, 0);
    }
    &tgt.projection * &tgt.ambient.coordinates_of(&maps)
}

/// `F(h)`; for contravariant `F` this is a map `F(A') -> F(A)`.
pub fn evaluate_on(functor: &FpFunctor, h: &ModMorphism) -> Result<FieldMatrix> {
    let (first, second) = match functor.variance {
        Variance::Covariant => (h.source(), h.target()),
        Variance::Contravariant => (h.target(), h.source()),
    };
    let src = evaluate(functor, first)?;
    let tgt = evaluate(functor, second)?;
    Ok(evaluate_on_with(functor, h, &src, &tgt))
}

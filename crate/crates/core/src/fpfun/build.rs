//! Named functors and their canonical comparison maps.

use crate::error::{Error, Result};
use crate::exactla::FieldMatrix;
use crate::modcat::{
    cokernel, extend_along, free_cover_with, free_module, hom_space, injective_embed_with, k_dual,
    lift_along, syzygy_with, CoverStrategy, FdModule, FreePresentation, ModMorphism,
};

use super::{cokernel_nat, defect_sequence, w2, FpFunctor, NatTransform, Variance};

/// `Ext¹(C, -)` presented by `ΩC -> P`, or `Ext¹(-, C)` presented by `E -> ΣC`.
pub fn ext1_functor(c: &FdModule, variance: Variance) -> FpFunctor {
    ext1_functor_with(c, variance, CoverStrategy::Auto)
}

pub fn ext1_functor_with(c: &FdModule, variance: Variance, strategy: CoverStrategy) -> FpFunctor {
    match variance {
        Variance::Covariant => FpFunctor::new(variance, syzygy_with(c, strategy).inclusion),
        Variance::Contravariant => {
            let (_, q) = cokernel(&injective_embed_with(c, strategy));
            FpFunctor::new(variance, q)
        }
    }
}

/// Which stable Hom functor to build on a module `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StableSide {
    /// `underline-hom(-, C)`, presented by a free cover `P -> C`.
    UnderlineInto,
    /// `overline-hom(C, -)`, presented by an injective embedding `C -> E`.
    OverlineFrom,
    /// `underline-hom(C, -)`, presented by the left approximation `C -> Λ^r`.
    UnderlineFrom,
    /// `overline-hom(-, C)`, the dual of `underline-hom(D C, -)`.
    OverlineInto,
}

pub fn stable_hom_functor(c: &FdModule, side: StableSide) -> FpFunctor {
    stable_hom_functor_with(c, side, CoverStrategy::Auto)
}

pub fn stable_hom_functor_with(c: &FdModule, side: StableSide, strategy: CoverStrategy) -> FpFunctor {
    match side {
        StableSide::UnderlineInto => {
            FpFunctor::new(Variance::Contravariant, free_cover_with(c, strategy))
        }
        StableSide::OverlineFrom => {
            FpFunctor::new(Variance::Covariant, injective_embed_with(c, strategy))
        }
        StableSide::UnderlineFrom => {
            FpFunctor::new(Variance::Covariant, left_approximation(c, strategy))
        }
        StableSide::OverlineInto => {
            stable_hom_functor_with(&k_dual(c), StableSide::UnderlineFrom, strategy).dualize()
        }
    }
}

/// `C -> Λ^r` stacking a basis of `Hom(C, Λ)`; every map from `C` to a
/// projective factors through it.
fn left_approximation(c: &FdModule, strategy: CoverStrategy) -> ModMorphism {
    let alg = c.algebra();
    let basis = hom_space(c, &crate::modcat::regular_module(alg))
        .expect("same algebra")
        .basis();
    let extra = usize::from(strategy == CoverStrategy::Padded);
    let target = free_module(alg, basis.len() + extra);
    let mut stacked = FieldMatrix::zeros(c.field(), 0, c.dim());
    for u in &basis {
        stacked = stacked.vstack(u.matrix()).expect("cols");
    }
    if extra == 1 {
        stacked = stacked
            .vstack(&FieldMatrix::zeros(c.field(), alg.dim(), c.dim()))
            .expect("cols");
    }
    ModMorphism::new_unchecked(c.clone(), target, stacked)
}

/// Which of the two stable-Hom formulas to compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GarSide {
    /// `W₂ Ext¹(C, -) -> underline-hom(-, C)`.
    Projective,
    /// `W₂ Ext¹(-, C) -> overline-hom(C, -)`.
    Injective,
}

pub fn gar_canonical_map(c: &FdModule, side: GarSide) -> NatTransform {
    gar_canonical_map_with(c, side, CoverStrategy::Auto)
}

pub fn gar_canonical_map_with(c: &FdModule, side: GarSide, strategy: CoverStrategy) -> NatTransform {
    match side {
        GarSide::Projective => {
            let source = w2(&ext1_functor_with(c, Variance::Covariant, strategy));
            let target = stable_hom_functor_with(c, StableSide::UnderlineInto, strategy);
            // c ∘ q = π with q: P -> coker(ΩC -> P)
            let lift = extend_along(source.presentation(), target.presentation())
                .expect("same algebra")
                .expect("the cover factors through the cokernel of its kernel");
            let id = ModMorphism::identity(target.presentation().source());
            NatTransform::new_unchecked(source, target, lift, id)
        }
        GarSide::Injective => {
            let source = w2(&ext1_functor_with(c, Variance::Contravariant, strategy));
            let target = stable_hom_functor_with(c, StableSide::OverlineFrom, strategy);
            // j ∘ a = k with j: ker(E -> ΣC) -> E
            let lift = lift_along(source.presentation(), target.presentation())
                .expect("same algebra")
                .expect("the embedding factors through the kernel of its cokernel");
            let id = ModMorphism::identity(target.presentation().target());
            NatTransform::new_unchecked(source, target, lift, id)
        }
    }
}

/// `L₀Y(C)`, presented by the relations `P₁ -> P₀` of a free presentation.
pub fn l0_yoneda(c: &FdModule) -> FpFunctor {
    l0_yoneda_with(c, CoverStrategy::Auto)
}

pub fn l0_yoneda_with(c: &FdModule, strategy: CoverStrategy) -> FpFunctor {
    FpFunctor::new(
        Variance::Contravariant,
        FreePresentation::new(c, strategy).relations,
    )
}

/// The counit `L₀Y(v G) -> G` of a contravariant `G`.
pub fn l0_counit(g: &FpFunctor) -> Result<NatTransform> {
    g.expect_variance(Variance::Contravariant, "l0_counit")?;
    let pg = g.presentation();
    let (c, q) = cokernel(pg);
    let pres = FreePresentation::new(&c, CoverStrategy::Auto);
    let source = FpFunctor::new(Variance::Contravariant, pres.relations.clone());
    let lift = lift_along(&q, &pres.cover)?.ok_or_else(|| lift_error("cover"))?;
    let image = lift.after(&pres.relations);
    let witness = lift_along(pg, &image)?.ok_or_else(|| lift_error("relations"))?;
    Ok(NatTransform::new_unchecked(source, g.clone(), lift, witness))
}

fn lift_error(what: &str) -> Error {
    Error::InvalidMorphism(format!("l0_counit: the free {what} does not lift"))
}

/// `G₀`, the kernel part of the unit into the representable on the defect.
pub fn sub_zero(g: &FpFunctor) -> FpFunctor {
    defect_sequence(g).f0
}

/// `G⁰ = coker(L₀Y(v G) -> G)`; covariant functors go through the dual side.
pub fn sup_zero(g: &FpFunctor) -> Result<FpFunctor> {
    match g.variance() {
        Variance::Contravariant => Ok(cokernel_nat(&l0_counit(g)?).0),
        Variance::Covariant => Ok(sup_zero(&g.dualize())?.dualize()),
    }
}

#[cfg(test)]
mod tests {
    use super::super::test_support::*;
    use super::*;
    use crate::algebra::truncated_poly;
    use crate::fpfun::{defect, evaluate, is_iso_nat, is_zero_functor, w2w2_comparison};
    use crate::modcat::*;

    fn dims(f: &FpFunctor, probes: &[FdModule]) -> Vec<usize> {
        probes.iter().map(|m| evaluate(f, m).unwrap().dimension).collect()
    }

    #[test]
    fn ext1_functor_matches_ext1() {
        for alg in all_small_algebras() {
            let probes = small_probes(&alg);
            for c in &probes {
                let co = ext1_functor(c, Variance::Covariant);
                let contra = ext1_functor(c, Variance::Contravariant);
                for a in &probes {
                    assert_eq!(evaluate(&co, a).unwrap().dimension, ext1(c, a).unwrap().dim());
                    assert_eq!(evaluate(&contra, a).unwrap().dimension, ext1(a, c).unwrap().dim());
                }
            }
        }
        let a = k2x2();
        let s = simple_top(&a);
        assert_eq!(evaluate(&ext1_functor(&s, Variance::Covariant), &s).unwrap().dimension, 1);
    }

    #[test]
    fn stable_functors_match_stable_hom() {
        for alg in all_small_algebras() {
            let probes = small_probes(&alg);
            for c in &probes {
                let sides = [
                    StableSide::UnderlineInto,
                    StableSide::OverlineFrom,
                    StableSide::UnderlineFrom,
                    StableSide::OverlineInto,
                ];
                let [ui, of, uf, oi] = sides.map(|s| stable_hom_functor(c, s));
                for a in &probes {
                    let ev = |f: &FpFunctor| evaluate(f, a).unwrap().dimension;
                    assert_eq!(ev(&ui), stable_hom_proj(a, c).unwrap().dim());
                    assert_eq!(ev(&of), stable_hom_inj(c, a).unwrap().dim());
                    assert_eq!(ev(&uf), stable_hom_proj(c, a).unwrap().dim());
                    assert_eq!(ev(&oi), stable_hom_inj(a, c).unwrap().dim());
                }
            }
        }
        let a = k2x2();
        let s = simple_top(&a);
        let l = regular_module(&a);
        let of = stable_hom_functor(&s, StableSide::OverlineFrom);
        assert_eq!(evaluate(&of, &l).unwrap().dimension, 0);
        assert!(is_zero_functor(&stable_hom_functor(&l, StableSide::UnderlineInto)).unwrap());
    }

    #[test]
    fn gar_maps_are_isomorphisms() {
        let mut algebras = all_small_algebras();
        algebras.push(truncated_poly(2, 3).unwrap());
        for alg in algebras {
            for c in small_probes(&alg) {
                for side in [GarSide::Projective, GarSide::Injective] {
                    for strategy in [CoverStrategy::Auto, CoverStrategy::Padded] {
                        let eta = gar_canonical_map_with(&c, side, strategy);
                        assert!(eta.square_commutes());
                        assert!(is_iso_nat(&eta).unwrap(), "{side:?} {c:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn l0_yoneda_examples() {
        let a = k2x2();
        let l = regular_module(&a);
        let s = simple_top(&a);
        // already projective: no relations
        let y = l0_yoneda(&l);
        assert_eq!(y.presentation().target().dim(), l.dim());
        assert!(y.presentation().is_zero());
        // S has the minimal presentation (x·): Λ -> Λ
        let ys = l0_yoneda(&s);
        assert_eq!(ys.presentation().source().dim(), 2);
        assert_eq!(ys.presentation().rank(), 1);
        for alg in all_small_algebras() {
            let l = regular_module(&alg);
            for c in small_probes(&alg) {
                let y = l0_yoneda(&c);
                let q = direct_sum(&l, &l);
                assert_eq!(
                    evaluate(&y, &q).unwrap().dimension,
                    hom_space(&q, &c).unwrap().dim()
                );
            }
        }
    }

    #[test]
    fn counit_and_recollement_parts() {
        for alg in all_small_algebras() {
            let probes = small_probes(&alg);
            for g in small_battery(&alg) {
                if g.variance() == Variance::Contravariant {
                    let eps = l0_counit(&g).unwrap();
                    assert!(eps.square_commutes());
                    assert!(NatTransform::new(
                        eps.source().clone(),
                        eps.target().clone(),
                        eps.lift().clone(),
                        eps.witness().clone()
                    )
                    .is_ok());
                }
                let sub = sub_zero(&g);
                let sup = sup_zero(&g).unwrap();
                assert!(defect(&sub).is_zero());
                assert!(defect(&sup).is_zero(), "{g:?}");
                assert_eq!(dims(&sub, &probes), dims(&w2(&w2(&g)), &probes));
                assert!(is_iso_nat(&w2w2_comparison(&g).unwrap()).unwrap());
            }
            // G⁰ of a representable is the matching stable Hom functor
            for x in &probes {
                for (v, side) in [
                    (Variance::Covariant, StableSide::OverlineFrom),
                    (Variance::Contravariant, StableSide::UnderlineInto),
                ] {
                    let r = FpFunctor::representable(x, v);
                    assert!(is_zero_functor(&sub_zero(&r)).unwrap());
                    let sup = sup_zero(&r).unwrap();
                    assert_eq!(dims(&sup, &probes), dims(&stable_hom_functor(x, side), &probes));
                }
            }
        }
    }
}

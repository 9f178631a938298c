//! Natural transformations as presentation-level lifts modulo homotopy.
//!
//! Covariant `η: F -> G` with `F` presented by `f: X -> Y` and `G` by
//! `f': X' -> Y'`: a lift `a: X' -> X` with a witness `b: Y' -> Y` such that
//! `f a = b f'`; `a` matters modulo `h f'` for `h: Y' -> X`.
//!
//! Contravariant `η: F -> G` with presentations `g: Y -> Z`, `g': Y' -> Z'`:
//! a lift `c: Z -> Z'` with a witness `d: Y -> Y'` such that `c g = g' d`;
//! `c` matters modulo `g' h` for `h: Z -> Y'`.

use crate::error::{Error, Result};
use crate::exactla::FieldMatrix;
use crate::modcat::{direct_sum_morphisms, hom_space, k_dual_morphism, regular_module, ModMorphism};

use super::{evaluate, EvalResult, FpFunctor, Variance};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransform {
    source: FpFunctor,
    target: FpFunctor,
    lift: ModMorphism,
    witness: ModMorphism,
}

impl NatTransform {
    /// Validated constructor: checks variances, shapes and the commuting square.
    pub fn new(
        source: FpFunctor,
        target: FpFunctor,
        lift: ModMorphism,
        witness: ModMorphism,
    ) -> Result<Self> {
        if source.variance() != target.variance() {
            return Err(Error::VarianceMismatch(
                "natural transformations need functors of the same variance".into(),
            ));
        }
        if !source.algebra().same(target.algebra()) {
            return Err(Error::AlgebraMismatch("natural transformation".into()));
        }
        let (f, f2) = (source.presentation(), target.presentation());
        let shapes_ok = match source.variance() {
            Variance::Covariant => {
                lift.source() == f2.source()
                    && lift.target() == f.source()
                    && witness.source() == f2.target()
                    && witness.target() == f.target()
            }
            Variance::Contravariant => {
                lift.source() == f.target()
                    && lift.target() == f2.target()
                    && witness.source() == f.source()
                    && witness.target() == f2.source()
            }
        };
        if !shapes_ok {
            return Err(Error::InvalidMorphism(
                "lift or witness does not match the presentations".into(),
            ));
        }
        let eta = NatTransform {
            source,
            target,
            lift,
            witness,
        };
        if !eta.square_commutes() {
            return Err(Error::InvalidMorphism(
                "lift and witness do not form a commuting square".into(),
            ));
        }
        Ok(eta)
    }

    pub(crate) fn new_unchecked(
        source: FpFunctor,
        target: FpFunctor,
        lift: ModMorphism,
        witness: ModMorphism,
    ) -> Self {
        let eta = NatTransform {
            source,
            target,
            lift,
            witness,
        };
        debug_assert!(eta.square_commutes(), "non-commuting square");
        eta
    }

    /// `f a = b f'` (covariant) or `c g = g' d` (contravariant).
    pub fn square_commutes(&self) -> bool {
        let (f, f2) = (self.source.presentation(), self.target.presentation());
        match self.variance() {
            Variance::Covariant => {
                f.matrix() * self.lift.matrix() == self.witness.matrix() * f2.matrix()
            }
            Variance::Contravariant => {
                self.lift.matrix() * f.matrix() == f2.matrix() * self.witness.matrix()
            }
        }
    }

    pub fn source(&self) -> &FpFunctor {
        &self.source
    }

    pub fn target(&self) -> &FpFunctor {
        &self.target
    }

    pub fn lift(&self) -> &ModMorphism {
        &self.lift
    }

    pub fn witness(&self) -> &ModMorphism {
        &self.witness
    }

    pub fn variance(&self) -> Variance {
        self.source.variance()
    }

    /// The same transformation between the dualized functors.
    pub fn dualize(&self) -> NatTransform {
        NatTransform {
            source: self.source.dualize(),
            target: self.target.dualize(),
            lift: k_dual_morphism(&self.lift),
            witness: k_dual_morphism(&self.witness),
        }
    }

    /// `η` between the padded presentations of source and target.
    pub fn padded(&self) -> NatTransform {
        let id = ModMorphism::identity(&regular_module(self.source.algebra()));
        NatTransform::new_unchecked(
            self.source.padded(),
            self.target.padded(),
            direct_sum_morphisms(&self.lift, &id),
            direct_sum_morphisms(&self.witness, &id),
        )
    }
}

pub fn identity_nat(f: &FpFunctor) -> NatTransform {
    let p = f.presentation();
    let (lift, witness) = match f.variance() {
        Variance::Covariant => (ModMorphism::identity(p.source()), ModMorphism::identity(p.target())),
        Variance::Contravariant => {
            (ModMorphism::identity(p.target()), ModMorphism::identity(p.source()))
        }
    };
    NatTransform::new_unchecked(f.clone(), f.clone(), lift, witness)
}

/// `outer ∘ inner`.
pub fn compose(outer: &NatTransform, inner: &NatTransform) -> Result<NatTransform> {
    if inner.target != outer.source {
        return Err(Error::CompositionMismatch(
            "target of the inner transformation is not the source of the outer one".into(),
        ));
    }
    let (lift, witness) = match inner.variance() {
        Variance::Covariant => (
            inner.lift.after(&outer.lift),
            inner.witness.after(&outer.witness),
        ),
        Variance::Contravariant => (
            outer.lift.after(&inner.lift),
            outer.witness.after(&inner.witness),
        ),
    };
    Ok(NatTransform::new_unchecked(
        inner.source.clone(),
        outer.target.clone(),
        lift,
        witness,
    ))
}

/// `η_A: F(A) -> G(A)` between already evaluated endpoints.
pub fn evaluate_nat_with(eta: &NatTransform, src: &EvalResult, tgt: &EvalResult) -> FieldMatrix {
    let reps = src.section();
    let maps: Vec<FieldMatrix> = (0..reps.cols())
        .map(|k| {
            let u = src.ambient().combination(&reps.col(k));
            match eta.variance() {
                Variance::Covariant => u.matrix() * eta.lift.matrix(),
                Variance::Contravariant => eta.lift.matrix() * u.matrix(),
            }
        })
        .collect();
    if maps.is_empty() {
        return FieldMatrix::zeros(eta.lift.field(), tgt.dimension, 0);
    }
    &tgt.projection * &tgt.ambient().coordinates_of(&maps)
}

/// `η_A`.
pub fn evaluate_nat(eta: &NatTransform, a: &crate::modcat::FdModule) -> Result<FieldMatrix> {
    let src = evaluate(&eta.source, a)?;
    let tgt = evaluate(&eta.target, a)?;
    Ok(evaluate_nat_with(eta, &src, &tgt))
}

/// Matrices as columns of their row-major vectorisations.
fn vec_columns(field: crate::exactla::PrimeField, len: usize, maps: &[FieldMatrix]) -> FieldMatrix {
    let cols: Vec<Vec<u32>> = maps.iter().map(|m| m.entries().to_vec()).collect();
    FieldMatrix::from_columns(field, len, &cols)
}

/// Basis of `Nat(F, G)`, deterministic.
pub fn nat_space(f: &FpFunctor, g: &FpFunctor) -> Result<Vec<NatTransform>> {
    if f.variance() != g.variance() {
        return Err(Error::VarianceMismatch("nat_space".into()));
    }
    if f.variance() == Variance::Contravariant {
        let dual = nat_space(&f.dualize(), &g.dualize())?;
        return Ok(dual.iter().map(NatTransform::dualize).collect());
    }
    let (p, p2) = (f.presentation(), g.presentation());
    let field = p.field();
    let ha = hom_space(p2.source(), p.source())?;
    let hb = hom_space(p2.target(), p.target())?;
    let hh = hom_space(p2.target(), p.source())?;
    let (da, db) = (ha.dim(), hb.dim());
    let len = p.target().dim() * p2.source().dim();
    let mut maps = Vec::with_capacity(da + db);
    for k in 0..da {
        maps.push(p.matrix() * ha.element(k).matrix());
    }
    for k in 0..db {
        maps.push((hb.element(k).matrix() * p2.matrix()).neg());
    }
    let kernel = vec_columns(field, len, &maps).kernel_basis();
    let alpha = kernel.block(0, 0, da, kernel.cols());
    let homotopies: Vec<FieldMatrix> = (0..hh.dim())
        .map(|k| hh.element(k).matrix() * p2.matrix())
        .collect();
    let h = if homotopies.is_empty() {
        FieldMatrix::zeros(field, da, 0)
    } else {
        ha.coordinates_of(&homotopies)
    };
    let (_, pivots) = h.hstack(&alpha)?.rref();
    let mut out = Vec::new();
    for c in pivots.into_iter().filter(|&c| c >= h.cols()) {
        let col = kernel.col(c - h.cols());
        let lift = ha.combination(&col[..da]);
        let witness = hb.combination(&col[da..]);
        out.push(NatTransform::new_unchecked(f.clone(), g.clone(), lift, witness));
    }
    Ok(out)
}

/// Whether `η` is homotopic to zero.
pub fn is_zero_nat(eta: &NatTransform) -> Result<bool> {
    if eta.variance() == Variance::Contravariant {
        return is_zero_nat(&eta.dualize());
    }
    let p2 = eta.target.presentation();
    let hh = hom_space(p2.target(), eta.lift.target())?;
    let maps: Vec<FieldMatrix> = (0..hh.dim())
        .map(|k| hh.element(k).matrix() * p2.matrix())
        .collect();
    let len = eta.lift.matrix().entries().len();
    let span = vec_columns(eta.lift.field(), len, &maps);
    let rhs = FieldMatrix::column(eta.lift.field(), eta.lift.matrix().entries());
    Ok(span.solve(&rhs)?.is_some())
}

/// Whether `η` has a two-sided inverse modulo homotopy.
///
/// Unknowns: a lift `a'`, its witness `b'`, and homotopies `h`, `h'` with
/// `f' a' = b' f`, `a a' - h f = 1` and `a' a - h' f' = 1`.
pub fn is_iso_nat(eta: &NatTransform) -> Result<bool> {
    if eta.variance() == Variance::Contravariant {
        return is_iso_nat(&eta.dualize());
    }
    let (p, p2) = (eta.source.presentation(), eta.target.presentation());
    let field = p.field();
    let (x, y) = (p.source(), p.target());
    let (x2, y2) = (p2.source(), p2.target());
    let a = eta.lift.matrix();
    let h_a = hom_space(x, x2)?;
    let h_b = hom_space(y, y2)?;
    let h_h = hom_space(y, x)?;
    let h_h2 = hom_space(y2, x2)?;
    let n1 = y2.dim() * x.dim();
    let n2 = x.dim() * x.dim();
    let n3 = x2.dim() * x2.dim();
    let rows = n1 + n2 + n3;
    let mut cols: Vec<Vec<u32>> = Vec::new();
    let mut push = |e1: Option<FieldMatrix>, e2: Option<FieldMatrix>, e3: Option<FieldMatrix>| {
        let mut v = vec![0u32; rows];
        let parts = [(e1, 0, n1), (e2, n1, n2), (e3, n1 + n2, n3)];
        for (m, off, len) in parts {
            if let Some(m) = m {
                debug_assert_eq!(m.entries().len(), len);
                v[off..off + len].copy_from_slice(m.entries());
            }
        }
        cols.push(v);
    };
    for k in 0..h_a.dim() {
        let ap = h_a.element(k);
        let ap = ap.matrix();
        push(Some(p2.matrix() * ap), Some(a * ap), Some(ap * a));
    }
    for k in 0..h_b.dim() {
        let bp = h_b.element(k);
        push(Some((bp.matrix() * p.matrix()).neg()), None, None);
    }
    for k in 0..h_h.dim() {
        let h = h_h.element(k);
        push(None, Some((h.matrix() * p.matrix()).neg()), None);
    }
    for k in 0..h_h2.dim() {
        let h = h_h2.element(k);
        push(None, None, Some((h.matrix() * p2.matrix()).neg()));
    }
    let system = FieldMatrix::from_columns(field, rows, &cols);
    let mut rhs = vec![0u32; rows];
    rhs[n1..n1 + n2].copy_from_slice(FieldMatrix::identity(field, x.dim()).entries());
    rhs[n1 + n2..].copy_from_slice(FieldMatrix::identity(field, x2.dim()).entries());
    Ok(system.solve(&FieldMatrix::column(field, &rhs))?.is_some())
}

#[cfg(test)]
mod tests {
    use super::super::test_support::*;
    use super::*;
    use crate::fpfun::{defect, evaluate};
    use crate::modcat::*;

    #[test]
    fn yoneda_and_fp_dual() {
        for alg in all_small_algebras() {
            let probes = small_probes(&alg);
            for func in small_battery(&alg) {
                for c in &probes {
                    let v = func.variance();
                    let rep = FpFunctor::representable(c, v);
                    let lhs = nat_space(&rep, &func).unwrap().len();
                    assert_eq!(lhs, evaluate(&func, c).unwrap().dimension);
                    let w = defect(&func);
                    let rhs = match v {
                        Variance::Covariant => hom_space(c, &w).unwrap().dim(),
                        Variance::Contravariant => hom_space(&w, c).unwrap().dim(),
                    };
                    assert_eq!(nat_space(&func, &rep).unwrap().len(), rhs);
                }
            }
        }
    }

    #[test]
    fn nat_between_representables_is_hom() {
        let alg = a2(2);
        let probes = small_probes(&alg);
        for x in &probes {
            for y in &probes {
                let fx = FpFunctor::representable(x, Variance::Covariant);
                let fy = FpFunctor::representable(y, Variance::Covariant);
                assert_eq!(
                    nat_space(&fx, &fy).unwrap().len(),
                    hom_space(y, x).unwrap().dim()
                );
            }
        }
        let z = FpFunctor::zero(&alg, Variance::Covariant);
        let g = FpFunctor::representable(&probes[1], Variance::Covariant);
        assert!(nat_space(&z, &g).unwrap().is_empty());
    }

    #[test]
    fn identity_and_zero() {
        for alg in all_small_algebras() {
            for func in small_battery(&alg) {
                let id = identity_nat(&func);
                assert!(is_iso_nat(&id).unwrap());
                let nonzero = small_probes(&alg)
                    .iter()
                    .any(|m| evaluate(&func, m).unwrap().dimension > 0);
                assert_eq!(is_zero_nat(&id).unwrap(), !nonzero);
                let zero = NatTransform::new(
                    func.clone(),
                    func.clone(),
                    ModMorphism::zero(id.lift().source(), id.lift().target()),
                    ModMorphism::zero(id.witness().source(), id.witness().target()),
                )
                .unwrap();
                assert_eq!(is_iso_nat(&zero).unwrap(), !nonzero);
                assert!(is_zero_nat(&zero).unwrap());
            }
        }
    }

    #[test]
    fn composition_matches_evaluation() {
        let alg = k2x2();
        let probes = small_probes(&alg);
        let battery = small_battery(&alg);
        for f in battery.iter().step_by(3) {
            for g in battery.iter().step_by(5) {
                if f.variance() != g.variance() {
                    continue;
                }
                let fg = nat_space(f, g).unwrap();
                let gf = nat_space(g, f).unwrap();
                for eta in fg.iter().take(2) {
                    for psi in gf.iter().take(2) {
                        let c = compose(psi, eta).unwrap();
                        for a in &probes {
                            let lhs = evaluate_nat(&c, a).unwrap();
                            let rhs =
                                &evaluate_nat(psi, a).unwrap() * &evaluate_nat(eta, a).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }
}

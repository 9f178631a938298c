//! The category of finite-dimensional left modules over an [`Algebra`].
//!
//! Right modules are stored as left modules over the opposite algebra.

mod constructions;
mod hom;
mod homological;
mod io;
mod stable;

use std::fmt;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{FieldMatrix, PrimeField};

pub use constructions::{
    cokernel, direct_sum, direct_sum_morphisms, free_cover, free_cover_with, free_module,
    free_module_map, image_factorization, injective_embed, injective_embed_with, k_dual,
    k_dual_morphism, kernel, quotient_module, radical_submodule, regular_module, submodule, top, syzygy, syzygy_with,
    zero_module, CoverStrategy, ImageFactorization, Syzygy,
};
pub(crate) use constructions::orthogonal_idempotents;
pub use hom::{extend_along, hom_space, lift_along, postcompose_matrix, precompose_matrix, HomSpace};
pub use homological::{
    ext1, ext1_with, tensor, tensor_map, tor1, tor1_with, transpose, transpose_morphism,
    transpose_morphism_with, transpose_with, FreePresentation, SubquotientSpace, TensorSpace,
    Transpose,
};
pub use io::ModuleFile;
pub use stable::{
    find_isomorphism, stable_hom_inj, stable_hom_inj_with, stable_hom_proj, stable_hom_proj_with,
    stable_iso, StableIsoVerdict,
};

/// A finite-dimensional left module, stored as one action matrix per basis
/// element of the algebra.
#[derive(Clone)]
pub struct FdModule {
    inner: Arc<ModuleData>,
}

struct ModuleData {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<FieldMatrix>,
    free_rank: Option<usize>,
}

impl fmt::Debug for FdModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FdModule")
            .field("algebra", &self.algebra().name())
            .field("dim", &self.dim())
            .field("free_rank", &self.inner.free_rank)
            .finish()
    }
}

impl PartialEq for FdModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.algebra().same(other.algebra())
                && self.dim() == other.dim()
                && self.inner.action == other.inner.action)
    }
}

impl Eq for FdModule {}

impl FdModule {
    /// Validated constructor; reports the first pair `(i, j)` violating the
    /// module law.
    pub fn new(algebra: Arc<Algebra>, dim: usize, action: Vec<FieldMatrix>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        for (i, a) in action.iter().enumerate() {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::InvalidModule(format!(
                    "action of basis element {i} is {}x{}, expected {dim}x{dim}",
                    a.rows(),
                    a.cols()
                )));
            }
            if a.field() != algebra.field() {
                return Err(Error::FieldMismatch {
                    left: a.field().p(),
                    right: algebra.field().p(),
                });
            }
        }
        let m = FdModule::build(algebra, dim, action, None);
        m.check_law()?;
        Ok(m)
    }

    fn build(
        algebra: Arc<Algebra>,
        dim: usize,
        action: Vec<FieldMatrix>,
        free_rank: Option<usize>,
    ) -> Self {
        FdModule {
            inner: Arc::new(ModuleData {
                algebra,
                dim,
                action,
                free_rank,
            }),
        }
    }

    /// Internal constructor for modules whose law holds by construction.
    pub(crate) fn from_action(algebra: Arc<Algebra>, dim: usize, action: Vec<FieldMatrix>) -> Self {
        let m = FdModule::build(algebra, dim, action, None);
        debug_assert!(m.check_law().is_ok(), "{:?}", m.check_law());
        m
    }

    pub(crate) fn from_action_free(
        algebra: Arc<Algebra>,
        dim: usize,
        action: Vec<FieldMatrix>,
        rank: usize,
    ) -> Self {
        FdModule::build(algebra, dim, action, Some(rank))
    }

    /// Checks `rho(1) = id` and `rho(b_i) rho(b_j) = sum_k c[i][j][k] rho(b_k)`.
    pub fn check_law(&self) -> Result<()> {
        let alg = self.algebra();
        let f = self.field();
        let n = alg.dim();
        let unit = self.act_by(alg.unit());
        if unit != FieldMatrix::identity(f, self.dim()) {
            return Err(Error::InvalidModule("the unit does not act as the identity".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = &self.inner.action[i] * &self.inner.action[j];
                let coeffs: Vec<u32> = (0..n).map(|k| alg.structure_constant(i, j, k)).collect();
                if lhs != self.act_by(&coeffs) {
                    return Err(Error::InvalidModule(format!(
                        "module law fails for the pair ({i}, {j}) ({} * {})",
                        alg.labels()[i],
                        alg.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.inner.algebra
    }

    pub fn field(&self) -> PrimeField {
        self.inner.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Action of the `i`-th basis element.
    pub fn action(&self, i: usize) -> &FieldMatrix {
        &self.inner.action[i]
    }

    pub fn actions(&self) -> &[FieldMatrix] {
        &self.inner.action
    }

    /// Action of an arbitrary algebra element given by coefficients.
    pub fn act_by(&self, coeffs: &[u32]) -> FieldMatrix {
        let f = self.field();
        let d = self.dim();
        let mut out = vec![0u32; d * d];
        for (i, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.inner.action[i].entries()) {
                *o = f.add(*o, f.mul(c, a));
            }
        }
        FieldMatrix::from_vec(f, d, d, out).expect("square action")
    }

    /// `Some(r)` if this module was built as the free module of rank `r`,
    /// with basis index `j * dim(A) + i` standing for `b_i e_j`.
    pub fn free_rank(&self) -> Option<usize> {
        self.inner.free_rank
    }

    pub(crate) fn same_algebra(&self, other: &FdModule, op: &str) -> Result<()> {
        if self.algebra().same(other.algebra()) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch(format!(
                "{op}: {} vs {}",
                self.algebra().name(),
                other.algebra().name()
            )))
        }
    }
}

/// A module homomorphism; `matrix` is `target.dim x source.dim`.
#[derive(Clone, PartialEq, Eq)]
pub struct ModMorphism {
    source: FdModule,
    target: FdModule,
    matrix: FieldMatrix,
}

impl fmt::Debug for ModMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ModMorphism({} -> {}, {:?})",
            self.source.dim(),
            self.target.dim(),
            self.matrix
        )
    }
}

impl ModMorphism {
    /// Validated constructor: checks shape and linearity over the algebra.
    pub fn new(source: FdModule, target: FdModule, matrix: FieldMatrix) -> Result<Self> {
        source.same_algebra(&target, "morphism")?;
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::InvalidMorphism(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        if matrix.field() != source.field() {
            return Err(Error::FieldMismatch {
                left: matrix.field().p(),
                right: source.field().p(),
            });
        }
        let m = ModMorphism {
            source,
            target,
            matrix,
        };
        if let Some(i) = m.first_nonlinear_generator() {
            return Err(Error::InvalidMorphism(format!(
                "does not commute with the action of {}",
                m.source.algebra().labels()[i]
            )));
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: FdModule, target: FdModule, matrix: FieldMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), target.dim());
        debug_assert_eq!(matrix.cols(), source.dim());
        let m = ModMorphism {
            source,
            target,
            matrix,
        };
        debug_assert_eq!(m.first_nonlinear_generator(), None, "non-linear morphism");
        m
    }

    fn first_nonlinear_generator(&self) -> Option<usize> {
        self.source.algebra().generators().iter().copied().find(|&i| {
            &self.matrix * self.source.action(i) != self.target.action(i) * &self.matrix
        })
    }

    pub fn identity(m: &FdModule) -> Self {
        ModMorphism {
            source: m.clone(),
            target: m.clone(),
            matrix: FieldMatrix::identity(m.field(), m.dim()),
        }
    }

    pub fn zero(source: &FdModule, target: &FdModule) -> Self {
        ModMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: FieldMatrix::zeros(source.field(), target.dim(), source.dim()),
        }
    }

    pub fn source(&self) -> &FdModule {
        &self.source
    }

    pub fn target(&self) -> &FdModule {
        &self.target
    }

    pub fn matrix(&self) -> &FieldMatrix {
        &self.matrix
    }

    pub fn field(&self) -> PrimeField {
        self.source.field()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModMorphism) -> Result<ModMorphism> {
        if first.target != self.source {
            return Err(Error::InvalidMorphism(format!(
                "cannot compose: target of dim {} does not match source of dim {}",
                first.target.dim(),
                self.source.dim()
            )));
        }
        Ok(ModMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix * &first.matrix,
        })
    }

    /// `self ∘ first`, panicking on mismatch; for internal use where the
    /// shapes hold by construction.
    pub(crate) fn after(&self, first: &ModMorphism) -> ModMorphism {
        debug_assert!(first.target.dim() == self.source.dim());
        ModMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix * &first.matrix,
        }
    }

    fn parallel(&self, other: &ModMorphism) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::InvalidMorphism("morphisms are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ModMorphism) -> Result<ModMorphism> {
        self.parallel(other)?;
        Ok(self.with_matrix(self.matrix.add(&other.matrix)?))
    }

    pub fn sub(&self, other: &ModMorphism) -> Result<ModMorphism> {
        self.parallel(other)?;
        Ok(self.with_matrix(self.matrix.sub(&other.matrix)?))
    }

    pub fn scale(&self, s: u32) -> ModMorphism {
        self.with_matrix(self.matrix.scale(s))
    }

    pub fn neg(&self) -> ModMorphism {
        self.with_matrix(self.matrix.neg())
    }

    pub(crate) fn with_matrix(&self, matrix: FieldMatrix) -> ModMorphism {
        ModMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_mono(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_epi(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_mono()
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;
    use crate::algebra::{path_algebra_an, truncated_poly};

    pub fn k2x2() -> Arc<Algebra> {
        truncated_poly(2, 2).unwrap()
    }

    /// The top `Λ / rad Λ`.
    pub fn simple_top(alg: &Arc<Algebra>) -> FdModule {
        top(&regular_module(alg)).unwrap().0
    }

    pub fn a2(p: u64) -> Arc<Algebra> {
        path_algebra_an(p, 2).unwrap()
    }

    pub fn all_small_algebras() -> Vec<Arc<Algebra>> {
        vec![
            truncated_poly(2, 2).unwrap(),
            truncated_poly(3, 2).unwrap(),
            truncated_poly(2, 3).unwrap(),
            path_algebra_an(2, 2).unwrap(),
            path_algebra_an(3, 2).unwrap(),
        ]
    }

    /// Zero, regular, top, radical and, for each proper basis idempotent `e`,
    /// the projective `Λe` and its top.
    pub fn small_probes(alg: &Arc<Algebra>) -> Vec<FdModule> {
        let l = regular_module(alg);
        let mut out = vec![
            zero_module(alg),
            l.clone(),
            top(&l).unwrap().0,
            radical_submodule(&l).unwrap().0,
        ];
        for e in alg.basis_idempotents() {
            let ev = crate::algebra::basis_vector(alg.dim(), e);
            if ev.as_slice() == alg.unit() {
                continue;
            }
            let (pe, _) = submodule(&l, &[ev]);
            out.push(top(&pe).unwrap().0);
            out.push(pe);
        }
        out
    }
}

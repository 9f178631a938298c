//! Hom spaces as solution spaces of the linearity equations.

use crate::error::{Error, Result};
use crate::exactla::{ColumnBasis, FieldMatrix};

use super::{FdModule, ModMorphism};

/// A basis of `Hom(X, Y)` with coordinates.
///
/// Morphisms are vectorised row-major (`t[r][c]` at `r * dim X + c`).
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: FdModule,
    target: FdModule,
    coords: ColumnBasis,
}

impl HomSpace {
    pub fn source(&self) -> &FdModule {
        &self.source
    }

    pub fn target(&self) -> &FdModule {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    /// The `k`-th basis morphism.
    pub fn element(&self, k: usize) -> ModMorphism {
        let v = self.coords.basis().col(k);
        self.matrix_morphism(v)
    }

    pub fn basis(&self) -> Vec<ModMorphism> {
        (0..self.dim()).map(|k| self.element(k)).collect()
    }

    /// The morphism with the given coordinates.
    pub fn combination(&self, coeffs: &[u32]) -> ModMorphism {
        let c = FieldMatrix::column(self.source.field(), coeffs);
        let v = (self.coords.basis() * &c).col(0);
        self.matrix_morphism(v)
    }

    fn matrix_morphism(&self, v: Vec<u32>) -> ModMorphism {
        let m = FieldMatrix::from_vec(self.source.field(), self.target.dim(), self.source.dim(), v)
            .expect("vectorised morphism");
        ModMorphism::new_unchecked(self.source.clone(), self.target.clone(), m)
    }

    /// Coordinates of `f`, which must be a morphism `X -> Y`.
    pub fn coordinates(&self, f: &FieldMatrix) -> Vec<u32> {
        self.coordinates_of(std::slice::from_ref(f)).col(0)
    }

    /// Coordinates of several matrices, one column each.
    pub fn coordinates_of(&self, maps: &[FieldMatrix]) -> FieldMatrix {
        let n = self.coords.ambient();
        let cols: Vec<Vec<u32>> = maps.iter().map(|m| m.entries().to_vec()).collect();
        let v = FieldMatrix::from_columns(self.source.field(), n, &cols);
        self.coords.coordinates(&v)
    }

    /// Coordinates if `f` is a morphism, `None` otherwise.
    pub fn try_coordinates(&self, f: &FieldMatrix) -> Option<Vec<u32>> {
        let v = FieldMatrix::column(self.source.field(), f.entries());
        self.coords.try_coordinates(&v).map(|c| c.col(0))
    }
}

/// Deterministic basis of `Hom(X, Y)`.
pub fn hom_space(x: &FdModule, y: &FdModule) -> Result<HomSpace> {
    x.same_algebra(y, "hom_space")?;
    let basis = match x.free_rank() {
        Some(r) => free_hom_basis(x, y, r),
        None => general_hom_basis(x, y),
    };
    Ok(HomSpace {
        source: x.clone(),
        target: y.clone(),
        coords: ColumnBasis::new(basis),
    })
}

/// Morphisms out of a free module are determined by the images of the
/// generators `e_j`, and every choice of images occurs.
fn free_hom_basis(x: &FdModule, y: &FdModule, rank: usize) -> FieldMatrix {
    let f = x.field();
    let n = x.algebra().dim();
    let (mx, my) = (x.dim(), y.dim());
    let mut cols = Vec::with_capacity(rank * my);
    for j in 0..rank {
        for s in 0..my {
            // column (j, i) of the map is b_i applied to the image of e_j
            let mut v = vec![0u32; my * mx];
            for i in 0..n {
                let a = y.action(i);
                for r in 0..my {
                    v[r * mx + j * n + i] = a.get(r, s);
                }
            }
            cols.push(v);
        }
    }
    FieldMatrix::from_columns(f, my * mx, &cols)
}

fn general_hom_basis(x: &FdModule, y: &FdModule) -> FieldMatrix {
    let f = x.field();
    let (mx, my) = (x.dim(), y.dim());
    let nvar = mx * my;
    let mut basis = FieldMatrix::identity(f, nvar);
    for &g in x.algebra().generators() {
        if basis.cols() == 0 {
            break;
        }
        let a = x.action(g);
        let b = y.action(g);
        // residual T A - B T for each current basis element T, as columns
        let mut cols = Vec::with_capacity(basis.cols());
        for k in 0..basis.cols() {
            let t = FieldMatrix::from_vec(f, my, mx, basis.col(k)).expect("shape");
            let r = (&t * a).sub(&(b * &t)).expect("shape");
            cols.push(r.entries().to_vec());
        }
        let eqs = FieldMatrix::from_columns(f, nvar, &cols);
        let kernel = eqs.kernel_basis();
        basis = &basis * &kernel;
    }
    basis
}

/// Matrix of `u ↦ u ∘ f` from `Hom(Y, A)` to `Hom(X, A)` in the given bases,
/// where `f: X -> Y`.
pub fn precompose_matrix(from: &HomSpace, to: &HomSpace, f: &ModMorphism) -> FieldMatrix {
    let maps: Vec<FieldMatrix> = (0..from.dim())
        .map(|k| from.element(k).matrix() * f.matrix())
        .collect();
    coordinate_columns(to, &maps)
}

/// Matrix of `u ↦ g ∘ u` from `Hom(A, Y)` to `Hom(A, Z)`, where `g: Y -> Z`.
pub fn postcompose_matrix(from: &HomSpace, to: &HomSpace, g: &ModMorphism) -> FieldMatrix {
    let maps: Vec<FieldMatrix> = (0..from.dim())
        .map(|k| g.matrix() * from.element(k).matrix())
        .collect();
    coordinate_columns(to, &maps)
}

/// Some `u: Y -> A` with `u ∘ f = t`, for `f: X -> Y` and `t: X -> A`.
pub fn extend_along(f: &ModMorphism, t: &ModMorphism) -> Result<Option<ModMorphism>> {
    if f.source() != t.source() {
        return Err(Error::dims("extend_along", "maps have different sources"));
    }
    let from = hom_space(f.target(), t.target())?;
    let to = hom_space(f.source(), t.target())?;
    let system = precompose_matrix(&from, &to, f);
    solve_in(&from, &to, &system, t)
}

/// Some `u: A -> Y` with `g ∘ u = t`, for `g: Y -> Z` and `t: A -> Z`.
pub fn lift_along(g: &ModMorphism, t: &ModMorphism) -> Result<Option<ModMorphism>> {
    if g.target() != t.target() {
        return Err(Error::dims("lift_along", "maps have different targets"));
    }
    let from = hom_space(t.source(), g.source())?;
    let to = hom_space(t.source(), g.target())?;
    let system = postcompose_matrix(&from, &to, g);
    solve_in(&from, &to, &system, t)
}

fn solve_in(
    from: &HomSpace,
    to: &HomSpace,
    system: &FieldMatrix,
    t: &ModMorphism,
) -> Result<Option<ModMorphism>> {
    let Some(rhs) = to.try_coordinates(t.matrix()) else {
        return Err(Error::InvalidMorphism("right-hand side is not linear".into()));
    };
    let rhs = FieldMatrix::column(t.field(), &rhs);
    Ok(system.solve(&rhs)?.map(|x| from.combination(&x.col(0))))
}

fn coordinate_columns(space: &HomSpace, maps: &[FieldMatrix]) -> FieldMatrix {
    if maps.is_empty() {
        return FieldMatrix::zeros(space.source.field(), space.dim(), 0);
    }
    space.coordinates_of(maps)
}

//! Kernels, cokernels, images, free modules and covers, duality.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::exactla::{ColumnBasis, FieldMatrix, Quotient};

use super::{FdModule, ModMorphism};

pub fn zero_module(alg: &Arc<Algebra>) -> FdModule {
    let f = alg.field();
    FdModule::from_action_free(alg.clone(), 0, vec![FieldMatrix::zeros(f, 0, 0); alg.dim()], 0)
}

/// The free module `Λ^r`; basis index `j * dim(Λ) + i` is `b_i e_j`.
pub fn free_module(alg: &Arc<Algebra>, rank: usize) -> FdModule {
    let f = alg.field();
    let n = alg.dim();
    let action = (0..n)
        .map(|l| {
            let reg = alg.left_multiplication(l);
            let mut m = FieldMatrix::zeros(f, rank * n, rank * n);
            for j in 0..rank {
                for r in 0..n {
                    for c in 0..n {
                        m.set(j * n + r, j * n + c, reg.get(r, c));
                    }
                }
            }
            m
        })
        .collect();
    FdModule::from_action_free(alg.clone(), rank * n, action, rank)
}

pub fn regular_module(alg: &Arc<Algebra>) -> FdModule {
    free_module(alg, 1)
}

/// The generator `e_j` of a free module as a coefficient vector.
pub(crate) fn free_generator(free: &FdModule, j: usize) -> Vec<u32> {
    let alg = free.algebra();
    let n = alg.dim();
    let mut v = vec![0u32; free.dim()];
    v[j * n..(j + 1) * n].copy_from_slice(alg.unit());
    v
}

/// The morphism `Λ^r -> M` sending `e_j` to `images[j]`.
pub fn free_module_map(free: &FdModule, target: &FdModule, images: &[Vec<u32>]) -> ModMorphism {
    let rank = free.free_rank().expect("source must be a free module");
    assert_eq!(rank, images.len(), "one image per generator");
    let f = free.field();
    let n = free.algebra().dim();
    let mut m = FieldMatrix::zeros(f, target.dim(), free.dim());
    for (j, v) in images.iter().enumerate() {
        let col = FieldMatrix::column(f, v);
        for i in 0..n {
            let img = target.action(i) * &col;
            for r in 0..target.dim() {
                m.set(r, j * n + i, img.get(r, 0));
            }
        }
    }
    ModMorphism::new_unchecked(free.clone(), target.clone(), m)
}

/// Restriction of the action to an invariant subspace with the given basis.
fn restricted_action(m: &FdModule, basis: &ColumnBasis) -> Vec<FieldMatrix> {
    m.actions()
        .iter()
        .map(|a| basis.coordinates(&(a * basis.basis())))
        .collect()
}

/// Kernel with its inclusion.
pub fn kernel(f: &ModMorphism) -> (FdModule, ModMorphism) {
    let k = f.matrix().kernel_basis();
    let basis = ColumnBasis::new(k.clone());
    let action = restricted_action(f.source(), &basis);
    let km = FdModule::from_action(f.source().algebra().clone(), k.cols(), action);
    let inc = ModMorphism::new_unchecked(km.clone(), f.source().clone(), k);
    (km, inc)
}

/// Quotient of `m` by the submodule spanned by the columns of `span`.
fn quotient_by_span(m: &FdModule, span: &FieldMatrix) -> (FdModule, ModMorphism) {
    let q = Quotient::new(span);
    let proj = q.projection();
    let sec = q.section();
    let action = m.actions().iter().map(|a| &(&proj * a) * &sec).collect();
    let qm = FdModule::from_action(m.algebra().clone(), q.dim(), action);
    let pm = ModMorphism::new_unchecked(m.clone(), qm.clone(), proj);
    (qm, pm)
}

/// Cokernel with its projection.
pub fn cokernel(f: &ModMorphism) -> (FdModule, ModMorphism) {
    quotient_by_span(f.target(), f.matrix())
}

/// `f = mono ∘ epi` through the image.
#[derive(Clone, Debug)]
pub struct ImageFactorization {
    pub image: FdModule,
    pub epi: ModMorphism,
    pub mono: ModMorphism,
}

pub fn image_factorization(f: &ModMorphism) -> ImageFactorization {
    let b = f.matrix().image_basis();
    let basis = ColumnBasis::new(b.clone());
    let action = restricted_action(f.target(), &basis);
    let v = FdModule::from_action(f.source().algebra().clone(), b.cols(), action);
    let epi_matrix = basis.coordinates(f.matrix());
    let epi = ModMorphism::new_unchecked(f.source().clone(), v.clone(), epi_matrix);
    let mono = ModMorphism::new_unchecked(v.clone(), f.target().clone(), b);
    ImageFactorization { image: v, epi, mono }
}

/// Submodule generated by the given vectors, with its inclusion.
pub fn submodule(m: &FdModule, generators: &[Vec<u32>]) -> (FdModule, ModMorphism) {
    let f = m.field();
    let mut cols = Vec::new();
    for v in generators {
        let c = FieldMatrix::column(f, v);
        for a in m.actions() {
            cols.push((a * &c).col(0));
        }
    }
    let span = FieldMatrix::from_columns(f, m.dim(), &cols);
    image_factorization_of_span(m, &span)
}

fn image_factorization_of_span(m: &FdModule, span: &FieldMatrix) -> (FdModule, ModMorphism) {
    let b = span.image_basis();
    let basis = ColumnBasis::new(b.clone());
    let action = restricted_action(m, &basis);
    let sub = FdModule::from_action(m.algebra().clone(), b.cols(), action);
    let inc = ModMorphism::new_unchecked(sub.clone(), m.clone(), b);
    (sub, inc)
}

/// Quotient by the submodule generated by the given vectors.
pub fn quotient_module(m: &FdModule, generators: &[Vec<u32>]) -> (FdModule, ModMorphism) {
    let (_, inc) = submodule(m, generators);
    quotient_by_span(m, inc.matrix())
}

/// Vectors spanning `rad · M`, when the algebra carries radical data.
fn radical_vectors(m: &FdModule) -> Option<Vec<Vec<u32>>> {
    let rad = m.algebra().radical_basis()?;
    let mut out = Vec::new();
    for r in rad {
        let a = m.act_by(r);
        for c in 0..m.dim() {
            out.push(a.col(c));
        }
    }
    Some(out)
}

/// `rad · M` with its inclusion; `None` without radical data.
pub fn radical_submodule(m: &FdModule) -> Option<(FdModule, ModMorphism)> {
    let vs = radical_vectors(m)?;
    let span = FieldMatrix::from_columns(m.field(), m.dim(), &vs);
    Some(image_factorization_of_span(m, &span))
}

/// `M / rad · M` with its projection; `None` without radical data.
pub fn top(m: &FdModule) -> Option<(FdModule, ModMorphism)> {
    let vs = radical_vectors(m)?;
    let span = FieldMatrix::from_columns(m.field(), m.dim(), &vs);
    Some(quotient_by_span(m, &span))
}

pub fn direct_sum(x: &FdModule, y: &FdModule) -> FdModule {
    let action = x
        .actions()
        .iter()
        .zip(y.actions())
        .map(|(a, b)| a.direct_sum(b).expect("same field"))
        .collect();
    let free = match (x.free_rank(), y.free_rank()) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    };
    let dim = x.dim() + y.dim();
    match free {
        Some(r) => FdModule::from_action_free(x.algebra().clone(), dim, action, r),
        None => FdModule::from_action(x.algebra().clone(), dim, action),
    }
}

/// `f ⊕ g` between the direct sums of sources and targets.
pub fn direct_sum_morphisms(f: &ModMorphism, g: &ModMorphism) -> ModMorphism {
    ModMorphism::new_unchecked(
        direct_sum(f.source(), g.source()),
        direct_sum(f.target(), g.target()),
        f.matrix().direct_sum(g.matrix()).expect("same field"),
    )
}

/// Which epimorphism from a free module to use as a cover.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CoverStrategy {
    /// Minimal when radical data is available, basis-indexed otherwise.
    #[default]
    Auto,
    /// One generator per vector-space basis element.
    Basis,
    /// Generators lifting a basis of `M / rad · M`, merged where possible.
    Minimal,
    /// The `Auto` generators plus one generator sent to zero, so every cover
    /// carries a redundant free summand.
    Padded,
}

fn cover_generators(m: &FdModule, strategy: CoverStrategy) -> Vec<Vec<u32>> {
    let d = m.dim();
    if strategy == CoverStrategy::Padded {
        let mut gens = cover_generators(m, CoverStrategy::Auto);
        gens.push(vec![0; d]);
        return gens;
    }
    let basis: Vec<Vec<u32>> = (0..d).map(|i| crate::algebra::basis_vector(d, i)).collect();
    let minimal = match strategy {
        CoverStrategy::Basis => None,
        CoverStrategy::Auto | CoverStrategy::Minimal | CoverStrategy::Padded => {
            radical_vectors(m)
        }
    };
    let Some(rad) = minimal else {
        return basis;
    };
    let f = m.field();
    let rad_span = FieldMatrix::from_columns(f, d, &rad).image_basis();
    match orthogonal_idempotents(m.algebra()) {
        Some(idems) => {
            // lift a basis of e_i top(M) for each idempotent, then add the
            // j-th lifts of all idempotents into the j-th generator
            let per_idem: Vec<Vec<Vec<u32>>> = idems
                .iter()
                .map(|e| {
                    let ev = m.act_by(e);
                    let cands: Vec<Vec<u32>> = (0..d).map(|c| ev.col(c)).collect();
                    extend_basis(f, &rad_span, cands)
                })
                .collect();
            let r = per_idem.iter().map(Vec::len).max().unwrap_or(0);
            (0..r)
                .map(|j| {
                    let mut g = vec![0u32; d];
                    for list in &per_idem {
                        if let Some(v) = list.get(j) {
                            for (x, &y) in g.iter_mut().zip(v) {
                                *x = f.add(*x, y);
                            }
                        }
                    }
                    g
                })
                .collect()
        }
        None => merge_generators(m, extend_basis(f, &rad_span, basis)),
    }
}

/// Candidates that extend the span of `start`, in order.
fn extend_basis(
    f: crate::exactla::PrimeField,
    start: &FieldMatrix,
    candidates: Vec<Vec<u32>>,
) -> Vec<Vec<u32>> {
    let mut span = start.clone();
    let mut out = Vec::new();
    for v in candidates {
        let trial = span.hstack(&FieldMatrix::column(f, &v)).expect("rows");
        if trial.rank() > span.rank() {
            span = trial;
            out.push(v);
        }
    }
    out
}

/// A complete family of pairwise orthogonal idempotents among the basis
/// elements (or the unit alone, when it is a basis element).
pub(crate) fn orthogonal_idempotents(alg: &Algebra) -> Option<Vec<Vec<u32>>> {
    let n = alg.dim();
    let idems: Vec<Vec<u32>> = alg
        .basis_idempotents()
        .into_iter()
        .map(|i| crate::algebra::basis_vector(n, i))
        .collect();
    if idems.iter().any(|e| e.as_slice() == alg.unit()) {
        return Some(vec![alg.unit().to_vec()]);
    }
    let f = alg.field();
    let mut sum = vec![0u32; n];
    for e in &idems {
        for (s, &x) in sum.iter_mut().zip(e) {
            *s = f.add(*s, x);
        }
    }
    let orthogonal = idems.iter().enumerate().all(|(i, a)| {
        idems
            .iter()
            .enumerate()
            .all(|(j, b)| i == j || alg.product(a, b).iter().all(|&x| x == 0))
    });
    (orthogonal && sum.as_slice() == alg.unit()).then_some(idems)
}

/// Span of `Λ g` for the given generators.
fn generated_span(m: &FdModule, gens: &[Vec<u32>]) -> FieldMatrix {
    let f = m.field();
    let mut cols = Vec::new();
    for g in gens {
        let c = FieldMatrix::column(f, g);
        for a in m.actions() {
            cols.push((a * &c).col(0));
        }
    }
    FieldMatrix::from_columns(f, m.dim(), &cols)
}

/// Folds each top vector into the first existing generator whose sum with it
/// still generates everything generated so far; over basic algebras this
/// reaches the minimal number of generators of a free cover.
fn merge_generators(m: &FdModule, tops: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let f = m.field();
    let mut gens: Vec<Vec<u32>> = Vec::new();
    for t in tops {
        let mut wanted = gens.clone();
        wanted.push(t.clone());
        let wanted_span = generated_span(m, &wanted);
        let target_rank = wanted_span.rank();
        let merged = (0..gens.len()).find_map(|i| {
            let mut trial = gens.clone();
            trial[i] = trial[i].iter().zip(&t).map(|(&a, &b)| f.add(a, b)).collect();
            let both = generated_span(m, &trial).hstack(&wanted_span).expect("rows");
            (both.rank() == target_rank).then_some(trial)
        });
        gens = merged.unwrap_or(wanted);
    }
    gens
}

/// An epimorphism `Λ^r -> M` with the default strategy.
pub fn free_cover(m: &FdModule) -> ModMorphism {
    free_cover_with(m, CoverStrategy::Auto)
}

pub fn free_cover_with(m: &FdModule, strategy: CoverStrategy) -> ModMorphism {
    let gens = cover_generators(m, strategy);
    let free = free_module(m.algebra(), gens.len());
    let cover = free_module_map(&free, m, &gens);
    if cover.is_epi() {
        cover
    } else {
        // radical data that is not the whole radical can only fail here if
        // it is inconsistent; the basis cover is always onto
        free_cover_with(m, CoverStrategy::Basis)
    }
}

/// `0 -> ΩM -> P -> M -> 0`.
#[derive(Clone, Debug)]
pub struct Syzygy {
    pub module: FdModule,
    pub inclusion: ModMorphism,
    pub cover: ModMorphism,
}

pub fn syzygy(m: &FdModule) -> Syzygy {
    syzygy_with(m, CoverStrategy::Auto)
}

pub fn syzygy_with(m: &FdModule, strategy: CoverStrategy) -> Syzygy {
    let cover = free_cover_with(m, strategy);
    let (module, inclusion) = kernel(&cover);
    Syzygy {
        module,
        inclusion,
        cover,
    }
}

/// `D_k M = hom_k(M, F_p)` as a module over the opposite algebra.
pub fn k_dual(m: &FdModule) -> FdModule {
    let op = m.algebra().opposite();
    let action = m.actions().iter().map(FieldMatrix::transpose).collect();
    FdModule::from_action(op, m.dim(), action)
}

/// `D_k f: D_k Y -> D_k X` for `f: X -> Y`.
pub fn k_dual_morphism(f: &ModMorphism) -> ModMorphism {
    ModMorphism::new_unchecked(
        k_dual(f.target()),
        k_dual(f.source()),
        f.matrix().transpose(),
    )
}

/// A monomorphism `M -> E` into an injective module `E = D_k (Λ^op)^r`.
pub fn injective_embed(m: &FdModule) -> ModMorphism {
    injective_embed_with(m, CoverStrategy::Auto)
}

pub fn injective_embed_with(m: &FdModule, strategy: CoverStrategy) -> ModMorphism {
    let cover = free_cover_with(&k_dual(m), strategy);
    let d = k_dual_morphism(&cover);
    // D_k D_k M has the same action matrices as M over the same algebra
    ModMorphism::new_unchecked(m.clone(), d.target().clone(), d.matrix().clone())
}

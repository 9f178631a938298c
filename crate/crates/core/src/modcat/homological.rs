//! Ext¹, tensor products, Tor₁ and the transpose.

use crate::error::{Error, Result};
use crate::exactla::{FieldMatrix, Quotient};

use super::constructions::free_generator;
use super::{
    free_module, free_module_map, hom_space, precompose_matrix, syzygy_with, CoverStrategy,
    FdModule, ModMorphism,
};

/// A space `U / V` with `V ⊆ U ⊆ F_p^ambient`, both given by spanning columns.
#[derive(Clone, Debug)]
pub struct SubquotientSpace {
    ambient: usize,
    sub: FieldMatrix,
    subsub: FieldMatrix,
}

impl SubquotientSpace {
    pub fn new(ambient: usize, sub: FieldMatrix, subsub: FieldMatrix) -> Self {
        debug_assert_eq!(sub.rows(), ambient);
        debug_assert_eq!(subsub.rows(), ambient);
        SubquotientSpace {
            ambient,
            sub,
            subsub,
        }
    }

    /// The whole ambient space modulo the span of `relations`.
    pub fn quotient_of_ambient(relations: FieldMatrix) -> Self {
        let n = relations.rows();
        let sub = FieldMatrix::identity(relations.field(), n);
        SubquotientSpace::new(n, sub, relations)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn subspace(&self) -> &FieldMatrix {
        &self.sub
    }

    pub fn relations(&self) -> &FieldMatrix {
        &self.subsub
    }

    pub fn dim(&self) -> usize {
        self.sub.rank() - self.subsub.rank()
    }

    pub(crate) fn relation_quotient(&self) -> Quotient {
        Quotient::new(&self.subsub)
    }
}

/// `Ext¹(M, N) = coker(Hom(P, N) -> Hom(ΩM, N))`, in coordinates of `Hom(ΩM, N)`.
pub fn ext1(m: &FdModule, n: &FdModule) -> Result<SubquotientSpace> {
    ext1_with(m, n, CoverStrategy::Auto)
}

pub fn ext1_with(m: &FdModule, n: &FdModule, strategy: CoverStrategy) -> Result<SubquotientSpace> {
    m.same_algebra(n, "ext1")?;
    let syz = syzygy_with(m, strategy);
    let from = hom_space(syz.cover.source(), n)?;
    let to = hom_space(&syz.module, n)?;
    let restrict = precompose_matrix(&from, &to, &syz.inclusion);
    Ok(SubquotientSpace::quotient_of_ambient(restrict))
}

/// `M ⊗_Λ N` for a right module `M` (stored over `Λ^op`) and a left module `N`,
/// as a quotient of `M ⊗_k N` (index `s * dim N + t`).
#[derive(Clone, Debug)]
pub struct TensorSpace {
    right: FdModule,
    left: FdModule,
    quotient: Quotient,
}

impl TensorSpace {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn right(&self) -> &FdModule {
        &self.right
    }

    pub fn left(&self) -> &FdModule {
        &self.left
    }
}

fn check_tensor_pair(right: &FdModule, left: &FdModule) -> Result<()> {
    if right.algebra().same(left.algebra().opposite().as_ref()) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch(format!(
            "tensor needs a module over {}^op on the left, got one over {}",
            left.algebra().name(),
            right.algebra().name()
        )))
    }
}

pub fn tensor(right: &FdModule, left: &FdModule) -> Result<TensorSpace> {
    check_tensor_pair(right, left)?;
    let f = left.field();
    let (mm, mn) = (right.dim(), left.dim());
    let mut rels = Vec::new();
    for &g in left.algebra().generators() {
        let ra = right.action(g);
        let la = left.action(g);
        for s in 0..mm {
            for t in 0..mn {
                // m·a ⊗ n − m ⊗ a·n with m = e_s, n = e_t
                let mut v = vec![0u32; mm * mn];
                for s2 in 0..mm {
                    let x = ra.get(s2, s);
                    v[s2 * mn + t] = f.add(v[s2 * mn + t], x);
                }
                for t2 in 0..mn {
                    let x = la.get(t2, t);
                    v[s * mn + t2] = f.sub(v[s * mn + t2], x);
                }
                rels.push(v);
            }
        }
    }
    let span = FieldMatrix::from_columns(f, mm * mn, &rels);
    Ok(TensorSpace {
        right: right.clone(),
        left: left.clone(),
        quotient: Quotient::new(&span),
    })
}

/// Matrix of `g ⊗ f` between tensor spaces, for linear maps `g` on the right
/// factors and `f` on the left factors.
pub fn tensor_map(
    source: &TensorSpace,
    target: &TensorSpace,
    g: &FieldMatrix,
    f: &FieldMatrix,
) -> FieldMatrix {
    let big = g.kron(f);
    &(&target.quotient.projection() * &big) * &source.quotient.section()
}

/// `dim Tor₁(M, N)` from `0 -> ΩM -> P -> M -> 0` over `Λ^op`.
pub fn tor1(right: &FdModule, left: &FdModule) -> Result<usize> {
    tor1_with(right, left, CoverStrategy::Auto)
}

pub fn tor1_with(right: &FdModule, left: &FdModule, strategy: CoverStrategy) -> Result<usize> {
    check_tensor_pair(right, left)?;
    let syz = syzygy_with(right, strategy);
    let src = tensor(&syz.module, left)?;
    let tgt = tensor(syz.cover.source(), left)?;
    let id = FieldMatrix::identity(left.field(), left.dim());
    let m = tensor_map(&src, &tgt, syz.inclusion.matrix(), &id);
    Ok(src.dim() - m.rank())
}

/// `P1 -> P0 -> M -> 0` with `P0`, `P1` free.
#[derive(Clone, Debug)]
pub struct FreePresentation {
    pub cover: ModMorphism,
    pub relations: ModMorphism,
}

impl FreePresentation {
    pub fn new(m: &FdModule, strategy: CoverStrategy) -> Self {
        let syz = syzygy_with(m, strategy);
        let inner = super::free_cover_with(&syz.module, strategy);
        let relations = syz.inclusion.after(&inner);
        FreePresentation {
            cover: syz.cover,
            relations,
        }
    }
}

/// Entries `a_{jl}` of a map between free modules: block `l` of the image of `e_j`.
fn free_map_entries(g: &ModMorphism) -> Vec<Vec<Vec<u32>>> {
    let n = g.source().algebra().dim();
    let a = g.source().free_rank().expect("free source");
    let b = g.target().free_rank().expect("free target");
    (0..a)
        .map(|j| {
            let ej = FieldMatrix::column(g.field(), &free_generator(g.source(), j));
            let img = (g.matrix() * &ej).col(0);
            (0..b).map(|l| img[l * n..(l + 1) * n].to_vec()).collect()
        })
        .collect()
}

/// `Hom_Λ(g, Λ)` for `g: Λ^a -> Λ^b`, as a map `(Λ^op)^b -> (Λ^op)^a`.
fn dual_free_map(g: &ModMorphism) -> ModMorphism {
    let op = g.source().algebra().opposite();
    let a = g.source().free_rank().expect("free source");
    let b = g.target().free_rank().expect("free target");
    let entries = free_map_entries(g);
    let src = free_module(&op, b);
    let tgt = free_module(&op, a);
    let images: Vec<Vec<u32>> = (0..b)
        .map(|l| (0..a).flat_map(|j| entries[j][l].iter().copied()).collect())
        .collect();
    free_module_map(&src, &tgt, &images)
}

/// The transpose with the data used to build it.
#[derive(Clone, Debug)]
pub struct Transpose {
    pub module: FdModule,
    pub presentation: FreePresentation,
    /// `Hom(P0, Λ) -> Hom(P1, Λ)`, whose cokernel is the transpose.
    pub dual_relations: ModMorphism,
    pub projection: ModMorphism,
}

/// `Tr M = coker(Hom(P0, Λ) -> Hom(P1, Λ))`, a module over `Λ^op`.
pub fn transpose(m: &FdModule) -> FdModule {
    transpose_with(m, CoverStrategy::Auto).module
}

pub fn transpose_with(m: &FdModule, strategy: CoverStrategy) -> Transpose {
    let presentation = FreePresentation::new(m, strategy);
    let dual_relations = dual_free_map(&presentation.relations);
    let (module, projection) = super::cokernel(&dual_relations);
    Transpose {
        module,
        presentation,
        dual_relations,
        projection,
    }
}

/// Lifts `h: M -> M'` along free covers: `cover' ∘ lift = h ∘ cover`.
fn lift_through_free(
    from_free: &ModMorphism,
    to_free: &ModMorphism,
    h: &FieldMatrix,
) -> ModMorphism {
    let src = from_free.source();
    let rank = src.free_rank().expect("free source");
    let images: Vec<Vec<u32>> = (0..rank)
        .map(|j| {
            let ej = FieldMatrix::column(src.field(), &free_generator(src, j));
            let rhs = &(h * from_free.matrix()) * &ej;
            to_free
                .matrix()
                .solve(&rhs)
                .expect("shapes")
                .expect("target map is onto the image of the source")
                .col(0)
        })
        .collect();
    free_module_map(src, to_free.source(), &images)
}

/// `Tr h: Tr M' -> Tr M` for `h: M -> M'`, well defined up to maps factoring
/// through projectives.
pub fn transpose_morphism(h: &ModMorphism) -> ModMorphism {
    transpose_morphism_with(h, CoverStrategy::Auto)
}

pub fn transpose_morphism_with(h: &ModMorphism, strategy: CoverStrategy) -> ModMorphism {
    let t = transpose_with(h.source(), strategy);
    let t2 = transpose_with(h.target(), strategy);
    let (p, p2) = (&t.presentation, &t2.presentation);
    let h0 = lift_through_free(&p.cover, &p2.cover, h.matrix());
    let h1 = lift_through_free(&p.relations, &p2.relations, h0.matrix());
    let h1_dual = dual_free_map(&h1);
    let sec = crate::exactla::Quotient::new(t2.dual_relations.matrix()).section();
    let matrix = &(t.projection.matrix() * h1_dual.matrix()) * &sec;
    ModMorphism::new_unchecked(t2.module, t.module, matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::truncated_poly;
    use crate::modcat::test_support::*;
    use crate::modcat::*;

    #[test]
    fn ext1_examples() {
        let a = k2x2();
        let s = simple_top(&a);
        let l = regular_module(&a);
        assert_eq!(ext1(&s, &s).unwrap().dim(), 1);
        for m in small_probes(&a) {
            assert_eq!(ext1(&l, &m).unwrap().dim(), 0);
        }
        let b = truncated_poly(2, 3).unwrap();
        let sb = simple_top(&b);
        assert_eq!(ext1(&sb, &sb).unwrap().dim(), 1);
    }

    #[test]
    fn ext1_is_cover_independent() {
        for alg in all_small_algebras() {
            let probes = small_probes(&alg);
            for m in &probes {
                for n in &probes {
                    let a = ext1_with(m, n, CoverStrategy::Basis).unwrap().dim();
                    let b = ext1_with(m, n, CoverStrategy::Minimal).unwrap().dim();
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn tensor_examples() {
        let a = k2x2();
        let op = a.opposite();
        let s = simple_top(&a);
        let s_op = simple_top(&op);
        let l_op = regular_module(&op);
        for n in small_probes(&a) {
            assert_eq!(tensor(&l_op, &n).unwrap().dim(), n.dim());
        }
        assert_eq!(tensor(&s_op, &s).unwrap().dim(), 1);
        assert_eq!(tor1(&s_op, &s).unwrap(), 1);
        assert!(tensor(&s, &s_op).is_ok());
    }

    #[test]
    fn hom_tensor_duality() {
        for alg in all_small_algebras() {
            let op = alg.opposite();
            let rights = small_probes(&op);
            let lefts = small_probes(&alg);
            for m in &rights {
                for n in &lefts {
                    let lhs = hom_space(n, &k_dual(m)).unwrap().dim();
                    assert_eq!(lhs, tensor(m, n).unwrap().dim());
                }
            }
        }
    }

    #[test]
    fn tor1_is_cover_independent() {
        for alg in all_small_algebras() {
            let op = alg.opposite();
            for m in small_probes(&op) {
                for n in small_probes(&alg) {
                    assert_eq!(
                        tor1_with(&m, &n, CoverStrategy::Basis).unwrap(),
                        tor1_with(&m, &n, CoverStrategy::Minimal).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn transpose_examples() {
        let a = k2x2();
        let s = simple_top(&a);
        let t = transpose_with(&s, CoverStrategy::Minimal);
        assert_eq!(t.module.dim(), 1);
        assert!(t.module.algebra().same(a.opposite().as_ref()));
        let l = regular_module(&a);
        let tl = transpose_with(&l, CoverStrategy::Minimal);
        assert_eq!(tl.module.dim(), 0);
    }

    #[test]
    fn tor_of_transpose_matches_stable_hom() {
        for alg in all_small_algebras() {
            let probes = small_probes(&alg);
            for m in &probes {
                let tr = transpose(m);
                for n in &probes {
                    assert_eq!(
                        tor1(&tr, n).unwrap(),
                        stable_hom_proj(m, n).unwrap().dim(),
                        "{} {:?} {:?}",
                        alg.name(),
                        m,
                        n
                    );
                }
            }
        }
    }

    #[test]
    fn transpose_of_morphisms_is_linear_and_functorial_on_identity() {
        for alg in all_small_algebras() {
            let probes = small_probes(&alg);
            for x in &probes {
                for y in &probes {
                    for h in hom_space(x, y).unwrap().basis() {
                        let th = transpose_morphism(&h);
                        assert!(ModMorphism::new(
                            th.source().clone(),
                            th.target().clone(),
                            th.matrix().clone()
                        )
                        .is_ok());
                    }
                }
                let tid = transpose_morphism(&ModMorphism::identity(x));
                let t = transpose(x);
                let diff = tid.sub(&ModMorphism::identity(&t)).unwrap();
                // identity up to maps through projectives
                let st = stable_hom_proj(&t, &t).unwrap();
                let h = hom_space(&t, &t).unwrap();
                let q = st.relation_quotient();
                assert!(q.contains(&h.coordinates(diff.matrix())));
            }
        }
    }
}

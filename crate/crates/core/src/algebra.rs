//! Finite-dimensional associative unital algebras over `F_p`, given by
//! structure constants `b_i * b_j = sum_k c[i][j][k] b_k`.

use std::fmt;
use std::sync::{Arc, OnceLock, Weak};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactla::{FieldMatrix, PrimeField, Quotient};

pub struct Algebra {
    name: String,
    field: PrimeField,
    dim: usize,
    labels: Vec<String>,
    mul: Vec<u32>,
    unit: Vec<u32>,
    radical: Option<Vec<Vec<u32>>>,
    generators: Vec<usize>,
    opposite: OnceLock<Arc<Algebra>>,
    origin: Option<Weak<Algebra>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("name", &self.name)
            .field("field", &self.field)
            .field("dim", &self.dim)
            .field("labels", &self.labels)
            .finish_non_exhaustive()
    }
}

impl Algebra {
    /// Validates the structure constants (associativity, unit, radical) and
    /// returns a shared handle.
    pub fn new(
        name: impl Into<String>,
        field: PrimeField,
        labels: Vec<String>,
        mul: Vec<u32>,
        unit: Vec<u32>,
        radical: Option<Vec<Vec<u32>>>,
    ) -> Result<Arc<Algebra>> {
        let name = name.into();
        let dim = labels.len();
        let invalid = |reason: String| Error::InvalidAlgebra {
            name: name.clone(),
            reason,
        };
        if mul.len() != dim * dim * dim {
            return Err(invalid(format!(
                "expected {} structure constants, got {}",
                dim * dim * dim,
                mul.len()
            )));
        }
        if unit.len() != dim {
            return Err(invalid(format!("unit has length {}, expected {dim}", unit.len())));
        }
        if let Some(&bad) = mul.iter().chain(&unit).find(|&&x| x as u64 >= field.p()) {
            return Err(invalid(format!("residue {bad} out of range for {field}")));
        }
        let mut alg = Algebra {
            name: name.clone(),
            field,
            dim,
            labels,
            mul,
            unit,
            radical: None,
            generators: Vec::new(),
            opposite: OnceLock::new(),
            origin: None,
        };
        alg.check_associative().map_err(&invalid)?;
        alg.check_unit().map_err(&invalid)?;
        if let Some(rad) = radical {
            alg.check_radical(&rad).map_err(&invalid)?;
            alg.radical = Some(rad);
        }
        alg.generators = alg.compute_generators();
        Ok(Arc::new(alg))
    }

    #[inline]
    fn c(&self, i: usize, j: usize, k: usize) -> u32 {
        self.mul[(i * self.dim + j) * self.dim + k]
    }

    fn check_associative(&self) -> std::result::Result<(), String> {
        let n = self.dim;
        let f = self.field;
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for m in 0..n {
                        let mut lhs = 0;
                        let mut rhs = 0;
                        for k in 0..n {
                            lhs = f.add(lhs, f.mul(self.c(i, j, k), self.c(k, l, m)));
                            rhs = f.add(rhs, f.mul(self.c(j, l, k), self.c(i, k, m)));
                        }
                        if lhs != rhs {
                            return Err(format!(
                                "associativity fails for (b{i} b{j}) b{l} vs b{i} (b{j} b{l}) \
                                 ({} {} {}) at coefficient {m}",
                                self.labels[i], self.labels[j], self.labels[l]
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> std::result::Result<(), String> {
        for j in 0..self.dim {
            let e = basis_vector(self.dim, j);
            if self.product(&self.unit, &e) != e {
                return Err(format!("1 * {} != {}", self.labels[j], self.labels[j]));
            }
            if self.product(&e, &self.unit) != e {
                return Err(format!("{} * 1 != {}", self.labels[j], self.labels[j]));
            }
        }
        Ok(())
    }

    fn check_radical(&self, rad: &[Vec<u32>]) -> std::result::Result<(), String> {
        let n = self.dim;
        let f = self.field;
        for (idx, r) in rad.iter().enumerate() {
            if r.len() != n {
                return Err(format!("radical element {idx} has length {}", r.len()));
            }
            if let Some(&bad) = r.iter().find(|&&x| x as u64 >= f.p()) {
                return Err(format!("radical element {idx} has residue {bad}"));
            }
            let mut power = r.clone();
            for _ in 0..n {
                power = self.product(&power, r);
            }
            if power.iter().any(|&x| x != 0) {
                return Err(format!("radical element {idx} is not nilpotent"));
            }
        }
        let span = FieldMatrix::from_columns(f, n, rad);
        let q = Quotient::new(&span);
        for (idx, r) in rad.iter().enumerate() {
            for i in 0..n {
                let e = basis_vector(n, i);
                if !q.contains(&self.product(&e, r)) || !q.contains(&self.product(r, &e)) {
                    return Err(format!(
                        "radical span is not a two-sided ideal ({} times element {idx})",
                        self.labels[i]
                    ));
                }
            }
        }
        Ok(())
    }

    /// Basis indices which, together with the unit, generate the algebra.
    fn compute_generators(&self) -> Vec<usize> {
        let n = self.dim;
        let f = self.field;
        let mut span: Vec<Vec<u32>> = vec![self.unit.clone()];
        let mut gens = Vec::new();
        let rank = |vs: &Vec<Vec<u32>>| FieldMatrix::from_columns(f, n, vs).rank();
        for i in 0..n {
            let e = basis_vector(n, i);
            let mut trial = span.clone();
            trial.push(e.clone());
            if rank(&trial) == rank(&span) {
                continue;
            }
            gens.push(i);
            span = trial;
            loop {
                let before = rank(&span);
                let mut grown = span.clone();
                for a in &span {
                    for b in &span {
                        grown.push(self.product(a, b));
                    }
                }
                let basis = FieldMatrix::from_columns(f, n, &grown).image_basis();
                span = (0..basis.cols()).map(|c| basis.col(c)).collect();
                if span.len() == before {
                    break;
                }
            }
            if span.len() == n {
                break;
            }
        }
        gens
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> u32 {
        self.c(i, j, k)
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    pub fn radical_basis(&self) -> Option<&[Vec<u32>]> {
        self.radical.as_deref()
    }

    /// Basis indices generating the algebra together with the unit; module
    /// laws and Hom equations only need these.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Product of two coefficient vectors.
    pub fn product(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = self.dim;
        let f = self.field;
        let mut out = vec![0u32; n];
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b[j] == 0 {
                    continue;
                }
                let s = f.mul(a[i], b[j]);
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if c != 0 {
                        *o = f.add(*o, f.mul(s, c));
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `b_i` on the regular module.
    pub fn left_multiplication(&self, i: usize) -> FieldMatrix {
        FieldMatrix::from_fn(self.field, self.dim, self.dim, |k, j| self.c(i, j, k))
    }

    /// Matrix of left multiplication by an arbitrary element.
    pub fn left_multiplication_by(&self, a: &[u32]) -> FieldMatrix {
        let f = self.field;
        let mut m = FieldMatrix::zeros(f, self.dim, self.dim);
        for (i, &ai) in a.iter().enumerate() {
            if ai != 0 {
                m = m.add(&self.left_multiplication(i).scale(ai)).expect("same shape");
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.c(i, j, k) == self.c(j, i, k))))
    }

    /// Basis elements `b` with `b * b = b`.
    pub fn basis_idempotents(&self) -> Vec<usize> {
        (0..self.dim)
            .filter(|&i| {
                let e = basis_vector(self.dim, i);
                self.product(&e, &e) == e
            })
            .collect()
    }

    /// The opposite algebra `c'[i][j][k] = c[j][i][k]`.
    ///
    /// The result is cached, and the opposite of an opposite is the original
    /// handle while it is alive.
    pub fn opposite(self: &Arc<Self>) -> Arc<Algebra> {
        if let Some(orig) = self.origin.as_ref().and_then(Weak::upgrade) {
            return orig;
        }
        self.opposite
            .get_or_init(|| {
                let n = self.dim;
                let mut mul = vec![0u32; n * n * n];
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            mul[(i * n + j) * n + k] = self.c(j, i, k);
                        }
                    }
                }
                let name = match self.name.strip_suffix("^op") {
                    Some(base) => base.to_string(),
                    None => format!("{}^op", self.name),
                };
                let mut op = Algebra {
                    name,
                    field: self.field,
                    dim: n,
                    labels: self.labels.clone(),
                    mul,
                    unit: self.unit.clone(),
                    radical: self.radical.clone(),
                    generators: Vec::new(),
                    opposite: OnceLock::new(),
                    origin: Some(Arc::downgrade(self)),
                };
                op.generators = op.compute_generators();
                Arc::new(op)
            })
            .clone()
    }

    /// Structural equality: same field, dimension, constants and unit.
    pub fn same(&self, other: &Algebra) -> bool {
        std::ptr::eq(self, other)
            || (self.field == other.field
                && self.dim == other.dim
                && self.mul == other.mul
                && self.unit == other.unit)
    }

    /// SHA-256 over the field, constants and unit.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.field.p().to_le_bytes());
        h.update((self.dim as u64).to_le_bytes());
        for &x in self.mul.iter().chain(&self.unit) {
            h.update(x.to_le_bytes());
        }
        let digest = h.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn dual_bimodule_data(self: &Arc<Self>) -> DualityData {
        DualityData {
            algebra: self.clone(),
            opposite: self.opposite(),
        }
    }

    pub fn to_file(&self) -> AlgebraFile {
        let n = self.dim;
        let mut triples = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let coeffs: Vec<u64> = (0..n).map(|k| self.c(i, j, k) as u64).collect();
                if coeffs.iter().any(|&x| x != 0) {
                    triples.push((i, j, coeffs));
                }
            }
        }
        AlgebraFile {
            name: self.name.clone(),
            p: self.field.p(),
            dim: n,
            basis: self.labels.clone(),
            unit: self.unit.iter().map(|&x| x as u64).collect(),
            mul: MulSpec::Triples(triples),
            radical_basis: self
                .radical
                .as_ref()
                .map(|r| r.iter().map(|v| v.iter().map(|&x| x as u64).collect()).collect()),
        }
    }

    pub fn from_file(file: &AlgebraFile) -> Result<Arc<Algebra>> {
        let field = PrimeField::new(file.p)?;
        let n = file.dim;
        let invalid = |reason: String| Error::InvalidAlgebra {
            name: file.name.clone(),
            reason,
        };
        if file.basis.len() != n {
            return Err(invalid(format!("{} basis labels for dim {n}", file.basis.len())));
        }
        let residue = |x: u64| field.check(x).map_err(|e| invalid(e.to_string()));
        let vector = |v: &[u64], what: &str| -> Result<Vec<u32>> {
            if v.len() != n {
                return Err(invalid(format!("{what} has length {}, expected {n}", v.len())));
            }
            v.iter().map(|&x| residue(x)).collect()
        };
        let mut mul = vec![0u32; n * n * n];
        match &file.mul {
            MulSpec::Triples(ts) => {
                for (i, j, coeffs) in ts {
                    if *i >= n || *j >= n {
                        return Err(invalid(format!("product index ({i}, {j}) out of range")));
                    }
                    let v = vector(coeffs, &format!("product b{i} b{j}"))?;
                    mul[(i * n + j) * n..(i * n + j + 1) * n].copy_from_slice(&v);
                }
            }
            MulSpec::Dense(t) => {
                if t.len() != n || t.iter().any(|row| row.len() != n) {
                    return Err(invalid("dense mul tensor must be dim x dim x dim".into()));
                }
                for (i, row) in t.iter().enumerate() {
                    for (j, coeffs) in row.iter().enumerate() {
                        let v = vector(coeffs, &format!("product b{i} b{j}"))?;
                        mul[(i * n + j) * n..(i * n + j + 1) * n].copy_from_slice(&v);
                    }
                }
            }
        }
        let unit = vector(&file.unit, "unit")?;
        let radical = file
            .radical_basis
            .as_ref()
            .map(|r| r.iter().map(|v| vector(v, "radical element")).collect::<Result<Vec<_>>>())
            .transpose()?;
        Algebra::new(file.name.clone(), field, file.basis.clone(), mul, unit, radical)
    }
}

/// Pairing of an algebra with its opposite, used to move modules across the
/// `k`-linear duality `D_k = hom_k(-, F_p)`.
#[derive(Clone, Debug)]
pub struct DualityData {
    pub algebra: Arc<Algebra>,
    pub opposite: Arc<Algebra>,
}

impl DualityData {
    /// Action of `b_i` on `D_k M` given its action on `M`.
    pub fn dual_action(&self, action: &FieldMatrix) -> FieldMatrix {
        action.transpose()
    }
}

pub(crate) fn basis_vector(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0u32; n];
    v[i] = 1;
    v
}

/// On-disk algebra description.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraFile {
    pub name: String,
    pub p: u64,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<u64>,
    pub mul: MulSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical_basis: Option<Vec<Vec<u64>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum MulSpec {
    /// `[i, j, [coefficients of b_i b_j]]`; omitted pairs multiply to zero.
    Triples(Vec<(usize, usize, Vec<u64>)>),
    Dense(Vec<Vec<Vec<u64>>>),
}

/// `F_p[x]/(x^n)` with basis `1, x, ..., x^(n-1)`.
pub fn truncated_poly(p: u64, n: usize) -> Result<Arc<Algebra>> {
    let field = PrimeField::new(p)?;
    if n == 0 {
        return Err(Error::InvalidAlgebra {
            name: format!("k{p}x0"),
            reason: "n must be at least 1".into(),
        });
    }
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    let mut mul = vec![0u32; n * n * n];
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                mul[(i * n + j) * n + i + j] = 1;
            }
        }
    }
    let radical = (1..n).map(|i| basis_vector(n, i)).collect();
    Algebra::new(
        format!("k{p}x{n}"),
        field,
        labels,
        mul,
        basis_vector(n, 0),
        Some(radical),
    )
}

/// Path algebra of the linearly oriented quiver `1 -> 2 -> ... -> n`.
///
/// Basis: paths `[i..j]` (`i <= j`) ordered by length, then source. Products
/// compose like functions: `[j..k] * [i..j] = [i..k]`, all other products of
/// paths vanish. Left modules are representations of the quiver.
pub fn path_algebra_an(p: u64, n: usize) -> Result<Arc<Algebra>> {
    let field = PrimeField::new(p)?;
    if n == 0 {
        return Err(Error::InvalidAlgebra {
            name: "A0".into(),
            reason: "n must be at least 1".into(),
        });
    }
    let mut paths = Vec::new();
    for len in 0..n {
        for s in 1..=n - len {
            paths.push((s, s + len));
        }
    }
    let d = paths.len();
    let index = |s: usize, t: usize| paths.iter().position(|&q| q == (s, t));
    let mut mul = vec![0u32; d * d * d];
    for (a, &(s1, t1)) in paths.iter().enumerate() {
        for (b, &(s2, t2)) in paths.iter().enumerate() {
            // a * b means: first b, then a
            if t2 == s1 {
                let k = index(s2, t1).expect("composite path exists");
                mul[(a * d + b) * d + k] = 1;
            }
        }
    }
    let labels = paths
        .iter()
        .map(|&(s, t)| {
            if s == t {
                format!("e{s}")
            } else {
                format!("p{s}-{t}")
            }
        })
        .collect();
    let mut unit = vec![0u32; d];
    for s in 1..=n {
        unit[index(s, s).unwrap()] = 1;
    }
    let radical = paths
        .iter()
        .enumerate()
        .filter(|(_, &(s, t))| s != t)
        .map(|(i, _)| basis_vector(d, i))
        .collect();
    Algebra::new(format!("A{n}"), field, labels, mul, unit, Some(radical))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_poly_basics() {
        let a = truncated_poly(2, 2).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.product(&[0, 1], &[0, 1]), vec![0, 0]);
        assert_eq!(a.radical_basis().unwrap(), &[vec![0, 1]]);
        assert!(a.is_commutative());

        let b = truncated_poly(3, 3).unwrap();
        assert_eq!(b.product(&[0, 1, 0], &[0, 0, 1]), vec![0, 0, 0]);
        assert_eq!(b.product(&[0, 1, 0], &[0, 1, 0]), vec![0, 0, 1]);
    }

    #[test]
    fn path_algebra_a2() {
        let a = path_algebra_an(2, 2).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.labels(), &["e1", "e2", "p1-2"]);
        let (e1, e2, al) = (vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]);
        assert_eq!(a.product(&al, &al), vec![0, 0, 0]);
        assert_eq!(a.product(&e1, &e2), vec![0, 0, 0]);
        assert_eq!(a.product(&e1, &e1), e1);
        // first e1, then the arrow
        assert_eq!(a.product(&al, &e1), al);
        assert_eq!(a.product(&e2, &al), al);
        assert_eq!(a.product(&e1, &al), vec![0, 0, 0]);
        assert!(!a.is_commutative());
        assert_eq!(a.basis_idempotents(), vec![0, 1]);
    }

    #[test]
    fn opposite_reverses_arrows() {
        let a = path_algebra_an(3, 2).unwrap();
        let op = a.opposite();
        let (e1, e2, al) = (vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]);
        assert_eq!(op.product(&e1, &al), al);
        assert_eq!(op.product(&al, &e2), al);
        assert_eq!(op.product(&al, &e1), vec![0, 0, 0]);
        assert!(Arc::ptr_eq(&op.opposite(), &a));
        assert!(Arc::ptr_eq(&a.opposite(), &op));
    }

    #[test]
    fn opposite_of_commutative_is_identical() {
        let a = truncated_poly(5, 4).unwrap();
        let op = a.opposite();
        assert!(a.same(&op));
        assert_eq!(op.name(), "k5x4^op");
        assert_eq!(op.opposite().name(), "k5x4");
    }

    #[test]
    fn opposite_is_involution_on_constants() {
        let a = path_algebra_an(2, 3).unwrap();
        let file = a.to_file();
        let fresh = Algebra::from_file(&file).unwrap();
        let opop = fresh.opposite().opposite();
        assert!(opop.same(&a));
        assert_eq!(opop.to_file(), file);
    }

    #[test]
    fn builders_pass_checks() {
        for p in [2, 3, 5] {
            for n in 1..5 {
                assert_eq!(truncated_poly(p, n).unwrap().dim(), n);
                assert_eq!(path_algebra_an(p, n).unwrap().dim(), n * (n + 1) / 2);
            }
        }
    }

    #[test]
    fn generators_are_small() {
        assert_eq!(truncated_poly(2, 4).unwrap().generators(), &[1]);
        let a3 = path_algebra_an(2, 3).unwrap();
        assert!(a3.generators().len() <= 5);
    }

    #[test]
    fn loader_rejects_non_associative() {
        let mut file = truncated_poly(2, 3).unwrap().to_file();
        if let MulSpec::Triples(ts) = &mut file.mul {
            // x * x^2 = x makes (x x) x = 0 but x (x x) = x
            ts.push((1, 2, vec![0, 1, 0]));
        }
        let err = Algebra::from_file(&file).unwrap_err().to_string();
        assert!(err.contains("associativity"), "{err}");
    }

    #[test]
    fn loader_rejects_bad_unit_and_radical() {
        let mut file = truncated_poly(2, 2).unwrap().to_file();
        file.unit = vec![0, 1];
        assert!(Algebra::from_file(&file).unwrap_err().to_string().contains('1'));

        let mut file = truncated_poly(2, 2).unwrap().to_file();
        file.radical_basis = Some(vec![vec![1, 0]]);
        assert!(Algebra::from_file(&file)
            .unwrap_err()
            .to_string()
            .contains("nilpotent"));
    }

    #[test]
    fn dense_and_triple_forms_agree() {
        let json = r#"{"name":"k2x2","p":2,"dim":2,"basis":["1","x"],"unit":[1,0],
            "mul":[[[1,0],[0,1]],[[0,1],[0,0]]],"radical_basis":[[0,1]]}"#;
        let file: AlgebraFile = serde_json::from_str(json).unwrap();
        let a = Algebra::from_file(&file).unwrap();
        assert!(a.same(&truncated_poly(2, 2).unwrap()));
        let round: AlgebraFile =
            serde_json::from_str(&serde_json::to_string(&a.to_file()).unwrap()).unwrap();
        assert!(matches!(round.mul, MulSpec::Triples(_)));
        assert!(Algebra::from_file(&round).unwrap().same(&a));
    }

    #[test]
    fn fingerprint_is_stable() {
        let a = truncated_poly(2, 2).unwrap();
        let b = truncated_poly(2, 2).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert_ne!(a.fingerprint(), truncated_poly(3, 2).unwrap().fingerprint());
    }

    #[test]
    fn duality_data_transposes() {
        let a = path_algebra_an(2, 2).unwrap();
        let d = a.dual_bimodule_data();
        let m = a.left_multiplication(2);
        assert_eq!(d.dual_action(&m), m.transpose());
        assert!(Arc::ptr_eq(&d.opposite, &a.opposite()));
    }
}

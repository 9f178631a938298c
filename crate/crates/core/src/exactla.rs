//! Dense linear algebra over prime fields.
//!
//! Everything here is exact and deterministic: pivots are always chosen as the
//! leftmost column with a nonzero entry at or below the current row, and the
//! first such row is used. Empty matrices (`0 x n`, `n x 0`) are ordinary
//! values.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The field `F_p` for a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        let mut d = 2u64;
        while d * d <= p {
            if p % d == 0 {
                return Err(Error::NotPrime(p));
            }
            d += 1;
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p - b as u64) % self.p) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            (self.p - a as u64) as u32
        }
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        // Fermat: a^(p-2)
        let mut base = a as u64 % self.p;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc as u32
    }

    pub fn check(self, value: u64) -> Result<u32> {
        if value < self.p {
            Ok(value as u32)
        } else {
            Err(Error::ResidueOutOfRange { value, p: self.p })
        }
    }
}

impl TryFrom<u64> for PrimeField {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u64 {
    fn from(f: PrimeField) -> u64 {
        f.p
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// A dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldMatrix<{}>{}x{}", self.field, self.rows, self.cols)?;
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[] ({}x{})", self.rows, self.cols);
        }
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from raw residues; every entry must already lie in `[0, p)`.
    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims(
                "from_vec",
                format!("{} entries for a {rows}x{cols} matrix", data.len()),
            ));
        }
        if let Some(&bad) = data.iter().find(|&&x| x as u64 >= field.p()) {
            return Err(Error::ResidueOutOfRange {
                value: bad as u64,
                p: field.p(),
            });
        }
        Ok(FieldMatrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from rows of residues. An empty list gives a `0 x 0` matrix.
    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(field, rows, cols)
    }

    /// Like [`FieldMatrix::from_rows`] but with an explicit column count, so
    /// that `0 x n` matrices can be described.
    pub fn from_rows_with_cols(field: PrimeField, rows: &[Vec<u64>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::dims(
                    "from_rows",
                    format!("row {i} has {} entries, expected {cols}", row.len()),
                ));
            }
            for &x in row {
                data.push(field.check(x)?);
            }
        }
        Ok(FieldMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Reduces arbitrary signed integers modulo `p`.
    pub fn from_ints(field: PrimeField, rows: usize, cols: usize, ints: &[i64]) -> Self {
        assert_eq!(ints.len(), rows * cols);
        FieldMatrix {
            field,
            rows,
            cols,
            data: ints.iter().map(|&x| field.reduce(x)).collect(),
        }
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u32,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = f(r, c);
                debug_assert!((v as u64) < field.p());
                data.push(v);
            }
        }
        FieldMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// A single column from a vector of residues.
    pub fn column(field: PrimeField, v: &[u32]) -> Self {
        FieldMatrix {
            field,
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: PrimeField, rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, &x) in col.iter().enumerate() {
                m.data[r * m.cols + c] = x;
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub(crate) fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        FieldMatrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r))
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::dims(
                "matmul",
                format!(
                    "{}x{} times {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            ));
        }
        let p = self.field.p();
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            let acc = &mut out[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (x, &b) in acc.iter_mut().zip(orow) {
                    *x = (*x + a * b as u64) % p;
                }
            }
        }
        Ok(FieldMatrix {
            field: self.field,
            rows: self.rows,
            cols: other.cols,
            data: out.into_iter().map(|x| x as u32).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dims(
                "add",
                format!(
                    "{}x{} plus {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            ));
        }
        let f = self.field;
        Ok(FieldMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(self.field.neg(1))
    }

    pub fn scale(&self, s: u32) -> Self {
        let f = self.field;
        FieldMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, s)).collect(),
        }
    }

    /// Block diagonal `diag(self, other)`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let mut m = Self::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        Ok(m)
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::dims(
                "vstack",
                format!("{} vs {} columns", self.cols, other.cols),
            ));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FieldMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(Error::dims(
                "hstack",
                format!("{} vs {} rows", self.rows, other.rows),
            ));
        }
        Ok(FieldMatrix::from_fn(
            self.field,
            self.rows,
            self.cols + other.cols,
            |r, c| {
                if c < self.cols {
                    self.get(r, c)
                } else {
                    other.get(r, c - self.cols)
                }
            },
        ))
    }

    /// Kronecker product; row `(i, k)` sits at `i * other.rows + k`.
    pub fn kron(&self, other: &Self) -> Self {
        let f = self.field;
        FieldMatrix::from_fn(f, self.rows * other.rows, self.cols * other.cols, |r, c| {
            let (i, k) = (r / other.rows, r % other.rows);
            let (j, l) = (c / other.cols, c % other.cols);
            f.mul(self.get(i, j), other.get(k, l))
        })
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        FieldMatrix::from_fn(self.field, self.rows, idx.len(), |r, c| self.get(r, idx[c]))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        FieldMatrix::from_fn(self.field, idx.len(), self.cols, |r, c| self.get(idx[r], c))
    }

    /// Contiguous block `[r0, r0+h) x [c0, c0+w)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        FieldMatrix::from_fn(self.field, h, w, |r, c| self.get(r0 + r, c0 + c))
    }

    /// Reduced row echelon form with its strictly increasing pivot columns.
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let p = f.p();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]) as u64;
            for j in c..cols {
                let x = &mut self.data[r * cols + j];
                *x = (*x as u64 * inv % p) as u32;
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            for other in before
                .chunks_exact_mut(cols)
                .chain(after.chunks_exact_mut(cols))
            {
                let factor = other[c] as u64;
                if factor == 0 {
                    continue;
                }
                let nf = p - factor;
                for j in c..cols {
                    other[j] = ((other[j] as u64 + nf * pivot_row[j] as u64) % p) as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one column per free variable, free
    /// columns in increasing order.
    pub fn kernel_basis(&self) -> FieldMatrix {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots)
    }

    /// Columns of `self` at the pivot positions: a basis of the column space
    /// drawn from the original columns.
    pub fn image_basis(&self) -> FieldMatrix {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Some `X` with `self * X = b`, free variables set to zero, or `None`.
    pub fn solve(&self, b: &FieldMatrix) -> Result<Option<FieldMatrix>> {
        self.same_field(b)?;
        if self.rows != b.rows {
            return Err(Error::dims(
                "solve",
                format!("{} rows vs right-hand side with {} rows", self.rows, b.rows),
            ));
        }
        let aug = self.hstack(b)?;
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = FieldMatrix::zeros(self.field, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(i, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<FieldMatrix> {
        if !self.is_square() {
            return None;
        }
        let id = FieldMatrix::identity(self.field, self.rows);
        if self.rows == 0 {
            return Some(id);
        }
        let (r, pivots) = self.hstack(&id).ok()?.rref();
        if pivots.len() < self.rows || pivots[self.rows - 1] >= self.cols {
            return None;
        }
        Some(r.block(0, self.cols, self.rows, self.rows))
    }
}

fn kernel_from_rref(r: &FieldMatrix, pivots: &[usize]) -> FieldMatrix {
    let f = r.field;
    let cols = r.cols;
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut k = FieldMatrix::zeros(f, cols, free.len());
    for (j, &fc) in free.iter().enumerate() {
        k.set(fc, j, 1);
        for (i, &pc) in pivots.iter().enumerate() {
            k.set(pc, j, f.neg(r.get(i, fc)));
        }
    }
    k
}

impl Mul for &FieldMatrix {
    type Output = FieldMatrix;

    /// Panics on shape mismatch; use [`FieldMatrix::matmul`] for a checked product.
    fn mul(self, rhs: &FieldMatrix) -> FieldMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

/// Coordinates on a quotient `F_p^n / U`.
///
/// `U` is kept in reduced row echelon form; the quotient is identified with
/// the coordinates at the non-pivot positions after reduction.
#[derive(Clone, Debug)]
pub struct Quotient {
    field: PrimeField,
    ambient: usize,
    reduced: FieldMatrix,
    pivots: Vec<usize>,
    complement: Vec<usize>,
}

impl Quotient {
    /// Quotient of `F_p^n` by the span of the columns of `span` (`n x k`).
    pub fn new(span: &FieldMatrix) -> Self {
        let (reduced, pivots) = span.transpose().rref();
        let ambient = span.rows();
        let mut is_pivot = vec![false; ambient];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let complement = (0..ambient).filter(|&c| !is_pivot[c]).collect();
        let reduced = reduced.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
        Quotient {
            field: span.field(),
            ambient,
            reduced,
            pivots,
            complement,
        }
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn sub_rank(&self) -> usize {
        self.pivots.len()
    }

    /// `dim x ambient`, full row rank, kills the subspace.
    pub fn projection(&self) -> FieldMatrix {
        let f = self.field;
        let mut pos = vec![usize::MAX; self.ambient];
        for (k, &c) in self.complement.iter().enumerate() {
            pos[c] = k;
        }
        let mut m = FieldMatrix::zeros(f, self.dim(), self.ambient);
        for &c in &self.complement {
            m.set(pos[c], c, 1);
        }
        for (i, &pc) in self.pivots.iter().enumerate() {
            for (k, &c) in self.complement.iter().enumerate() {
                m.set(k, pc, f.neg(self.reduced.get(i, c)));
            }
        }
        m
    }

    /// `ambient x dim` right inverse of [`Quotient::projection`].
    pub fn section(&self) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(self.field, self.ambient, self.dim());
        for (k, &c) in self.complement.iter().enumerate() {
            m.set(c, k, 1);
        }
        m
    }

    /// Whether the column vector `v` lies in the subspace.
    pub fn contains(&self, v: &[u32]) -> bool {
        let proj = self.projection();
        let col = FieldMatrix::column(self.field, v);
        (&proj * &col).is_zero()
    }
}

/// A full-column-rank basis `B` (`n x d`) with fast coordinate extraction.
///
/// Coordinates are read off a set of `d` rows on which `B` is invertible, so
/// vectors outside the span get meaningless coordinates; use
/// [`ColumnBasis::try_coordinates`] when membership is not known.
#[derive(Clone, Debug)]
pub struct ColumnBasis {
    basis: FieldMatrix,
    rows: Vec<usize>,
    inv: FieldMatrix,
}

impl ColumnBasis {
    /// `basis` must have linearly independent columns.
    pub fn new(basis: FieldMatrix) -> Self {
        let (_, rows) = basis.transpose().rref();
        assert_eq!(rows.len(), basis.cols(), "ColumnBasis needs independent columns");
        let inv = basis
            .select_rows(&rows)
            .inverse()
            .expect("pivot rows of an independent basis are invertible");
        ColumnBasis { basis, rows, inv }
    }

    pub fn basis(&self) -> &FieldMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    /// Coordinates of each column of `v`, assuming they lie in the span.
    pub fn coordinates(&self, v: &FieldMatrix) -> FieldMatrix {
        &self.inv * &v.select_rows(&self.rows)
    }

    /// Coordinates of each column of `v`, or `None` if some column is outside the span.
    pub fn try_coordinates(&self, v: &FieldMatrix) -> Option<FieldMatrix> {
        let c = self.coordinates(v);
        (&self.basis * &c == *v).then_some(c)
    }
}

/// Span of the columns of several matrices with the same row count.
pub fn column_span(field: PrimeField, rows: usize, parts: &[FieldMatrix]) -> FieldMatrix {
    let mut acc = FieldMatrix::zeros(field, rows, 0);
    for p in parts {
        acc = acc.hstack(p).expect("column_span row mismatch");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn m(p: u64, rows: &[&[u64]]) -> FieldMatrix {
        let rows: Vec<Vec<u64>> = rows.iter().map(|r| r.to_vec()).collect();
        FieldMatrix::from_rows(f(p), &rows).unwrap()
    }

    #[test]
    fn primes_are_checked() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(7919).is_ok());
        assert!(matches!(PrimeField::new(1), Err(Error::NotPrime(1))));
        assert!(matches!(PrimeField::new(9), Err(Error::NotPrime(9))));
        assert!(PrimeField::new(1 << 40).is_err());
    }

    #[test]
    fn field_inverse() {
        let k = f(7);
        for a in 1..7 {
            assert_eq!(k.mul(a, k.inv(a)), 1);
        }
    }

    #[test]
    fn rref_examples() {
        let (r, piv) = m(2, &[&[1, 1], &[1, 1]]).rref();
        assert_eq!(r, m(2, &[&[1, 1], &[0, 0]]));
        assert_eq!(piv, vec![0]);

        let id = FieldMatrix::identity(f(5), 3);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2]));

        let (r, piv) = m(3, &[&[0, 1], &[1, 0]]).rref();
        assert_eq!(r, FieldMatrix::identity(f(3), 2));
        assert_eq!(piv, vec![0, 1]);
    }

    #[test]
    fn kernel_examples() {
        let k = FieldMatrix::identity(f(2), 3).kernel_basis();
        assert_eq!((k.rows(), k.cols()), (3, 0));

        let k = FieldMatrix::zeros(f(2), 2, 2).kernel_basis();
        assert_eq!(k, FieldMatrix::identity(f(2), 2));

        let k = m(2, &[&[1, 1]]).kernel_basis();
        assert_eq!(k, m(2, &[&[1], &[1]]));
    }

    #[test]
    fn solve_examples() {
        let b = m(5, &[&[3, 1], &[4, 0]]);
        let x = FieldMatrix::identity(f(5), 2).solve(&b).unwrap().unwrap();
        assert_eq!(x, b);

        let x = m(2, &[&[1, 1]]).solve(&m(2, &[&[1]])).unwrap().unwrap();
        assert_eq!(x, m(2, &[&[1], &[0]]));

        assert!(m(2, &[&[0]]).solve(&m(2, &[&[1]])).unwrap().is_none());
        assert!(matches!(
            m(2, &[&[1, 1]]).solve(&m(2, &[&[1], &[0]])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn misc_examples() {
        assert_eq!(FieldMatrix::identity(f(3), 4).rank(), 4);
        let d = m(7, &[&[2]]).direct_sum(&m(7, &[&[5]])).unwrap();
        assert_eq!(d, m(7, &[&[2, 0], &[0, 5]]));
        assert_eq!(m(5, &[&[1, 2], &[2, 4]]).rank(), 1);
        assert!(m(2, &[&[1]]).matmul(&m(2, &[&[1, 0], &[0, 1]])).is_err());
        assert!(matches!(
            m(2, &[&[1]]).add(&m(3, &[&[1]])),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn empty_matrices() {
        let k = f(3);
        let a = FieldMatrix::zeros(k, 0, 4);
        let b = FieldMatrix::zeros(k, 4, 0);
        assert_eq!((&a * &FieldMatrix::zeros(k, 4, 2)).rows(), 0);
        assert_eq!((&b * &FieldMatrix::zeros(k, 0, 3)), FieldMatrix::zeros(k, 4, 3));
        assert_eq!(a.kernel_basis(), FieldMatrix::identity(k, 4));
        assert_eq!(b.rank(), 0);
        assert_eq!(FieldMatrix::zeros(k, 0, 0).inverse(), Some(FieldMatrix::zeros(k, 0, 0)));
        let x = b.solve(&FieldMatrix::zeros(k, 4, 1)).unwrap().unwrap();
        assert_eq!((x.rows(), x.cols()), (0, 1));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(5, &[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, FieldMatrix::identity(f(5), 2));
        assert!(m(5, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn quotient_projection_kills_subspace() {
        let span = m(3, &[&[1, 0], &[2, 0], &[0, 1], &[1, 1]]);
        let q = Quotient::new(&span);
        assert_eq!(q.dim(), 2);
        let pr = q.projection();
        assert!((&pr * &span).is_zero());
        assert_eq!(&pr * &q.section(), FieldMatrix::identity(f(3), 2));
        assert!(q.contains(&[1, 2, 0, 1]));
        assert!(!q.contains(&[1, 0, 0, 0]));
    }

    fn arb_matrix() -> impl Strategy<Value = FieldMatrix> {
        (prop::sample::select(vec![2u64, 3, 5, 7]), 0usize..6, 0usize..6).prop_flat_map(
            |(p, r, c)| {
                prop::collection::vec(0..p, r * c).prop_map(move |v| {
                    FieldMatrix::from_vec(f(p), r, c, v.into_iter().map(|x| x as u32).collect())
                        .unwrap()
                })
            },
        )
    }

    proptest! {
        #[test]
        fn rank_nullity(a in arb_matrix()) {
            let k = a.kernel_basis();
            prop_assert_eq!(a.rank() + k.cols(), a.cols());
            prop_assert!((&a * &k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn rref_idempotent_and_deterministic(a in arb_matrix()) {
            let (r, piv) = a.rref();
            prop_assert!(piv.windows(2).all(|w| w[0] < w[1]));
            prop_assert_eq!(r.rref(), (r.clone(), piv.clone()));
            prop_assert_eq!(a.rref(), (r, piv));
        }

        #[test]
        fn solve_recovers_rhs(a in arb_matrix(), seed in any::<u64>()) {
            let field = a.field();
            let x0 = FieldMatrix::from_fn(field, a.cols(), 2, |r, c| {
                ((seed >> ((r * 2 + c) % 60)) % field.p()) as u32
            });
            let b = &a * &x0;
            let x = a.solve(&b).unwrap().expect("consistent system");
            prop_assert_eq!(&a * &x, b);
        }

        #[test]
        fn image_basis_spans_columns(a in arb_matrix()) {
            let ib = a.image_basis();
            prop_assert_eq!(ib.cols(), a.rank());
            prop_assert_eq!(ib.hstack(&a).unwrap().rank(), ib.rank());
        }
    }
}

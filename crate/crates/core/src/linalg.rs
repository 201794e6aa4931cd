//! Exact rational linear algebra.
//!
//! Everything here works over `Q` with arbitrary precision; there is no
//! floating point anywhere. Scalars are [`BigRational`], which keeps every
//! value in lowest terms with a positive denominator.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {op} on {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
}

/// Convenience constructor for an integer-valued rational.
pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Bit length of numerator plus denominator; used to rank pivots.
fn bit_size(x: &BigRational) -> u64 {
    x.numer().bits() + x.denom().bits()
}

/// `(ints, d)` with `xs[i] = ints[i] / d` and `d` the lcm of the denominators.
pub(crate) fn clear_denominators(xs: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let mut d = BigInt::one();
    for x in xs {
        if !x.denom().is_one() {
            d = d.lcm(x.denom());
        }
    }
    let ints = xs
        .iter()
        .map(|x| {
            if d.is_one() {
                x.numer().clone()
            } else {
                x.numer() * (&d / x.denom())
            }
        })
        .collect();
    (ints, d)
}

pub(crate) fn with_denominator(ints: Vec<BigInt>, d: &BigInt) -> Vec<BigRational> {
    if d.is_one() {
        ints.into_iter().map(BigRational::from_integer).collect()
    } else {
        ints.into_iter()
            .map(|x| BigRational::new(x, d.clone()))
            .collect()
    }
}

/// Inverse of an integer matrix as `(adj, det)` up to a common sign, via
/// fraction-free elimination: `m⁻¹ = adj / det`.
fn bareiss_inverse(m: &[BigInt], n: usize) -> Option<(Vec<BigInt>, BigInt)> {
    let w = 2 * n;
    let mut a: Vec<BigInt> = Vec::with_capacity(n * w);
    for r in 0..n {
        a.extend_from_slice(&m[r * n..(r + 1) * n]);
        a.extend((0..n).map(|c| {
            if c == r {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        }));
    }
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n)
            .filter(|&r| !a[r * w + k].is_zero())
            .min_by_key(|&r| a[r * w + k].bits())?;
        if p != k {
            for c in 0..w {
                a.swap(p * w + c, k * w + c);
            }
        }
        for i in k + 1..n {
            let aik = a[i * w + k].clone();
            for j in k + 1..w {
                let v = (&a[i * w + j] * &a[k * w + k] - &aik * &a[k * w + j]) / &prev;
                a[i * w + j] = v;
            }
            a[i * w + k] = BigInt::zero();
        }
        prev = a[k * w + k].clone();
    }
    // a[n-1][n-1] = ±det; back substitution gives det·m⁻¹ exactly.
    let det = a[(n - 1) * w + n - 1].clone();
    let mut x = vec![BigInt::zero(); n * n];
    for col in 0..n {
        for i in (0..n).rev() {
            let mut acc = &det * &a[i * w + n + col];
            for j in i + 1..n {
                acc -= &a[i * w + j] * &x[j * n + col];
            }
            x[i * n + col] = acc / &a[i * w + i];
        }
    }
    Some((x, det))
}

/// A dense vector over `Q` with a fixed length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QVector(Vec<BigRational>);

impl QVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        QVector(entries)
    }

    pub fn zeros(len: usize) -> Self {
        QVector(vec![BigRational::zero(); len])
    }

    /// Standard basis vector `e_index` of length `len`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[index] = BigRational::one();
        v
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        QVector(entries.iter().map(|&x| q(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigRational> {
        self.0
    }

    pub fn iter(&self) -> core::slice::Iter<'_, BigRational> {
        self.0.iter()
    }

    pub fn add(&self, other: &QVector) -> QVector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> QVector {
        QVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, s: &BigRational) -> QVector {
        QVector(self.0.iter().map(|a| a * s).collect())
    }

    /// Row vector times matrix.
    pub fn mul_mat(&self, m: &QMatrix) -> Result<QVector, LinalgError> {
        if self.len() != m.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "vec_mul_mat",
                left: (1, self.len()),
                right: (m.rows, m.cols),
            });
        }
        let mut out = vec![BigRational::zero(); m.cols];
        for (i, x) in self.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let e = m.get(i, j);
                if !e.is_zero() {
                    *o += x * e;
                }
            }
        }
        Ok(QVector(out))
    }
}

impl Index<usize> for QVector {
    type Output = BigRational;
    fn index(&self, i: usize) -> &BigRational {
        &self.0[i]
    }
}

impl IndexMut<usize> for QVector {
    fn index_mut(&mut self, i: usize) -> &mut BigRational {
        &mut self.0[i]
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Dense row-major matrix over `Q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Builds a matrix from row-major entries. Panics if the length is wrong.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigRational>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        QMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[QVector]) -> Self {
        let cols = rows.first().map_or(0, QVector::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        QMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_ints(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::from_vec(rows, cols, entries.iter().map(|&x| q(x)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.data
    }

    pub fn row(&self, r: usize) -> QVector {
        QVector(self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn column(&self, c: usize) -> QVector {
        QVector((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix, LinalgError> {
        self.same_shape(other, "mat_add")?;
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix, LinalgError> {
        self.same_shape(other, "mat_sub")?;
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, s: &BigRational) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    fn same_shape(&self, other: &QMatrix, op: &'static str) -> Result<(), LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                op,
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    /// Exact matrix product, computed over `Z` after clearing denominators.
    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "mat_mul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let (a, da) = clear_denominators(&self.data);
        let (b, db) = clear_denominators(&other.data);
        let mut out = vec![BigInt::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = &a[i * self.cols + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let y = &b[k * other.cols + j];
                    if !y.is_zero() {
                        out[i * other.cols + j] += x * y;
                    }
                }
            }
        }
        Ok(QMatrix {
            rows: self.rows,
            cols: other.cols,
            data: with_denominator(out, &(da * db)),
        })
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &QVector) -> Result<QVector, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::DimensionMismatch {
                op: "mat_mul_vec",
                left: (self.rows, self.cols),
                right: (v.len(), 1),
            });
        }
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut acc = BigRational::zero();
            for (c, x) in v.iter().enumerate() {
                let a = self.get(r, c);
                if !a.is_zero() && !x.is_zero() {
                    acc += a * x;
                }
            }
            out.push(acc);
        }
        Ok(QVector(out))
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, exp: i64) -> Result<QMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let base = if exp < 0 {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = QMatrix::identity(self.rows);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Exact inverse by fraction-free elimination on the scaled integer matrix.
    pub fn inverse(&self) -> Result<QMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(QMatrix::zeros(0, 0));
        }
        // self = m / d, so self⁻¹ = d · m⁻¹ = d · adj / det.
        let (m, d) = clear_denominators(&self.data);
        let (adj, det) = bareiss_inverse(&m, n).ok_or(LinalgError::Singular)?;
        if det.is_zero() {
            return Err(LinalgError::Singular);
        }
        let data = adj
            .into_iter()
            .map(|x| BigRational::new(x * &d, det.clone()))
            .collect();
        Ok(QMatrix {
            rows: n,
            cols: n,
            data,
        })
    }

    /// Row rank over `Q`.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.reduce_rows(self.cols).len()
    }

    pub fn determinant(&self) -> Result<BigRational, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(p) = a.pick_pivot(col, col) else {
                return Ok(BigRational::zero());
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pivot = a.get(col, col).clone();
            det *= &pivot;
            for r in col + 1..n {
                let factor = a.get(r, col) / &pivot;
                if !factor.is_zero() {
                    a.sub_row_multiple(r, col, &factor, col);
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// `row[target] -= factor * row[source]` for columns `from..`.
    fn sub_row_multiple(
        &mut self,
        target: usize,
        source: usize,
        factor: &BigRational,
        from: usize,
    ) {
        let cols = self.cols;
        for c in from..cols {
            let s = &self.data[source * cols + c];
            if s.is_zero() {
                continue;
            }
            let delta = factor * s;
            self.data[target * cols + c] -= delta;
        }
    }

    /// Row index `>= start_row` holding the nonzero entry of smallest bit size
    /// in column `col`.
    fn pick_pivot(&self, start_row: usize, col: usize) -> Option<usize> {
        (start_row..self.rows)
            .filter(|&r| !self.get(r, col).is_zero())
            .min_by_key(|&r| bit_size(self.get(r, col)))
    }

    /// Brings the matrix to reduced row echelon form, pivoting only in the
    /// first `pivot_cols` columns. Returns the pivot columns in order.
    fn reduce_rows(&mut self, pivot_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..pivot_cols {
            if row == self.rows {
                break;
            }
            let Some(p) = self.pick_pivot(row, col) else {
                continue;
            };
            self.swap_rows(p, row);
            let inv = self.get(row, col).recip();
            for c in col..self.cols {
                let v = &self.data[row * self.cols + c] * &inv;
                self.data[row * self.cols + c] = v;
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if !factor.is_zero() {
                    self.sub_row_multiple(r, row, &factor, col);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(", ")?;
            }
            fmt::Debug::fmt(&self.row(r), f)?;
        }
        f.write_str("]")
    }
}

/// Outcome of [`solve_linear`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Unique(QVector),
    Affine {
        particular: QVector,
        kernel_basis: Vec<QVector>,
    },
    Inconsistent,
}

impl SolveResult {
    pub fn is_unique(&self) -> bool {
        matches!(self, SolveResult::Unique(_))
    }
}

/// Solves `a · x = b` exactly.
///
/// The particular solution of an affine family sets every free variable to
/// zero; the kernel basis has one vector per free column. Both are checked
/// against the original system before returning.
pub fn solve_linear(a: &QMatrix, b: &QVector) -> Result<SolveResult, LinalgError> {
    solve_linear_ranked(a, b).map(|(s, _)| s)
}

/// [`solve_linear`] together with `rank(a)`, from a single elimination.
pub fn solve_linear_ranked(a: &QMatrix, b: &QVector) -> Result<(SolveResult, usize), LinalgError> {
    if b.len() != a.rows {
        return Err(LinalgError::DimensionMismatch {
            op: "solve_linear",
            left: (a.rows, a.cols),
            right: (b.len(), 1),
        });
    }
    let k = a.cols;
    let mut aug = QMatrix::zeros(a.rows, k + 1);
    for r in 0..a.rows {
        for c in 0..k {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, k, b[r].clone());
    }
    let pivots = aug.reduce_rows(k);
    let rank = pivots.len();
    if (rank..aug.rows).any(|r| !aug.get(r, k).is_zero()) {
        return Ok((SolveResult::Inconsistent, rank));
    }

    let mut particular = QVector::zeros(k);
    for (row, &col) in pivots.iter().enumerate() {
        particular[col] = aug.get(row, k).clone();
    }
    assert_eq!(
        a.mul_vec(&particular)?,
        *b,
        "back substitution failed to reproduce the right-hand side"
    );
    if rank == k {
        return Ok((SolveResult::Unique(particular), rank));
    }

    let mut is_pivot = vec![false; k];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut kernel_basis = Vec::new();
    for free in (0..k).filter(|&c| !is_pivot[c]) {
        let mut v = QVector::zeros(k);
        v[free] = BigRational::one();
        for (row, &col) in pivots.iter().enumerate() {
            v[col] = -aug.get(row, free).clone();
        }
        assert!(a.mul_vec(&v)?.is_zero(), "kernel vector not annihilated");
        kernel_basis.push(v);
    }
    Ok((
        SolveResult::Affine {
            particular,
            kernel_basis,
        },
        rank,
    ))
}

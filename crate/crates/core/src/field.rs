//! Arithmetic in `F = Q[x]/(f)` for a monic integer polynomial `f`.
//!
//! Elements are stored by their coordinates in the power basis
//! `1, θ, …, θ^{n-1}`. The companion-matrix model is available through
//! [`FieldElement::to_matrix`]; the two models agree exactly and the tests
//! use each as an oracle for the other.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::{
    clear_denominators, with_denominator, BigRational, LinalgError, QMatrix, QVector,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("polynomial degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("polynomial has the rational root {0}")]
    RationalRoot(BigInt),
    #[error("companion matrix does not satisfy f(M) = 0")]
    CayleyHamilton,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("coordinate vector has length {got}, field degree is {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("element is a zero divisor; f is reducible")]
    ZeroDivisor,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `x^n + c_{n-1} x^{n-1} + … + c_0` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonicIntPolynomial {
    lower: Vec<BigInt>,
}

impl MonicIntPolynomial {
    /// `lower` holds `c_0, …, c_{n-1}`; the leading one is implicit.
    pub fn new(lower: Vec<BigInt>) -> Result<Self, FieldError> {
        if lower.len() < 2 {
            return Err(FieldError::DegreeTooSmall(lower.len()));
        }
        Ok(MonicIntPolynomial { lower })
    }

    pub fn from_ints(lower: &[i64]) -> Result<Self, FieldError> {
        Self::new(lower.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.lower.len()
    }

    /// `c_0, …, c_{n-1}`.
    pub fn lower_coefficients(&self) -> &[BigInt] {
        &self.lower
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::one();
        for c in self.lower.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl fmt::Display for MonicIntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{}", self.degree())?;
        for (i, c) in self.lower.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            let mag = c.abs();
            let coef = if mag.is_one() && i > 0 {
                alloc::string::String::new()
            } else {
                alloc::format!("{mag}")
            };
            match i {
                0 => write!(f, " {sign} {mag}")?,
                1 => write!(f, " {sign} {coef}x")?,
                _ => write!(f, " {sign} {coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MonicIntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Companion matrix with ones on the subdiagonal and `-c_0, …, -c_{n-1}` in
/// the last column. Acting on column vectors it is multiplication by `θ`.
pub fn companion_matrix(f: &MonicIntPolynomial) -> QMatrix {
    let n = f.degree();
    let mut m = QMatrix::zeros(n, n);
    for i in 1..n {
        m.set(i, i - 1, BigRational::one());
    }
    for (i, c) in f.lower.iter().enumerate() {
        m.set(i, n - 1, BigRational::from_integer(-c));
    }
    m
}

/// Integer divisors of `|c|` up to a size cap; `None` when `c` is too large to
/// enumerate.
fn small_divisors(c: &BigInt) -> Option<Vec<BigInt>> {
    let v = c.abs().to_u64()?;
    if v > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(BigInt::from(d));
            if d * d != v {
                out.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// The field `Q[x]/(f)` with both of its models.
#[derive(Clone, PartialEq, Eq)]
pub struct NumberField {
    poly: MonicIntPolynomial,
    companion: QMatrix,
    /// `M^0, …, M^{n-1}`.
    companion_powers: Vec<QMatrix>,
    /// Power-basis coordinates of `θ^{n+k}` for `k = 0..n-1`; integral since
    /// `f` is monic.
    reduction: Vec<Vec<BigInt>>,
}

impl NumberField {
    /// Builds the field and runs the cheap sanity checks: `f(M) = 0` and no
    /// rational roots. Irreducibility is a precondition and is not verified.
    pub fn new(poly: MonicIntPolynomial) -> Result<Self, FieldError> {
        let n = poly.degree();
        if n < 2 {
            return Err(FieldError::DegreeTooSmall(n));
        }
        let c0 = &poly.lower[0];
        if c0.is_zero() {
            return Err(FieldError::RationalRoot(BigInt::zero()));
        }
        if let Some(divs) = small_divisors(c0) {
            for d in divs {
                for cand in [d.clone(), -d] {
                    if poly.eval(&cand).is_zero() {
                        return Err(FieldError::RationalRoot(cand));
                    }
                }
            }
        }

        let companion = companion_matrix(&poly);
        let mut companion_powers = Vec::with_capacity(n);
        companion_powers.push(QMatrix::identity(n));
        for i in 1..n {
            let next = companion_powers[i - 1].mul(&companion)?;
            companion_powers.push(next);
        }
        let top = companion_powers[n - 1].mul(&companion)?;
        let mut f_of_m = top;
        for (i, c) in poly.lower.iter().enumerate() {
            let term = companion_powers[i].scale(&BigRational::from_integer(c.clone()));
            f_of_m = f_of_m.add(&term)?;
        }
        if !f_of_m.is_zero() {
            return Err(FieldError::CayleyHamilton);
        }

        // θ^n = -Σ c_i θ^i, then shift up one degree at a time.
        let mut reduction: Vec<Vec<BigInt>> = Vec::with_capacity(n.saturating_sub(1));
        let mut current: Vec<BigInt> = poly.lower.iter().map(|c| -c).collect();
        for _ in 0..n - 1 {
            reduction.push(current.clone());
            let carry = current[n - 1].clone();
            let mut shifted = vec![BigInt::zero(); n];
            shifted[1..n].clone_from_slice(&current[..n - 1]);
            for (s, r) in shifted.iter_mut().zip(&reduction[0]) {
                *s += &carry * r;
            }
            current = shifted;
        }

        Ok(NumberField {
            poly,
            companion,
            companion_powers,
            reduction,
        })
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn polynomial(&self) -> &MonicIntPolynomial {
        &self.poly
    }

    pub fn companion(&self) -> &QMatrix {
        &self.companion
    }

    /// Reduces an integer coefficient list of length up to `2n-1` modulo `f`.
    fn reduce(&self, mut full: Vec<BigInt>) -> Vec<BigInt> {
        let n = self.degree();
        if full.len() <= n {
            full.resize(n, BigInt::zero());
            return full;
        }
        let high = full.split_off(n);
        for (k, h) in high.iter().enumerate() {
            if h.is_zero() {
                continue;
            }
            for (dst, r) in full.iter_mut().zip(&self.reduction[k]) {
                if !r.is_zero() {
                    *dst += h * r;
                }
            }
        }
        full
    }

    /// Schoolbook product over `Z` after clearing denominators, then reduced.
    fn mul_coeffs(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = self.degree();
        let (a, da) = clear_denominators(a);
        let (b, db) = clear_denominators(b);
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        with_denominator(self.reduce(prod), &(da * db))
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField(Q[x]/({}))", self.poly)
    }
}

/// Element of a [`NumberField`], held as power-basis coordinates.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coeffs: QVector,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_field(&self.field, &other.field)
    }
}

impl Eq for FieldElement {}

fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
    Arc::ptr_eq(a, b) || a.poly == b.poly
}

impl FieldElement {
    pub fn new(field: &Arc<NumberField>, coeffs: QVector) -> Result<Self, FieldError> {
        if coeffs.len() != field.degree() {
            return Err(FieldError::WrongLength {
                expected: field.degree(),
                got: coeffs.len(),
            });
        }
        Ok(FieldElement {
            field: Arc::clone(field),
            coeffs,
        })
    }

    pub fn from_ints(field: &Arc<NumberField>, coeffs: &[i64]) -> Result<Self, FieldError> {
        Self::new(field, QVector::from_ints(coeffs))
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        FieldElement {
            field: Arc::clone(field),
            coeffs: QVector::zeros(field.degree()),
        }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::scalar(field, BigRational::one())
    }

    pub fn scalar(field: &Arc<NumberField>, s: BigRational) -> Self {
        let mut coeffs = QVector::zeros(field.degree());
        coeffs[0] = s;
        FieldElement {
            field: Arc::clone(field),
            coeffs,
        }
    }

    /// The generator `θ`, the class of `x`.
    pub fn theta(field: &Arc<NumberField>) -> Self {
        FieldElement {
            field: Arc::clone(field),
            coeffs: QVector::unit(field.degree(), 1),
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &QVector {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<(), FieldError> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        Ok(self.with_coeffs(self.coeffs.add(&other.coeffs)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        Ok(self.with_coeffs(self.coeffs.sub(&other.coeffs)))
    }

    /// Polynomial product reduced modulo `f`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        let c = self
            .field
            .mul_coeffs(self.coeffs.entries(), other.coeffs.entries());
        Ok(self.with_coeffs(QVector::new(c)))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        self.with_coeffs(self.coeffs.scale(s))
    }

    fn with_coeffs(&self, coeffs: QVector) -> Self {
        FieldElement {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }

    /// Inverse as the first column of `Mat(a)⁻¹`. A singular `Mat(a)` for
    /// nonzero `a` means `f` is reducible.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let inv = match self.to_matrix().inverse() {
            Ok(m) => m,
            Err(LinalgError::Singular) => return Err(FieldError::ZeroDivisor),
            Err(e) => return Err(e.into()),
        };
        Ok(self.with_coeffs(inv.column(0)))
    }

    /// Integer power, negative exponents through [`FieldElement::inv`].
    pub fn pow(&self, exp: i64) -> Result<Self, FieldError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one(&self.field);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// `a_0 E + a_1 M + … + a_{n-1} M^{n-1}`.
    pub fn to_matrix(&self) -> QMatrix {
        let n = self.field.degree();
        let mut out = QMatrix::zeros(n, n);
        for (a, p) in self.coeffs.iter().zip(&self.field.companion_powers) {
            if a.is_zero() {
                continue;
            }
            out = out.add(&p.scale(a)).expect("same shape");
        }
        out
    }

    /// Reads an element back from its matrix image (the first column).
    pub fn from_matrix(field: &Arc<NumberField>, m: &QMatrix) -> Result<Self, FieldError> {
        if m.rows() != field.degree() || m.cols() != field.degree() {
            return Err(FieldError::WrongLength {
                expected: field.degree(),
                got: m.rows(),
            });
        }
        Self::new(field, m.column(0))
    }

    /// Field norm, the determinant of the matrix image.
    pub fn norm(&self) -> BigRational {
        self.to_matrix()
            .determinant()
            .expect("matrix image is square")
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.coeffs, f)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.coeffs, f)
    }
}

// Operator forms panic on a field mismatch; use the `checked_*` methods when
// the operands come from untrusted input.

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with_coeffs(self.coeffs.neg())
    }
}

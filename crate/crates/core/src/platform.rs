//! The platform group `G_F = U_F ⋉ O_F` as pairs `(C, S)` of field elements
//! with `(C, S)·(D, T) = (CD, SD + T)`.
//!
//! A [`PlatformSpec`] fixes the field, a basis `O_1..O_n` of the integral
//! lattice and unit generators `U_1..U_m` (with `U_1` of finite order `k`).
//! Its generating tuple is `(U_1, 0), …, (U_m, 0), (1, O_1), …, (1, O_n)`.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::field::{FieldElement, FieldError, MonicIntPolynomial, NumberField};
use crate::group::GroupModel;
use crate::linalg::{self, BigRational, QMatrix, QVector, SolveResult};

pub use crate::group::{random_word, GroupWord, Letter, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlatformError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("basis has {got} elements, field degree is {expected}")]
    BasisSize { expected: usize, got: usize },
    #[error("basis is linearly dependent (rank {rank} < {degree})")]
    DependentBasis { rank: usize, degree: usize },
    #[error("at least one unit generator is required")]
    NoUnits,
    #[error("unit generator U{index} has norm {norm}, not ±1")]
    NonUnitGenerator { index: usize, norm: BigRational },
    #[error("unit generator U{index} or its inverse is not integral in the basis")]
    NonIntegralUnit { index: usize },
    #[error("O{basis} · U{unit}^{sign} is not integral in the basis", sign = if *.inverse { "-1" } else { "1" })]
    NonIntegralAction {
        unit: usize,
        basis: usize,
        inverse: bool,
    },
    #[error("U1 does not have order {expected}")]
    TorsionMismatch { expected: u32 },
    #[error("element lies outside the span of the basis")]
    OutsideSpan,
    #[error("elements belong to different platforms")]
    PlatformMismatch,
    #[error("element is not a strict member of the platform group")]
    NotStrict,
}

/// Raw fixture data before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlatformData {
    pub name: String,
    pub polynomial: MonicIntPolynomial,
    /// Power-basis coordinates of `O_1..O_n`; `None` selects `1, θ, …, θ^{n-1}`.
    pub basis: Option<Vec<QVector>>,
    pub units: Vec<QVector>,
    pub torsion_order: u32,
    pub signature: Option<(u32, u32)>,
    pub expected_hirsch_length: Option<usize>,
}

/// A validated platform.
#[derive(Clone)]
pub struct PlatformSpec {
    name: String,
    field: Arc<NumberField>,
    basis: Vec<FieldElement>,
    units: Vec<FieldElement>,
    unit_inverses: Vec<FieldElement>,
    torsion_order: u32,
    signature: Option<(u32, u32)>,
    expected_hirsch_length: Option<usize>,
    /// Maps power-basis coordinates (column) to basis coordinates.
    to_basis: QMatrix,
}

impl fmt::Debug for PlatformSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PlatformSpec")
            .field("name", &self.name)
            .field("polynomial", self.field.polynomial())
            .field("m", &self.units.len())
            .field("k", &self.torsion_order)
            .finish()
    }
}

/// Exact coordinates of `e` in `basis`, solved as a linear system.
pub fn coords_in_basis(e: &FieldElement, basis: &[FieldElement]) -> Result<QVector, PlatformError> {
    let n = e.field().degree();
    let cols: Vec<QVector> = basis.iter().map(|b| b.coeffs().clone()).collect();
    let a = QMatrix::from_rows(&cols).transpose();
    if a.rows() != n {
        return Err(PlatformError::BasisSize {
            expected: n,
            got: basis.len(),
        });
    }
    match linalg::solve_linear(&a, e.coeffs()).map_err(FieldError::from)? {
        SolveResult::Unique(x) => Ok(x),
        // A dependent family still yields coordinates, just not unique ones.
        SolveResult::Affine { particular, .. } => Ok(particular),
        SolveResult::Inconsistent => Err(PlatformError::OutsideSpan),
    }
}

impl PlatformSpec {
    /// Validates fixture data: unit norms, integrality of units and their
    /// inverses, closure of the lattice under every `U_i^{±1}`, and the order
    /// of `U_1`.
    pub fn new(data: PlatformData) -> Result<Self, PlatformError> {
        let field = Arc::new(NumberField::new(data.polynomial)?);
        let n = field.degree();

        let basis: Vec<FieldElement> = match data.basis {
            Some(vs) => vs
                .into_iter()
                .map(|v| FieldElement::new(&field, v))
                .collect::<Result<_, _>>()?,
            None => (0..n)
                .map(|i| FieldElement::new(&field, QVector::unit(n, i)))
                .collect::<Result<_, _>>()?,
        };
        if basis.len() != n {
            return Err(PlatformError::BasisSize {
                expected: n,
                got: basis.len(),
            });
        }
        let basis_rows: Vec<QVector> = basis.iter().map(|b| b.coeffs().clone()).collect();
        let columns = QMatrix::from_rows(&basis_rows).transpose();
        let rank = columns.rank();
        if rank < n {
            return Err(PlatformError::DependentBasis { rank, degree: n });
        }
        let to_basis = columns.inverse().map_err(FieldError::from)?;

        if data.units.is_empty() {
            return Err(PlatformError::NoUnits);
        }
        let units: Vec<FieldElement> = data
            .units
            .into_iter()
            .map(|v| FieldElement::new(&field, v))
            .collect::<Result<_, _>>()?;

        let mut spec = PlatformSpec {
            name: data.name,
            field,
            basis,
            unit_inverses: Vec::new(),
            units,
            torsion_order: data.torsion_order,
            signature: data.signature,
            expected_hirsch_length: data.expected_hirsch_length,
            to_basis,
        };

        for (i, u) in spec.units.iter().enumerate() {
            let norm = u.norm();
            if norm.abs() != BigRational::one() {
                return Err(PlatformError::NonUnitGenerator { index: i + 1, norm });
            }
        }
        let inverses: Vec<FieldElement> = spec
            .units
            .iter()
            .map(FieldElement::inv)
            .collect::<Result<_, _>>()?;
        for (i, (u, ui)) in spec.units.iter().zip(&inverses).enumerate() {
            if !spec.coords(u).is_integral() || !spec.coords(ui).is_integral() {
                return Err(PlatformError::NonIntegralUnit { index: i + 1 });
            }
            for (j, o) in spec.basis.iter().enumerate() {
                for (x, inverse) in [(u, false), (ui, true)] {
                    if !spec.coords(&(o * x)).is_integral() {
                        return Err(PlatformError::NonIntegralAction {
                            unit: i + 1,
                            basis: j + 1,
                            inverse,
                        });
                    }
                }
            }
        }
        spec.unit_inverses = inverses;

        let k = spec.torsion_order;
        if k == 0 {
            return Err(PlatformError::TorsionMismatch { expected: k });
        }
        let u1 = &spec.units[0];
        let mut p = FieldElement::one(&spec.field);
        for j in 1..=k {
            p = &p * u1;
            if p.is_one() != (j == k) {
                return Err(PlatformError::TorsionMismatch { expected: k });
            }
        }
        Ok(spec)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    pub fn units(&self) -> &[FieldElement] {
        &self.units
    }

    pub fn unit_count(&self) -> usize {
        self.units.len()
    }

    pub fn torsion_order(&self) -> u32 {
        self.torsion_order
    }

    pub fn signature(&self) -> Option<(u32, u32)> {
        self.signature
    }

    pub fn expected_hirsch_length(&self) -> Option<usize> {
        self.expected_hirsch_length
    }

    /// `(m − 1) + n`: every generator after `U_1` is counted as free.
    pub fn hirsch_length(&self) -> usize {
        self.units.len() - 1 + self.degree()
    }

    /// Coordinates of `e` in `O_1..O_n`.
    pub fn coords(&self, e: &FieldElement) -> QVector {
        self.to_basis
            .mul_vec(e.coeffs())
            .expect("coordinate vector matches field degree")
    }

    /// The element `Σ a_j O_j`.
    pub fn from_coords(&self, coords: &QVector) -> FieldElement {
        let mut acc = FieldElement::zero(&self.field);
        for (a, o) in coords.iter().zip(&self.basis) {
            if !a.is_zero() {
                acc = &acc + &o.scale(a);
            }
        }
        acc
    }

    pub fn is_integral(&self, e: &FieldElement) -> bool {
        self.coords(e).is_integral()
    }

    /// Whether `C` is a unit of the lattice order and `S` lies in the lattice.
    /// Membership in the subgroup generated by the fixture units is not
    /// decided here.
    pub fn is_member(&self, g: &GroupElement) -> bool {
        if !self.is_integral(&g.translation) || !self.is_integral(&g.unit) {
            return false;
        }
        match g.unit.inv() {
            Ok(ci) => self.is_integral(&ci),
            Err(_) => false,
        }
    }

    /// A strict element, validated against the lattice.
    pub fn element(
        &self,
        unit: FieldElement,
        translation: FieldElement,
    ) -> Result<GroupElement, PlatformError> {
        let g = GroupElement {
            unit,
            translation,
            kind: ElementKind::Strict,
        };
        if g.unit.field().polynomial() != self.field.polynomial()
            || g.translation.field().polynomial() != self.field.polynomial()
        {
            return Err(PlatformError::PlatformMismatch);
        }
        if self.is_member(&g) {
            Ok(g)
        } else {
            Err(PlatformError::NotStrict)
        }
    }

    pub fn identity_element(&self) -> GroupElement {
        GroupElement::identity(&self.field)
    }

    /// Matrix of right multiplication by `c` in the basis `O`: row `j`
    /// holds the coordinates of `O_j · c`.
    pub fn action_matrix(&self, c: &FieldElement) -> QMatrix {
        let rows: Vec<QVector> = self.basis.iter().map(|o| self.coords(&(o * c))).collect();
        QMatrix::from_rows(&rows)
    }
}

impl GroupModel for PlatformSpec {
    type Element = GroupElement;

    fn identity(&self) -> GroupElement {
        self.identity_element()
    }

    fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        a.mul(b)
    }

    fn inv(&self, a: &GroupElement) -> GroupElement {
        a.inv()
    }

    fn generator_count(&self) -> usize {
        self.units.len() + self.basis.len()
    }

    fn generator(&self, index: usize) -> GroupElement {
        let m = self.units.len();
        if index < m {
            GroupElement::from_parts(
                self.units[index].clone(),
                FieldElement::zero(&self.field),
                ElementKind::Strict,
            )
        } else {
            GroupElement::from_parts(
                FieldElement::one(&self.field),
                self.basis[index - m].clone(),
                ElementKind::Strict,
            )
        }
    }

    fn generator_inverse(&self, index: usize) -> GroupElement {
        let m = self.units.len();
        if index < m {
            GroupElement::from_parts(
                self.unit_inverses[index].clone(),
                FieldElement::zero(&self.field),
                ElementKind::Strict,
            )
        } else {
            GroupElement::from_parts(
                FieldElement::one(&self.field),
                -&self.basis[index - m],
                ElementKind::Strict,
            )
        }
    }

    fn conj(&self, g: &GroupElement, x: &GroupElement) -> GroupElement {
        g.conj_by(x)
    }
}

/// Whether an element is known to lie in `U_F ⋉ O_F` or only in `F* ⋉ F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Strict,
    Lifted,
}

impl ElementKind {
    fn join(self, other: ElementKind) -> ElementKind {
        if self == ElementKind::Strict && other == ElementKind::Strict {
            ElementKind::Strict
        } else {
            ElementKind::Lifted
        }
    }
}

/// A pair `(C, S)`. Equality compares the pair only, not the kind tag.
#[derive(Clone)]
pub struct GroupElement {
    unit: FieldElement,
    translation: FieldElement,
    kind: ElementKind,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.unit == other.unit && self.translation == other.translation
    }
}

impl Eq for GroupElement {}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.unit, self.translation)
    }
}

impl GroupElement {
    /// An element of `F* ⋉ F`; `C` must be nonzero.
    pub fn lifted(unit: FieldElement, translation: FieldElement) -> Result<Self, FieldError> {
        if unit.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        if unit.field().polynomial() != translation.field().polynomial() {
            return Err(FieldError::FieldMismatch);
        }
        Ok(GroupElement {
            unit,
            translation,
            kind: ElementKind::Lifted,
        })
    }

    fn from_parts(unit: FieldElement, translation: FieldElement, kind: ElementKind) -> Self {
        GroupElement {
            unit,
            translation,
            kind,
        }
    }

    pub fn identity(field: &Arc<NumberField>) -> Self {
        GroupElement {
            unit: FieldElement::one(field),
            translation: FieldElement::zero(field),
            kind: ElementKind::Strict,
        }
    }

    pub fn unit(&self) -> &FieldElement {
        &self.unit
    }

    pub fn translation(&self) -> &FieldElement {
        &self.translation
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn is_identity(&self) -> bool {
        self.unit.is_one() && self.translation.is_zero()
    }

    /// `(C, S)·(D, T) = (CD, SD + T)`.
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            unit: &self.unit * &other.unit,
            translation: &(&self.translation * &other.unit) + &other.translation,
            kind: self.kind.join(other.kind),
        }
    }

    pub fn try_mul(&self, other: &GroupElement) -> Result<GroupElement, PlatformError> {
        if self.unit.field().polynomial() != other.unit.field().polynomial() {
            return Err(PlatformError::PlatformMismatch);
        }
        Ok(self.mul(other))
    }

    /// `(C, S)⁻¹ = (C⁻¹, −S C⁻¹)`.
    pub fn inv(&self) -> GroupElement {
        let ci = self.unit.inv().expect("unit part is nonzero");
        let t = -&(&self.translation * &ci);
        GroupElement {
            unit: ci,
            translation: t,
            kind: self.kind,
        }
    }

    /// `x⁻¹ · self · x`, via `(D, T)^{(C, S)} = (D, S(1 − D) + TC)`.
    pub fn conj_by(&self, x: &GroupElement) -> GroupElement {
        let one = FieldElement::one(self.unit.field());
        let s_part = &x.translation * &(&one - &self.unit);
        let t_part = &self.translation * &x.unit;
        GroupElement {
            unit: self.unit.clone(),
            translation: &s_part + &t_part,
            kind: self.kind.join(x.kind),
        }
    }

    /// `self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &GroupElement) -> GroupElement {
        let ab = self.mul(other);
        let ba = other.mul(self);
        ba.inv().mul(&ab)
    }

    /// The same pair tagged as an element of `F* ⋉ F`.
    pub fn into_lifted(mut self) -> GroupElement {
        self.kind = ElementKind::Lifted;
        self
    }
}

/// All elements `Σ a_i O_i` with `|a_i| ≤ height_bound` and norm ±1, one per
/// `±` pair (first nonzero coordinate positive). `1` is always included.
pub fn search_units(
    field: &Arc<NumberField>,
    basis: &[FieldElement],
    height_bound: u32,
) -> Vec<FieldElement> {
    let n = basis.len();
    let b = i64::from(height_bound);
    let mut out = alloc::vec![FieldElement::one(field)];
    if n == 0 {
        return out;
    }
    let mut digits = alloc::vec![-b; n];
    loop {
        let first_nonzero = digits.iter().find(|&&d| d != 0);
        if first_nonzero.is_some_and(|&d| d > 0) {
            let mut e = FieldElement::zero(field);
            for (d, o) in digits.iter().zip(basis) {
                if *d != 0 {
                    e = &e + &o.scale(&BigRational::from_integer(BigInt::from(*d)));
                }
            }
            if e.norm().abs().is_one() && !e.is_one() {
                out.push(e);
            }
        }
        // odometer
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if digits[i] < b {
                digits[i] += 1;
                break;
            }
            digits[i] = -b;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    pub(crate) fn golden() -> PlatformSpec {
        PlatformSpec::new(PlatformData {
            name: "x2-x-1".into(),
            polynomial: MonicIntPolynomial::from_ints(&[-1, -1]).unwrap(),
            basis: None,
            units: alloc::vec![QVector::from_ints(&[-1, 0]), QVector::from_ints(&[0, 1])],
            torsion_order: 2,
            signature: Some((2, 0)),
            expected_hirsch_length: Some(3),
        })
        .unwrap()
    }

    fn fe(p: &PlatformSpec, c: &[i64]) -> FieldElement {
        FieldElement::from_ints(p.field(), c).unwrap()
    }

    fn ge(p: &PlatformSpec, c: &[i64], s: &[i64]) -> GroupElement {
        GroupElement::lifted(fe(p, c), fe(p, s)).unwrap()
    }

    #[test]
    fn golden_fixture_is_valid() {
        let p = golden();
        assert_eq!(p.degree(), 2);
        assert_eq!(p.unit_count(), 2);
        assert_eq!(p.hirsch_length(), 3);
    }

    #[test]
    fn mul_examples() {
        let p = golden();
        let x = ge(&p, &[5, 2], &[1, -3]);
        assert_eq!(p.identity_element().mul(&x), x);
        // (θ,1)·(θ,0) = (θ+1, θ)
        assert_eq!(
            ge(&p, &[0, 1], &[1, 0]).mul(&ge(&p, &[0, 1], &[0, 0])),
            ge(&p, &[1, 1], &[0, 1])
        );
        assert!(x.mul(&x.inv()).is_identity());
    }

    #[test]
    fn inv_examples() {
        let p = golden();
        assert!(p.identity_element().inv().is_identity());
        assert_eq!(ge(&p, &[0, 1], &[1, 0]).inv(), ge(&p, &[-1, 1], &[1, -1]));
        assert_eq!(ge(&p, &[1, 0], &[3, 4]).inv(), ge(&p, &[1, 0], &[-3, -4]));
    }

    #[test]
    fn conj_examples() {
        let p = golden();
        let x = ge(&p, &[2, 1], &[1, 1]);
        let g = ge(&p, &[1, 0], &[0, 1]);
        // D = 1 collapses S(1 − D): result (1, T·C)
        let tc = &fe(&p, &[0, 1]) * &fe(&p, &[2, 1]);
        assert_eq!(
            g.conj_by(&x),
            GroupElement::lifted(fe(&p, &[1, 0]), tc).unwrap()
        );
        let t = ge(&p, &[0, 1], &[1, 0]);
        assert_eq!(t.conj_by(&t), t);
        assert_eq!(x.conj_by(&p.identity_element()), x);
    }

    #[test]
    fn commutator_examples() {
        let p = golden();
        let s = ge(&p, &[1, 0], &[2, 1]);
        let t = ge(&p, &[1, 0], &[-1, 5]);
        assert!(s.commutator(&t).is_identity());
        assert!(s.commutator(&s).is_identity());
        // a = (θ, 0), b = (1, 1): a⁻¹b⁻¹ab expanded by hand.
        // a⁻¹ = (θ−1, 0), b⁻¹ = (1, −1); a⁻¹b⁻¹ = (θ−1, −1);
        // (θ−1, −1)·(θ, 0) = (1, −θ); (1, −θ)·(1, 1) = (1, 1 − θ).
        let a = ge(&p, &[0, 1], &[0, 0]);
        let b = ge(&p, &[1, 0], &[1, 0]);
        assert_eq!(a.commutator(&b), ge(&p, &[1, 0], &[1, -1]));
    }

    #[test]
    fn eval_word_examples() {
        let p = golden();
        let gens = alloc::vec![ge(&p, &[0, 1], &[0, 0])];
        assert!(p
            .eval_word(&GroupWord::empty(), &gens)
            .unwrap()
            .is_identity());
        let w = GroupWord::new(alloc::vec![Letter::new(0, false), Letter::new(0, true)]);
        assert!(p.eval_word(&w, &gens).unwrap().is_identity());
        assert_eq!(
            p.eval_word(&GroupWord::power(0, 2), &gens).unwrap(),
            ge(&p, &[1, 1], &[0, 0])
        );
        assert!(matches!(
            p.eval_word(&GroupWord::power(1, 1), &gens),
            Err(WordError::IndexOutOfRange { index: 1, count: 1 })
        ));
    }

    #[test]
    fn coords_examples() {
        let p = golden();
        assert_eq!(
            coords_in_basis(&p.basis()[0], p.basis()).unwrap(),
            QVector::from_ints(&[1, 0])
        );
        assert_eq!(
            coords_in_basis(&fe(&p, &[1, 1]), p.basis()).unwrap(),
            QVector::from_ints(&[1, 1])
        );
        assert!(coords_in_basis(&fe(&p, &[0, 0]), p.basis())
            .unwrap()
            .is_zero());
        // a non-power basis
        let basis = alloc::vec![fe(&p, &[1, 1]), fe(&p, &[0, 1])];
        let c = coords_in_basis(&fe(&p, &[2, 5]), &basis).unwrap();
        assert_eq!(c, QVector::from_ints(&[2, 3]));
    }

    #[test]
    fn coords_outside_span() {
        let p = golden();
        let basis = alloc::vec![fe(&p, &[1, 1])];
        assert_eq!(
            coords_in_basis(&fe(&p, &[0, 1]), &basis),
            Err(PlatformError::OutsideSpan)
        );
    }

    #[test]
    fn generators_and_their_inverses() {
        let p = golden();
        for i in 0..p.generator_count() {
            assert!(p.generator(i).mul(&p.generator_inverse(i)).is_identity());
        }
    }

    fn data(poly: &[i64], units: &[&[i64]], k: u32) -> PlatformData {
        PlatformData {
            name: "t".into(),
            polynomial: MonicIntPolynomial::from_ints(poly).unwrap(),
            basis: None,
            units: units.iter().map(|u| QVector::from_ints(u)).collect(),
            torsion_order: k,
            signature: None,
            expected_hirsch_length: None,
        }
    }

    #[test]
    fn non_unit_generator_rejected() {
        // x^15 − x − 2: N(θ) = ±2
        let mut theta = [0i64; 15];
        theta[1] = 1;
        let mut minus_one = [0i64; 15];
        minus_one[0] = -1;
        let mut poly = [0i64; 15];
        poly[0] = -2;
        poly[1] = -1;
        let err = PlatformSpec::new(data(&poly, &[&minus_one, &theta], 2)).unwrap_err();
        assert!(matches!(
            err,
            PlatformError::NonUnitGenerator { index: 2, .. }
        ));
    }

    #[test]
    fn dependent_basis_rejected() {
        let mut d = data(&[-1, -1], &[&[-1, 0]], 2);
        d.basis = Some(alloc::vec![
            QVector::from_ints(&[1, 0]),
            QVector::from_ints(&[2, 0])
        ]);
        assert_eq!(
            PlatformSpec::new(d).unwrap_err(),
            PlatformError::DependentBasis { rank: 1, degree: 2 }
        );
    }

    #[test]
    fn torsion_mismatch_rejected() {
        assert_eq!(
            PlatformSpec::new(data(&[-1, -1], &[&[-1, 0]], 3)).unwrap_err(),
            PlatformError::TorsionMismatch { expected: 3 }
        );
        assert_eq!(
            PlatformSpec::new(data(&[-1, -1], &[&[0, 1]], 2)).unwrap_err(),
            PlatformError::TorsionMismatch { expected: 2 }
        );
    }

    #[test]
    fn non_integral_action_rejected() {
        // Basis {1, 2θ} is not closed under multiplication by θ.
        let mut d = data(&[-1, -1], &[&[-1, 0], &[0, 1]], 2);
        d.basis = Some(alloc::vec![
            QVector::from_ints(&[1, 0]),
            QVector::from_ints(&[0, 2])
        ]);
        assert!(matches!(
            PlatformSpec::new(d).unwrap_err(),
            PlatformError::NonIntegralUnit { index: 2 } | PlatformError::NonIntegralAction { .. }
        ));
    }

    #[test]
    fn search_units_golden() {
        let p = golden();
        let found = search_units(p.field(), p.basis(), 1);
        for want in [fe(&p, &[1, 0]), fe(&p, &[0, 1]), fe(&p, &[-1, 1])] {
            let neg = -&want;
            assert!(
                found.contains(&want) || found.contains(&neg),
                "missing {want:?}"
            );
        }
        // every coefficient vector in the 3x3 box was scanned; ±(1+θ) has norm −1 too
        assert!(found.iter().all(|u| u.norm().abs() == q(1)));
        assert_eq!(found.len(), 4);
    }

    #[test]
    fn search_units_bound_zero() {
        let p = golden();
        assert_eq!(
            search_units(p.field(), p.basis(), 0),
            alloc::vec![FieldElement::one(p.field())]
        );
    }

    #[test]
    fn search_units_gaussian() {
        let k =
            Arc::new(NumberField::new(MonicIntPolynomial::from_ints(&[1, 0]).unwrap()).unwrap());
        let basis: Vec<FieldElement> = (0..2)
            .map(|i| FieldElement::new(&k, QVector::unit(2, i)).unwrap())
            .collect();
        let found = search_units(&k, &basis, 1);
        assert_eq!(
            found,
            alloc::vec![
                FieldElement::one(&k),
                FieldElement::from_ints(&k, &[0, 1]).unwrap()
            ]
        );
    }

    #[test]
    fn strict_element_checks_integrality() {
        let p = golden();
        assert!(p.element(fe(&p, &[0, 1]), fe(&p, &[3, 1])).is_ok());
        let half = FieldElement::scalar(p.field(), BigRational::new(1.into(), 2.into()));
        assert_eq!(
            p.element(fe(&p, &[0, 1]), half).unwrap_err(),
            PlatformError::NotStrict
        );
        assert_eq!(
            p.element(fe(&p, &[2, 0]), fe(&p, &[0, 0])).unwrap_err(),
            PlatformError::NotStrict
        );
    }
}

//! Polycyclic presentation of `G_F` and the deduced semidirect product
//! `⟨C_1, …, C_m⟩ ⋉ Z^n`.
//!
//! Generator order is fixed: `g_1` is the torsion unit, then the remaining
//! unit generators, then the `n` translation generators. Relations:
//!
//! * `g_{m+j}^{g_i}      = Π_k g_{m+k}^{a_ijk}` where `O_j U_i    = Σ_k a_ijk O_k`
//! * `g_{m+j}^{g_i^{-1}} = Π_k g_{m+k}^{b_ijk}` where `O_j U_i^{-1} = Σ_k b_ijk O_k`
//! * `g_1^k = e`, and each of the two generator blocks commutes.
//!
//! Normal forms are obtained through the deduced group rather than by
//! collection.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::group::{GroupModel, GroupWord, WordError};
use crate::linalg::{BigRational, LinalgError, QMatrix, QVector};
use crate::platform::{GroupElement, PlatformSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PcError {
    #[error("coordinates of O{basis} · U{unit}^{sign} are not integral", sign = if *.inverse { "-1" } else { "1" })]
    NonIntegral {
        unit: usize,
        basis: usize,
        inverse: bool,
    },
    #[error("no normal form with exponents bounded by {bound}")]
    NotFound { bound: u32 },
    #[error("vector part is not integral")]
    NonIntegralVector,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Relation data of the polycyclic presentation.
#[derive(Clone, PartialEq, Eq)]
pub struct PcPresentation {
    unit_gens: usize,
    translation_gens: usize,
    /// generator index (0-based) → relative order, for the finite indices.
    torsion: BTreeMap<usize, u32>,
    /// `conj[i][j]` = exponent vector of `g_{m+j}^{g_i}`.
    conj: Vec<Vec<Vec<BigInt>>>,
    /// `conj_inv[i][j]` = exponent vector of `g_{m+j}^{g_i^{-1}}`.
    conj_inv: Vec<Vec<Vec<BigInt>>>,
}

fn integral_vector(v: &QVector) -> Option<Vec<BigInt>> {
    v.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

/// Reads off the presentation from a validated platform.
pub fn build_presentation(p: &PlatformSpec) -> Result<PcPresentation, PcError> {
    let mut conj = Vec::with_capacity(p.unit_count());
    let mut conj_inv = Vec::with_capacity(p.unit_count());
    for (i, u) in p.units().iter().enumerate() {
        let ui = u.inv().expect("unit generators are nonzero");
        let mut rows = Vec::new();
        let mut rows_inv = Vec::new();
        for (j, o) in p.basis().iter().enumerate() {
            let a = integral_vector(&p.coords(&(o * u))).ok_or(PcError::NonIntegral {
                unit: i + 1,
                basis: j + 1,
                inverse: false,
            })?;
            let b = integral_vector(&p.coords(&(o * &ui))).ok_or(PcError::NonIntegral {
                unit: i + 1,
                basis: j + 1,
                inverse: true,
            })?;
            rows.push(a);
            rows_inv.push(b);
        }
        conj.push(rows);
        conj_inv.push(rows_inv);
    }
    let mut torsion = BTreeMap::new();
    torsion.insert(0, p.torsion_order());
    Ok(PcPresentation {
        unit_gens: p.unit_count(),
        translation_gens: p.degree(),
        torsion,
        conj,
        conj_inv,
    })
}

impl PcPresentation {
    pub fn unit_generators(&self) -> usize {
        self.unit_gens
    }

    pub fn translation_generators(&self) -> usize {
        self.translation_gens
    }

    pub fn generator_count(&self) -> usize {
        self.unit_gens + self.translation_gens
    }

    pub fn torsion(&self) -> &BTreeMap<usize, u32> {
        &self.torsion
    }

    /// `a_ij•` with 0-based `unit` and `basis`.
    pub fn conjugation_exponents(&self, unit: usize, basis: usize) -> &[BigInt] {
        &self.conj[unit][basis]
    }

    /// `b_ij•` with 0-based `unit` and `basis`.
    pub fn inverse_conjugation_exponents(&self, unit: usize, basis: usize) -> &[BigInt] {
        &self.conj_inv[unit][basis]
    }

    fn exponent_matrix(rows: &[Vec<BigInt>]) -> QMatrix {
        let qrows: Vec<QVector> = rows
            .iter()
            .map(|r| QVector::new(r.iter().cloned().map(BigRational::from_integer).collect()))
            .collect();
        QMatrix::from_rows(&qrows)
    }

    /// The integer matrix `(a_ijk)_{j,k}` for unit generator `i`.
    pub fn exponent_matrix_of(&self, unit: usize) -> QMatrix {
        Self::exponent_matrix(&self.conj[unit])
    }

    /// The integer matrix `(b_ijk)_{j,k}` for unit generator `i`.
    pub fn inverse_exponent_matrix_of(&self, unit: usize) -> QMatrix {
        Self::exponent_matrix(&self.conj_inv[unit])
    }
}

fn fmt_exponent_word(f: &mut fmt::Formatter<'_>, m: usize, exps: &[BigInt]) -> fmt::Result {
    let mut any = false;
    for (k, e) in exps.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        if any {
            f.write_str(" ")?;
        }
        any = true;
        if e.is_one() {
            write!(f, "g{}", m + k + 1)?;
        } else {
            write!(f, "g{}^{}", m + k + 1, e)?;
        }
    }
    if !any {
        f.write_str("e")?;
    }
    Ok(())
}

/// Human-readable relation listing.
impl fmt::Display for PcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.unit_gens;
        let n = self.translation_gens;
        writeln!(f, "generators: g1..g{} (m = {m}, n = {n})", m + n)?;
        for (&i, &r) in &self.torsion {
            writeln!(f, "g{}^{} = e", i + 1, r)?;
        }
        for i in 0..m {
            for j in 0..n {
                write!(f, "g{}^g{} = ", m + j + 1, i + 1)?;
                fmt_exponent_word(f, m, &self.conj[i][j])?;
                writeln!(f)?;
            }
            for j in 0..n {
                write!(f, "g{}^(g{}^-1) = ", m + j + 1, i + 1)?;
                fmt_exponent_word(f, m, &self.conj_inv[i][j])?;
                writeln!(f)?;
            }
        }
        if m > 1 {
            writeln!(f, "[gi, gj] = e for 1 <= i < j <= {m}")?;
        }
        if n > 1 {
            writeln!(f, "[gi, gj] = e for {} <= i < j <= {}", m + 1, m + n)?;
        }
        Ok(())
    }
}

impl fmt::Debug for PcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PcPresentation")
            .field("m", &self.unit_gens)
            .field("n", &self.translation_gens)
            .field("torsion", &self.torsion)
            .finish()
    }
}

/// An element `(C, v)` of the deduced group, acting on row vectors:
/// `(C, v)·(D, w) = (CD, vD + w)`.
///
/// Candidates produced by the attacks may have rational `v` and `C` in the
/// algebra spanned by the `C_i`; the type does not forbid that.
#[derive(Clone, PartialEq, Eq)]
pub struct DeducedElement {
    pub unit: QMatrix,
    pub vector: QVector,
}

impl DeducedElement {
    pub fn identity(n: usize) -> Self {
        DeducedElement {
            unit: QMatrix::identity(n),
            vector: QVector::zeros(n),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vector.is_zero() && self.unit == QMatrix::identity(self.unit.rows())
    }

    pub fn try_mul(&self, other: &DeducedElement) -> Result<DeducedElement, LinalgError> {
        Ok(DeducedElement {
            unit: self.unit.mul(&other.unit)?,
            vector: self.vector.mul_mat(&other.unit)?.add(&other.vector),
        })
    }

    /// `(C, v)⁻¹ = (C⁻¹, −v C⁻¹)`.
    pub fn try_inv(&self) -> Result<DeducedElement, LinalgError> {
        let ci = self.unit.inverse()?;
        let v = self.vector.mul_mat(&ci)?.neg();
        Ok(DeducedElement {
            unit: ci,
            vector: v,
        })
    }
}

impl fmt::Debug for DeducedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.unit, self.vector)
    }
}

/// `⟨C_1, …, C_m⟩ ⋉ Z^n` with the basis `H_1..H_l` of `K = Q[C_1, …, C_m]`.
#[derive(Clone)]
pub struct DeducedGroup {
    presentation: PcPresentation,
    action: Vec<QMatrix>,
    action_inv: Vec<QMatrix>,
    field_basis: Vec<QMatrix>,
}

impl fmt::Debug for DeducedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DeducedGroup")
            .field("m", &self.action.len())
            .field("n", &self.dimension())
            .field("l", &self.field_basis.len())
            .finish()
    }
}

fn flatten(m: &QMatrix) -> QVector {
    QVector::new(m.entries().to_vec())
}

/// Spanning closure of `{I}` under right multiplication by the generators.
fn algebra_basis(n: usize, gens: &[QMatrix]) -> Vec<QMatrix> {
    let mut basis = alloc::vec![QMatrix::identity(n)];
    let mut flat = alloc::vec![flatten(&basis[0])];
    let mut next = 0;
    while next < basis.len() {
        let h = basis[next].clone();
        for c in gens {
            let cand = h.mul(c).expect("square matrices of equal size");
            flat.push(flatten(&cand));
            if QMatrix::from_rows(&flat).rank() == flat.len() {
                basis.push(cand);
            } else {
                flat.pop();
            }
        }
        next += 1;
    }
    basis
}

/// `C_i = (a_ijk)` as rows `j`, with inverses from the `b` relations.
pub fn action_matrices(pc: &PcPresentation) -> DeducedGroup {
    let m = pc.unit_gens;
    let action: Vec<QMatrix> = (0..m).map(|i| pc.exponent_matrix_of(i)).collect();
    let action_inv: Vec<QMatrix> = (0..m).map(|i| pc.inverse_exponent_matrix_of(i)).collect();
    let field_basis = algebra_basis(pc.translation_gens, &action);
    DeducedGroup {
        presentation: pc.clone(),
        action,
        action_inv,
        field_basis,
    }
}

impl DeducedGroup {
    pub fn presentation(&self) -> &PcPresentation {
        &self.presentation
    }

    pub fn dimension(&self) -> usize {
        self.presentation.translation_gens
    }

    pub fn action(&self) -> &[QMatrix] {
        &self.action
    }

    /// Basis `H_1..H_l` of `K` over `Q`; `H_1 = I`.
    pub fn field_basis(&self) -> &[QMatrix] {
        &self.field_basis
    }

    /// Checks that every `H_a C_i` lies in the span of the basis.
    pub fn field_basis_is_closed(&self) -> bool {
        let flat: Vec<QVector> = self.field_basis.iter().map(flatten).collect();
        let l = flat.len();
        self.field_basis.iter().all(|h| {
            self.action.iter().all(|c| {
                let mut rows = flat.clone();
                rows.push(flatten(&h.mul(c).expect("square")));
                QMatrix::from_rows(&rows).rank() == l
            })
        })
    }

    /// `(I, 0)`.
    pub fn identity_element(&self) -> DeducedElement {
        DeducedElement::identity(self.dimension())
    }

    pub fn deduced_mul(
        &self,
        x: &DeducedElement,
        y: &DeducedElement,
    ) -> Result<DeducedElement, LinalgError> {
        x.try_mul(y)
    }

    /// τ: the image of a word over `g_1..g_{m+n}`.
    pub fn tau(&self, w: &GroupWord) -> Result<DeducedElement, PcError> {
        Ok(self.eval_generator_word(w)?)
    }

    /// Normal form `g_1^{a_1}…g_m^{a_m} g_{m+1}^{a_{m+1}}…g_{m+n}^{a_{m+n}}` with
    /// `τ(word) = x`. The vector part is read off; the unit exponents are found
    /// by a search over shells of growing `‖a‖_∞ ≤ bound`, with `a_1` reduced
    /// into `[0, k)`.
    pub fn pair_to_word(&self, x: &DeducedElement, bound: u32) -> Result<GroupWord, PcError> {
        let n = self.dimension();
        if !x.vector.is_integral() {
            return Err(PcError::NonIntegralVector);
        }
        let exps = self.unit_exponents(&x.unit, bound)?;
        let mut word = GroupWord::empty();
        for (i, &e) in exps.iter().enumerate() {
            word = word.concat(&GroupWord::power(i, e));
        }
        let m = self.action.len();
        for j in 0..n {
            let e = x.vector[j].to_integer();
            let e = i64::try_from(e).map_err(|_| PcError::NotFound { bound })?;
            word = word.concat(&GroupWord::power(m + j, e));
        }
        Ok(word)
    }

    fn unit_exponents(&self, target: &QMatrix, bound: u32) -> Result<Vec<i64>, PcError> {
        let m = self.action.len();
        let b = i64::from(bound);
        let k = i64::from(self.presentation.torsion.get(&0).copied().unwrap_or(1));

        // powers[i][e + b] = C_i^e
        let mut powers: Vec<Vec<QMatrix>> = Vec::with_capacity(m);
        for (i, c) in self.action.iter().enumerate() {
            let lo = if i == 0 { 0 } else { -b };
            let hi = if i == 0 { k - 1 } else { b };
            let mut row = Vec::new();
            for e in lo..=hi {
                row.push(if e < 0 {
                    self.action_inv[i].pow(-e)?
                } else {
                    c.pow(e)?
                });
            }
            powers.push(row);
        }

        for radius in 0..=b {
            let mut exps = alloc::vec![0i64; m];
            if self.search_shell(target, &powers, radius, b, 0, &mut exps, false)? {
                return Ok(exps);
            }
        }
        Err(PcError::NotFound { bound })
    }

    /// Depth-first walk over the free exponents with `max |a_i| == radius`.
    #[allow(clippy::too_many_arguments)]
    fn search_shell(
        &self,
        target: &QMatrix,
        powers: &[Vec<QMatrix>],
        radius: i64,
        b: i64,
        depth: usize,
        exps: &mut [i64],
        hit_radius: bool,
    ) -> Result<bool, PcError> {
        let m = exps.len();
        if depth == m {
            if !hit_radius && radius > 0 {
                return Ok(false);
            }
            let mut acc = QMatrix::identity(self.dimension());
            for (i, &e) in exps.iter().enumerate() {
                let offset = if i == 0 { e } else { e + b };
                acc = acc.mul(&powers[i][offset as usize])?;
            }
            return Ok(acc == *target);
        }
        if depth == 0 {
            for e in 0..powers[0].len() as i64 {
                exps[0] = e;
                if self.search_shell(target, powers, radius, b, 1, exps, hit_radius)? {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        for e in -radius..=radius {
            exps[depth] = e;
            if self.search_shell(
                target,
                powers,
                radius,
                b,
                depth + 1,
                exps,
                hit_radius || e.abs() == radius,
            )? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

impl GroupModel for DeducedGroup {
    type Element = DeducedElement;

    fn identity(&self) -> DeducedElement {
        self.identity_element()
    }

    fn mul(&self, a: &DeducedElement, b: &DeducedElement) -> DeducedElement {
        a.try_mul(b).expect("deduced elements share the dimension")
    }

    fn inv(&self, a: &DeducedElement) -> DeducedElement {
        a.try_inv().expect("unit part is invertible")
    }

    fn generator_count(&self) -> usize {
        self.action.len() + self.dimension()
    }

    fn generator(&self, index: usize) -> DeducedElement {
        let m = self.action.len();
        let n = self.dimension();
        if index < m {
            DeducedElement {
                unit: self.action[index].clone(),
                vector: QVector::zeros(n),
            }
        } else {
            DeducedElement {
                unit: QMatrix::identity(n),
                vector: QVector::unit(n, index - m),
            }
        }
    }

    fn generator_inverse(&self, index: usize) -> DeducedElement {
        let m = self.action.len();
        let n = self.dimension();
        if index < m {
            DeducedElement {
                unit: self.action_inv[index].clone(),
                vector: QVector::zeros(n),
            }
        } else {
            DeducedElement {
                unit: QMatrix::identity(n),
                vector: QVector::unit(n, index - m).neg(),
            }
        }
    }
}

impl PlatformSpec {
    /// Transports a pair `(C, S)` to `(action of C on O, coordinates of S)`.
    /// On the platform group this is the isomorphism onto the deduced group;
    /// it extends to `F* ⋉ F` with rational entries.
    pub fn to_deduced(&self, g: &GroupElement) -> DeducedElement {
        DeducedElement {
            unit: self.action_matrix(g.unit()),
            vector: self.coords(g.translation()),
        }
    }
}

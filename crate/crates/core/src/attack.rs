//! Field based attacks on the conjugacy systems behind the protocol.
//!
//! **FBA** works in the pair model, lifted to `F* ⋉ F`. Each public pair
//! `(b_i, b_i')` with `b_i = (B_i, T_i)` gives an equation
//! `S(1 − B_i) + T_i C = T_i'` that is linear over `F` in the unknown
//! `X = (C, S)`. Writing `S` and `C` in power-basis coordinates turns the
//! `N` equations into an `(N·n) × 2n` rational system; the solution is
//! unique exactly when its rank is `2n`.
//!
//! **FBA2** works in the deduced model. The unknown unit part ranges over
//! `K = Q[C_1, …, C_m]` with basis `H_1..H_l`, so
//! `v(E − B_i) + Σ_a c_a t_i H_a = t_i'` is linear over `Q` in
//! `(v, c) ∈ Q^n × Q^l`. The integrality of `v` is relaxed.
//!
//! Both attacks return `K' = [A', B']`; success is judged by equality with
//! the real key.

use alloc::vec::Vec;

use num_traits::Zero;
use thiserror::Error;

use crate::field::{FieldElement, FieldError};
use crate::group::GroupModel;
use crate::linalg::{self, LinalgError, QMatrix, QVector, SolveResult};
use crate::pc::{DeducedElement, DeducedGroup};
use crate::platform::GroupElement;
use crate::protocol::{PublicView, Transcript};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AttackError {
    #[error("conjugacy system is empty")]
    EmptySystem,
    #[error("pair {index}: unit parts differ, no conjugator exists")]
    UnitMismatch { index: usize },
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("no invertible unit part among the tried solutions")]
    SingularCandidate,
    #[error("candidate fails conjugacy equation {index}")]
    Unverified { index: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Pairs `(g_i, g_i')` with `X⁻¹ g_i X = g_i'` for an unknown `X`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugacySystem {
    pairs: Vec<(GroupElement, GroupElement)>,
}

impl ConjugacySystem {
    pub fn new(pairs: Vec<(GroupElement, GroupElement)>) -> Result<Self, AttackError> {
        if pairs.is_empty() {
            return Err(AttackError::EmptySystem);
        }
        if let Some(index) = pairs.iter().position(|(g, h)| g.unit() != h.unit()) {
            return Err(AttackError::UnitMismatch { index });
        }
        Ok(ConjugacySystem { pairs })
    }

    pub fn from_tuples(
        originals: &[GroupElement],
        conjugates: &[GroupElement],
    ) -> Result<Self, AttackError> {
        let pairs = originals
            .iter()
            .cloned()
            .zip(conjugates.iter().cloned())
            .collect();
        Self::new(pairs)
    }

    pub fn pairs(&self) -> &[(GroupElement, GroupElement)] {
        &self.pairs
    }

    fn degree(&self) -> usize {
        self.pairs[0].0.unit().field().degree()
    }
}

/// Result of solving one FBA system.
#[derive(Debug, Clone, PartialEq)]
pub struct FbaSolution {
    /// The conjugator found, an element of `F* ⋉ F`.
    pub candidate: GroupElement,
    /// Whether the flattened system had full rank `2n`.
    pub unique: bool,
    pub rank: usize,
    /// Every equation was re-checked by conjugation.
    pub residual_checked: bool,
}

/// Flattens the system to `(N·n) × 2n` over `Q`: unknowns are the power-basis
/// coordinates of `S` followed by those of `C`.
pub fn build_fba_system(sys: &ConjugacySystem) -> (QMatrix, QVector) {
    let n = sys.degree();
    let rows = sys.pairs.len() * n;
    let mut a = QMatrix::zeros(rows, 2 * n);
    let mut rhs = Vec::with_capacity(rows);
    for (eq, (b, b_conj)) in sys.pairs.iter().enumerate() {
        let field = b.unit().field();
        let one_minus_b = &FieldElement::one(field) - b.unit();
        // col(S·y) = Mat(y) · col(S)
        let s_block = one_minus_b.to_matrix();
        let c_block = b.translation().to_matrix();
        for r in 0..n {
            for c in 0..n {
                a.set(eq * n + r, c, s_block.get(r, c).clone());
                a.set(eq * n + r, n + c, c_block.get(r, c).clone());
            }
        }
        rhs.extend(b_conj.translation().coeffs().iter().cloned());
    }
    (a, QVector::new(rhs))
}

/// Candidate vectors for a possibly affine solution set: the particular
/// solution, then the particular solution shifted by each kernel vector.
fn candidate_vectors(result: SolveResult) -> Result<(Vec<QVector>, bool), AttackError> {
    match result {
        SolveResult::Unique(x) => Ok((alloc::vec![x], true)),
        SolveResult::Affine {
            particular,
            kernel_basis,
        } => {
            let mut out = alloc::vec![particular.clone()];
            out.extend(kernel_basis.iter().map(|k| particular.add(k)));
            Ok((out, false))
        }
        SolveResult::Inconsistent => Err(AttackError::Inconsistent),
    }
}

pub fn solve_fba(sys: &ConjugacySystem) -> Result<FbaSolution, AttackError> {
    let n = sys.degree();
    let field = sys.pairs[0].0.unit().field().clone();
    let (a, rhs) = build_fba_system(sys);
    let (result, rank) = linalg::solve_linear_ranked(&a, &rhs)?;
    let (candidates, unique) = candidate_vectors(result)?;
    debug_assert_eq!(unique, rank == 2 * n);

    for x in candidates {
        let entries = x.entries();
        let s = FieldElement::new(&field, QVector::new(entries[..n].to_vec()))?;
        let c = FieldElement::new(&field, QVector::new(entries[n..].to_vec()))?;
        if c.is_zero() {
            continue;
        }
        let candidate = GroupElement::lifted(c, s)?;
        for (index, (b, b_conj)) in sys.pairs.iter().enumerate() {
            if &b.conj_by(&candidate) != b_conj {
                return Err(AttackError::Unverified { index });
            }
        }
        return Ok(FbaSolution {
            candidate,
            unique,
            rank,
            residual_checked: true,
        });
    }
    Err(AttackError::SingularCandidate)
}

/// Outcome of an attack on both conjugacy systems.
#[derive(Debug, Clone, PartialEq)]
pub struct AttackOutcome<E, S> {
    pub key: E,
    pub alice: S,
    pub bob: S,
}

impl<E, S: HasUniqueness> AttackOutcome<E, S> {
    /// Both systems had full rank.
    pub fn unique(&self) -> bool {
        self.alice.is_unique() && self.bob.is_unique()
    }
}

pub trait HasUniqueness {
    fn is_unique(&self) -> bool;
}

impl HasUniqueness for FbaSolution {
    fn is_unique(&self) -> bool {
        self.unique
    }
}

pub type FbaOutcome = AttackOutcome<GroupElement, FbaSolution>;

/// Recovers `A'` from `(b̄, b̄^A)` and `B'` from `(ā, ā^B)` and returns
/// `[A', B']` computed in `F* ⋉ F`.
pub fn fba_attack(view: &PublicView<GroupElement>) -> Result<FbaOutcome, AttackError> {
    let alice = solve_fba(&ConjugacySystem::from_tuples(
        &view.bob_public,
        &view.alice_conjugates,
    )?)?;
    let bob = solve_fba(&ConjugacySystem::from_tuples(
        &view.alice_public,
        &view.bob_conjugates,
    )?)?;
    let key = alice.candidate.commutator(&bob.candidate);
    Ok(AttackOutcome { key, alice, bob })
}

/// The FBA2 system for one side.
#[derive(Debug, Clone, PartialEq)]
pub struct Fba2System {
    pub unit_parts: Vec<QMatrix>,
    pub vectors: Vec<QVector>,
    pub conjugate_vectors: Vec<QVector>,
    pub field_basis: Vec<QMatrix>,
}

impl Fba2System {
    pub fn dimension(&self) -> usize {
        self.unit_parts[0].rows()
    }

    pub fn l(&self) -> usize {
        self.field_basis.len()
    }

    /// `(N·n) × (n + l)` rational system in the unknowns `(v, c)`.
    pub fn linear_system(&self) -> Result<(QMatrix, QVector), LinalgError> {
        let n = self.dimension();
        let l = self.l();
        let eqs = self.unit_parts.len();
        let mut a = QMatrix::zeros(eqs * n, n + l);
        let mut rhs = Vec::with_capacity(eqs * n);
        let id = QMatrix::identity(n);
        for (i, b) in self.unit_parts.iter().enumerate() {
            // row vector v(E − B): coefficient of v_j in component k is (E − B)[j][k]
            let e_minus_b = id.sub(b)?;
            for k in 0..n {
                for j in 0..n {
                    a.set(i * n + k, j, e_minus_b.get(j, k).clone());
                }
            }
            for (col, h) in self.field_basis.iter().enumerate() {
                let th = self.vectors[i].mul_mat(h)?;
                for k in 0..n {
                    a.set(i * n + k, n + col, th[k].clone());
                }
            }
            rhs.extend(self.conjugate_vectors[i].iter().cloned());
        }
        Ok((a, QVector::new(rhs)))
    }
}

/// Assembles the FBA2 system from pairs `(b_i, b_i')` in the deduced model.
pub fn build_fba2_system(
    pairs: &[(DeducedElement, DeducedElement)],
    dg: &DeducedGroup,
) -> Result<Fba2System, AttackError> {
    if pairs.is_empty() {
        return Err(AttackError::EmptySystem);
    }
    if let Some(index) = pairs.iter().position(|(g, h)| g.unit != h.unit) {
        return Err(AttackError::UnitMismatch { index });
    }
    Ok(Fba2System {
        unit_parts: pairs.iter().map(|(g, _)| g.unit.clone()).collect(),
        vectors: pairs.iter().map(|(g, _)| g.vector.clone()).collect(),
        conjugate_vectors: pairs.iter().map(|(_, h)| h.vector.clone()).collect(),
        field_basis: dg.field_basis().to_vec(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fba2Solution {
    pub candidate: DeducedElement,
    pub unique: bool,
    pub rank: usize,
    pub residual_checked: bool,
}

impl HasUniqueness for Fba2Solution {
    fn is_unique(&self) -> bool {
        self.unique
    }
}

pub type Fba2Outcome = AttackOutcome<DeducedElement, Fba2Solution>;

pub fn solve_fba2(
    pairs: &[(DeducedElement, DeducedElement)],
    dg: &DeducedGroup,
) -> Result<Fba2Solution, AttackError> {
    let sys = build_fba2_system(pairs, dg)?;
    let n = sys.dimension();
    let (a, rhs) = sys.linear_system()?;
    let (result, rank) = linalg::solve_linear_ranked(&a, &rhs)?;
    let (candidates, unique) = candidate_vectors(result)?;

    for x in candidates {
        let entries = x.entries();
        let v = QVector::new(entries[..n].to_vec());
        let mut c = QMatrix::zeros(n, n);
        for (coef, h) in entries[n..].iter().zip(&sys.field_basis) {
            if !coef.is_zero() {
                c = c.add(&h.scale(coef))?;
            }
        }
        let candidate = DeducedElement { unit: c, vector: v };
        let Ok(inverse) = candidate.try_inv() else {
            continue;
        };
        for (index, (b, b_conj)) in pairs.iter().enumerate() {
            if &dg.mul(&dg.mul(&inverse, b), &candidate) != b_conj {
                return Err(AttackError::Unverified { index });
            }
        }
        return Ok(Fba2Solution {
            candidate,
            unique,
            rank,
            residual_checked: true,
        });
    }
    Err(AttackError::SingularCandidate)
}

fn zip_pairs<E: Clone>(a: &[E], b: &[E]) -> Vec<(E, E)> {
    a.iter().cloned().zip(b.iter().cloned()).collect()
}

/// FBA2 on a public view in the deduced model.
pub fn fba2_attack(
    view: &PublicView<DeducedElement>,
    dg: &DeducedGroup,
) -> Result<Fba2Outcome, AttackError> {
    let alice = solve_fba2(&zip_pairs(&view.bob_public, &view.alice_conjugates), dg)?;
    let bob = solve_fba2(&zip_pairs(&view.alice_public, &view.bob_conjugates), dg)?;
    let key = dg.commutator(&alice.candidate, &bob.candidate);
    Ok(AttackOutcome { key, alice, bob })
}

/// Exact equality of a candidate key with the transcript's real key.
pub fn attack_success<E: PartialEq>(candidate: &E, transcript: &Transcript<E>) -> bool {
    *candidate == transcript.shared_key
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::MonicIntPolynomial;
    use crate::pc::{action_matrices, build_presentation};
    use crate::platform::{PlatformData, PlatformSpec};
    use crate::protocol::{run_protocol, ProtocolParams};

    fn golden() -> PlatformSpec {
        PlatformSpec::new(PlatformData {
            name: "x2-x-1".into(),
            polynomial: MonicIntPolynomial::from_ints(&[-1, -1]).unwrap(),
            basis: None,
            units: alloc::vec![QVector::from_ints(&[-1, 0]), QVector::from_ints(&[0, 1])],
            torsion_order: 2,
            signature: None,
            expected_hirsch_length: Some(3),
        })
        .unwrap()
    }

    fn ge(p: &PlatformSpec, c: &[i64], s: &[i64]) -> GroupElement {
        GroupElement::lifted(
            FieldElement::from_ints(p.field(), c).unwrap(),
            FieldElement::from_ints(p.field(), s).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn worked_golden_instance() {
        // A = (θ, 1); b1 = (θ, 1), b2 = (θ², 0) = (1 + θ, 0).
        let p = golden();
        let a = ge(&p, &[0, 1], &[1, 0]);
        let b1 = ge(&p, &[0, 1], &[1, 0]);
        let b2 = ge(&p, &[1, 1], &[0, 0]);
        let b1c = b1.conj_by(&a);
        let b2c = b2.conj_by(&a);
        assert_eq!(b1c, ge(&p, &[0, 1], &[1, 0]));
        assert_eq!(b2c, ge(&p, &[1, 1], &[0, -1]));
        let sys = ConjugacySystem::new(alloc::vec![(b1, b1c), (b2, b2c)]).unwrap();
        let (m, rhs) = build_fba_system(&sys);
        assert_eq!((m.rows(), m.cols(), rhs.len()), (4, 4, 4));
        let sol = solve_fba(&sys).unwrap();
        assert!(sol.unique);
        assert_eq!(sol.rank, 4);
        assert_eq!(sol.candidate, a);
    }

    #[test]
    fn degenerate_single_equation_is_affine() {
        let p = golden();
        let id = p.identity_element();
        let sys = ConjugacySystem::new(alloc::vec![(id.clone(), id)]).unwrap();
        let (m, _) = build_fba_system(&sys);
        assert!(m.is_zero());
        let sol = solve_fba(&sys).unwrap();
        assert!(!sol.unique);
        assert!(!sol.candidate.unit().is_zero());
    }

    #[test]
    fn empty_system_rejected() {
        assert_eq!(
            ConjugacySystem::new(Vec::new()).unwrap_err(),
            AttackError::EmptySystem
        );
    }

    #[test]
    fn tampered_conjugate_is_inconsistent() {
        let p = golden();
        let t = run_protocol(&p, &ProtocolParams::new(6, 6, 5, 3)).unwrap();
        let mut view = t.public_view();
        let bumped = ge(&p, &[1, 0], &[1, 0]);
        view.alice_conjugates[2] = view.alice_conjugates[2].mul(&bumped);
        assert_eq!(fba_attack(&view).unwrap_err(), AttackError::Inconsistent);
    }

    #[test]
    fn fba_recovers_key_on_golden_runs() {
        let p = golden();
        for seed in 0..10 {
            let t = run_protocol(&p, &ProtocolParams::new(8, 8, 5, seed)).unwrap();
            let out = fba_attack(&t.public_view()).unwrap();
            assert!(attack_success(&out.key, &t), "seed {seed}");
        }
    }

    #[test]
    fn fba2_recovers_key_on_golden_runs() {
        let p = golden();
        let dg = action_matrices(&build_presentation(&p).unwrap());
        for seed in 0..10 {
            let t = run_protocol(&dg, &ProtocolParams::new(8, 8, 5, seed)).unwrap();
            let out = fba2_attack(&t.public_view(), &dg).unwrap();
            assert!(attack_success(&out.key, &t), "seed {seed}");
        }
    }

    #[test]
    fn fba2_dimensions() {
        let p = golden();
        let dg = action_matrices(&build_presentation(&p).unwrap());
        let t = run_protocol(&dg, &ProtocolParams::new(3, 5, 2, 1)).unwrap();
        let pairs = zip_pairs(&t.view.bob_public, &t.view.alice_conjugates);
        let sys = build_fba2_system(&pairs, &dg).unwrap();
        let (a, rhs) = sys.linear_system().unwrap();
        assert_eq!((a.rows(), a.cols(), rhs.len()), (5 * 2, 2 + 2, 5 * 2));
    }

    #[test]
    fn identity_secrets_give_identity_key() {
        let p = golden();
        let gens: Vec<GroupElement> = (0..4).map(|i| p.generator(i)).collect();
        let id = p.identity_element();
        let view = PublicView {
            alice_public: gens.clone(),
            bob_public: gens.clone(),
            alice_conjugates: gens.iter().map(|g| g.conj_by(&id)).collect(),
            bob_conjugates: gens.iter().map(|g| g.conj_by(&id)).collect(),
        };
        let out = fba_attack(&view).unwrap();
        assert!(out.key.is_identity());

        let dg = action_matrices(&build_presentation(&p).unwrap());
        let dgens: Vec<DeducedElement> = (0..4).map(|i| dg.generator(i)).collect();
        let dview = PublicView {
            alice_public: dgens.clone(),
            bob_public: dgens.clone(),
            alice_conjugates: dgens.clone(),
            bob_conjugates: dgens,
        };
        assert!(fba2_attack(&dview, &dg).unwrap().key.is_identity());
    }

    #[test]
    fn attack_success_detects_offset() {
        let p = golden();
        let t = run_protocol(&p, &ProtocolParams::new(3, 3, 3, 8)).unwrap();
        assert!(attack_success(&t.shared_key.clone(), &t));
        let offset = t.shared_key.mul(&p.generator(2));
        assert!(!attack_success(&offset, &t));
    }
}

//! The commutator key establishment protocol.
//!
//! Both parties draw public tuples as random words in the platform
//! generators, pick private words over their own tuple, publish the
//! conjugates of the other side's tuple, and end up with `[A, B]`.
//!
//! Words are drawn from a ChaCha8 stream seeded with `params.seed`, in a fixed
//! order, so the same parameters yield the same words in every
//! [`GroupModel`]; running the protocol in the pair model and in the deduced
//! model gives two representations of one instance.

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::group::{random_word, GroupModel, GroupWord, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProtocolError {
    #[error("invalid protocol parameter: {0} must be at least 1")]
    InvalidParams(&'static str),
    #[error("private word must not be empty")]
    EmptyPrivateWord,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("key agreement failed: K_A, K_B and [A, B] differ")]
    KeyMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProtocolParams {
    /// Size of Alice's public tuple.
    pub n1: usize,
    /// Size of Bob's public tuple.
    pub n2: usize,
    /// Length of each private word.
    pub private_len: usize,
    /// Length of each public tuple element as a word in the generators.
    pub gen_word_length: usize,
    pub seed: u64,
}

impl ProtocolParams {
    pub const DEFAULT_GEN_WORD_LENGTH: usize = 10;

    pub fn new(n1: usize, n2: usize, private_len: usize, seed: u64) -> Self {
        ProtocolParams {
            n1,
            n2,
            private_len,
            gen_word_length: Self::DEFAULT_GEN_WORD_LENGTH,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), ProtocolError> {
        for (name, v) in [
            ("n1", self.n1),
            ("n2", self.n2),
            ("private word length", self.private_len),
            ("generator word length", self.gen_word_length),
        ] {
            if v == 0 {
                return Err(ProtocolError::InvalidParams(name));
            }
        }
        Ok(())
    }
}

/// The random choices of one run, independent of the group model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtocolWords {
    /// Alice's tuple `ā`, as words in the platform generators.
    pub alice_public: Vec<GroupWord>,
    /// Bob's tuple `b̄`, as words in the platform generators.
    pub bob_public: Vec<GroupWord>,
    /// `A` as a word over `ā`.
    pub alice_private: GroupWord,
    /// `B` as a word over `b̄`.
    pub bob_private: GroupWord,
}

impl ProtocolWords {
    pub fn draw(gen_count: usize, params: &ProtocolParams) -> Result<Self, ProtocolError> {
        params.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let alice_public = (0..params.n1)
            .map(|_| random_word(&mut rng, gen_count, params.gen_word_length))
            .collect();
        let bob_public = (0..params.n2)
            .map(|_| random_word(&mut rng, gen_count, params.gen_word_length))
            .collect();
        let alice_private = random_word(&mut rng, params.n1, params.private_len);
        let bob_private = random_word(&mut rng, params.n2, params.private_len);
        Ok(ProtocolWords {
            alice_public,
            bob_public,
            alice_private,
            bob_private,
        })
    }
}

/// What an eavesdropper sees.
#[derive(Debug, Clone, PartialEq)]
pub struct PublicView<E> {
    /// `ā`
    pub alice_public: Vec<E>,
    /// `b̄`
    pub bob_public: Vec<E>,
    /// `b̄^A`, published by Alice.
    pub alice_conjugates: Vec<E>,
    /// `ā^B`, published by Bob.
    pub bob_conjugates: Vec<E>,
}

/// One full protocol run, secrets included.
#[derive(Debug, Clone, PartialEq)]
pub struct Transcript<E> {
    pub words: ProtocolWords,
    pub view: PublicView<E>,
    /// `A`; never part of the public view.
    pub alice_secret: E,
    /// `B`; never part of the public view.
    pub bob_secret: E,
    pub shared_key: E,
}

impl<E: Clone> Transcript<E> {
    pub fn public_view(&self) -> PublicView<E> {
        self.view.clone()
    }
}

/// `K_A = A⁻¹ · Π (B⁻¹ a_{s_i} B)^{ε_i}`, built from Bob's conjugates.
pub fn alice_key<G: GroupModel>(
    group: &G,
    view: &PublicView<G::Element>,
    alice_word: &GroupWord,
    alice_secret: &G::Element,
) -> Result<G::Element, ProtocolError> {
    if alice_word.is_empty() {
        return Err(ProtocolError::EmptyPrivateWord);
    }
    let conjugated = group.eval_word(alice_word, &view.bob_conjugates)?;
    Ok(group.mul(&group.inv(alice_secret), &conjugated))
}

/// `K_B = (Π (A⁻¹ b_{t_i} A)^{δ_i})⁻¹ · B`, built from Alice's conjugates.
pub fn bob_key<G: GroupModel>(
    group: &G,
    view: &PublicView<G::Element>,
    bob_word: &GroupWord,
    bob_secret: &G::Element,
) -> Result<G::Element, ProtocolError> {
    if bob_word.is_empty() {
        return Err(ProtocolError::EmptyPrivateWord);
    }
    let conjugated = group.eval_word(bob_word, &view.alice_conjugates)?;
    Ok(group.mul(&group.inv(&conjugated), bob_secret))
}

/// Runs the protocol for pre-drawn words.
pub fn run_with_words<G: GroupModel>(
    group: &G,
    words: ProtocolWords,
) -> Result<Transcript<G::Element>, ProtocolError> {
    let eval_all = |ws: &[GroupWord]| -> Result<Vec<G::Element>, ProtocolError> {
        ws.iter()
            .map(|w| group.eval_generator_word(w).map_err(ProtocolError::from))
            .collect()
    };
    let alice_public = eval_all(&words.alice_public)?;
    let bob_public = eval_all(&words.bob_public)?;
    let a = group.eval_word(&words.alice_private, &alice_public)?;
    let b = group.eval_word(&words.bob_private, &bob_public)?;

    // x^A = A⁻¹ x A with A⁻¹ computed once.
    let (a_inv, b_inv) = (group.inv(&a), group.inv(&b));
    let alice_conjugates = bob_public
        .iter()
        .map(|x| group.mul(&group.mul(&a_inv, x), &a))
        .collect();
    let bob_conjugates = alice_public
        .iter()
        .map(|x| group.mul(&group.mul(&b_inv, x), &b))
        .collect();
    let view = PublicView {
        alice_public,
        bob_public,
        alice_conjugates,
        bob_conjugates,
    };

    let k_a = alice_key(group, &view, &words.alice_private, &a)?;
    let k_b = bob_key(group, &view, &words.bob_private, &b)?;
    let k = group.commutator(&a, &b);
    if k_a != k || k_b != k {
        return Err(ProtocolError::KeyMismatch);
    }
    Ok(Transcript {
        words,
        view,
        alice_secret: a,
        bob_secret: b,
        shared_key: k,
    })
}

/// Draws words from `params` and runs the protocol in `group`.
pub fn run_protocol<G: GroupModel>(
    group: &G,
    params: &ProtocolParams,
) -> Result<Transcript<G::Element>, ProtocolError> {
    let words = ProtocolWords::draw(group.generator_count(), params)?;
    run_with_words(group, words)
}

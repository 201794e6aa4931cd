//! Words over a generating tuple and the group interface shared by the
//! pair model and the deduced model.

use alloc::vec::Vec;
use core::fmt;

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("generator index {index} out of range for {count} generators")]
    IndexOutOfRange { index: usize, count: usize },
}

/// One letter `g_i^{±1}` of a word.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn exponent(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "g{}^-1", self.generator + 1)
        } else {
            write!(f, "g{}", self.generator + 1)
        }
    }
}

/// A word in the generators of some tuple, read left to right.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        GroupWord { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `g_index^exponent` spelled out as `|exponent|` letters.
    pub fn power(index: usize, exponent: i64) -> Self {
        let letter = Letter::new(index, exponent < 0);
        GroupWord {
            letters: core::iter::repeat_n(letter, exponent.unsigned_abs() as usize).collect(),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GroupWord { letters }
    }

    /// The formal inverse: reversed, every letter inverted.
    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    pub fn check_range(&self, count: usize) -> Result<(), WordError> {
        match self.letters.iter().find(|l| l.generator >= count) {
            Some(l) => Err(WordError::IndexOutOfRange {
                index: l.generator,
                count,
            }),
            None => Ok(()),
        }
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        // Collapse runs: g3 g3 g4 -> g3^2 g4
        let mut i = 0;
        let mut first = true;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let e = l.exponent() * run as i64;
            if e == 1 {
                write!(f, "g{}", l.generator + 1)?;
            } else {
                write!(f, "g{}^{}", l.generator + 1, e)?;
            }
            i += run;
        }
        Ok(())
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Uniform independent letters over `gen_count` generators.
///
/// # Panics
///
/// If `gen_count` is zero.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, gen_count: usize, length: usize) -> GroupWord {
    assert!(gen_count > 0, "need at least one generator");
    let letters = (0..length)
        .map(|_| Letter::new(rng.gen_range(0..gen_count), rng.gen_bool(0.5)))
        .collect();
    GroupWord { letters }
}

/// A concrete group with a distinguished generating tuple.
pub trait GroupModel {
    type Element: Clone + PartialEq + fmt::Debug;

    fn identity(&self) -> Self::Element;
    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn inv(&self, a: &Self::Element) -> Self::Element;

    fn generator_count(&self) -> usize;
    fn generator(&self, index: usize) -> Self::Element;

    fn generator_inverse(&self, index: usize) -> Self::Element {
        self.inv(&self.generator(index))
    }

    /// `x⁻¹ g x`.
    fn conj(&self, g: &Self::Element, x: &Self::Element) -> Self::Element {
        self.mul(&self.mul(&self.inv(x), g), x)
    }

    /// `a⁻¹ b⁻¹ a b`.
    fn commutator(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(&self.inv(&ba), &ab)
    }

    /// Left-to-right product of `gens[i]^{±1}`.
    fn eval_word(
        &self,
        word: &GroupWord,
        gens: &[Self::Element],
    ) -> Result<Self::Element, WordError> {
        word.check_range(gens.len())?;
        let mut inverses: Vec<Option<Self::Element>> = (0..gens.len()).map(|_| None).collect();
        let mut acc = self.identity();
        for l in word.letters() {
            if l.inverse {
                let inv = inverses[l.generator].get_or_insert_with(|| self.inv(&gens[l.generator]));
                acc = self.mul(&acc, inv);
            } else {
                acc = self.mul(&acc, &gens[l.generator]);
            }
        }
        Ok(acc)
    }

    /// Evaluates a word in the model's own generators.
    fn eval_generator_word(&self, word: &GroupWord) -> Result<Self::Element, WordError> {
        word.check_range(self.generator_count())?;
        let mut acc = self.identity();
        for l in word.letters() {
            let g = if l.inverse {
                self.generator_inverse(l.generator)
            } else {
                self.generator(l.generator)
            };
            acc = self.mul(&acc, &g);
        }
        Ok(acc)
    }
}

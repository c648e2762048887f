//! Reduced words over a finite alphabet of named generators.
//!
//! Words are stored in syllable (run-length) form: a sequence of
//! `(generator, exponent)` pairs with nonzero exponents and distinct adjacent
//! generators. This keeps words such as `x^1000 y^2` compact; anything that
//! genuinely needs single letters (Fox derivatives, test oracles) expands on
//! demand through [`FreeWord::letters`].

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;

/// A multiplicative sign, the value a Z2 coefficient system assigns to a
/// generator. `Plus` sorts before `Minus`, which fixes the enumeration order
/// of coefficient systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `self` raised to `exponent`; only the exponent's parity matters.
    pub fn pow(self, exponent: &BigInt) -> Sign {
        if self == Sign::Minus && exponent.is_odd() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// An ordered alphabet of distinct generator names. Declaration order is
/// never changed; it defines the column order of every matrix downstream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    names: Vec<String>,
}

impl GeneratorSet {
    pub fn new<I, S>(names: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if !is_valid_ident(name) {
                return Err(Error::InvalidGeneratorName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(Error::DuplicateGeneratorName(name.clone()));
            }
        }
        Ok(GeneratorSet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Identifier syntax shared with the presentation DSL:
/// `[A-Za-z][A-Za-z0-9_]*`.
pub(crate) fn is_valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// One maximal run `generator^exponent` inside a reduced word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: BigInt,
}

/// A reduced word in the free group on `arity` generators.
///
/// Invariants: every exponent is nonzero, adjacent syllables carry distinct
/// generators, and the empty sequence is the identity. All constructors
/// maintain this normal form, so structural equality is equality in the free
/// group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    arity: usize,
    syllables: Vec<Syllable>,
}

/// Pushes a syllable onto a reduced stack, merging with the top run and
/// cancelling empty runs. Repeated pushes of already-reduced input reach the
/// reduced normal form of the concatenation.
fn push_syllable(stack: &mut Vec<Syllable>, generator: usize, exponent: BigInt) {
    if exponent.is_zero() {
        return;
    }
    if let Some(last) = stack.last_mut() {
        if last.generator == generator {
            last.exponent += exponent;
            if last.exponent.is_zero() {
                stack.pop();
            }
            return;
        }
    }
    stack.push(Syllable { generator, exponent });
}

impl FreeWord {
    pub fn identity(arity: usize) -> Self {
        FreeWord { arity, syllables: Vec::new() }
    }

    pub fn generator(arity: usize, generator: usize) -> Result<Self, Error> {
        Self::reduce(arity, [(generator, BigInt::from(1))])
    }

    /// Builds the reduced normal form of a raw syllable sequence. Merges
    /// adjacent runs of the same generator, drops zero exponents, and iterates
    /// cancellation to a fixed point.
    pub fn reduce<I>(arity: usize, raw: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (usize, BigInt)>,
    {
        let mut syllables = Vec::new();
        for (generator, exponent) in raw {
            if generator >= arity {
                return Err(Error::GeneratorIndexOutOfRange { index: generator, arity });
            }
            push_syllable(&mut syllables, generator, exponent);
        }
        Ok(FreeWord { arity, syllables })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Reduced concatenation `self · other`.
    pub fn multiply(&self, other: &FreeWord) -> Result<FreeWord, Error> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { left: self.arity, right: other.arity });
        }
        let mut syllables = self.syllables.clone();
        for s in &other.syllables {
            push_syllable(&mut syllables, s.generator, s.exponent.clone());
        }
        Ok(FreeWord { arity: self.arity, syllables })
    }

    /// Group inverse: reversed syllables with negated exponents.
    pub fn invert(&self) -> FreeWord {
        let syllables = self
            .syllables
            .iter()
            .rev()
            .map(|s| Syllable { generator: s.generator, exponent: -&s.exponent })
            .collect();
        FreeWord { arity: self.arity, syllables }
    }

    /// `exponent`-fold product of `self` (inverse for negative exponents).
    pub fn power(&self, exponent: &BigInt) -> FreeWord {
        if exponent.is_zero() || self.is_identity() {
            return FreeWord::identity(self.arity);
        }
        if exponent.is_negative() {
            return self.invert().power(&-exponent);
        }
        if self.syllables.len() == 1 {
            let s = &self.syllables[0];
            return FreeWord {
                arity: self.arity,
                syllables: vec![Syllable {
                    generator: s.generator,
                    exponent: &s.exponent * exponent,
                }],
            };
        }
        let reps = exponent
            .to_u64()
            .expect("word power exponent too large to expand");
        let mut acc = FreeWord::identity(self.arity);
        for _ in 0..reps {
            acc = acc.multiply(self).expect("same alphabet");
        }
        acc
    }

    /// Total exponent sum of `generator` across the word.
    pub fn exponent_sum(&self, generator: usize) -> BigInt {
        assert!(generator < self.arity, "generator index out of range");
        self.syllables
            .iter()
            .filter(|s| s.generator == generator)
            .map(|s| &s.exponent)
            .sum()
    }

    /// Evaluates the sign character determined by a per-generator sign
    /// assignment: the product over syllables of `signs[g]^exponent`.
    pub fn sign_eval(&self, signs: &[Sign]) -> Result<Sign, Error> {
        if signs.len() != self.arity {
            return Err(Error::AssignmentSizeMismatch { given: signs.len(), expected: self.arity });
        }
        Ok(self
            .syllables
            .iter()
            .fold(Sign::Plus, |acc, s| acc * signs[s.generator].pow(&s.exponent)))
    }

    /// Expands the word into single letters `(generator, is_positive)`.
    ///
    /// Panics if a syllable exponent exceeds `u64`; such a word could not be
    /// expanded within memory anyway.
    pub fn letters(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.syllables.iter().flat_map(|s| {
            let positive = s.exponent.is_positive();
            let count = s
                .exponent
                .magnitude()
                .to_u64()
                .expect("syllable exponent too large to expand");
            std::iter::repeat_n((s.generator, positive), count as usize)
        })
    }

    /// Appends one letter in place, keeping the word reduced.
    pub(crate) fn push_letter(&mut self, generator: usize, positive: bool) {
        let exponent = if positive { BigInt::from(1) } else { BigInt::from(-1) };
        push_syllable(&mut self.syllables, generator, exponent);
    }
}

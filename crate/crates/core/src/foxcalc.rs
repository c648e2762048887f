//! Free differential calculus: group-ring elements over the free group,
//! Fox derivatives, sign augmentation, and the twisted exponent matrix.
//!
//! Derivatives are computed by a single pass over the letter expansion of a
//! word, collecting signed reduced prefixes:
//!
//! ```text
//! ∂w/∂g = Σ over positive occurrences of g of   (prefix before the letter)
//!       − Σ over negative occurrences of g of   (prefix including the letter)
//! ```
//!
//! The recursive product rule is not used here at all; it is verified
//! against this implementation as a property test instead.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::coeffsys::CoefficientSystem;
use crate::error::Error;
use crate::freegroup::{FreeWord, Sign};
use crate::intlinalg::IntMatrix;
use crate::presentation::Presentation;

/// A finitely supported integer combination of reduced free words. Keys are
/// reduced, no zero coefficients are stored, and the empty map is 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElement {
    arity: usize,
    terms: BTreeMap<FreeWord, BigInt>,
}

fn add_term(terms: &mut BTreeMap<FreeWord, BigInt>, word: FreeWord, coefficient: BigInt) {
    if coefficient.is_zero() {
        return;
    }
    let entry = terms.entry(word);
    match entry {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(coefficient);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += coefficient;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl GroupRingElement {
    pub fn zero(arity: usize) -> Self {
        GroupRingElement { arity, terms: BTreeMap::new() }
    }

    pub fn from_term(word: FreeWord, coefficient: BigInt) -> Self {
        let arity = word.arity();
        let mut terms = BTreeMap::new();
        add_term(&mut terms, word, coefficient);
        GroupRingElement { arity, terms }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &FreeWord) -> BigInt {
        self.terms.get(word).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficient-wise sum.
    pub fn add(&self, other: &GroupRingElement) -> Result<GroupRingElement, Error> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { left: self.arity, right: other.arity });
        }
        let mut terms = self.terms.clone();
        for (word, coefficient) in &other.terms {
            add_term(&mut terms, word.clone(), coefficient.clone());
        }
        Ok(GroupRingElement { arity: self.arity, terms })
    }

    /// Left multiplication by a group element: every key u becomes the
    /// reduced product w·u, with coefficients merged.
    pub fn left_mul_word(&self, word: &FreeWord) -> Result<GroupRingElement, Error> {
        if self.arity != word.arity() {
            return Err(Error::ArityMismatch { left: word.arity(), right: self.arity });
        }
        let mut terms = BTreeMap::new();
        for (key, coefficient) in &self.terms {
            add_term(&mut terms, word.multiply(key)?, coefficient.clone());
        }
        Ok(GroupRingElement { arity: self.arity, terms })
    }

    /// Sign augmentation: Σ coefficient · sign(word). Accepts any raw sign
    /// assignment; validity against relators is the caller's concern.
    pub fn augment(&self, signs: &[Sign]) -> Result<BigInt, Error> {
        let mut total = BigInt::zero();
        for (word, coefficient) in &self.terms {
            match word.sign_eval(signs)? {
                Sign::Plus => total += coefficient,
                Sign::Minus => total -= coefficient,
            }
        }
        Ok(total)
    }
}

/// The Fox derivative ∂word/∂generator as a group-ring element, by the
/// prefix rule over the letter expansion. Prefixes are kept reduced so that
/// coefficient merging is canonical.
pub fn fox_derivative(word: &FreeWord, generator: usize) -> GroupRingElement {
    assert!(generator < word.arity(), "generator index out of range");
    let mut terms = BTreeMap::new();
    let mut prefix = FreeWord::identity(word.arity());
    for (g, positive) in word.letters() {
        if positive {
            if g == generator {
                add_term(&mut terms, prefix.clone(), BigInt::from(1));
            }
            prefix.push_letter(g, true);
        } else {
            prefix.push_letter(g, false);
            if g == generator {
                add_term(&mut terms, prefix.clone(), BigInt::from(-1));
            }
        }
    }
    GroupRingElement { arity: word.arity(), terms }
}

/// The twisted exponent matrix: entry (i, j) is the augmented Fox derivative
/// of relator i with respect to generator j. At the trivial system this is
/// the plain exponent matrix; for every valid system it is congruent to it
/// mod 2.
pub fn twisted_matrix(
    presentation: &Presentation,
    system: &CoefficientSystem,
) -> Result<IntMatrix, Error> {
    // revalidate: the system value may have been built for another presentation
    for (relator_index, r) in presentation.relators().iter().enumerate() {
        if r.sign_eval(system.signs())? == Sign::Minus {
            return Err(Error::InvalidSystem { relator_index });
        }
    }
    let m = presentation.num_relators();
    let n = presentation.num_generators();
    let mut entries = Vec::with_capacity(m * n);
    for r in presentation.relators() {
        for j in 0..n {
            entries.push(fox_derivative(r, j).augment(system.signs())?);
        }
    }
    let mut iter = entries.into_iter();
    Ok(IntMatrix::from_fn(m, n, |_, _| iter.next().expect("counted")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffsys::enumerate_systems;
    use proptest::prelude::*;

    fn word(arity: usize, raw: &[(usize, i64)]) -> FreeWord {
        FreeWord::reduce(arity, raw.iter().map(|&(g, e)| (g, BigInt::from(e)))).unwrap()
    }

    fn gre(words: &[(FreeWord, i64)]) -> GroupRingElement {
        let arity = words.first().map_or(0, |(w, _)| w.arity());
        words.iter().fold(GroupRingElement::zero(arity), |acc, (w, c)| {
            acc.add(&GroupRingElement::from_term(w.clone(), BigInt::from(*c))).unwrap()
        })
    }

    #[test]
    fn derivative_axioms() {
        let x = word(1, &[(0, 1)]);
        assert_eq!(fox_derivative(&x, 0), gre(&[(FreeWord::identity(1), 1)]));
        let x_inv = word(1, &[(0, -1)]);
        assert_eq!(fox_derivative(&x_inv, 0), gre(&[(x_inv.clone(), -1)]));
        let y = word(2, &[(1, 1)]);
        assert!(fox_derivative(&y, 0).is_zero());
    }

    #[test]
    fn derivative_of_example_relator() {
        // ∂(x^4 y x y)/∂x = 1 + x + x^2 + x^3 + x^4 y
        let r = word(2, &[(0, 4), (1, 1), (0, 1), (1, 1)]);
        let expected = gre(&[
            (FreeWord::identity(2), 1),
            (word(2, &[(0, 1)]), 1),
            (word(2, &[(0, 2)]), 1),
            (word(2, &[(0, 3)]), 1),
            (word(2, &[(0, 4), (1, 1)]), 1),
        ]);
        assert_eq!(fox_derivative(&r, 0), expected);
        // ∂(x^4 y x y)/∂y = x^4 + x^4 y x
        let expected = gre(&[
            (word(2, &[(0, 4)]), 1),
            (word(2, &[(0, 4), (1, 1), (0, 1)]), 1),
        ]);
        assert_eq!(fox_derivative(&r, 1), expected);
    }

    #[test]
    fn augmentation_of_example_relator() {
        let r = word(2, &[(0, 4), (1, 1), (0, 1), (1, 1)]);
        let beta2 = [Sign::Plus, Sign::Minus];
        assert_eq!(fox_derivative(&r, 0).augment(&beta2).unwrap(), BigInt::from(3));
        assert_eq!(fox_derivative(&r, 1).augment(&beta2).unwrap(), BigInt::from(0));
        assert_eq!(GroupRingElement::zero(2).augment(&beta2).unwrap(), BigInt::from(0));
    }

    #[test]
    fn addition_merges_and_prunes() {
        let x = word(1, &[(0, 1)]);
        let a = GroupRingElement::from_term(x.clone(), BigInt::from(1));
        let b = GroupRingElement::from_term(x.clone(), BigInt::from(-1));
        assert!(a.add(&b).unwrap().is_zero());

        let zero = GroupRingElement::zero(1);
        assert_eq!(zero.add(&a).unwrap(), a);

        let y = word(2, &[(1, 1)]);
        let x2 = word(2, &[(0, 1)]);
        let sum = gre(&[(x2.clone(), 1), (y.clone(), 1)])
            .add(&GroupRingElement::from_term(x2.clone(), BigInt::from(1)))
            .unwrap();
        assert_eq!(sum, gre(&[(x2, 2), (y, 1)]));
    }

    #[test]
    fn left_multiplication_reduces_keys() {
        let x = word(2, &[(0, 1)]);
        let one = GroupRingElement::from_term(FreeWord::identity(2), BigInt::from(1));
        assert_eq!(one.left_mul_word(&x).unwrap(), GroupRingElement::from_term(x.clone(), BigInt::from(1)));

        let a = gre(&[(word(2, &[(0, -1)]), 1), (word(2, &[(1, 1)]), 1)]);
        let scaled = a.left_mul_word(&x).unwrap();
        assert_eq!(scaled, gre(&[(FreeWord::identity(2), 1), (word(2, &[(0, 1), (1, 1)]), 1)]));

        assert_eq!(a.left_mul_word(&FreeWord::identity(2)).unwrap(), a);
    }

    #[test]
    fn arity_mismatches_are_rejected() {
        let a = GroupRingElement::zero(1);
        let b = GroupRingElement::zero(2);
        assert!(matches!(a.add(&b), Err(Error::ArityMismatch { .. })));
        assert!(matches!(
            b.left_mul_word(&word(1, &[(0, 1)])),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn twisted_matrix_examples() {
        let p = Presentation::parse("< x, y | x^4 y x y >").unwrap();
        let beta2 = CoefficientSystem::new(&p, vec![Sign::Plus, Sign::Minus]).unwrap();
        assert_eq!(twisted_matrix(&p, &beta2).unwrap(), IntMatrix::from_i64_rows(&[&[3, 0]]));

        let rp2 = Presentation::parse("< x | x^2 >").unwrap();
        let rho = CoefficientSystem::new(&rp2, vec![Sign::Minus]).unwrap();
        assert_eq!(twisted_matrix(&rp2, &rho).unwrap(), IntMatrix::from_i64_rows(&[&[0]]));

        let trivial = CoefficientSystem::trivial(&p);
        assert_eq!(twisted_matrix(&p, &trivial).unwrap(), p.exponent_matrix());
    }

    #[test]
    fn twisted_matrix_rejects_foreign_system() {
        let p = Presentation::parse("< x, y | x y >").unwrap();
        let q = Presentation::parse("< x, y | x^2 y >").unwrap();
        let beta3 = CoefficientSystem::new(&p, vec![Sign::Minus, Sign::Minus]).unwrap();
        // beta3 kills x y but not x^2 y
        assert!(matches!(
            twisted_matrix(&q, &beta3),
            Err(Error::InvalidSystem { relator_index: 0 })
        ));
    }

    #[test]
    fn case3_base_word_anchors() {
        // r0 = x^{p+2} y^2 x^{p+1} y^{2q+1} under the both-twisting system:
        // the augmented derivatives are 1 and -1 for every p, q
        let beta3 = [Sign::Minus, Sign::Minus];
        for p in 0..4i64 {
            for q in 0..4i64 {
                let r0 = word(2, &[(0, p + 2), (1, 2), (0, p + 1), (1, 2 * q + 1)]);
                assert_eq!(fox_derivative(&r0, 0).augment(&beta3).unwrap(), BigInt::from(1));
                assert_eq!(fox_derivative(&r0, 1).augment(&beta3).unwrap(), BigInt::from(-1));
            }
        }
    }

    #[test]
    fn appended_block_shifts_x_entry_by_two_under_beta2() {
        // appending y^-1 x^-1 y^-1 x y^2 to any word killed by (x=+1, y=-1)
        // moves the augmented x-derivative by exactly 2 and fixes the y one
        let beta2 = [Sign::Plus, Sign::Minus];
        let block = word(2, &[(1, -1), (0, -1), (1, -1), (0, 1), (1, 2)]);
        let samples = [
            word(2, &[(0, 2), (1, 1), (0, 1), (1, 1)]),
            word(2, &[(0, 3), (1, 2)]),
            word(2, &[(0, 1), (1, 4), (0, 2)]),
        ];
        for r in samples {
            assert_eq!(r.sign_eval(&beta2).unwrap(), Sign::Plus);
            let s = r.multiply(&block).unwrap();
            let dx_r = fox_derivative(&r, 0).augment(&beta2).unwrap();
            let dx_s = fox_derivative(&s, 0).augment(&beta2).unwrap();
            assert_eq!(dx_s, dx_r + 2);
            let dy_r = fox_derivative(&r, 1).augment(&beta2).unwrap();
            let dy_s = fox_derivative(&s, 1).augment(&beta2).unwrap();
            assert_eq!(dy_s, dy_r);
        }
    }

    fn reduced_word(arity: usize) -> impl Strategy<Value = FreeWord> {
        prop::collection::vec((0..arity, -3i64..=3), 0..7).prop_map(move |raw| {
            FreeWord::reduce(arity, raw.into_iter().map(|(g, e)| (g, BigInt::from(e)))).unwrap()
        })
    }

    fn signs3() -> impl Strategy<Value = Vec<Sign>> {
        prop::collection::vec(prop::bool::ANY, 3)
            .prop_map(|v| v.into_iter().map(|b| if b { Sign::Minus } else { Sign::Plus }).collect())
    }

    proptest! {
        #[test]
        fn product_rule_in_the_ring(u in reduced_word(3), v in reduced_word(3), g in 0usize..3) {
            let uv = u.multiply(&v).unwrap();
            let lhs = fox_derivative(&uv, g);
            let rhs = fox_derivative(&u, g)
                .add(&fox_derivative(&v, g).left_mul_word(&u).unwrap())
                .unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn product_rule_after_augmentation(
            u in reduced_word(3), v in reduced_word(3), g in 0usize..3, signs in signs3()
        ) {
            let uv = u.multiply(&v).unwrap();
            let lhs = fox_derivative(&uv, g).augment(&signs).unwrap();
            let du = fox_derivative(&u, g).augment(&signs).unwrap();
            let dv = fox_derivative(&v, g).augment(&signs).unwrap();
            let rhs = du + BigInt::from(u.sign_eval(&signs).unwrap().value()) * dv;
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inverse_rule_after_augmentation(
            w in reduced_word(3), g in 0usize..3, signs in signs3()
        ) {
            let lhs = fox_derivative(&w.invert(), g).augment(&signs).unwrap();
            let dw = fox_derivative(&w, g).augment(&signs).unwrap();
            let rhs = -BigInt::from(w.sign_eval(&signs).unwrap().value()) * dw;
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn trivial_augmentation_recovers_exponent_sums(w in reduced_word(3), g in 0usize..3) {
            let trivial = vec![Sign::Plus; 3];
            prop_assert_eq!(
                fox_derivative(&w, g).augment(&trivial).unwrap(),
                w.exponent_sum(g)
            );
        }

        #[test]
        fn twisted_matrix_is_congruent_to_delta_mod_2(
            words in prop::collection::vec(prop::collection::vec((0usize..3, -3i64..=3), 1..8), 0..3)
        ) {
            let gens = crate::freegroup::GeneratorSet::new(["x", "y", "z"]).unwrap();
            let relators: Vec<FreeWord> = words
                .into_iter()
                .filter_map(|raw| {
                    let w = FreeWord::reduce(3, raw.into_iter().map(|(g, e)| (g, BigInt::from(e))))
                        .unwrap();
                    (!w.is_identity()).then_some(w)
                })
                .collect();
            let p = Presentation::new(gens, relators).unwrap();
            let delta = p.exponent_matrix();
            for system in enumerate_systems(&p) {
                let twisted = twisted_matrix(&p, &system).unwrap();
                prop_assert!(twisted.congruent_mod(&delta, &BigInt::from(2)));
            }
        }
    }
}

//! Local Z2 coefficient systems over the two-complex of a presentation.
//!
//! A system assigns +1 or -1 to each generator so that every relator
//! evaluates to +1; exactly then does the assignment descend to a
//! homomorphism from the presented group. Enumeration works on the mod-2
//! nullspace of the exponent matrix rather than by trying all 2^n sign
//! vectors; the brute-force route survives in the tests as an oracle.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::Error;
use crate::freegroup::{GeneratorSet, Sign};
use crate::intlinalg::IntMatrix;
use crate::presentation::Presentation;

/// Names for the distinguished systems of a two-generator presentation:
/// β₁ twists only the first generator, β₂ only the second, β₃ both. These
/// names are attached only when the alphabet has exactly two generators;
/// other systems are identified by their sign vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SystemLabel {
    Trivial,
    Beta1,
    Beta2,
    Beta3,
}

impl fmt::Display for SystemLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SystemLabel::Trivial => "trivial",
            SystemLabel::Beta1 => "β₁",
            SystemLabel::Beta2 => "β₂",
            SystemLabel::Beta3 => "β₃",
        };
        f.write_str(s)
    }
}

/// A validated coefficient system: a sign per generator that kills every
/// relator of the ambient presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientSystem {
    signs: Vec<Sign>,
    label: Option<SystemLabel>,
}

impl CoefficientSystem {
    /// Validates the assignment against the presentation's relators.
    pub fn new(presentation: &Presentation, signs: Vec<Sign>) -> Result<Self, Error> {
        if signs.len() != presentation.num_generators() {
            return Err(Error::AssignmentSizeMismatch {
                given: signs.len(),
                expected: presentation.num_generators(),
            });
        }
        for (relator_index, r) in presentation.relators().iter().enumerate() {
            if r.sign_eval(&signs)? == Sign::Minus {
                return Err(Error::InvalidSystem { relator_index });
            }
        }
        let label = label_for(&signs);
        Ok(CoefficientSystem { signs, label })
    }

    /// The trivial system: +1 on every generator. Always valid.
    pub fn trivial(presentation: &Presentation) -> Self {
        CoefficientSystem {
            signs: vec![Sign::Plus; presentation.num_generators()],
            label: Some(SystemLabel::Trivial),
        }
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn label(&self) -> Option<SystemLabel> {
        self.label
    }

    pub fn is_trivial(&self) -> bool {
        self.signs.iter().all(|s| *s == Sign::Plus)
    }

    /// Label if named, otherwise the sign vector, e.g. `(x=-1, y=+1)`.
    pub fn describe(&self, generators: &GeneratorSet) -> String {
        match self.label {
            Some(label) => label.to_string(),
            None => {
                let body = self
                    .signs
                    .iter()
                    .enumerate()
                    .map(|(i, s)| format!("{}={}", generators.name(i), s))
                    .collect::<Vec<_>>()
                    .join(", ");
                format!("({body})")
            }
        }
    }
}

fn label_for(signs: &[Sign]) -> Option<SystemLabel> {
    if signs.iter().all(|s| *s == Sign::Plus) {
        return Some(SystemLabel::Trivial);
    }
    if signs.len() == 2 {
        return Some(match (signs[0], signs[1]) {
            (Sign::Minus, Sign::Plus) => SystemLabel::Beta1,
            (Sign::Plus, Sign::Minus) => SystemLabel::Beta2,
            (Sign::Minus, Sign::Minus) => SystemLabel::Beta3,
            (Sign::Plus, Sign::Plus) => unreachable!("trivial handled above"),
        });
    }
    None
}

/// True iff the assignment kills every relator, i.e. it descends to the
/// presented group. Equivalently each row of the exponent matrix pairs to 0
/// mod 2 with the twist vector.
pub fn is_valid_system(presentation: &Presentation, signs: &[Sign]) -> Result<bool, Error> {
    if signs.len() != presentation.num_generators() {
        return Err(Error::AssignmentSizeMismatch {
            given: signs.len(),
            expected: presentation.num_generators(),
        });
    }
    for r in presentation.relators() {
        if r.sign_eval(signs)? == Sign::Minus {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All valid coefficient systems, trivial first, then lexicographic on sign
/// vectors with +1 before -1. The count is 2^(n − rank₂(Δ)).
pub fn enumerate_systems(presentation: &Presentation) -> Vec<CoefficientSystem> {
    let n = presentation.num_generators();
    let delta = presentation.exponent_matrix();
    let basis = Gf2Matrix::from_int_matrix(&delta).nullspace();
    let k = basis.len();
    assert!(k <= 24, "too many coefficient systems to enumerate (2^{k})");

    let mut systems: Vec<Vec<Sign>> = Vec::with_capacity(1 << k);
    for mask in 0u32..(1u32 << k) {
        let mut twist = vec![false; n];
        for (b, vector) in basis.iter().enumerate() {
            if mask & (1 << b) != 0 {
                for (t, v) in twist.iter_mut().zip(vector) {
                    *t ^= v;
                }
            }
        }
        systems.push(
            twist.into_iter().map(|t| if t { Sign::Minus } else { Sign::Plus }).collect(),
        );
    }
    systems.sort();
    systems
        .into_iter()
        .map(|signs| {
            CoefficientSystem::new(presentation, signs)
                .expect("nullspace vectors kill all relators")
        })
        .collect()
}

/// Rank of a matrix reduced mod 2.
pub fn mod2_rank(matrix: &IntMatrix) -> usize {
    Gf2Matrix::from_int_matrix(matrix).rank()
}

/// The feasibility table for a (2,1)-presentation whose relator has exponent
/// sums (a, b): which of the four sign systems descend to the quotient.
pub fn feasible_homs_2_1(a: &BigInt, b: &BigInt) -> Vec<SystemLabel> {
    use SystemLabel::*;
    match (a.is_odd(), b.is_odd()) {
        (false, true) => vec![Trivial, Beta1],
        (true, false) => vec![Trivial, Beta2],
        (true, true) => vec![Trivial, Beta3],
        (false, false) => vec![Trivial, Beta1, Beta2, Beta3],
    }
}

/// Parses the sign-assignment syntax shared with the CLI: comma-separated
/// `gen=+1|-1|+|-`; omitted generators default to +1.
pub fn parse_assignment(text: &str, generators: &GeneratorSet) -> Result<Vec<Sign>, Error> {
    let mut signs = vec![Sign::Plus; generators.len()];
    let mut seen = vec![false; generators.len()];
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let Some((name, value)) = part.split_once('=') else {
            return Err(Error::InvalidAssignment(format!("expected `gen=sign` in `{part}`")));
        };
        let name = name.trim();
        let Some(index) = generators.index_of(name) else {
            return Err(Error::UnknownGenerator(name.into()));
        };
        if seen[index] {
            return Err(Error::InvalidAssignment(format!("generator `{name}` assigned twice")));
        }
        seen[index] = true;
        signs[index] = match value.trim() {
            "+1" | "+" => Sign::Plus,
            "-1" | "-" => Sign::Minus,
            other => {
                return Err(Error::InvalidAssignment(format!(
                    "sign for `{name}` must be one of +1, -1, +, -; got `{other}`"
                )))
            }
        };
    }
    Ok(signs)
}

/// Bit-packed matrix over GF(2); rows are u64 chunks.
struct Gf2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Gf2Matrix {
    fn from_int_matrix(m: &IntMatrix) -> Self {
        let words = m.cols().div_ceil(64).max(1);
        let mut g = Gf2Matrix {
            rows: m.rows(),
            cols: m.cols(),
            words,
            bits: vec![0; m.rows() * words],
        };
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if m.entry(i, j).is_odd() {
                    g.set(i, j);
                }
            }
        }
        g
    }

    fn set(&mut self, row: usize, col: usize) {
        self.bits[row * self.words + col / 64] |= 1 << (col % 64);
    }

    fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.words + col / 64] & (1 << (col % 64)) != 0
    }

    fn xor_rows(&mut self, target: usize, source: usize) {
        for w in 0..self.words {
            let bit = self.bits[source * self.words + w];
            self.bits[target * self.words + w] ^= bit;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for w in 0..self.words {
            self.bits.swap(a * self.words + w, b * self.words + w);
        }
    }

    /// Row echelon form; returns the pivot column of each pivot row.
    fn eliminate(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(pivot_row) = (row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(row, pivot_row);
            for r in 0..self.rows {
                if r != row && self.get(r, col) {
                    self.xor_rows(r, row);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn rank(mut self) -> usize {
        self.eliminate().len()
    }

    /// Basis of the right nullspace as dense bool vectors of length `cols`.
    fn nullspace(mut self) -> Vec<Vec<bool>> {
        let pivots = self.eliminate();
        let mut basis = Vec::new();
        let mut pivot_iter = pivots.iter().copied().enumerate();
        let mut pivot_of_col = vec![None; self.cols];
        for (row, col) in &mut pivot_iter {
            pivot_of_col[col] = Some(row);
        }
        for free_col in 0..self.cols {
            if pivot_of_col[free_col].is_some() {
                continue;
            }
            let mut v = vec![false; self.cols];
            v[free_col] = true;
            for (col, pivot_row) in pivot_of_col.iter().enumerate() {
                if let Some(row) = pivot_row {
                    if self.get(*row, free_col) {
                        v[col] = true;
                    }
                }
            }
            basis.push(v);
        }
        basis
    }
}

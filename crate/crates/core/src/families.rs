//! Constructors for the two-generator relator families with prescribed
//! exponent sums and twisted cohomology, and the realizability solver that
//! hits any odd cyclic order for coprime exponent sums.
//!
//! All families live over the alphabet (x, y) and emit reduced relators. The
//! appended block `y^-1 x^-1 y^-1 x y^2` has zero exponent sum in both
//! generators, so it changes the twisted matrix without moving (a, b).

use num_bigint::BigInt;
use num_integer::Integer;

use crate::coeffsys::{CoefficientSystem, SystemLabel};
use crate::error::Error;
use crate::foxcalc::twisted_matrix;
use crate::freegroup::{FreeWord, GeneratorSet, Sign};
use crate::intlinalg::{cokernel, GroupOrder};
use crate::presentation::Presentation;

/// The available relator families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    ExampleK1,
    ExampleK2,
    Case1,
    Case2,
    Case3,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::ExampleK1, Family::ExampleK2, Family::Case1, Family::Case2, Family::Case3];

    pub fn name(self) -> &'static str {
        match self {
            Family::ExampleK1 => "example-k1",
            Family::ExampleK2 => "example-k2",
            Family::Case1 => "case1",
            Family::Case2 => "case2",
            Family::Case3 => "case3",
        }
    }

    /// Parameters the family requires, in canonical order.
    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            Family::ExampleK1 => &["k"],
            Family::ExampleK2 => &["k", "l"],
            Family::Case1 | Family::Case2 => &["p", "q", "j"],
            Family::Case3 => &["p", "q", "n"],
        }
    }

    /// The canonical nontrivial coefficient system of the family.
    pub fn canonical_label(self) -> SystemLabel {
        match self {
            Family::ExampleK1 | Family::ExampleK2 | Family::Case1 => SystemLabel::Beta2,
            Family::Case2 => SystemLabel::Beta1,
            Family::Case3 => SystemLabel::Beta3,
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidFamilyParameter(format!("unknown family `{s}`")))
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn xy_generators() -> GeneratorSet {
    GeneratorSet::new(["x", "y"]).expect("fixed valid names")
}

fn xy_presentation(raw: Vec<(usize, BigInt)>) -> Presentation {
    let word = FreeWord::reduce(2, raw).expect("indices 0..2");
    Presentation::new(xy_generators(), vec![word]).expect("family relators are never trivial")
}

fn signs_for(label: SystemLabel) -> Vec<Sign> {
    match label {
        SystemLabel::Trivial => vec![Sign::Plus, Sign::Plus],
        SystemLabel::Beta1 => vec![Sign::Minus, Sign::Plus],
        SystemLabel::Beta2 => vec![Sign::Plus, Sign::Minus],
        SystemLabel::Beta3 => vec![Sign::Minus, Sign::Minus],
    }
}

/// `y^-1 x^-1 y^-1 x y^2` repeated `count` times, appended to `base`.
fn append_blocks(base: Presentation, count: u64) -> Presentation {
    let block = FreeWord::reduce(
        2,
        [(1, -1i64), (0, -1), (1, -1), (0, 1), (1, 2)].map(|(g, e)| (g, BigInt::from(e))),
    )
    .unwrap();
    let relator = base.relators()[0]
        .multiply(&block.power(&BigInt::from(count)))
        .expect("same alphabet");
    Presentation::new(xy_generators(), vec![relator]).expect("blocks never cancel the relator")
}

fn require_odd(name: &'static str, value: u64) -> Result<(), Error> {
    if value == 0 || value.is_even() {
        return Err(Error::InvalidFamilyParameter(format!(
            "{name} must be odd and >= 1, got {value}"
        )));
    }
    Ok(())
}

/// `< x, y | x^{k+1} y x y >` for odd k ≥ 1; twisted order k under β₂.
pub fn example_k1(k: u64) -> Result<Presentation, Error> {
    require_odd("k", k)?;
    let big = BigInt::from;
    Ok(xy_presentation(vec![(0, big(k) + 1), (1, big(1)), (0, big(1)), (1, big(1))]))
}

/// `< x, y | x^{k+2+l} y^2 x^{-l} >` for odd k ≥ 1, l ≥ 0; twisted order
/// k + 2 under β₂ independently of l. For l > 0 the trailing negative run
/// stays in the reduced word; the y² in the middle keeps it from cancelling.
pub fn example_k2(k: u64, l: u64) -> Result<Presentation, Error> {
    require_odd("k", k)?;
    let big = BigInt::from;
    let head = big(k) + 2 + big(l);
    let mut raw = vec![(0, head), (1, big(2))];
    if l > 0 {
        raw.push((0, -big(l)));
    }
    Ok(xy_presentation(raw))
}

/// Base `x^{p+2} y x^{p+1} y^{2q+1}` with j appended blocks; exponent sums
/// (2p+3, 2q+2) and twisted order 2j+1 under β₂.
pub fn case1_word(p: u64, q: u64, j: u64) -> Presentation {
    let big = BigInt::from;
    let base = xy_presentation(vec![
        (0, big(p) + 2),
        (1, big(1)),
        (0, big(p) + 1),
        (1, big(q) * 2 + 1),
    ]);
    append_blocks(base, j)
}

/// [`case1_word`] with the two letters exchanged; exponent sums
/// (2q+2, 2p+3) and twisted order 2j+1 under β₁.
pub fn case2_word(p: u64, q: u64, j: u64) -> Presentation {
    let mirrored = case1_word(p, q, j);
    let swapped = FreeWord::reduce(
        2,
        mirrored.relators()[0]
            .syllables()
            .iter()
            .map(|s| (1 - s.generator, s.exponent.clone())),
    )
    .unwrap();
    Presentation::new(xy_generators(), vec![swapped]).expect("mirror of a nontrivial word")
}

/// Base `x^{p+2} y^2 x^{p+1} y^{2q+1}` with n ≥ 1 appended blocks; exponent
/// sums (2p+3, 2q+3) and twisted order 2n−1 under β₃.
pub fn case3_word(p: u64, q: u64, n: u64) -> Result<Presentation, Error> {
    if n == 0 {
        return Err(Error::InvalidFamilyParameter("n must be >= 1".into()));
    }
    let big = BigInt::from;
    let base = xy_presentation(vec![
        (0, big(p) + 2),
        (1, big(2)),
        (0, big(p) + 1),
        (1, big(q) * 2 + 1),
    ]);
    Ok(append_blocks(base, n))
}

/// A realized presentation together with the coefficient system that
/// produces the requested twisted order, and that order recomputed from the
/// emitted word.
#[derive(Clone, Debug)]
pub struct Realization {
    pub presentation: Presentation,
    pub system: CoefficientSystem,
    pub family: Family,
    pub order: BigInt,
}

/// Finds a single-relator presentation with exponent sums exactly (a, b) and
/// twisted cohomology of order exactly c under the unique feasible
/// nontrivial system. Requires a, b ≥ 2 coprime and c ≥ 1 odd; both even is
/// impossible under coprimality, and equal-parity pairs share no feasible β
/// with mixed ones, so the dispatch below is total.
pub fn realize_order(a: u64, b: u64, c: u64) -> Result<Realization, Error> {
    if a < 2 || b < 2 {
        return Err(Error::InvalidFamilyParameter(format!(
            "exponent sums must be at least 2, got ({a}, {b})"
        )));
    }
    if a.gcd(&b) != 1 {
        return Err(Error::InvalidFamilyParameter(format!(
            "exponent sums must be coprime, got ({a}, {b}) with gcd {}",
            a.gcd(&b)
        )));
    }
    if c.is_even() || c == 0 {
        return Err(Error::InvalidFamilyParameter(format!("order must be odd and >= 1, got {c}")));
    }

    // for odd c: (c - 1)/2 == c/2 and (c + 1)/2 == c/2 + 1, with no overflow
    let (family, presentation) = match (a.is_odd(), b.is_odd()) {
        (true, false) => (Family::Case1, case1_word((a - 3) / 2, (b - 2) / 2, c / 2)),
        (false, true) => (Family::Case2, case2_word((b - 3) / 2, (a - 2) / 2, c / 2)),
        (true, true) => (Family::Case3, case3_word((a - 3) / 2, (b - 3) / 2, c / 2 + 1)?),
        (false, false) => unreachable!("coprimality rules out two even sums"),
    };
    let system = CoefficientSystem::new(&presentation, signs_for(family.canonical_label()))
        .expect("the canonical system kills the family relator");

    // recompute everything from the emitted word before handing it out
    let relator = &presentation.relators()[0];
    assert_eq!(relator.exponent_sum(0), BigInt::from(a), "x exponent sum mismatch");
    assert_eq!(relator.exponent_sum(1), BigInt::from(b), "y exponent sum mismatch");
    let h2 = cokernel(&twisted_matrix(&presentation, &system).expect("validated system"));
    let order = match h2.order() {
        GroupOrder::Finite(n) => n,
        GroupOrder::Infinite => unreachable!("family cohomology is always finite"),
    };
    assert_eq!(order, BigInt::from(c), "twisted order mismatch");

    Ok(Realization { presentation, system, family, order })
}

/// Named parameter bag for family construction; which entries matter
/// depends on the family.
#[derive(Clone, Copy, Debug, Default)]
pub struct FamilyParams {
    pub k: Option<u64>,
    pub l: Option<u64>,
    pub p: Option<u64>,
    pub q: Option<u64>,
    pub j: Option<u64>,
    pub n: Option<u64>,
}

/// A family selected by name plus its named parameters, the shape the CLI
/// traffics in. Parameters the family does not use are ignored by `build`.
#[derive(Clone, Copy, Debug)]
pub struct FamilySpec {
    pub family: Family,
    pub params: FamilyParams,
}

/// A constructed family member with its canonical system and the order its
/// parameters predict.
#[derive(Clone, Debug)]
pub struct FamilyBuild {
    pub family: Family,
    pub presentation: Presentation,
    pub system: CoefficientSystem,
    pub predicted_order: BigInt,
}

impl FamilySpec {
    fn get(&self, name: &'static str) -> Result<u64, Error> {
        let value = match name {
            "k" => self.params.k,
            "l" => self.params.l,
            "p" => self.params.p,
            "q" => self.params.q,
            "j" => self.params.j,
            "n" => self.params.n,
            _ => None,
        };
        value.ok_or(Error::MissingFamilyParameter(name))
    }

    pub fn build(&self) -> Result<FamilyBuild, Error> {
        let family = self.family;
        let (presentation, predicted_order) = match family {
            Family::ExampleK1 => {
                let k = self.get("k")?;
                (example_k1(k)?, BigInt::from(k))
            }
            Family::ExampleK2 => {
                let (k, l) = (self.get("k")?, self.get("l")?);
                (example_k2(k, l)?, BigInt::from(k) + 2)
            }
            Family::Case1 => {
                let (p, q, j) = (self.get("p")?, self.get("q")?, self.get("j")?);
                (case1_word(p, q, j), BigInt::from(j) * 2 + 1)
            }
            Family::Case2 => {
                let (p, q, j) = (self.get("p")?, self.get("q")?, self.get("j")?);
                (case2_word(p, q, j), BigInt::from(j) * 2 + 1)
            }
            Family::Case3 => {
                let (p, q, n) = (self.get("p")?, self.get("q")?, self.get("n")?);
                (case3_word(p, q, n)?, BigInt::from(n) * 2 - 1)
            }
        };
        let system = CoefficientSystem::new(&presentation, signs_for(family.canonical_label()))
            .expect("the canonical system kills the family relator");
        Ok(FamilyBuild { family, presentation, system, predicted_order })
    }
}

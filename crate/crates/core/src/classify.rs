//! Per-system cohomology reports and the homotopy-class counting engine.
//!
//! For a presentation whose untwisted second cohomology is finite of odd
//! order, every twisted cohomology group is finite of odd order as well, and
//! the counting identities apply system by system:
//!
//! * `c_star` — the order of the twisted group, which counts based classes;
//! * `c_free = (c_star + 1) / 2` — the number of free classes, i.e. the
//!   orbit count of negation on an odd-order abelian group (zero is the only
//!   fixed point, everything else pairs up);
//! * `strongly_surjective = c_free − 1` — all classes except the zero class
//!   consist entirely of surjective maps.
//!
//! Presentations that fail the odd-order hypothesis get a structured refusal
//! instead of counts: the identities are simply false there.

use num_bigint::BigInt;

use crate::coeffsys::{enumerate_systems, CoefficientSystem};
use crate::error::Error;
use crate::foxcalc::twisted_matrix;
use crate::intlinalg::{cokernel, AbelianGroup, GroupOrder, IntMatrix};
use crate::presentation::Presentation;

/// Outcome of the odd-order hypothesis check on the untwisted cohomology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub h2_untwisted: AbelianGroup,
}

impl HypothesisReport {
    pub fn ok(&self) -> bool {
        self.h2_untwisted.is_finite_odd()
    }

    pub fn failure_reason(&self) -> Option<String> {
        if self.ok() {
            return None;
        }
        if self.h2_untwisted.free_rank() > 0 {
            Some(format!("H^2 has free rank {}", self.h2_untwisted.free_rank()))
        } else {
            Some(format!("H^2 = {} has even order", self.h2_untwisted))
        }
    }
}

/// Checks the hypothesis on the trivial system only. Odd-order finiteness
/// propagates to every twisted system because the twisted matrices are all
/// congruent mod 2, so this single check suffices.
pub fn check_hypothesis(presentation: &Presentation) -> HypothesisReport {
    HypothesisReport { h2_untwisted: cokernel(&presentation.exponent_matrix()) }
}

/// The per-system record: twisted matrix, cohomology, and class counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaReport {
    pub system: CoefficientSystem,
    pub delta_alpha: IntMatrix,
    pub h2: AbelianGroup,
    pub c_star: BigInt,
    pub c_free: BigInt,
    pub strongly_surjective: BigInt,
}

impl AlphaReport {
    /// The one non-strongly-surjective class, identified symbolically: the
    /// class inducing the zero map on twisted cohomology. No representative
    /// map is constructed.
    pub const NON_SURJECTIVE_WITNESS: &'static str = "zero cohomology class";
}

/// Computes the report for a single system. Errors if the presentation
/// fails the odd-order hypothesis or the system does not belong to it.
pub fn classify_alpha(
    presentation: &Presentation,
    system: &CoefficientSystem,
) -> Result<AlphaReport, Error> {
    let hypothesis = check_hypothesis(presentation);
    if let Some(reason) = hypothesis.failure_reason() {
        return Err(Error::HypothesisNotSatisfied(reason));
    }
    let delta_alpha = twisted_matrix(presentation, system)?;
    let h2 = cokernel(&delta_alpha);
    let c_star = match h2.order() {
        GroupOrder::Finite(n) => n,
        GroupOrder::Infinite => unreachable!(
            "twisted cohomology must be finite when the untwisted group has finite odd order"
        ),
    };
    let c_free = (&c_star + 1) / 2;
    let strongly_surjective = &c_free - 1;
    Ok(AlphaReport { system: system.clone(), delta_alpha, h2, c_star, c_free, strongly_surjective })
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Totals {
    pub free_classes: BigInt,
    pub strongly_surjective: BigInt,
}

/// The aggregate view: hypothesis outcome, untwisted cohomology, one
/// [`AlphaReport`] per coefficient system (none when the hypothesis fails),
/// and totals across systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub presentation: Presentation,
    pub hypothesis_ok: bool,
    pub h2_untwisted: AbelianGroup,
    pub reports: Vec<AlphaReport>,
    pub totals: Totals,
}

/// Runs the full classification. `paranoid` re-verifies odd-order
/// finiteness for every system instead of trusting propagation from the
/// trivial one; a disagreement would be an internal error and panics.
pub fn classify_presentation(presentation: &Presentation, paranoid: bool) -> ClassificationReport {
    let hypothesis = check_hypothesis(presentation);
    if !hypothesis.ok() {
        return ClassificationReport {
            presentation: presentation.clone(),
            hypothesis_ok: false,
            h2_untwisted: hypothesis.h2_untwisted,
            reports: Vec::new(),
            totals: Totals::default(),
        };
    }
    let mut reports = Vec::new();
    for system in enumerate_systems(presentation) {
        let report = classify_alpha(presentation, &system)
            .expect("hypothesis verified and system enumerated as valid");
        if paranoid {
            assert!(
                report.h2.is_finite_odd(),
                "internal error: twisted cohomology {} is not finite odd although the untwisted group is",
                report.h2
            );
        }
        reports.push(report);
    }
    let totals = Totals {
        free_classes: reports.iter().map(|r| &r.c_free).sum(),
        strongly_surjective: reports.iter().map(|r| &r.strongly_surjective).sum(),
    };
    ClassificationReport {
        presentation: presentation.clone(),
        hypothesis_ok: true,
        h2_untwisted: hypothesis.h2_untwisted,
        reports,
        totals,
    }
}

impl ClassificationReport {
    /// Stable JSON rendering; see [`crate::json`] for the schema pieces.
    pub fn to_json_string(&self) -> String {
        let view = crate::json::classification_view(self);
        serde_json::to_string_pretty(&view).expect("report serialization cannot fail")
    }
}

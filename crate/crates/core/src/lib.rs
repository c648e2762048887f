//! Computer algebra for presentation two-complexes: Fox calculus, twisted
//! second cohomology over local Z2 coefficient systems, Smith normal form
//! over the integers, and the resulting counts of homotopy classes of maps
//! onto the projective plane, split into strong surjections and the single
//! exceptional class.
//!
//! The pipeline, bottom to top:
//!
//! * [`freegroup`] — reduced words over a named generator alphabet;
//! * [`presentation`] — the presentation data model, its text DSL, and the
//!   exponent matrix Δ;
//! * [`foxcalc`] — Fox derivatives, sign augmentation, and the twisted
//!   matrix Δ^α;
//! * [`intlinalg`] — Smith normal form and cokernel structure;
//! * [`coeffsys`] — enumeration of the local Z2 coefficient systems;
//! * [`classify`] — per-system cohomology and homotopy-class counts;
//! * [`families`] — relator families realizing prescribed twisted orders;
//! * [`json`] — serializable views for the stable report schema.
//!
//! ```
//! use surjtop_core::{classify_presentation, Presentation};
//!
//! let p = Presentation::parse("< x, y | x^4 y x y >")?;
//! let report = classify_presentation(&p, false);
//! assert!(report.hypothesis_ok);
//! // two coefficient systems, three free classes, one strong surjection
//! assert_eq!(report.reports.len(), 2);
//! assert_eq!(report.totals.free_classes, 3.into());
//! assert_eq!(report.totals.strongly_surjective, 1.into());
//! # Ok::<(), surjtop_core::ParseDiagnostic>(())
//! ```

pub mod classify;
pub mod coeffsys;
pub mod error;
pub mod families;
pub mod foxcalc;
pub mod freegroup;
pub mod intlinalg;
pub mod json;
pub mod presentation;

pub use classify::{
    check_hypothesis, classify_alpha, classify_presentation, AlphaReport, ClassificationReport,
    HypothesisReport, Totals,
};
pub use coeffsys::{
    enumerate_systems, feasible_homs_2_1, is_valid_system, mod2_rank, parse_assignment,
    CoefficientSystem, SystemLabel,
};
pub use error::Error;
pub use families::{
    case1_word, case2_word, case3_word, example_k1, example_k2, realize_order, Family,
    FamilyBuild, FamilyParams, FamilySpec, Realization,
};
pub use foxcalc::{fox_derivative, twisted_matrix, GroupRingElement};
pub use freegroup::{FreeWord, GeneratorSet, Sign, Syllable};
pub use intlinalg::{
    cokernel, smith_normal_form, smith_normal_form_with_transforms, AbelianGroup, GroupOrder,
    IntMatrix, SmithForm,
};
pub use presentation::{format_word, DiagnosticKind, ParseDiagnostic, Presentation};

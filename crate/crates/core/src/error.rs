use thiserror::Error;

use crate::presentation::ParseDiagnostic;

/// Errors reported by library operations.
///
/// Parse errors keep their own structured type ([`ParseDiagnostic`]) and are
/// wrapped here so callers can bubble everything through one `Result`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range (alphabet has {arity} generators)")]
    GeneratorIndexOutOfRange { index: usize, arity: usize },

    #[error("operands use different generator alphabets ({left} vs {right} generators)")]
    ArityMismatch { left: usize, right: usize },

    #[error("sign assignment covers {given} generators, expected {expected}")]
    AssignmentSizeMismatch { given: usize, expected: usize },

    #[error("invalid generator name `{0}`")]
    InvalidGeneratorName(String),

    #[error("duplicate generator name `{0}`")]
    DuplicateGeneratorName(String),

    #[error("relator {index} reduces to the identity word")]
    IdentityRelator { index: usize },

    #[error(transparent)]
    Parse(#[from] ParseDiagnostic),

    #[error("sign assignment does not descend to the presented group (relator {relator_index} evaluates to -1)")]
    InvalidSystem { relator_index: usize },

    #[error("unknown generator `{0}` in sign assignment")]
    UnknownGenerator(String),

    #[error("invalid sign assignment: {0}")]
    InvalidAssignment(String),

    #[error("hypothesis not satisfied: {0}")]
    HypothesisNotSatisfied(String),

    #[error("missing family parameter `{0}`")]
    MissingFamilyParameter(&'static str),

    #[error("invalid family parameter: {0}")]
    InvalidFamilyParameter(String),
}

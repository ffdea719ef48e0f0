use thiserror::Error;

/// Errors raised while building or loading finite quantum group data.
///
/// Failed identities are not errors: they are recorded as failing entries
/// of a [`VerificationReport`](crate::report::VerificationReport). Errors are
/// reserved for structurally unusable input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("leg {0} appears more than once in the placement")]
    RepeatedLeg(usize),

    #[error("leg {leg} is out of range for an ambient space with {legs} legs")]
    InvalidLeg { leg: usize, legs: usize },

    #[error("malformed structure: {0}")]
    Structural(String),

    #[error("no normalized invariant functional exists")]
    NoInvariantFunctional,

    #[error("invariant functionals form a {0}-dimensional space; the Haar state is not unique")]
    NonUniqueHaar(usize),

    #[error("Gram matrix is not positive definite (smallest eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("operator does not expand in the expected tensor span (residual {0:e})")]
    ExpansionFailed(f64),

    #[error("operator is not in the dual subspace (residual {0:e})")]
    NotInDualSubspace(f64),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),

    #[error("theta is not a homomorphism: theta({0}) theta({1}) != theta({0}{1}) (residual {2:e})")]
    NotAHomomorphism(String, String, f64),

    #[error("theta({element}) is not a Hopf *-automorphism: {check} failed (residual {residual:e})")]
    NotAnAutomorphism {
        element: String,
        check: String,
        residual: f64,
    },

    #[error("coaction axiom failed (residual {0:e})")]
    CoactionAxiomFailed(f64),

    #[error("full five-leg verification needs a {0}-dimensional space, above the limit of {1}")]
    ModeUnavailable(usize, usize),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("parse error in {context}: {message}")]
    Parse { context: String, message: String },

    #[error("unsupported format_version {found}, expected {expected}")]
    SchemaVersionMismatch { found: u64, expected: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

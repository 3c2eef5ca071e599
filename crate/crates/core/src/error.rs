use thiserror::Error;

/// Errors shared by all layers of the crate.
///
/// The split mirrors how callers need to react: `Validation` and `Mismatch`
/// mean the input data was malformed, `NotCondensable`/`Obstructed`/`NoWitness`
/// are honest mathematical failures, `Capacity` means a configured desk-scale
/// bound was exceeded, and `Internal` flags a broken invariant that should be
/// unreachable from validated inputs.
#[derive(Debug, Error)]
pub enum Error {
    /// Input data violates a structural axiom (bad table, bad cocycle, ...).
    #[error("validation: {0}")]
    Validation(String),

    /// Two otherwise valid inputs do not fit together (different groups, ...).
    #[error("mismatch: {0}")]
    Mismatch(String),

    /// A condensation was requested along a subgroup that does not qualify.
    #[error("not condensable: {0}")]
    NotCondensable(String),

    /// A zesting equation has no solution at the allowed denominator.
    #[error("obstructed: {0}")]
    Obstructed(String),

    /// A required witness (isomorphism, section, ...) does not exist.
    #[error("no witness: {0}")]
    NoWitness(String),

    /// A desk-scale bound was exceeded; the computation was refused, not wrong.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// An internal consistency check failed; this signals a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

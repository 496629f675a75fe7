//! Crate-wide error type.
//!
//! One enum covers every layer (matrix validation, lattice arithmetic, the
//! multiplicity engine, string analysis, caching) so results compose without
//! conversion boilerplate. Variants carry enough context to print an
//! actionable message and, where a claim fails, a concrete witness.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// The integer matrix is not a generalized Cartan matrix.
    #[error("not a generalized Cartan matrix: {0}")]
    NotGcm(String),

    /// No positive diagonal D with DA symmetric exists. Carries one cycle of
    /// indices witnessing the inconsistency.
    #[error("matrix is not symmetrizable: inconsistent cycle {0:?}")]
    NotSymmetrizable(Vec<usize>),

    /// Rank cap exceeded (the engine is tuned for desk-scale ranks).
    #[error("rank {0} exceeds the supported maximum of {1}")]
    RankTooLarge(usize, usize),

    /// An index-subset argument was empty or out of bounds.
    #[error("invalid index subset: {0}")]
    BadSubset(String),

    /// Two objects built over different index sets were combined.
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    /// The zero vector was passed where a nonzero lattice vector is required.
    #[error("zero vector is not allowed here")]
    ZeroVector,

    /// A positive vector was required (all coefficients >= 0, not all zero).
    #[error("vector {0:?} is not positive")]
    NotPositive(Vec<i64>),

    /// A root was required but the vector is not one.
    #[error("vector {0:?} is not a root")]
    NotARoot(Vec<i64>),

    /// The recurrence denominator (β,β) - 2(ρ,β) vanished at a non-simple β
    /// while the decomposition side was nonzero. This cannot happen for a
    /// correct table and is reported rather than skipped.
    #[error("recurrence denominator vanished at {vector:?} with nonzero decomposition sum {rhs}")]
    ZeroDenominator { vector: Vec<i64>, rhs: String },

    /// Multiplicity extraction produced a non-integer or negative value —
    /// an engine bug, reported with the offending vector.
    #[error("multiplicity at {vector:?} is not a nonnegative integer: {value}")]
    NonIntegerMultiplicity { vector: Vec<i64>, value: String },

    /// A requested vector lies outside the enumerated height range.
    #[error("height {needed} exceeds the table bound {bound}")]
    HeightBoundExceeded { needed: i64, bound: i64 },

    /// A cached table failed its integrity re-checks on load.
    #[error("corrupt cache file {path}: {reason}")]
    CorruptCache { path: String, reason: String },

    /// An operation's mathematical precondition was violated by the caller.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// A brute-force oracle was asked to run beyond its configured bounds.
    #[error("oracle bound exceeded: {0}")]
    OracleBoundExceeded(String),

    /// An unbounded search was cut off at its configured cap.
    #[error("search bound exceeded: {0}")]
    SearchBoundExceeded(String),

    /// A certificate's lower bound exceeded the exact value it bounds —
    /// an engine bug, reported with the witnessing sample.
    #[error("certificate violated at {point}: bound {bound} > actual {actual}")]
    CertificateViolated {
        point: String,
        bound: String,
        actual: String,
    },

    /// Underlying I/O failure (cache files, matrix files).
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed JSON input (matrix files, config).
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

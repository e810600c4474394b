//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by construction, verification, and solver routines.
#[derive(Debug, Error)]
pub enum Error {
    /// A scalar argument or stored value was NaN or infinite.
    #[error("non-finite value in {what}")]
    NonFinite {
        /// What was being constructed or evaluated.
        what: &'static str,
    },

    /// A point intended for the open unit disk had modulus ≥ 1.
    #[error("point lies outside the open unit disk: |z| = {modulus}")]
    OutsideDisk {
        /// Modulus of the offending point.
        modulus: f64,
    },

    /// An evaluation point left the closed unit disk.
    #[error("evaluation point lies outside the closed unit disk: |z| = {modulus}")]
    OutsideClosedDisk {
        /// Modulus of the offending point.
        modulus: f64,
    },

    /// Dilation radius outside the open interval (0, 1).
    #[error("dilation radius must lie in (0, 1), got {radius}")]
    DilationRadius {
        /// The rejected radius.
        radius: f64,
    },

    /// Ring number must be at least 1.
    #[error("ring count must be at least 1, got {rings}")]
    RingCount {
        /// The rejected ring count.
        rings: usize,
    },

    /// Position index `j` must satisfy `0 ≤ j < k`.
    #[error("ring index out of range: j = {j} on ring k = {k}")]
    RingIndexOutOfRange {
        /// Ring number.
        k: usize,
        /// Rejected position on the ring.
        j: usize,
    },

    /// Flat enumeration is 1-based.
    #[error("flat index must be at least 1, got {index}")]
    FlatIndexOutOfRange {
        /// The rejected flat index.
        index: usize,
    },

    /// The root-of-unity norm identity `‖P‖_k = ‖P‖_{H²}` requires
    /// `degree(P) < k`; for `degree ≥ k` coefficients alias and the
    /// identity genuinely fails.
    #[error(
        "exactness requires degree < k, got degree {degree} with k = {k}: \
         coefficients alias modulo k and the identity genuinely fails"
    )]
    DegreeNotBelowRing {
        /// Degree of the offending polynomial.
        degree: usize,
        /// Number of sample points.
        k: usize,
    },

    /// The finite sup certificate needs more rings than the degree.
    #[error(
        "ring truncation K = {rings} does not exceed the degree {degree}; \
         raise K above the degree so the finite sup certifies the lower bound"
    )]
    RingsNotAboveDegree {
        /// Supplied ring truncation.
        rings: usize,
        /// Degree of the target polynomial.
        degree: usize,
    },

    /// Two ring-blocked families must share the same ring count.
    #[error("ring count mismatch: {left} vs {right}")]
    RingCountMismatch {
        /// Ring count of the first operand.
        left: usize,
        /// Ring count of the second operand.
        right: usize,
    },

    /// Block `k` of a ring-blocked family must have length exactly `k`.
    #[error("block for ring {k} has length {len}, expected {k}")]
    BlockLength {
        /// Ring number (1-based).
        k: usize,
        /// Actual block length.
        len: usize,
    },

    /// The operation requires a nonzero function.
    #[error("expected a nonzero function")]
    ZeroFunction,

    /// The operation requires at least one sample.
    #[error("expected at least one sample function")]
    EmptySamples,

    /// A grid was too small to cover the supplied coefficient family,
    /// or a solver truncation was below the target degree.
    #[error("{what}: need at least {needed}, got {got}")]
    TooSmall {
        /// What was undersized.
        what: &'static str,
        /// Required minimum.
        needed: usize,
        /// Actual value.
        got: usize,
    },

    /// Solver configuration out of range.
    #[error("invalid solver configuration: {what}")]
    InvalidConfig {
        /// Which constraint failed.
        what: &'static str,
    },

    /// Power iteration failed to settle on the dominant singular value.
    #[error("power iteration did not settle within {iterations} iterations")]
    IllConditioned {
        /// Iterations attempted.
        iterations: usize,
    },

    /// Malformed input artifact (JSON schema violations and the like).
    #[error("malformed input: {0}")]
    Malformed(String),

    /// I/O failure, with the path that caused it.
    #[error("cannot access {path}: {source}")]
    Io {
        /// Offending path.
        path: String,
        /// Underlying error.
        #[source]
        source: std::io::Error,
    },

    /// JSON (de)serialization failure.
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

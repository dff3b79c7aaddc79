//! Error taxonomy shared by the whole crate.
//!
//! The variants mirror the failure modes of the model itself: domain
//! violations, non-invertible inputs, points without a standard part,
//! signs or verdicts hidden behind a finite tail, and numeric breakdown.
//! Tail-limited outcomes carry the blocking order so callers (and the CLI
//! exit-code mapping) can distinguish "definitely not" from "not decidable
//! at this truncation".

use crate::order::EpsOrder;
use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of the operation (standard
    /// part outside a function's domain, negative exponent where forbidden,
    /// mismatched dimensions, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Inversion requested for a non-invertible element (a zero branch, or
    /// a branch whose leading term is hidden behind a finite tail).
    #[error("not invertible: {0}")]
    NotInvertible(String),

    /// A standard part was required but the element has unbounded or
    /// branch-disagreeing behaviour as ε → 0.
    #[error("not near-standard: {0}")]
    NotNearStandard(String),

    /// A sign decision was required but the leading coefficient is hidden
    /// behind the tail marker at the given order.
    #[error("sign unknown behind tail O(eps^({0}))")]
    UnknownSign(EpsOrder),

    /// A three-valued predicate came back UNKNOWN at the given tail order.
    #[error("verdict unknown at tail order {0}")]
    Unknown(EpsOrder),

    /// Numeric failure: quadrature non-convergence, non-moderate growth,
    /// overflow to non-finite values.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// The value exists but is not representable over the chosen scalar
    /// type (e.g. sin(3) over exact rationals).
    #[error("not representable over this scalar type: {0}")]
    Unrepresentable(String),

    /// Literal or expression syntax error, with a byte offset.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    /// Process exit code under the CLI contract: 2 for parse errors, 3 for
    /// domain-style errors, 4 for tail-limited UNKNOWN verdicts.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::UnknownSign(_) | Error::Unknown(_) => 4,
            _ => 3,
        }
    }
}

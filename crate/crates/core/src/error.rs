//! One error type for the whole crate. `code()` gives the stable name used in
//! CLI error output.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("unknown variable `{name}`")]
    UnknownVariable { name: String },
    #[error("invalid ring: {detail}")]
    InvalidRing { detail: String },
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("negative exponent in power")]
    NegativePower,
    #[error("invalid exponent: {detail}")]
    InvalidExponent { detail: String },
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("quotient or saturation by the zero polynomial")]
    ZeroDivisorArgument,
    #[error("monomial order is not global; basis computation would not terminate")]
    NonGlobalOrder,
    #[error("degree guard exceeded: intermediate degree passed {limit}")]
    DegreeGuardExceeded { limit: u32 },
    #[error("verification failed: {detail}")]
    VerificationFailure { detail: String },
    #[error("family is not flat: fiber colength {fiber} differs from generic colength {generic}")]
    FlatnessViolation { fiber: String, generic: String },
    #[error("flat-limit certificate failed: limit colength {limit} vs generic colength {generic}")]
    FlatnessCertificateFailure { limit: String, generic: String },
    #[error("family is already relative; nothing escapes through the divisor")]
    NoEscape,
    #[error("candidate scan exhausted: {detail}")]
    CandidateExhaustion { detail: String },
    #[error("ideal does not contain the node relation y1*y2")]
    NotNodeIdeal,
    #[error("divisor restrictions of the two sides disagree")]
    IncompatibleDivisorData,
    #[error("input ideal is not relative to its divisor")]
    NotRelativeInput,
    #[error("ideal is not perfect at the node")]
    NotPerfect,
    #[error("malformed node family: {detail}")]
    MalformedNodeFamily { detail: String },
    #[error("malformed family: {detail}")]
    MalformedFamily { detail: String },
    #[error("component {0}: divisor restrictions do not match the neighbour")]
    DivisorMismatch(usize),
    #[error("component {0} is not relative to its divisor")]
    NotRelative(usize),
    #[error("group element length does not match the chain: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("group element scalar at index {index} is zero")]
    InvalidGroupElement { index: usize },
    #[error("family is not zero-dimensional")]
    NonZeroDimensional,
}

impl Error {
    /// Stable machine-readable name.
    pub fn code(&self) -> &'static str {
        match self {
            Error::SyntaxError { .. } => "SyntaxError",
            Error::UnknownVariable { .. } => "UnknownVariable",
            Error::InvalidRing { .. } => "InvalidRing",
            Error::RingMismatch => "RingMismatch",
            Error::NegativePower => "NegativePower",
            Error::InvalidExponent { .. } => "InvalidExponent",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::ZeroDivisorArgument => "ZeroDivisorArgument",
            Error::NonGlobalOrder => "NonGlobalOrder",
            Error::DegreeGuardExceeded { .. } => "DegreeGuardExceeded",
            Error::VerificationFailure { .. } => "VerificationFailure",
            Error::FlatnessViolation { .. } => "FlatnessViolation",
            Error::FlatnessCertificateFailure { .. } => "FlatnessCertificateFailure",
            Error::NoEscape => "NoEscape",
            Error::CandidateExhaustion { .. } => "CandidateExhaustion",
            Error::NotNodeIdeal => "NotNodeIdeal",
            Error::IncompatibleDivisorData => "IncompatibleDivisorData",
            Error::NotRelativeInput => "NotRelativeInput",
            Error::NotPerfect => "NotPerfect",
            Error::MalformedNodeFamily { .. } => "MalformedNodeFamily",
            Error::MalformedFamily { .. } => "MalformedFamily",
            Error::DivisorMismatch(_) => "DivisorMismatch",
            Error::NotRelative(_) => "NotRelative",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::InvalidGroupElement { .. } => "InvalidGroupElement",
            Error::NonZeroDimensional => "NonZeroDimensional",
        }
    }

    /// True for errors caused by malformed textual input rather than by the
    /// mathematics of the request.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::SyntaxError { .. } | Error::UnknownVariable { .. } | Error::InvalidRing { .. }
        )
    }
}

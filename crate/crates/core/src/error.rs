use alloc::string::String;

use crate::mask::Mask;

/// Errors reported by the library.
///
/// Variants fall into three groups that the command-line front end maps onto
/// distinct exit codes: malformed input, requests that are too large for an
/// exact method, and mathematical preconditions that do not hold.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("set {mask} uses elements outside a ground set of size {n}")]
    MaskOutOfRange { mask: Mask, n: usize },

    #[error("ground set sizes differ: {left} vs {right}")]
    GroundMismatch { left: usize, right: usize },

    #[error("acceptable set member {0} is not independent in the host system")]
    InvalidAcceptableSet(Mask),

    #[error("acceptable set has no nonempty member")]
    EmptyAcceptableSet,

    #[error("inner system is not contained in the host: {0} is independent only in the inner system")]
    NotInner(Mask),

    #[error("system is not a matroid")]
    NotAMatroid,

    #[error("supports of the summands overlap on {0}")]
    OverlappingSupports(Mask),

    #[error("rank quotient undefined: every element is a loop")]
    UndefinedQuotient,

    #[error("ratio undefined: optimum value is zero")]
    UndefinedRatio,

    #[error("{what} needs n <= {max}, got n = {n}")]
    Capability {
        what: &'static str,
        max: usize,
        n: usize,
    },

    #[error("no tie-break attaining the rank quotient was found")]
    NotFound,
}

impl Error {
    pub fn is_capability(&self) -> bool {
        matches!(self, Error::Capability { .. })
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

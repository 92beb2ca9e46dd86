use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {0:?} as an exact number")]
    Parse(String),

    #[error("argument must be nonnegative, got {0}")]
    NegativeArgument(String),

    #[error("cannot combine sqrt({0}) with sqrt({1}) in a single quadratic field")]
    MixedRadicand(u64, u64),

    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: String, hi: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no closed form for the quadric in dimension {0} (only d = 2, 3)")]
    UnsupportedDimension(u32),

    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),

    #[error("ideal is not primary to the maximal ideal: {0}")]
    NotMPrimary(String),

    #[error("ideal containment fails: {0}")]
    NotContained(String),

    #[error("enumeration needs about {needed} membership tests, above the cap of {cap}")]
    CapExceeded { needed: u128, cap: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

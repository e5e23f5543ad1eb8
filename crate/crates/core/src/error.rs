use thiserror::Error;

/// Errors raised while validating inputs or evaluating allocations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NomaError {
    #[error("transmit SNR must be positive and finite, got {0}")]
    InvalidSnr(f64),

    #[error("channel gain #{index} must be positive and finite, got {value}")]
    InvalidGain { index: usize, value: f64 },

    #[error("channel gains must be ascending, but gain #{index} is smaller than its predecessor")]
    UnsortedGains { index: usize },

    #[error("at least {min} users are required, got {found}")]
    TooFewUsers { min: usize, found: usize },

    #[error("power coefficient #{index} must lie in (0, 1), got {value}")]
    InvalidCoefficient { index: usize, value: f64 },

    #[error("power coefficients must sum to one, got {0}")]
    SumNotOne(f64),

    #[error("dimension mismatch: expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("feasible interval is empty: lower bound {lower} exceeds upper bound {upper}")]
    Infeasible { lower: f64, upper: f64 },

    #[error("pairing needs an even number of users, got {0}")]
    OddUserCount(usize),

    #[error("matching enumeration is limited to {max} users, got {found}")]
    TooManyUsers { max: usize, found: usize },

    #[error("invalid pairing policy: {0}")]
    InvalidPolicy(String),

    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, NomaError>;

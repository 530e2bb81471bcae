use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("theta0 must be > 0 (got {0})")]
    NonPositiveTheta0(f64),
    #[error("theta2 must be > 0 (got {0})")]
    NonPositiveTheta2(f64),
    #[error("theta1 = 0 satisfies neither the all-positive nor the negative-discriminant condition")]
    ZeroTheta1,
    #[error("theta1 < 0 requires theta1^2 < 4*theta0*theta2 (got {theta1_sq} >= {bound})")]
    DiscriminantViolation { theta1_sq: f64, bound: f64 },
    #[error("non-finite parameter value")]
    NonFiniteParameter,
    #[error("correlation length xi must be > 0 (got {0})")]
    NonPositiveXi(f64),
    #[error("bandwidth h must be > 0 (got {0})")]
    NonPositiveBandwidth(f64),
    #[error("dimension must be 1, 2 or 3 (got {0})")]
    UnsupportedDimension(usize),
    #[error("derivative order {0} is outside 1..=4")]
    UnsupportedOrder(u32),
    #[error("radius must be > 0 (got {0})")]
    NonPositiveRadius(f64),
    #[error("argument must be > 0 (got {0})")]
    NonPositiveArgument(f64),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("epsilon must be >= 0 (got {0})")]
    NegativeEpsilon(f64),
    #[error("SPH weight at index {index} must be > 0 (got {value})")]
    NonPositiveWeight { index: usize, value: f64 },
    #[error("index ({row}, {col}) out of range for order {order}")]
    IndexOutOfRange { row: usize, col: usize, order: usize },
    #[error("dense Cholesky check limited to order 2000 (got {0})")]
    TooLargeForDenseCheck(usize),
    #[error("lattice size must be even and positive (got {0})")]
    OddLatticeSize(usize),
    #[error("lattice spacing must be > 0 (got {0})")]
    NonPositiveSpacing(f64),
    #[error("spectral density overflows at wavenumber {0}; bandwidth too large for this lattice")]
    NonFiniteSpectrum(f64),
    #[error("lag {max_lag} out of range for lattice side {side}")]
    LagOutOfRange { max_lag: usize, side: usize },
    #[error("axis {0} is not available for a one-dimensional field")]
    UnsupportedAxis(&'static str),
    #[error("point set carries no field values")]
    MissingValues,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

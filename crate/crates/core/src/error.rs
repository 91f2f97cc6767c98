use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("convolution would produce {requested} atoms, cap is {cap}")]
    AtomCapExceeded { requested: u128, cap: usize },
    #[error("rational location overflow in {0}")]
    LocationOverflow(&'static str),
    #[error("measure has no mass")]
    EmptyMeasure,
    #[error("base must be at least 2, got {0}")]
    BadBase(u32),
    #[error("depth {depth} outside supported range {min}..={max}")]
    DepthOutOfRange { depth: u32, min: u32, max: u32 },
    #[error("{0} is outside [0, 1]")]
    OutOfDomain(f64),
    #[error("invalid histogram range: bins={bins}, lo={lo}, hi={hi}")]
    BadRange { bins: usize, lo: f64, hi: f64 },
    #[error("invalid quadrature step: {0}")]
    BadStep(String),
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error("invalid series: {0}")]
    BadSeries(String),
    #[error("ternary digit {0} is not 0 or 2")]
    BadDigit(u8),
    #[error("zero denominator")]
    ZeroDenominator,
}

pub type Result<T> = std::result::Result<T, Error>;

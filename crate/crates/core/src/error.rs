use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("truncation order {0} is below the minimum of 2")]
    OrderTooSmall(usize),

    #[error("divisor has a zero constant term")]
    ZeroConstant,

    #[error("series must have constant term 1, found {re}{im:+}i")]
    Normalization { re: f64, im: f64 },

    #[error("series is not normalized as z + a₂z² + …")]
    NotNormalized,

    #[error("parameter {name} = {value} outside {range}")]
    ParameterRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error(
        "requested {requested} coefficients but the truncation order only supports {available}"
    )]
    TooManyCoefficients { requested: usize, available: usize },

    #[error("class S has no pointwise membership condition")]
    UnsupportedClass,

    #[error(
        "refusing series-only evaluation at |z| = {radius} with order {order} \
         (needs |z| ≤ {max_radius} and order ≥ {min_order})"
    )]
    SeriesEvaluationRefused {
        radius: f64,
        order: usize,
        max_radius: f64,
        min_order: usize,
    },

    #[error("f or f′ vanishes at z = {re}{im:+}i")]
    SingularSample { re: f64, im: f64 },

    #[error("zero polynomial has no roots to locate")]
    ZeroPolynomial,

    #[error("polynomial degree {0} exceeds 2")]
    DegreeTooHigh(usize),

    #[error("missing parameter {0}")]
    MissingParameter(&'static str),

    #[error("unknown catalog label `{0}`")]
    UnknownLabel(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(
    name: &'static str,
    value: f64,
    range: &'static str,
    ok: bool,
) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::ParameterRange { name, value, range })
    }
}

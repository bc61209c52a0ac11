use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// σ² − ω² is too small for the inverse factors in the bilinear formulas.
    #[error("degenerate invariant: |σ² − ω²| = {value:e} is at or below threshold {threshold:e}")]
    DegenerateInvariant { value: f64, threshold: f64 },

    #[error("electric charge must be nonzero")]
    ZeroCharge,

    #[error("field strength is not antisymmetric (max |F + Fᵀ| = {residual:e})")]
    Asymmetry { residual: f64 },

    #[error("|x| = {norm} does not match r = {r}")]
    RadiusMismatch { norm: f64, r: f64 },

    #[error("radius must be positive, got {r}")]
    NonPositiveRadius { r: f64 },

    #[error("grid axis `{axis}` has {points} points, at least {required} are needed")]
    GridTooSmall {
        axis: &'static str,
        points: usize,
        required: usize,
    },

    #[error("grid axis `{axis}` is not uniformly spaced")]
    NonUniformAxis { axis: &'static str },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

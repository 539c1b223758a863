use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero polynomial has no root count")]
    ZeroPolynomial,

    #[error("rational function with zero denominator")]
    ZeroDenominator,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("Gaussian weights differ ({0} vs {1}); mixed-weight Wronskians are not supported")]
    MixedWeights(String, String),

    #[error("invalid level selection: {0}")]
    InvalidSelection(String),

    #[error("selection {levels:?} violates the Krein condition at k = {failing_k}")]
    InadmissibleSelection { levels: Vec<u32>, failing_k: u32 },

    #[error("Wronskian of admissible selection {levels:?} has {roots} real root(s)")]
    NodefulWronskian { levels: Vec<u32>, roots: usize },

    #[error("transformation functions are linearly dependent (zero Wronskian)")]
    DegenerateTransformationFunctions,

    #[error("exponential factors failed to cancel in operator coefficient {0}")]
    ExponentialMismatch(usize),

    #[error("level {n} is excluded for the pair ({k}, {k}+1)")]
    ForbiddenLevel { k: u32, n: u32 },

    #[error("function has a pole on the grid [{x_min}, {x_max}]")]
    PoleOnGrid { x_min: f64, x_max: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("inverse iteration did not converge near {lambda} after {iterations} iterations")]
    NonConvergence { lambda: f64, iterations: usize },

    #[error("rule-based and constructive classification disagree at level {0}")]
    ClassificationMismatch(u32),

    #[error("unknown model {0:?}")]
    UnknownModel(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter window that must be non-empty turned out empty.
    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    /// The exponent regime does not match what the operation requires.
    #[error("regime error: {0}")]
    Regime(String),

    /// A radial integrand has a non-integrable singularity or tail.
    #[error("non-integrable: {0}")]
    NonIntegrable(String),

    /// A weighted moment diverges.
    #[error("divergent moment: {0}")]
    Divergence(String),

    /// A sample or intermediate value is NaN or infinite.
    #[error("non-finite value: {0}")]
    NonFinite(String),

    /// Too much of the function's mass sits at the edge of its grid.
    #[error("boundary mass {relative:.3e} exceeds {limit:.1e}: function not resolved on its grid")]
    BoundaryMass { relative: f64, limit: f64 },

    /// The function is identically zero.
    #[error("zero function")]
    ZeroFunction,

    /// An exponent pair violates the hypothesis of the primary uncertainty principle.
    #[error("inadmissible exponent pair (a={a}, p={p}): need 1 < a < p and 1/a + 1/p >= 1")]
    Admissibility { a: f64, p: f64 },

    /// A translation is not an integer number of grid cells.
    #[error("spacing error: {0}")]
    Spacing(String),

    /// The grid is too small to hold the requested construction.
    #[error("support overflow: {0}")]
    SupportOverflow(String),

    /// A requested size exceeds the supported cap.
    #[error("size error: {0}")]
    Size(String),

    /// Not enough levels to fit a slope.
    #[error("need at least {needed} levels for a slope fit, got {got}")]
    InsufficientLevels { needed: usize, got: usize },

    /// The scaling condition 1/q + phi/d = 1/p + theta/d fails.
    #[error("homogeneity violated: 1/q + phi/d = {lhs} but 1/p + theta/d = {rhs}")]
    Homogeneity { lhs: f64, rhs: f64 },

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors shared across the solution-evaluation and analysis modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A mode pair makes an off-diagonal denominator of the interaction
    /// matrix vanish.
    #[error("degenerate mode pair ({0}, {1}): off-diagonal denominator vanishes")]
    DegenerateModes(usize, usize),

    /// A soliton pair has p_n + q_m = 0, which the matrix entries divide by.
    #[error("singular soliton denominator: p[{n}] + q[{m}] = 0")]
    SingularDenominator { n: usize, m: usize },

    /// Mode parameters violate a construction invariant.
    #[error("invalid mode {index}: {reason}")]
    InvalidMode { index: usize, reason: String },

    /// A solution spec is malformed (empty mode list, unsupported alpha, ...).
    #[error("invalid solution spec: {0}")]
    InvalidSpec(String),

    /// The evaluation point lies on (or numerically too close to) the
    /// singular set where the determinant vanishes.
    #[error("point ({x}, {y}, {t}) is on the singular set")]
    OnSingularSet { x: f64, y: f64, t: f64 },

    /// A finite-difference stencil around the point touches the singular set.
    #[error("stencil around ({x}, {y}, {t}) touches the singular set")]
    StencilOnSingularSet { x: f64, y: f64, t: f64 },

    /// A linear solve produced non-finite values.
    #[error("non-finite result at ({x}, {y}, {t})")]
    NonFinite { x: f64, y: f64, t: f64 },

    /// Fluid constants put the alpha^2 formula on its pole.
    #[error("degenerate depth: rho*g*h^2 = 3*S, alpha^2 undefined")]
    DegenerateDepth,

    /// A time series is too short to estimate a background level.
    #[error("series too short: needs {needed} time units beyond peaks, has {available}")]
    InsufficientWindow { needed: f64, available: f64 },

    /// Fewer than two qualifying troughs exist in the field.
    #[error("fewer than two qualifying troughs (found {0})")]
    FewerThanTwoTroughs(usize),

    /// The complex determinant in the degeneration check is too badly
    /// conditioned to trust.
    #[error("numerical conditioning failure at eps = {eps}: |det| = {det_mag:e}")]
    NumericalConditioning { eps: f64, det_mag: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

//! Error type shared by every module of the crate.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes of the library.
///
/// Numerical-accuracy failures carry the best estimate achieved so callers can
/// decide whether a degraded value is still usable.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Adaptive integration ran out of its subdivision budget before reaching
    /// the requested tolerance.
    #[error("quadrature reached {subdivisions} subdivisions with error bound {error_bound:.3e}, above the requested tolerance {tolerance:.3e} (best estimate {estimate:.17e})")]
    ToleranceNotReached {
        /// Best integral estimate at the point of giving up.
        estimate: f64,
        /// Error bound associated with that estimate.
        error_bound: f64,
        /// The tolerance that was requested.
        tolerance: f64,
        /// Subdivisions performed.
        subdivisions: u32,
    },

    /// The integrand produced a NaN or infinity at an evaluation point.
    #[error("integrand returned a non-finite value at x = {x}")]
    NonFiniteIntegrand { x: f64 },

    /// A quadrature configuration violated its invariants.
    #[error("invalid quadrature configuration: {reason}")]
    InvalidQuadratureConfig { reason: &'static str },

    /// Model parameters must be finite.
    #[error("model parameter {name} must be finite, got {value}")]
    NonFiniteParameter { name: &'static str, value: f64 },

    /// The correlator branch selector must be -1 or +1.
    #[error("correlator branch must be -1 or +1, got {r}")]
    InvalidBranch { r: i32 },

    /// A finite-chain length outside the accepted domain.
    #[error("chain length {n} is not usable here: {reason}")]
    InvalidChainLength { n: usize, reason: &'static str },

    /// A spin-spin moment handed to state reconstruction lay outside [-1, 1].
    #[error("moment {name} = {value} lies outside [-1, 1]")]
    MomentOutOfRange { name: &'static str, value: f64 },

    /// Reconstruction produced a density operator with a significantly negative
    /// eigenvalue, i.e. the moments were not those of a physical state.
    #[error(
        "moments describe no physical state: smallest density eigenvalue {min_eigenvalue:.3e}"
    )]
    UnphysicalMoments { min_eigenvalue: f64 },

    /// First-digit queries only make sense for digits 1..=9.
    #[error("digit must lie in 1..=9, got {digit}")]
    DigitOutOfRange { digit: u8 },

    /// First-digit extraction requires a value in the open interval (0, 1).
    #[error("first-digit extraction expects a value in (0, 1), got {value}")]
    ValueOutOfDomain { value: f64 },

    /// An input series contained a NaN or infinity.
    #[error("input value at index {index} is not finite")]
    NonFiniteSample { index: usize },

    /// Too few data points for the requested statistic.
    #[error("need at least {need} values, got {got}")]
    TooFewSamples { got: usize, need: usize },

    /// Every value of the input series was identical, so the series carries no
    /// digit information.
    #[error("input series is constant; first-digit statistics are undefined")]
    DegenerateSeries,

    /// A histogram with zero total count has no violation parameter.
    #[error("histogram is empty; violation parameter is undefined")]
    EmptyHistogram,

    /// Histogram counts must be finite and nonnegative.
    #[error("histogram counts must be finite and nonnegative, got {value}")]
    InvalidCount { value: f64 },

    /// A window specification violated its invariants.
    #[error("invalid window specification: {reason}")]
    InvalidWindowSpec { reason: &'static str },

    /// A sampling window extended below zero field.
    #[error("window ({lo}, {hi}) around center {center} leaves the physical field range")]
    WindowOutOfRange { center: f64, lo: f64, hi: f64 },

    /// A field interval with lo >= hi or a negative endpoint.
    #[error("invalid field interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    /// Detection needs a minimum number of successfully scanned points.
    #[error("transition detection needs at least {need} scan points, got {got}")]
    TooFewScanPoints { got: usize, need: usize },

    /// A plateau-comparison margin violated its invariants.
    #[error("invalid plateau margin: {reason}")]
    InvalidMargin { reason: &'static str },
}

use thiserror::Error;

use crate::lq::verify::HarmonicReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("no cycle with finite weight: the max cycle mean is undefined")]
    NoCycle,

    #[error("positive cycle through state {state}: the Kleene star diverges (max cycle mean must be <= 0)")]
    PositiveCycle { state: usize },

    #[error("assumption violated: the star kernel must be finite everywhere ({0})")]
    AssumptionViolated(String),

    #[error("function is not harmonic for the kernel (A h != h)")]
    NotHarmonic,

    #[error("function is not normalized at the basepoint (h(b) = {value})")]
    NotNormalized { value: String },

    #[error("path is not an almost-geodesic for epsilon = {epsilon}")]
    NotAlmostGeodesic { epsilon: f64 },

    #[error("Martin columns along the path are not eventually constant")]
    NotEventuallyConstant,

    #[error("limit of the path (class {class_id}) is not in the minimal Martin space")]
    LimitNotMinimal { class_id: usize },

    #[error("h is -inf at the starting state {state}")]
    HMinusInfinityAtStart { state: usize },

    #[error("horizon must be positive, got {0}")]
    NonpositiveHorizon(f64),

    #[error("eigenvalue must be nonnegative, got {0}")]
    NegativeLambda(f64),

    #[error("eigenvalue must be positive, got {0}")]
    NonpositiveLambda(f64),

    #[error("optimal horizon undefined: both endpoints are zero with lambda = 0")]
    BothEndpointsZeroWithLambdaZero,

    #[error("direction must have unit norm, got |n| = {0}")]
    NonUnitDirection(f64),

    #[error("grid too small: the maximizer touches the grid boundary for {} probe(s)", .0.clipped_count())]
    GridTooSmall(Box<HarmonicReport>),

    #[error("gradient singularity at {at:?}: one-sided differences disagree by {gap:.3e}")]
    GradientSingularity { at: Vec<f64>, gap: f64 },

    #[error("empty contour: level {level} is outside the range of the function on the box")]
    EmptyContour { level: f64 },
}

impl Error {
    /// Errors caused by a mathematical hypothesis failing on otherwise
    /// well-formed input, as opposed to malformed input.
    pub fn is_assumption_violation(&self) -> bool {
        matches!(
            self,
            Error::NoCycle
                | Error::PositiveCycle { .. }
                | Error::AssumptionViolated(_)
                | Error::NotHarmonic
                | Error::NotNormalized { .. }
                | Error::NotAlmostGeodesic { .. }
                | Error::NotEventuallyConstant
                | Error::LimitNotMinimal { .. }
                | Error::HMinusInfinityAtStart { .. }
                | Error::BothEndpointsZeroWithLambdaZero
                | Error::GridTooSmall(_)
                | Error::GradientSingularity { .. }
        )
    }
}

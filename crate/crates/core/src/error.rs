use thiserror::Error;

/// Why a pair of inner bodies fails the admissibility test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdmissibilityFailure {
    /// One body contains the other; no common supporting line exists.
    Containment,
    /// The union of the two bodies is convex.
    ConvexUnion,
    /// The number of non-separating common supporting lines is not two.
    TangentCount(usize),
}

impl std::fmt::Display for AdmissibilityFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AdmissibilityFailure::Containment => write!(f, "containment"),
            AdmissibilityFailure::ConvexUnion => write!(f, "convex union"),
            AdmissibilityFailure::TangentCount(n) => {
                write!(f, "{n} non-separating common tangents (need 2)")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid body: {0}")]
    InvalidBody(String),
    #[error("support function not differentiable at angle {0}")]
    NotDifferentiable(f64),
    #[error("point ({0}, {1}) lies inside the body")]
    PointInsideBody(f64, f64),
    #[error("point ({0}, {1}) lies outside the body")]
    PointOutsideBody(f64, f64),
    #[error("inner bodies not admissible: {0}")]
    NotAdmissible(AdmissibilityFailure),
    #[error("inner body not contained in the outer body at frame angle {0}")]
    InnerNotContained(f64),
    #[error("grid too coarse: {got} nodes, need at least {need}")]
    GridTooCoarse { got: usize, need: usize },
    #[error("profile is not a valid convex profile: {0}")]
    NonConvexProfile(String),
    #[error("direction angle {0} lies outside the vertex cone")]
    DirectionOutsideCone(f64),
    #[error("section data exhausted: |QT|^i = {lhs} exceeds functional {functional}")]
    DataExhausted { lhs: f64, functional: f64 },
    #[error("difference mode produced a negative power {0}")]
    NegativePower(f64),
    #[error("degenerate direction: point coincides with the center")]
    DegenerateDirection,
    #[error("orbit escaped the data envelope at step {0}")]
    OrbitEscaped(usize),
    #[error("orbit angle did not decrease at step {step}: {prev} -> {next}")]
    NonDecreasingAngle { step: usize, prev: f64, next: f64 },
    #[error("distance ratio {0} is not contracting")]
    RatioNotContracting(f64),
    #[error("invalid power i = {0}; must be positive")]
    InvalidPower(f64),
    #[error("frame origin misplaced: h'(0) = {0}")]
    FrameInvalid(f64),
    #[error("comparability ratio non-positive at angle {0}")]
    NotComparable(f64),
    #[error("angle range leaves the tangent-frame chart: {0}")]
    ChartOverflow(String),
    #[error("seed is {0} away from the data's boundary envelope")]
    SeedOffBoundary(f64),
    #[error("propagation stalled after {got} of {budget} points")]
    FrontierStalled { got: usize, budget: usize },
    #[error("no consistent seed: {0}")]
    NoRoot(String),
    #[error("incomplete table: {0}")]
    IncompleteTable(String),
    #[error("table does not match the requested functional: {0}")]
    TableMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

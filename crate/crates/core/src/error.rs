use thiserror::Error;

/// Errors produced by the mirror-symmetry pipeline.
///
/// Fan validation failures carry distinct variants so that the CLI can
/// report each failed condition separately.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("ray {index} is not primitive: {detail}")]
    NonPrimitiveRay { index: usize, detail: String },

    #[error("no valid CY covector: {0}")]
    NoCyCovector(String),

    #[error("non-simplicial cone {index}: {detail}")]
    NonSimplicialCone { index: usize, detail: String },

    #[error("fan support is not convex or not full-dimensional: {0}")]
    SupportNotConvex(String),

    #[error("cones {first} and {second} do not intersect in a common face")]
    ConeIntersection { first: usize, second: usize },

    #[error("invalid extra vector {index}: {detail}")]
    InvalidExtra { index: usize, detail: String },

    #[error("dimension cap exceeded: {0}")]
    DimensionCap(String),

    #[error("basis hint rejected: {0}")]
    BasisRejected(String),

    #[error("automatic basis search failed: {0}; supply an explicit basis hint")]
    BasisSearchFailed(String),

    #[error("linear program failed: {0}")]
    LinearProgram(String),

    #[error("grading failure: {0}")]
    GradingFailure(String),

    #[error("variable system mismatch: {0}")]
    VariableMismatch(String),

    #[error("series precondition violated: {0}")]
    ConstantTerm(String),

    #[error("substitution image of variable {0} does not carry that variable's grade")]
    ZeroValuation(usize),

    #[error("coefficient of degree {degree} requested beyond truncation order {order}")]
    BeyondTruncation { degree: String, order: String },

    #[error("gamma ratio undefined at negative integer {0}")]
    GammaRatioPole(String),

    #[error("mirror map inversion failed to stabilize at degree {0}")]
    InversionStalled(String),

    #[error("fractional residual exponent after assembly: {0}")]
    FractionalExponent(String),

    #[error("identity check failed: {0}")]
    IdentityFailure(String),

    #[error("not a single-wall crossing: {0}")]
    NotSingleWall(String),

    #[error("resonant pole in analytic continuation: {0}")]
    Resonance(String),

    #[error("numeric continuation failed: {0}")]
    NumericFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by every operation in the crate.
///
/// Variants split into two classes: mathematical precondition failures
/// (bad input) and [`Error::InvariantViolation`], which signals a bug.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("scalar field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },

    #[error("gcd of two zero polynomials is undefined")]
    UndefinedGcd,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not Hermitian at entry ({row}, {col})")]
    SymmetryViolation { row: usize, col: usize },

    #[error("root finder did not converge after {iterations} iterations (max residual {max_residual:e})")]
    Convergence {
        iterations: usize,
        max_residual: f64,
        residuals: Vec<f64>,
    },

    #[error("matrix size {requested} is smaller than the required {required}")]
    Size { requested: usize, required: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("matrix is singular (kernel dimension {kernel_dim})")]
    Singular { kernel_dim: usize },

    #[error("polynomial has a multiple zero")]
    MultipleZero,

    #[error("polynomials share a zero")]
    CommonZero,

    #[error("degenerate triple: the pencil determinant vanishes identically")]
    DegenerateTriple,

    #[error("degree error: {0}")]
    Degree(String),

    #[error("p0(A) is numerically singular (condition estimate {condition:e})")]
    Invertibility { condition: f64 },

    #[error("first coordinate is constant along the {axis} axis")]
    DegenerateProjection { axis: &'static str },

    #[error("rational function has a pole at the evaluation point")]
    Pole,

    #[error("preimages do not map to a common image point")]
    NotAnIntersection,

    #[error("series oracle inapplicable: {0}")]
    OracleInapplicable(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// Stable variant name, used in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::FieldMismatch { .. } => "FieldMismatch",
            Error::UndefinedGcd => "UndefinedGcd",
            Error::DivisionByZero => "DivisionByZero",
            Error::Shape(_) => "Shape",
            Error::SymmetryViolation { .. } => "SymmetryViolation",
            Error::Convergence { .. } => "Convergence",
            Error::Size { .. } => "Size",
            Error::Domain(_) => "Domain",
            Error::Singular { .. } => "Singular",
            Error::MultipleZero => "MultipleZero",
            Error::CommonZero => "CommonZero",
            Error::DegenerateTriple => "DegenerateTriple",
            Error::Degree(_) => "Degree",
            Error::Invertibility { .. } => "Invertibility",
            Error::DegenerateProjection { .. } => "DegenerateProjection",
            Error::Pole => "Pole",
            Error::NotAnIntersection => "NotAnIntersection",
            Error::OracleInapplicable(_) => "OracleInapplicable",
            Error::Degenerate(_) => "Degenerate",
            Error::InvariantViolation(_) => "InvariantViolation",
        }
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InvariantViolation(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

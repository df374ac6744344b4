use thiserror::Error;

/// Errors raised by the algebraic constructions and decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("projective point has all coordinates zero")]
    ZeroVector,

    #[error("point {0} has a zero coordinate (it lies in E[3])")]
    TorsionPoint(String),

    #[error("Hesse parameter {0} satisfies lambda^3 = 1, the curve is singular")]
    SingularHesse(String),

    #[error("points or automorphisms live on different curves")]
    CurveMismatch,

    #[error("j-invariant is {j}; only lambda = {canonical} is supported for this j")]
    CanonicalFormRequired { j: String, canonical: String },

    #[error("point {0} does not lie on the curve")]
    NotOnCurve(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("relations are linearly dependent")]
    DependentRelations,

    #[error("vanishing space has dimension {achieved}, expected 3")]
    WrongDimension { achieved: usize },

    #[error("could not produce {requested} distinct sample points")]
    SamplingExhausted { requested: usize },

    #[error("automorphism does not preserve the variety at {0}")]
    SigmaLeavesVariety(String),

    #[error("no geometric pair is available for type {0}")]
    NoGeometricPair(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::SingularMatrix => "SingularMatrix",
            Error::ZeroVector => "ZeroVector",
            Error::TorsionPoint(_) => "TorsionPoint",
            Error::SingularHesse(_) => "SingularHesse",
            Error::CurveMismatch => "CurveMismatch",
            Error::CanonicalFormRequired { .. } => "CanonicalFormRequired",
            Error::NotOnCurve(_) => "NotOnCurve",
            Error::InvalidParameters(_) => "InvalidParameters",
            Error::DependentRelations => "DependentRelations",
            Error::WrongDimension { .. } => "WrongDimension",
            Error::SamplingExhausted { .. } => "SamplingExhausted",
            Error::SigmaLeavesVariety(_) => "SigmaLeavesVariety",
            Error::NoGeometricPair(_) => "NoGeometricPair",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use crate::cartan::RootVector;
use thiserror::Error;

/// Errors raised across the library. Indices in messages are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("diagonal entry C[{0}][{0}] is not 2")]
    BadDiagonal(usize),
    #[error("off-diagonal entries at ({0},{1}) violate sign or zero-pattern rules")]
    BadOffDiagonal(usize, usize),
    #[error("symmetrizer entry c_{0} is not positive")]
    NonPositiveSymmetrizer(usize),
    #[error("D*C is not symmetric at ({0},{1})")]
    NonSymmetrizable(usize, usize),
    #[error("bad orientation: {0}")]
    BadOrientation(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("arithmetic overflow")]
    Overflow,
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("reflection along an isotropic vector {0}")]
    IsotropicReflection(RootVector),
    #[error("reflection along {0} is not integral; not a real root")]
    NonIntegralResult(RootVector),
    #[error("dual of {0} is not integral; not a real root")]
    NonIntegralDual(RootVector),
    #[error("{0} is not a real root")]
    NotARealRoot(RootVector),
    #[error("bound must be at least 1")]
    BoundTooSmall,
    #[error("Cartan datum is not of finite type")]
    InfiniteType,
    #[error("Weyl group exceeds the enumeration cap of {0} elements")]
    GroupTooLarge(usize),
    #[error("braid move produced a non-exceptional sequence")]
    InvariantBroken,
    #[error("dual root {0} not found among the dual Schur roots")]
    DualMissing(RootVector),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("module does not satisfy the defining relations")]
    InvalidRep,
    #[error("module is not locally free")]
    NotLocallyFree,
    #[error("no rigid module of rank {0} found after {1} tries")]
    NotFound(RootVector, usize),
    #[error("field of size {p} is too small for an endomorphism ring of dimension {dim}")]
    FieldTooSmall { p: u64, dim: usize },
    #[error("module is not rigid indecomposable with truncated polynomial endomorphism ring")]
    NotRigidIndecomposable,
    #[error("rigid atlas incomplete: no module found for {0}")]
    AtlasIncomplete(RootVector),
    #[error("rank vector {0} is not in the atlas")]
    KeyMissing(RootVector),
    #[error("invalid string: {0}")]
    InvalidString(String),
    #[error("undefined case: {0}")]
    UndefinedCase(String),
}

impl Error {
    /// Stable machine-readable code used in JSON error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Malformed(_) => "Malformed",
            Error::BadDiagonal(_) => "BadDiagonal",
            Error::BadOffDiagonal(..) => "BadOffDiagonal",
            Error::NonPositiveSymmetrizer(_) => "NonPositiveSymmetrizer",
            Error::NonSymmetrizable(..) => "NonSymmetrizable",
            Error::BadOrientation(_) => "BadOrientation",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::Overflow => "Overflow",
            Error::NotAdjacent(..) => "NotAdjacent",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::IsotropicReflection(_) => "IsotropicReflection",
            Error::NonIntegralResult(_) => "NonIntegralResult",
            Error::NonIntegralDual(_) => "NonIntegralDual",
            Error::NotARealRoot(_) => "NotARealRoot",
            Error::BoundTooSmall => "BoundTooSmall",
            Error::InfiniteType => "InfiniteType",
            Error::GroupTooLarge(_) => "GroupTooLarge",
            Error::InvariantBroken => "InvariantBroken",
            Error::DualMissing(_) => "DualMissing",
            Error::InvalidField(_) => "InvalidField",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::InvalidRep => "InvalidRep",
            Error::NotLocallyFree => "NotLocallyFree",
            Error::NotFound(..) => "NotFound",
            Error::FieldTooSmall { .. } => "FieldTooSmall",
            Error::NotRigidIndecomposable => "NotRigidIndecomposable",
            Error::AtlasIncomplete(_) => "AtlasIncomplete",
            Error::KeyMissing(_) => "KeyMissing",
            Error::InvalidString(_) => "InvalidString",
            Error::UndefinedCase(_) => "UndefinedCase",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the lattice, algebra and tensor layers.
///
/// Witness vectors are carried pre-rendered so the error type stays
/// independent of the scalar parameter.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vectors live on different point sets ({expected} vs {found} points)")]
    MixedAmbient { expected: usize, found: usize },

    #[error("a point set must contain at least one point")]
    EmptyPointSet,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("vectors are linearly dependent: {0}")]
    Dependent(String),

    #[error("subspace is not a vector sublattice: {witness} has its supremum outside")]
    NotSublattice { witness: String },

    #[error("sign-cell enumeration needs {needed} points but the bound is {bound}")]
    SizeLimit { needed: usize, bound: usize },

    #[error("product of basis vectors {i} and {j} escapes the carrier")]
    NotClosed { i: usize, j: usize },

    #[error("vector {0} is not in the carrier")]
    NotInCarrier(String),

    #[error("negative weight at point {point}")]
    NegativeWeight { point: usize },

    #[error("multiplication is not of weight form: basis pair ({i},{j}) at point {point}")]
    NotFAlgebra { i: usize, j: usize, point: usize },

    #[error("inconsistent pointwise quotient for basis vector {basis} at point {point}")]
    Inconsistent { basis: usize, point: usize },

    #[error("map is not positive: witness {witness}")]
    NotPositive { witness: String },

    #[error("algebra is not semi-prime: {witness} squares to zero")]
    NotSemiPrime { witness: String },

    #[error("algebra has not been verified (no weight available)")]
    NotVerified,

    #[error("sublattice carries no closure certificates")]
    CertificatesMissing,

    #[error("image of basis vector {basis} is not in the codomain carrier")]
    NotIntoCodomain { basis: usize },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("extension through closure certificates is inconsistent: {0}")]
    ExtensionInconsistent(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Variant name, used as a stable tag in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MixedAmbient { .. } => "MixedAmbient",
            Error::EmptyPointSet => "EmptyPointSet",
            Error::Dimension(_) => "Dimension",
            Error::Dependent(_) => "Dependent",
            Error::NotSublattice { .. } => "NotSublattice",
            Error::SizeLimit { .. } => "SizeLimit",
            Error::NotClosed { .. } => "NotClosed",
            Error::NotInCarrier(_) => "NotInCarrier",
            Error::NegativeWeight { .. } => "NegativeWeight",
            Error::NotFAlgebra { .. } => "NotFAlgebra",
            Error::Inconsistent { .. } => "Inconsistent",
            Error::NotPositive { .. } => "NotPositive",
            Error::NotSemiPrime { .. } => "NotSemiPrime",
            Error::NotVerified => "NotVerified",
            Error::CertificatesMissing => "CertificatesMissing",
            Error::NotIntoCodomain { .. } => "NotIntoCodomain",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::ExtensionInconsistent(_) => "ExtensionInconsistent",
            Error::Internal(_) => "Internal",
        }
    }

    /// Malformed or oversized input, as opposed to a mathematical property
    /// that failed.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::MixedAmbient { .. }
                | Error::EmptyPointSet
                | Error::Dimension(_)
                | Error::Dependent(_)
                | Error::SizeLimit { .. }
                | Error::NotInCarrier(_)
        )
    }
}

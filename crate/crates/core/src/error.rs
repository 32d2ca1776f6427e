use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("unsupported family {0:?} (only A, B, C, D are available)")]
    UnsupportedFamily(String),
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: String, rank: usize },
    #[error("kappa must be positive")]
    NonPositiveKappa,
    #[error("covector is not a root of the system")]
    NotARoot,
    #[error("zero covector")]
    ZeroCovector,
    #[error(
        "parabolic not absolutely proper: I contains every simple root of factor {component:?}"
    )]
    NotAbsolutelyProper { component: Vec<usize> },
    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("not a diagram automorphism")]
    NotDiagramAutomorphism,
    #[error("automorphism does not stabilize I")]
    AutomorphismMovesLevi,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degenerate cone: no nonzero generators")]
    DegenerateCone,
    #[error("point is not in the open cone")]
    NotInterior,
    #[error("vector does not lie in the Cartan subspace")]
    NotInCartan,
    #[error("flow direction must be nonzero")]
    ZeroFlow,
    #[error("unstable horospherical roots of w are not contained in the unipotent radical")]
    HorosphericalNotInRadical,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("expanding cone is not full-dimensional")]
    NotFullDimensional,
}

pub type Result<T> = std::result::Result<T, CoreError>;

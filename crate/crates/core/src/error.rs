use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("the identity has no projective point")]
    IdentityPoint,

    #[error("generators {0} and {1} do not commute")]
    NotCommuting(usize, usize),

    #[error("generators are not independent")]
    NotIndependent,

    #[error("expected {expected} generators, found {found}")]
    WrongCount { expected: usize, found: usize },

    #[error("group contains -I and stabilizes no state")]
    NotAStabilizerStateGroup,

    #[error("subspace is not isotropic")]
    NotIsotropic,

    #[error("point has z_0 = 0 and lies outside the standard chart")]
    NotChartPoint,

    #[error("point violates a principal-minor identity")]
    InconsistentPoint,

    #[error("point is not on the principal-minor variety")]
    NotOnVariety,

    #[error("n = {n} exceeds the supported bound {bound}")]
    BoundExceeded { n: usize, bound: usize },

    #[error("graph has loops")]
    LoopsPresent,

    #[error("residual {0:e} exceeds tolerance")]
    ResidualTooLarge(f64),

    #[error("projector has rank > 1 (independent seeds disagree by {0:e})")]
    RankAboveOne(f64),
}

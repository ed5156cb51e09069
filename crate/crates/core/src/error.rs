use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable space mismatch: {0} vs {1} variables")]
    SpaceMismatch(usize, usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("point is not on the source quadric (rho = {0})")]
    NotOnQuadric(String),
    #[error("map has no verified multiplier certificate")]
    Unverified,
    #[error("map is not transversal at the base point (A = 0); see vanishing_check")]
    NonTransversal,
    #[error("signature regime violated: {0}")]
    Regime(String),
    #[error("matrix is not an isometry of the signed form; residual {0}")]
    NotIsometry(String),
    #[error("no exact value over the Gaussian rationals: {0}")]
    NotRational(String),
    #[error("truncation order {got} is below the required {needed}")]
    Truncation { needed: u32, got: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;

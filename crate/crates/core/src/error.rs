use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrystalError {
    #[error("weight {0} is not of level 0")]
    NotLevelZero(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("operator string exhausted after {steps} steps on a supposedly normal element")]
    Exhausted { steps: usize },
    #[error("reduction to the highest element failed: {0}")]
    Reduction(String),
}

pub type Result<T> = std::result::Result<T, CrystalError>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("roots collided: t[{0}] and t[{1}] coincide")]
    Collision(usize, usize),
    #[error("bracketing failed: {0}")]
    Bracket(String),
    #[error("validation failed: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

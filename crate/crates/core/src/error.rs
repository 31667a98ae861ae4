use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("face {face:?} has {count} vertices of color {color}, balance allows {allowed}")]
    Unbalanced {
        face: Vec<String>,
        color: usize,
        count: usize,
        allowed: u32,
    },
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("symbolic budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid l.s.o.p.: {0}")]
    InvalidLsop(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("degree mismatch: {0}")]
    Degree(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the exact arithmetic and the classification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order {order} exceeds the cap {cap} (set LATTANGLE_ORDER_CAP to raise it)")]
    OrderCap { order: u64, cap: u64 },
    #[error("variable `{0}` has no binding")]
    UnboundVariable(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("eliminant does not vanish")]
    NotASolution,
    #[error("ab = cd: the configuration belongs to the proportional branch")]
    ProportionalBranch,
}

pub type Result<T> = std::result::Result<T, Error>;

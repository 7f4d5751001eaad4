//! Crate-wide error type.

use thiserror::Error;

use crate::parse::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("not differentiable: {0}")]
    NonDifferentiable(String),

    #[error("{0}")]
    Parse(#[from] ParseError),

    #[error("parameter `{0}` is bound to conflicting values")]
    ParamClash(String),

    #[error("representative failed the domain probe at x={x}, eps={eps}: {reason}")]
    DomainProbe { x: f64, eps: f64, reason: String },

    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),

    #[error("missing parameter `{0}`")]
    MissingParam(String),

    #[error("unsupported embedding target: {0}")]
    UnsupportedTarget(String),

    #[error("bad mollifier: {0}")]
    BadMollifier(String),

    #[error("regulator list must be strictly decreasing and positive")]
    BadEpsilonOrder,

    #[error("unknown demo `{0}`")]
    UnknownDemo(String),

    #[error("test function too rough: need derivative order {need}, have {have}")]
    InsufficientSmoothness { need: usize, have: usize },

    #[error("invalid schedule: {0}")]
    BadSchedule(String),
}

use thiserror::Error;

use crate::arith::{ArithError, Scheme};
use crate::poly::Domain;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("scheme mismatch: expected {expected}, found {found}")]
    SchemeMismatch { expected: Scheme, found: Scheme },
    #[error("domain mismatch: expected {expected:?}, found {found:?}")]
    DomainMismatch { expected: Domain, found: Domain },
    #[error("expected {expected} coefficients, found {found}")]
    Length { expected: usize, found: usize },
    #[error("bit-reversal width {width} is inconsistent with {context}")]
    InvalidWidth { width: u32, context: &'static str },
    #[error("control word {found:#x} does not match the {mode} row for {scheme} (expected {expected:#x})")]
    ControlMismatch {
        scheme: Scheme,
        mode: &'static str,
        expected: u16,
        found: u16,
    },
    #[error("mode {mode} is not available for {scheme}")]
    InvalidMode { scheme: Scheme, mode: &'static str },
    #[error("PWM stage protocol violation: {0}")]
    PwmProtocol(&'static str),
    #[error("depth {0} must be a power of two and at least 2")]
    InvalidDepth(usize),
    #[error("geometry mismatch: {0}")]
    Geometry(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{count} memory hazard(s) during {op}; first: {first}")]
    Hazard {
        op: String,
        count: usize,
        first: String,
    },
    #[error("ROM image line {line}: {reason}")]
    RomParse { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised anywhere in the workbench.
///
/// The variants fall into three families that the command line maps onto
/// distinct exit codes: resource caps, input errors, and mathematical
/// preconditions that a particular object fails.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what}: cap of {cap} exceeded (reached {reached})")]
    CapExceeded {
        what: &'static str,
        cap: u64,
        reached: u64,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("inversion of zero")]
    DivisionByZero,

    #[error("field element does not belong to GF({p}^{e})")]
    FieldMismatch { p: u64, e: u32 },

    #[error("word syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("word arity mismatch: expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("value set enumeration infeasible: {0}")]
    Infeasible(String),

    #[error("not a subgroup")]
    NotSubgroup,

    #[error("not a normal subgroup")]
    NotNormal,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("word values are not invariant under the given normal subgroup")]
    InvarianceFailed,

    #[error("simple-group table horizon {horizon} does not certify exponent {m}")]
    Horizon { m: u64, horizon: u64 },
}

impl Error {
    /// True for errors caused by a size or resource cap.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::Horizon { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

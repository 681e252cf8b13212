use thiserror::Error;

/// Errors raised by circuit construction, synthesis and simulation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("not a unitary gate: {0}")]
    NotUnitary(&'static str),
    #[error("arity mismatch: {kind} cannot act on {arity} wire(s)")]
    ArityMismatch { kind: &'static str, arity: usize },
    #[error("arity mismatch: {0}")]
    TableArityMismatch(String),
    #[error("invalid wire set: {0}")]
    InvalidWireSet(String),
    #[error("invalid wire: {wire} (register has {n_qubits} qubits)")]
    InvalidWire { wire: usize, n_qubits: usize },
    #[error("mid-circuit measurement is unsupported: gate after measurement on wire {0}")]
    NonTerminalMeasure(usize),
    #[error("empty sample request")]
    EmptySample,
    #[error("dimension limit exceeded: {n} qubits (limit {limit})")]
    DimensionLimit { n: usize, limit: usize },
    #[error("density-matrix limit: {n} qubits (limit {limit})")]
    DensityLimit { n: usize, limit: usize },
    #[error("degree computation limit: arity {n} (limit {limit})")]
    DegreeLimit { n: usize, limit: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid bit string: {0:?}")]
    InvalidBitString(String),
    #[error("empty subfunction arity")]
    EmptySubfunction,
    #[error("invalid part index {index} (function splits into {parts} parts)")]
    InvalidPartIndex { index: usize, parts: usize },
    #[error("not a hidden-string function")]
    NotHiddenString,
    #[error("node sizes do not sum to n: {0}")]
    InvalidPlan(String),
    #[error("requires unique target: found {0} satisfying inputs")]
    RequiresUniqueTarget(usize),
    #[error("rotation oracle requires unique target: found {0} satisfying inputs")]
    RotationRequiresUniqueTarget(usize),
    #[error("invalid probability {0}: must lie in [0, 1]")]
    InvalidProbability(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Coarse classification used to map errors onto process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed input or usage (exit code 2).
    Usage,
    /// Well-formed input that violates an algorithm's domain (exit code 3).
    Domain,
    /// A register or table is larger than the simulator allows (exit code 4).
    Resource,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::DimensionLimit { .. }
            | Error::DensityLimit { .. }
            | Error::DegreeLimit { .. } => ErrorClass::Resource,
            Error::Parse { .. }
            | Error::InvalidBitString(_)
            | Error::InvalidArgument(_)
            | Error::InvalidProbability(_)
            | Error::EmptySample
            | Error::InvalidPlan(_) => ErrorClass::Usage,
            _ => ErrorClass::Domain,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

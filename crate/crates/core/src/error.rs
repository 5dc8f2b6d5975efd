use thiserror::Error;

use crate::machine::Violation;

/// Errors raised by machine construction, operations and I/O.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("semiring mismatch: expected `{expected}`, found `{found}`")]
    SemiringMismatch { expected: String, found: String },

    #[error("unknown semiring `{0}` (expected boolean, tropical, real or log)")]
    UnknownSemiring(String),

    #[error("tape index {index} out of range for arity {arity} (tapes are numbered from 1)")]
    TapeIndex { index: usize, arity: usize },

    #[error("auto-intersection needs two distinct tapes, got {0} twice")]
    SameTape(usize),

    #[error("invalid tape list: {0}")]
    InvalidTapeList(String),

    #[error("invalid join spec: {0}")]
    InvalidJoinSpec(String),

    #[error("state {state} does not exist (machine has {num_states} states)")]
    MissingState { state: usize, num_states: usize },

    #[error("invalid machine: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidMachine(Vec<Violation>),

    #[error(
        "enumeration budget of {budget} expansions exceeded; shrink the machine or the hop limit"
    )]
    BudgetExceeded { budget: usize },

    #[error("closure would diverge: the operand accepts the all-epsilon tuple with weight {weight} in the {semiring} semiring")]
    EpsilonAcceptance {
        semiring: &'static str,
        weight: String,
    },

    #[error("epsilon-tuple cycle through state {state} has no finite closure in the {semiring} semiring")]
    EpsilonCycle {
        semiring: &'static str,
        state: usize,
    },

    #[error("{operation} is not supported over the {semiring} semiring")]
    UnsupportedSemiring {
        operation: &'static str,
        semiring: &'static str,
    },

    #[error("{operation} requires non-negative transition weights; found {weight}")]
    NegativeWeight {
        operation: &'static str,
        weight: String,
    },

    #[error("join_direct cannot handle this input ({0}); use join_via_sigma instead")]
    JoinGuard(String),

    #[error("result of {0} may be incomplete (delay bound exceeded)")]
    Incomplete(&'static str),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

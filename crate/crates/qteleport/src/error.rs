//! Error taxonomy shared by every module.

use thiserror::Error;

/// Failure modes of simulator operations.
///
/// Every variant except `ZeroNorm` and `NotDeterministic` reports a contract
/// violation by the caller. `ZeroNorm` flags an internal impossibility: a
/// collapse branch whose weight vanished.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("bit label has {got} symbols, expected {expected}")]
    BitLabelLength { expected: usize, got: usize },

    #[error("bit label may only contain '0' and '1', got {0:?}")]
    BitLabelSymbol(char),

    #[error("amplitude vector has length {got}, a {num_qubits}-qubit state needs {expected}")]
    AmplitudeCount {
        num_qubits: usize,
        expected: usize,
        got: usize,
    },

    #[error("state must hold between 1 and {max} qubits, got {got}")]
    QubitCount { max: usize, got: usize },

    #[error("operation needs a {expected}-qubit state, got {got} qubits")]
    WrongQubitCount { expected: usize, got: usize },

    #[error("states hold {left} and {right} qubits, expected equal")]
    QubitCountMismatch { left: usize, right: usize },

    #[error("qubit index {qubit} out of range for a {num_qubits}-qubit state")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("qubit index {0} listed more than once")]
    DuplicateQubit(usize),

    #[error("control set overlaps target qubit {0}")]
    ControlTargetOverlap(usize),

    #[error("cannot measure all qubits; at least one must remain")]
    NothingLeftToKeep,

    #[error("gate is not unitary (deviation {deviation:e})")]
    NonUnitaryGate { deviation: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("squared norm {norm_sqr} differs from 1 beyond tolerance")]
    NotNormalized { norm_sqr: f64 },

    #[error("{name} = {value} lies outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("projector list does not partition the basis of a {num_qubits}-qubit block")]
    ProjectorsIncomplete { num_qubits: usize },

    #[error("no projector outcome is certain (largest probability {0})")]
    NotDeterministic(f64),

    #[error("state norm vanished during collapse")]
    ZeroNorm,
}

pub type SimResult<T> = Result<T, SimError>;

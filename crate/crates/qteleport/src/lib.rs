//! Dense state-vector simulator of a teleportation control loop protected by
//! a three-qubit bit-flip code.
//!
//! A satellite holds one payload qubit on the Bloch sphere. Each leg of the
//! loop encodes it into three qubits, splices in half of an entangled channel
//! pair, entangles payload and channel with a triply controlled NOT, applies
//! Hadamards on the sender side, and measures four qubits; the receiver undoes
//! the measurement back-action with a Pauli correction keyed to the 4-bit
//! message. A single bit flip on any encoded qubit, at either supported point
//! in the pipeline, is diagnosed by parity projectors and repaired without
//! disturbing the payload. The operator may rotate the received qubit and send
//! it back over an identical leg.
//!
//! Everything is deterministic: all randomness flows through a caller-supplied
//! [`rand::Rng`], and measurement branches can be enumerated exhaustively
//! instead of sampled. States live in [`StateVector`], generic over the real
//! scalar ([`f64`] or [`f32`]) via the [`Scalar`] trait; the [`StateVec64`]
//! family of aliases pins the common choice.
//!
//! ```
//! use qteleport::{enumerate_forward, Bloch64, NoiseSpec64};
//! use rand::SeedableRng;
//!
//! let coords = Bloch64::new(1.2, 0.7).unwrap();
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
//! let run = enumerate_forward(&coords, &NoiseSpec64::none(), &mut rng).unwrap();
//! assert_eq!(run.branches.len(), 16);
//! for branch in &run.branches {
//!     assert!((branch.fidelity - 1.0).abs() < 1e-10);
//! }
//! ```

mod bitflip;
mod error;
mod gates;
mod scalar;
mod statevector;
mod teleport;

pub use bitflip::{
    diagnose_and_recover, diagnose_and_recover_deterministic, encode, inject_noise,
    make_input_state, BlochCoords, NoiseKind, NoisePlacement, NoiseSpec, SyndromeOutcome,
};
pub use error::{SimError, SimResult};
pub use gates::{
    hadamard, identity, pauli_x, pauli_y, pauli_z, phase_global, rot_x, rot_y, rot_z,
    syndrome_projectors, GateMatrix2, Projector,
};
pub use scalar::Scalar;
pub use statevector::{ket_label, Bits, Outcome, StateVector, MAX_QUBITS};
pub use teleport::{
    apply_control, apply_correction, assemble, bell_pair, c3not_stage, classify,
    enumerate_forward, hadamard_stage, processing_stage, run_forward, run_leg, run_round_trip,
    BranchOutcome, ClassicalMessage, ControlCommand, CorrectionOp, ForwardEnumeration, LegTrace,
    NoiseReport, ProtocolTrace, RotationAxis,
};

pub use num_complex::Complex;
/// Complex number over `f32`.
pub type Complex32 = Complex<f32>;
/// Complex number over `f64`.
pub type Complex64 = Complex<f64>;

/// Double-precision state vector, the default working type.
pub type StateVec64 = StateVector<f64>;
/// Single-precision state vector, for storage-constrained callers.
pub type StateVec32 = StateVector<f32>;
/// Double-precision one-qubit gate.
pub type Gate64 = GateMatrix2<f64>;
/// Single-precision one-qubit gate.
pub type Gate32 = GateMatrix2<f32>;
/// Double-precision Bloch coordinates.
pub type Bloch64 = BlochCoords<f64>;
/// Single-precision Bloch coordinates.
pub type Bloch32 = BlochCoords<f32>;
/// Double-precision noise configuration.
pub type NoiseSpec64 = NoiseSpec<f64>;
/// Single-precision noise configuration.
pub type NoiseSpec32 = NoiseSpec<f32>;
/// Double-precision command for the operator side.
pub type Command64 = ControlCommand<f64>;
/// Double-precision record of a full protocol run.
pub type Trace64 = ProtocolTrace<f64>;

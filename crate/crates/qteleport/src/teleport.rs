//! The five-qubit teleportation pipeline and its round trip.
//!
//! One leg carries a single payload qubit from sender to receiver: encode it
//! in the bit-flip code (qubits 0-2), adjoin half of an entangled channel
//! pair (qubits 3-4), entangle payload and channel with a triply controlled
//! NOT onto qubit 3, interfere the senders' qubits with Hadamards, measure
//! qubits 0-3, and undo the measurement back-action on the receiver qubit
//! with a Pauli correction chosen from the 4-bit message.
//!
//! The syndrome check runs at the configured noise placement, not at a fixed
//! stage: a flip injected before the entangling gate must be repaired before
//! that gate reads its controls, otherwise the corrupted block never routes
//! the channel pair and no later repair can rescue the transfer. A flip
//! injected after the entangling gate is repaired right there, which commutes
//! with everything the gate already did.

use num_complex::Complex;
use rand::Rng;
use std::fmt;

use crate::bitflip::{
    diagnose_and_recover, encode, inject_noise, make_input_state, BlochCoords, NoisePlacement,
    NoiseSpec, SyndromeOutcome,
};
use crate::error::{SimError, SimResult};
use crate::gates::{hadamard, pauli_x, pauli_z, phase_global, rot_x, rot_y, rot_z};
use crate::scalar::Scalar;
use crate::statevector::{Bits, StateVector};

/// Qubits measured by the senders, in message order.
const MEASURED_QUBITS: [usize; 4] = [0, 1, 2, 3];

/// Maximally entangled channel pair (|00> + |11>)/sqrt(2).
pub fn bell_pair<T: Scalar>() -> StateVector<T> {
    let s = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
    let zero = Complex::new(T::zero(), T::zero());
    StateVector::from_amplitudes(2, vec![s, zero, zero, s])
        .expect("Bell amplitudes are normalized")
}

/// Joins the encoded block (3 qubits) with the channel pair (2 qubits).
pub fn assemble<T: Scalar>(
    encoded: &StateVector<T>,
    pair: &StateVector<T>,
) -> SimResult<StateVector<T>> {
    if encoded.num_qubits() != 3 {
        return Err(SimError::WrongQubitCount {
            expected: 3,
            got: encoded.num_qubits(),
        });
    }
    if pair.num_qubits() != 2 {
        return Err(SimError::WrongQubitCount {
            expected: 2,
            got: pair.num_qubits(),
        });
    }
    encoded.tensor(pair)
}

/// NOT on qubit 3 controlled by all of qubits 0-2. Routes the channel pair
/// on the |111> branch of the code block.
pub fn c3not_stage<T: Scalar>(state: &StateVector<T>) -> SimResult<StateVector<T>> {
    ensure_five(state)?;
    state.apply_controlled(&[0, 1, 2], 3, &pauli_x())
}

/// Hadamard on each of qubits 0-2, producing the interference pattern whose
/// measurement steers the receiver qubit.
pub fn hadamard_stage<T: Scalar>(state: &StateVector<T>) -> SimResult<StateVector<T>> {
    ensure_five(state)?;
    let h = hadamard();
    state.apply_1q(&h, 0)?.apply_1q(&h, 1)?.apply_1q(&h, 2)
}

fn ensure_five<T: Scalar>(state: &StateVector<T>) -> SimResult<()> {
    if state.num_qubits() != 5 {
        return Err(SimError::WrongQubitCount {
            expected: 5,
            got: state.num_qubits(),
        });
    }
    Ok(())
}

/// The four classical bits (m0, m1, m2, m3) the senders transmit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassicalMessage {
    bits: [u8; 4],
}

impl ClassicalMessage {
    pub fn new(bits: [u8; 4]) -> SimResult<Self> {
        if let Some(&bad) = bits.iter().find(|&&b| b > 1) {
            return Err(SimError::BitLabelSymbol((b'0' + bad) as char));
        }
        Ok(Self { bits })
    }

    pub fn from_bits(bits: &Bits) -> SimResult<Self> {
        let slice = bits.bits();
        if slice.len() != 4 {
            return Err(SimError::BitLabelLength {
                expected: 4,
                got: slice.len(),
            });
        }
        Self::new([slice[0], slice[1], slice[2], slice[3]])
    }

    /// Message whose bits spell `index` in binary, m0 most significant.
    pub fn from_index(index: usize) -> SimResult<Self> {
        if index >= 16 {
            return Err(SimError::OutOfRange {
                name: "message index",
                value: index as f64,
                range: "[0, 15]",
            });
        }
        Ok(Self {
            bits: [
                ((index >> 3) & 1) as u8,
                ((index >> 2) & 1) as u8,
                ((index >> 1) & 1) as u8,
                (index & 1) as u8,
            ],
        })
    }

    pub fn bit(&self, i: usize) -> u8 {
        self.bits[i]
    }

    pub fn bits(&self) -> [u8; 4] {
        self.bits
    }

    pub fn index(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    /// Parity m0 xor m1 xor m2 of the Hadamard-side bits.
    pub fn sender_parity(&self) -> u8 {
        self.bits[0] ^ self.bits[1] ^ self.bits[2]
    }
}

impl fmt::Display for ClassicalMessage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Pauli correction Z^z X^x the receiver applies; X acts first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorrectionOp {
    pub x_exp: bool,
    pub z_exp: bool,
}

impl fmt::Display for CorrectionOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z^{} X^{}", self.z_exp as u8, self.x_exp as u8)
    }
}

/// Correction for a message: x from m3, z from the parity of m0..m2.
/// Agrees row for row with the 16-entry outcome table.
pub fn classify(message: &ClassicalMessage) -> CorrectionOp {
    CorrectionOp {
        x_exp: message.bit(3) == 1,
        z_exp: message.sender_parity() == 1,
    }
}

/// Applies the correction to the receiver qubit, X before Z. The reversed
/// order would leave a stray minus sign on the branches needing both.
pub fn apply_correction<T: Scalar>(
    residual: &StateVector<T>,
    op: &CorrectionOp,
) -> SimResult<StateVector<T>> {
    if residual.num_qubits() != 1 {
        return Err(SimError::WrongQubitCount {
            expected: 1,
            got: residual.num_qubits(),
        });
    }
    let mut out = residual.clone();
    if op.x_exp {
        out = out.apply_1q(&pauli_x(), 0)?;
    }
    if op.z_exp {
        out = out.apply_1q(&pauli_z(), 0)?;
    }
    Ok(out)
}

/// Optional receiver-side stage: adjoin ancillae |1>|0> and apply a Toffoli
/// with the payload and the |1> ancilla as controls, so a|0> + b|1> becomes
/// a|010> + b|111>.
pub fn processing_stage<T: Scalar>(deciphered: &StateVector<T>) -> SimResult<StateVector<T>> {
    if deciphered.num_qubits() != 1 {
        return Err(SimError::WrongQubitCount {
            expected: 1,
            got: deciphered.num_qubits(),
        });
    }
    let widened = deciphered.tensor(&StateVector::basis_state(2, "10")?)?;
    widened.apply_controlled(&[0, 1], 2, &pauli_x())
}

/// Axis of one remote-control step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RotationAxis {
    X,
    Y,
    Z,
    GlobalPhase,
}

impl fmt::Display for RotationAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RotationAxis::X => "x",
            RotationAxis::Y => "y",
            RotationAxis::Z => "z",
            RotationAxis::GlobalPhase => "global_phase",
        };
        write!(f, "{name}")
    }
}

/// Ordered list of rotations and phases the operator applies to the
/// teleported qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct ControlCommand<T: Scalar> {
    steps: Vec<(RotationAxis, T)>,
}

impl<T: Scalar> ControlCommand<T> {
    pub fn new(steps: Vec<(RotationAxis, T)>) -> SimResult<Self> {
        if steps.iter().any(|(_, angle)| !angle.is_finite()) {
            return Err(SimError::NonFinite("command angle"));
        }
        Ok(Self { steps })
    }

    /// Relay mode: teleport without touching the state.
    pub fn relay() -> Self {
        Self { steps: Vec::new() }
    }

    pub fn steps(&self) -> &[(RotationAxis, T)] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Applies the command's steps in order to a one-qubit state.
pub fn apply_control<T: Scalar>(
    state: &StateVector<T>,
    command: &ControlCommand<T>,
) -> SimResult<StateVector<T>> {
    if state.num_qubits() != 1 {
        return Err(SimError::WrongQubitCount {
            expected: 1,
            got: state.num_qubits(),
        });
    }
    let mut out = state.clone();
    for &(axis, angle) in command.steps() {
        let gate = match axis {
            RotationAxis::X => rot_x(angle)?,
            RotationAxis::Y => rot_y(angle)?,
            RotationAxis::Z => rot_z(angle)?,
            RotationAxis::GlobalPhase => phase_global(angle)?,
        };
        out = out.apply_1q(&gate, 0)?;
    }
    Ok(out)
}

/// What the noise channel actually did during one leg.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseReport<T: Scalar> {
    pub spec: NoiseSpec<T>,
    pub flipped_qubit: Option<usize>,
}

/// Full record of one teleportation leg.
///
/// Stage qubit counts are fixed by the pipeline: input 1, encoded 3, then
/// three five-qubit stages, then the corrected single qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct LegTrace<T: Scalar> {
    pub input: StateVector<T>,
    pub encoded: StateVector<T>,
    pub assembled: StateVector<T>,
    pub after_c3not: StateVector<T>,
    pub after_hadamard: StateVector<T>,
    /// Receiver qubit right after the senders' measurement, before correction.
    pub residual: StateVector<T>,
    pub corrected: StateVector<T>,
    pub noise: NoiseReport<T>,
    pub syndrome: SyndromeOutcome,
    pub message: ClassicalMessage,
    pub message_probability: T,
    pub correction: CorrectionOp,
    /// Fidelity of `corrected` against `input`.
    pub fidelity: T,
}

/// Record of a full protocol run: the forward leg, optionally the command,
/// the processed state, and the return leg.
#[derive(Clone, Debug, PartialEq)]
pub struct ProtocolTrace<T: Scalar> {
    pub coords_in: BlochCoords<T>,
    pub forward: LegTrace<T>,
    pub command: ControlCommand<T>,
    /// Operator-side state after the command; present on round trips.
    pub rotated: Option<StateVector<T>>,
    pub return_leg: Option<LegTrace<T>>,
    /// Fidelity of the returned state against the commanded input, i.e.
    /// against `apply_control(input, command)`.
    pub fidelity_satellite: Option<T>,
}

impl<T: Scalar> ProtocolTrace<T> {
    /// Fidelity of the operator-side corrected state against the input.
    pub fn fidelity_operator(&self) -> T {
        self.forward.fidelity
    }
}

/// One branch of an exhaustive forward run.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchOutcome<T: Scalar> {
    pub message: ClassicalMessage,
    pub probability: T,
    pub correction: CorrectionOp,
    pub corrected: StateVector<T>,
    pub fidelity: T,
}

/// Forward run with every measurement branch kept instead of sampling one.
#[derive(Clone, Debug, PartialEq)]
pub struct ForwardEnumeration<T: Scalar> {
    pub coords_in: BlochCoords<T>,
    pub input: StateVector<T>,
    pub encoded: StateVector<T>,
    pub assembled: StateVector<T>,
    pub after_c3not: StateVector<T>,
    pub after_hadamard: StateVector<T>,
    pub noise: NoiseReport<T>,
    pub syndrome: SyndromeOutcome,
    pub branches: Vec<BranchOutcome<T>>,
}

struct LegPrefix<T: Scalar> {
    encoded: StateVector<T>,
    assembled: StateVector<T>,
    after_c3not: StateVector<T>,
    after_hadamard: StateVector<T>,
    noise: NoiseReport<T>,
    syndrome: SyndromeOutcome,
}

/// Runs a leg up to (and including) the Hadamard stage. Stage snapshots hold
/// the clean pipeline outputs; noise and repair act between them and are
/// reported separately.
fn run_leg_prefix<T: Scalar, R: Rng + ?Sized>(
    input: &StateVector<T>,
    noise: &NoiseSpec<T>,
    rng: &mut R,
) -> SimResult<LegPrefix<T>> {
    if input.num_qubits() != 1 {
        return Err(SimError::WrongQubitCount {
            expected: 1,
            got: input.num_qubits(),
        });
    }
    let encoded = encode(input)?;

    let (ready3, early) = match noise.placement() {
        NoisePlacement::AfterEncode => {
            let (noisy, flipped) = inject_noise(&encoded, noise, rng)?;
            let (repaired, syndrome) = diagnose_and_recover(&noisy, rng)?;
            (repaired, Some((flipped, syndrome)))
        }
        NoisePlacement::AfterC3not => (encoded.clone(), None),
    };

    let assembled = assemble(&ready3, &bell_pair())?;
    let after_c3not = c3not_stage(&assembled)?;

    let (ready5, (flipped, syndrome)) = match early {
        Some(report) => (after_c3not.clone(), report),
        None => {
            let (noisy, flipped) = inject_noise(&after_c3not, noise, rng)?;
            let (repaired, syndrome) = diagnose_and_recover(&noisy, rng)?;
            (repaired, (flipped, syndrome))
        }
    };

    let after_hadamard = hadamard_stage(&ready5)?;
    Ok(LegPrefix {
        encoded,
        assembled,
        after_c3not,
        after_hadamard,
        noise: NoiseReport {
            spec: *noise,
            flipped_qubit: flipped,
        },
        syndrome,
    })
}

/// Teleports `input` through one leg, sampling the senders' measurement.
pub fn run_leg<T: Scalar, R: Rng + ?Sized>(
    input: &StateVector<T>,
    noise: &NoiseSpec<T>,
    rng: &mut R,
) -> SimResult<LegTrace<T>> {
    let prefix = run_leg_prefix(input, noise, rng)?;
    let (bits, residual, probability) = prefix.after_hadamard.measure_qubits(&MEASURED_QUBITS, rng)?;
    let message = ClassicalMessage::from_bits(&bits)?;
    let correction = classify(&message);
    let corrected = apply_correction(&residual, &correction)?;
    let fidelity = corrected.fidelity(input)?;
    Ok(LegTrace {
        input: input.clone(),
        encoded: prefix.encoded,
        assembled: prefix.assembled,
        after_c3not: prefix.after_c3not,
        after_hadamard: prefix.after_hadamard,
        residual,
        corrected,
        noise: prefix.noise,
        syndrome: prefix.syndrome,
        message,
        message_probability: probability,
        correction,
        fidelity,
    })
}

/// Forward protocol: satellite to operator, one sampled branch.
pub fn run_forward<T: Scalar, R: Rng + ?Sized>(
    coords: &BlochCoords<T>,
    noise: &NoiseSpec<T>,
    rng: &mut R,
) -> SimResult<ProtocolTrace<T>> {
    let input = make_input_state(coords);
    let forward = run_leg(&input, noise, rng)?;
    Ok(ProtocolTrace {
        coords_in: *coords,
        forward,
        command: ControlCommand::relay(),
        rotated: None,
        return_leg: None,
        fidelity_satellite: None,
    })
}

/// Forward protocol with all sixteen measurement branches enumerated.
/// Randomness is only consumed by noise injection and the syndrome draw.
pub fn enumerate_forward<T: Scalar, R: Rng + ?Sized>(
    coords: &BlochCoords<T>,
    noise: &NoiseSpec<T>,
    rng: &mut R,
) -> SimResult<ForwardEnumeration<T>> {
    let input = make_input_state(coords);
    let prefix = run_leg_prefix(&input, noise, rng)?;
    let outcomes = prefix.after_hadamard.enumerate_outcomes(&MEASURED_QUBITS)?;
    let mut branches = Vec::with_capacity(outcomes.len());
    for outcome in outcomes {
        let message = ClassicalMessage::from_bits(&outcome.bits)?;
        let correction = classify(&message);
        let corrected = apply_correction(&outcome.collapsed, &correction)?;
        let fidelity = corrected.fidelity(&input)?;
        branches.push(BranchOutcome {
            message,
            probability: outcome.probability,
            correction,
            corrected,
            fidelity,
        });
    }
    Ok(ForwardEnumeration {
        coords_in: *coords,
        input,
        encoded: prefix.encoded,
        assembled: prefix.assembled,
        after_c3not: prefix.after_c3not,
        after_hadamard: prefix.after_hadamard,
        noise: prefix.noise,
        syndrome: prefix.syndrome,
        branches,
    })
}

/// Full control loop: forward leg, command on the operator side, and an
/// identical return leg carrying the rotated state back to the satellite.
pub fn run_round_trip<T: Scalar, R: Rng + ?Sized>(
    coords: &BlochCoords<T>,
    command: &ControlCommand<T>,
    noise_forward: &NoiseSpec<T>,
    noise_return: &NoiseSpec<T>,
    rng: &mut R,
) -> SimResult<ProtocolTrace<T>> {
    let input = make_input_state(coords);
    let forward = run_leg(&input, noise_forward, rng)?;
    let rotated = apply_control(&forward.corrected, command)?;
    let return_leg = run_leg(&rotated, noise_return, rng)?;
    let target = apply_control(&input, command)?;
    let fidelity_satellite = return_leg.corrected.fidelity(&target)?;
    Ok(ProtocolTrace {
        coords_in: *coords,
        forward,
        command: command.clone(),
        rotated: Some(rotated),
        return_leg: Some(return_leg),
        fidelity_satellite: Some(fidelity_satellite),
    })
}

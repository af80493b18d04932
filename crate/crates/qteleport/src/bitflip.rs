//! Three-qubit bit-flip code: encoding, noise injection, and recovery.
//!
//! The code maps a|0> + b|1> to a|000> + b|111>. A single flip on any of the
//! three qubits lands the state in one of four orthogonal subspaces, so the
//! syndrome measurement identifies the flip without disturbing the encoded
//! superposition. Two flips are diagnosed as the third qubit being flipped,
//! and recovery then lands on the logical flip of the input; that failure
//! mode is inherent to the code, not to this implementation.

use num_complex::Complex;
use rand::Rng;
use std::fmt;

use crate::error::{SimError, SimResult};
use crate::gates::{pauli_x, syndrome_projectors};
use crate::scalar::Scalar;
use crate::statevector::StateVector;

/// Point on the Bloch sphere: polar angle theta in [0, pi], azimuth phi in
/// [0, 2 pi).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochCoords<T: Scalar> {
    theta: T,
    phi: T,
}

impl<T: Scalar> BlochCoords<T> {
    pub fn new(theta: T, phi: T) -> SimResult<Self> {
        if !theta.is_finite() {
            return Err(SimError::NonFinite("theta"));
        }
        if !phi.is_finite() {
            return Err(SimError::NonFinite("phi"));
        }
        if theta < T::zero() || theta > T::PI() {
            return Err(SimError::OutOfRange {
                name: "theta",
                value: theta.to_f64_lossy(),
                range: "[0, pi]",
            });
        }
        if phi < T::zero() || phi >= T::TAU() {
            return Err(SimError::OutOfRange {
                name: "phi",
                value: phi.to_f64_lossy(),
                range: "[0, 2 pi)",
            });
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn phi(&self) -> T {
        self.phi
    }

    /// Amplitude pair (cos(theta/2), e^{i phi} sin(theta/2)).
    pub fn amplitudes(&self) -> (Complex<T>, Complex<T>) {
        let half = self.theta / T::real(2.0);
        let a = Complex::new(half.cos(), T::zero());
        let b = Complex::from_polar(half.sin(), self.phi);
        (a, b)
    }
}

/// Builds the one-qubit input state cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
pub fn make_input_state<T: Scalar>(coords: &BlochCoords<T>) -> StateVector<T> {
    let (a, b) = coords.amplitudes();
    StateVector::from_amplitudes(1, vec![a, b]).expect("Bloch amplitudes are normalized")
}

/// Encodes one qubit into the three-qubit repetition code with two CNOTs
/// from qubit 0 onto fresh |0> ancillae.
pub fn encode<T: Scalar>(state: &StateVector<T>) -> SimResult<StateVector<T>> {
    if state.num_qubits() != 1 {
        return Err(SimError::WrongQubitCount {
            expected: 1,
            got: state.num_qubits(),
        });
    }
    let widened = state.tensor(&StateVector::basis_state(2, "00")?)?;
    let x = pauli_x();
    widened
        .apply_controlled(&[0], 1, &x)?
        .apply_controlled(&[0], 2, &x)
}

/// What kind of bit-flip noise to inject.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NoiseKind<T: Scalar> {
    /// Clean channel.
    None,
    /// Deterministic flip of one encoded qubit (0, 1, or 2).
    FlipQubit(usize),
    /// With probability p, flip one uniformly chosen encoded qubit;
    /// otherwise leave the state alone.
    RandomSingle(T),
}

/// Where in the pipeline the noise (and the syndrome check that chases it)
/// acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoisePlacement {
    /// On the encoded block, before it joins the channel pair.
    AfterEncode,
    /// On the full five-qubit state, after the entangling stage.
    AfterC3not,
}

/// Validated noise channel description.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseSpec<T: Scalar> {
    kind: NoiseKind<T>,
    placement: NoisePlacement,
}

impl<T: Scalar> NoiseSpec<T> {
    pub fn new(kind: NoiseKind<T>, placement: NoisePlacement) -> SimResult<Self> {
        match kind {
            NoiseKind::FlipQubit(k) if k > 2 => {
                return Err(SimError::OutOfRange {
                    name: "flip qubit",
                    value: k as f64,
                    range: "[0, 2]",
                });
            }
            NoiseKind::RandomSingle(p) => {
                if !p.is_finite() {
                    return Err(SimError::NonFinite("flip probability"));
                }
                if p < T::zero() || p > T::one() {
                    return Err(SimError::OutOfRange {
                        name: "flip probability",
                        value: p.to_f64_lossy(),
                        range: "[0, 1]",
                    });
                }
            }
            _ => {}
        }
        Ok(Self { kind, placement })
    }

    /// Clean channel at the default placement.
    pub fn none() -> Self {
        Self {
            kind: NoiseKind::None,
            placement: NoisePlacement::AfterEncode,
        }
    }

    pub fn kind(&self) -> NoiseKind<T> {
        self.kind
    }

    pub fn placement(&self) -> NoisePlacement {
        self.placement
    }
}

/// Applies the described noise to a state whose first three qubits are the
/// encoded block. Returns the new state and which qubit, if any, flipped.
pub fn inject_noise<T: Scalar, R: Rng + ?Sized>(
    state: &StateVector<T>,
    spec: &NoiseSpec<T>,
    rng: &mut R,
) -> SimResult<(StateVector<T>, Option<usize>)> {
    if state.num_qubits() < 3 {
        return Err(SimError::WrongQubitCount {
            expected: 3,
            got: state.num_qubits(),
        });
    }
    let flip = |k: usize| state.apply_1q(&pauli_x(), k);
    match spec.kind {
        NoiseKind::None => Ok((state.clone(), None)),
        NoiseKind::FlipQubit(k) => Ok((flip(k)?, Some(k))),
        NoiseKind::RandomSingle(p) => {
            let draw = T::uniform(rng);
            if draw < p {
                let which = T::uniform(rng) * T::real(3.0);
                let k = which.floor().to_usize().unwrap_or(0).min(2);
                Ok((flip(k)?, Some(k)))
            } else {
                Ok((state.clone(), None))
            }
        }
    }
}

/// Result of a syndrome measurement: which projector fired, and which qubit
/// the result incriminates (none when the block is clean).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SyndromeOutcome {
    pub index: usize,
    pub affected_qubit: Option<usize>,
}

impl SyndromeOutcome {
    pub fn from_index(index: usize) -> Self {
        Self {
            index,
            affected_qubit: index.checked_sub(1),
        }
    }
}

impl fmt::Display for SyndromeOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.index)
    }
}

/// Measures the four syndrome projectors on the encoded block (qubits 0-2)
/// and, when a flip is incriminated, applies the repairing X.
pub fn diagnose_and_recover<T: Scalar, R: Rng + ?Sized>(
    state: &StateVector<T>,
    rng: &mut R,
) -> SimResult<(StateVector<T>, SyndromeOutcome)> {
    let (index, collapsed, _) = state.measure_projectors(&syndrome_projectors(), rng)?;
    recover(collapsed, index)
}

/// Like [`diagnose_and_recover`] but refuses states whose syndrome is not
/// already certain; no randomness is consumed.
pub fn diagnose_and_recover_deterministic<T: Scalar>(
    state: &StateVector<T>,
) -> SimResult<(StateVector<T>, SyndromeOutcome)> {
    let (index, collapsed, _) =
        state.measure_projectors_deterministic(&syndrome_projectors())?;
    recover(collapsed, index)
}

fn recover<T: Scalar>(
    collapsed: StateVector<T>,
    index: usize,
) -> SimResult<(StateVector<T>, SyndromeOutcome)> {
    let outcome = SyndromeOutcome::from_index(index);
    let repaired = match outcome.affected_qubit {
        Some(k) => collapsed.apply_1q(&pauli_x(), k)?,
        None => collapsed,
    };
    Ok((repaired, outcome))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    type Sv = StateVector<f64>;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn generic_coords() -> BlochCoords<f64> {
        BlochCoords::new(1.1, 2.3).unwrap()
    }

    #[test]
    fn coords_validate_their_ranges() {
        assert!(BlochCoords::new(0.0, 0.0).is_ok());
        assert!(BlochCoords::new(PI, TAU - 1e-3).is_ok());
        assert!(matches!(
            BlochCoords::new(-0.1, 0.0),
            Err(SimError::OutOfRange { name: "theta", .. })
        ));
        assert!(matches!(
            BlochCoords::new(PI + 0.1, 0.0),
            Err(SimError::OutOfRange { name: "theta", .. })
        ));
        assert!(matches!(
            BlochCoords::new(1.0, std::f64::consts::TAU),
            Err(SimError::OutOfRange { name: "phi", .. })
        ));
        assert!(matches!(
            BlochCoords::new(f64::NAN, 0.0),
            Err(SimError::NonFinite("theta"))
        ));
    }

    #[test]
    fn input_state_hits_the_poles_and_equator() {
        let north = make_input_state(&BlochCoords::new(0.0, 0.0).unwrap());
        assert_eq!(north, Sv::basis_state(1, "0").unwrap());

        let south = make_input_state(&BlochCoords::new(PI, 0.0).unwrap());
        assert!(south.amplitude(0).norm() < 1e-15);
        assert!((south.amplitude(1).re - 1.0).abs() < 1e-15);

        let equator = make_input_state(&BlochCoords::new(FRAC_PI_2, 0.0).unwrap());
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((equator.amplitude(0).re - s).abs() < 1e-15);
        assert!((equator.amplitude(1).re - s).abs() < 1e-15);

        let phased = make_input_state(&BlochCoords::new(FRAC_PI_2, FRAC_PI_2).unwrap());
        assert!((phased.amplitude(1) - c(0.0, s)).norm() < 1e-15);
    }

    #[test]
    fn encode_repeats_the_basis_amplitudes() {
        let input = make_input_state(&generic_coords());
        let code = encode(&input).unwrap();
        assert_eq!(code.num_qubits(), 3);
        assert_eq!(code.amplitude(0b000), input.amplitude(0));
        assert_eq!(code.amplitude(0b111), input.amplitude(1));
        let weight: f64 = code.amplitude(0b000).norm_sqr() + code.amplitude(0b111).norm_sqr();
        assert!((weight - 1.0).abs() < 1e-12);
    }

    #[test]
    fn encode_rejects_multi_qubit_input() {
        let two = Sv::basis_state(2, "00").unwrap();
        assert!(matches!(
            encode(&two),
            Err(SimError::WrongQubitCount { expected: 1, .. })
        ));
    }

    #[test]
    fn flip_noise_moves_the_support() {
        let code = encode(&make_input_state(&generic_coords())).unwrap();
        let spec = NoiseSpec::new(NoiseKind::FlipQubit(1), NoisePlacement::AfterEncode).unwrap();
        let (noisy, flipped) = inject_noise(&code, &spec, &mut rng(0)).unwrap();
        assert_eq!(flipped, Some(1));
        assert_eq!(noisy.amplitude(0b010), code.amplitude(0b000));
        assert_eq!(noisy.amplitude(0b101), code.amplitude(0b111));
    }

    #[test]
    fn random_noise_respects_probability_edges() {
        let code = encode(&make_input_state(&generic_coords())).unwrap();
        let never =
            NoiseSpec::new(NoiseKind::RandomSingle(0.0), NoisePlacement::AfterEncode).unwrap();
        for seed in 0..32 {
            let (state, flipped) = inject_noise(&code, &never, &mut rng(seed)).unwrap();
            assert_eq!(flipped, None);
            assert_eq!(state, code);
        }
        let always =
            NoiseSpec::new(NoiseKind::RandomSingle(1.0), NoisePlacement::AfterEncode).unwrap();
        let mut seen = [false; 3];
        for seed in 0..64 {
            let (_, flipped) = inject_noise(&code, &always, &mut rng(seed)).unwrap();
            seen[flipped.expect("p = 1 always flips")] = true;
        }
        assert_eq!(seen, [true; 3]);
    }

    #[test]
    fn random_noise_is_reproducible_for_a_seed() {
        let code = encode(&make_input_state(&generic_coords())).unwrap();
        let spec =
            NoiseSpec::new(NoiseKind::RandomSingle(0.5), NoisePlacement::AfterC3not).unwrap();
        let a = inject_noise(&code, &spec, &mut rng(42)).unwrap();
        let b = inject_noise(&code, &spec, &mut rng(42)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn noise_spec_validates_parameters() {
        assert!(matches!(
            NoiseSpec::<f64>::new(NoiseKind::FlipQubit(3), NoisePlacement::AfterEncode),
            Err(SimError::OutOfRange { .. })
        ));
        assert!(matches!(
            NoiseSpec::new(NoiseKind::RandomSingle(1.5), NoisePlacement::AfterEncode),
            Err(SimError::OutOfRange { .. })
        ));
        assert!(matches!(
            NoiseSpec::new(NoiseKind::RandomSingle(f64::NAN), NoisePlacement::AfterEncode),
            Err(SimError::NonFinite(_))
        ));
    }

    #[test]
    fn clean_block_diagnoses_as_no_error() {
        let code = encode(&make_input_state(&generic_coords())).unwrap();
        let (recovered, syndrome) = diagnose_and_recover(&code, &mut rng(5)).unwrap();
        assert_eq!(syndrome, SyndromeOutcome { index: 0, affected_qubit: None });
        assert!(recovered.max_amplitude_deviation(&code).unwrap() < 1e-12);
    }

    #[test]
    fn each_single_flip_is_found_and_repaired() {
        let code = encode(&make_input_state(&generic_coords())).unwrap();
        for k in 0..3 {
            let spec =
                NoiseSpec::new(NoiseKind::FlipQubit(k), NoisePlacement::AfterEncode).unwrap();
            let (noisy, _) = inject_noise(&code, &spec, &mut rng(1)).unwrap();
            let (recovered, syndrome) = diagnose_and_recover(&noisy, &mut rng(2)).unwrap();
            assert_eq!(syndrome.index, k + 1);
            assert_eq!(syndrome.affected_qubit, Some(k));
            assert!(
                recovered.max_amplitude_deviation(&code).unwrap() < 1e-12,
                "flip on qubit {k} was not undone exactly"
            );
            assert!((recovered.fidelity(&code).unwrap() - 1.0).abs() < 1e-12);

            let (recovered_det, syndrome_det) =
                diagnose_and_recover_deterministic(&noisy).unwrap();
            assert_eq!(syndrome_det.index, k + 1);
            assert_eq!(recovered_det, recovered);
        }
    }

    #[test]
    fn recovery_works_on_the_five_qubit_state_too() {
        let code = encode(&make_input_state(&generic_coords())).unwrap();
        let wide = code.tensor(&Sv::basis_state(2, "00").unwrap()).unwrap();
        let spec = NoiseSpec::new(NoiseKind::FlipQubit(2), NoisePlacement::AfterC3not).unwrap();
        let (noisy, _) = inject_noise(&wide, &spec, &mut rng(0)).unwrap();
        let (recovered, syndrome) = diagnose_and_recover(&noisy, &mut rng(1)).unwrap();
        assert_eq!(syndrome.index, 3);
        assert!(recovered.max_amplitude_deviation(&wide).unwrap() < 1e-12);
    }

    #[test]
    fn double_flip_recovers_to_the_logical_flip() {
        let a = c(0.6, 0.0);
        let b = c(0.0, 0.8);
        let mut amps = vec![c(0.0, 0.0); 8];
        amps[0b000] = a;
        amps[0b111] = b;
        let code = Sv::from_amplitudes(3, amps).unwrap();

        let x = pauli_x();
        let hit = code.apply_1q(&x, 1).unwrap().apply_1q(&x, 2).unwrap();
        let (recovered, syndrome) = diagnose_and_recover(&hit, &mut rng(9)).unwrap();
        assert_eq!(syndrome.index, 1);

        let mut flipped = vec![c(0.0, 0.0); 8];
        flipped[0b111] = a;
        flipped[0b000] = b;
        let logical_flip = Sv::from_amplitudes(3, flipped).unwrap();
        assert!(recovered.max_amplitude_deviation(&logical_flip).unwrap() < 1e-12);
        assert!(recovered.fidelity(&code).unwrap() < 1e-12);
    }

    #[test]
    fn syndrome_outcome_prints_its_projector() {
        assert_eq!(SyndromeOutcome::from_index(3).to_string(), "P3");
        assert_eq!(SyndromeOutcome::from_index(0).affected_qubit, None);
    }
}

//! Dense state vector over a register of up to seven qubits.
//!
//! Qubit 0 is the leftmost symbol of a ket label and the most significant
//! bit of an amplitude index: |q0 q1 .. q_{n-1}> lives at index
//! sum q_k 2^{n-1-k}. Operations are pure; each returns a fresh state and
//! leaves the input untouched.

use std::fmt;

use num_complex::Complex;
use rand::Rng;

use crate::error::{SimError, SimResult};
use crate::gates::{GateMatrix2, Projector};
use crate::scalar::Scalar;

/// Dense storage cap. The protocol itself needs five qubits; two extra give
/// headroom for experiments without inviting exponential blowups.
pub const MAX_QUBITS: usize = 7;

/// Measurement outcome bits, ordered like the measured qubit list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bits(Vec<u8>);

impl Bits {
    pub fn new(bits: Vec<u8>) -> SimResult<Self> {
        if let Some(&bad) = bits.iter().find(|&&b| b > 1) {
            return Err(SimError::BitLabelSymbol((b'0' + bad) as char));
        }
        Ok(Self(bits))
    }

    /// Parses a label such as "0110".
    pub fn from_label(label: &str) -> SimResult<Self> {
        label
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(SimError::BitLabelSymbol(other)),
            })
            .collect::<SimResult<Vec<u8>>>()
            .map(Self)
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Index value of the bits read most significant first.
    pub fn as_index(&self) -> usize {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// One entry of an exhaustive measurement enumeration.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome<T: Scalar> {
    pub bits: Bits,
    pub probability: T,
    pub collapsed: StateVector<T>,
}

/// Normalized pure state of `num_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T: Scalar> {
    num_qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Scalar> StateVector<T> {
    /// Computational basis state labelled by `bits`, e.g. ("010", 3 qubits).
    pub fn basis_state(num_qubits: usize, bits: &str) -> SimResult<Self> {
        check_register_size(num_qubits)?;
        if bits.len() != num_qubits {
            return Err(SimError::BitLabelLength {
                expected: num_qubits,
                got: bits.len(),
            });
        }
        let index = Bits::from_label(bits)?.as_index();
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << num_qubits];
        amps[index] = Complex::new(T::one(), T::zero());
        Ok(Self { num_qubits, amps })
    }

    /// Wraps raw amplitudes, requiring finite entries and unit norm.
    pub fn from_amplitudes(num_qubits: usize, amps: Vec<Complex<T>>) -> SimResult<Self> {
        check_register_size(num_qubits)?;
        let expected = 1usize << num_qubits;
        if amps.len() != expected {
            return Err(SimError::AmplitudeCount {
                num_qubits,
                expected,
                got: amps.len(),
            });
        }
        for z in &amps {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(SimError::NonFinite("amplitude"));
            }
        }
        let state = Self { num_qubits, amps };
        let norm_sqr = state.norm_sqr();
        if (norm_sqr - T::one()).abs() > T::NORM_TOL {
            return Err(SimError::NotNormalized {
                norm_sqr: norm_sqr.to_f64_lossy(),
            });
        }
        Ok(state)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> T {
        self.amps
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    /// Kronecker product; `self` supplies the high-order qubits.
    pub fn tensor(&self, other: &Self) -> SimResult<Self> {
        let num_qubits = self.num_qubits + other.num_qubits;
        check_register_size(num_qubits)?;
        let mut amps = Vec::with_capacity(1 << num_qubits);
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(Self { num_qubits, amps })
    }

    /// Applies a single-qubit unitary to `target`.
    pub fn apply_1q(&self, gate: &GateMatrix2<T>, target: usize) -> SimResult<Self> {
        self.check_qubit(target)?;
        gate.ensure_unitary()?;
        let step = self.mask_of(target);
        let mut amps = self.amps.clone();
        for base in 0..self.amps.len() {
            if base & step == 0 {
                let paired = base | step;
                let lo = self.amps[base];
                let hi = self.amps[paired];
                amps[base] = gate.entry(0, 0) * lo + gate.entry(0, 1) * hi;
                amps[paired] = gate.entry(1, 0) * lo + gate.entry(1, 1) * hi;
            }
        }
        Ok(Self {
            num_qubits: self.num_qubits,
            amps,
        })
    }

    /// Applies `gate` to `target` on the branches where every control is 1.
    pub fn apply_controlled(
        &self,
        controls: &[usize],
        target: usize,
        gate: &GateMatrix2<T>,
    ) -> SimResult<Self> {
        self.check_qubit(target)?;
        let mut control_mask = 0usize;
        for &c in controls {
            self.check_qubit(c)?;
            if c == target {
                return Err(SimError::ControlTargetOverlap(c));
            }
            let bit = self.mask_of(c);
            if control_mask & bit != 0 {
                return Err(SimError::DuplicateQubit(c));
            }
            control_mask |= bit;
        }
        gate.ensure_unitary()?;
        let step = self.mask_of(target);
        let mut amps = self.amps.clone();
        for base in 0..self.amps.len() {
            if base & step == 0 && base & control_mask == control_mask {
                let paired = base | step;
                let lo = self.amps[base];
                let hi = self.amps[paired];
                amps[base] = gate.entry(0, 0) * lo + gate.entry(0, 1) * hi;
                amps[paired] = gate.entry(1, 0) * lo + gate.entry(1, 1) * hi;
            }
        }
        Ok(Self {
            num_qubits: self.num_qubits,
            amps,
        })
    }

    /// Measures the listed qubits in the computational basis.
    ///
    /// Returns the sampled bits (ordered like `targets`), the renormalized
    /// state of the remaining qubits with the measured ones removed, and the
    /// probability of the sampled outcome. At least one qubit must remain.
    pub fn measure_qubits<R: Rng + ?Sized>(
        &self,
        targets: &[usize],
        rng: &mut R,
    ) -> SimResult<(Bits, Self, T)> {
        let shifts = self.target_shifts(targets)?;
        if targets.len() == self.num_qubits {
            return Err(SimError::NothingLeftToKeep);
        }
        if targets.is_empty() {
            return Ok((Bits(Vec::new()), self.clone(), T::one()));
        }
        let probs = self.outcome_probabilities(&shifts);
        let outcome = sample_index(&probs, rng)?;
        let (collapsed, probability) = self.collapse_outcome(targets, &shifts, outcome)?;
        Ok((outcome_bits(outcome, targets.len()), collapsed, probability))
    }

    /// Lists every measurement outcome of the listed qubits with probability
    /// above the pruning tolerance, in ascending bit order.
    pub fn enumerate_outcomes(&self, targets: &[usize]) -> SimResult<Vec<Outcome<T>>> {
        let shifts = self.target_shifts(targets)?;
        if targets.len() == self.num_qubits {
            return Err(SimError::NothingLeftToKeep);
        }
        if targets.is_empty() {
            return Ok(vec![Outcome {
                bits: Bits(Vec::new()),
                probability: T::one(),
                collapsed: self.clone(),
            }]);
        }
        let probs = self.outcome_probabilities(&shifts);
        let mut outcomes = Vec::new();
        for (o, &p) in probs.iter().enumerate() {
            if p > T::PRUNE_TOL {
                let (collapsed, probability) = self.collapse_outcome(targets, &shifts, o)?;
                outcomes.push(Outcome {
                    bits: outcome_bits(o, targets.len()),
                    probability,
                    collapsed,
                });
            }
        }
        Ok(outcomes)
    }

    /// Projective measurement over a complete set of basis-aligned projectors
    /// acting on the leading block of qubits. Returns the sampled projector
    /// index, the renormalized post-measurement state (same qubit count), and
    /// the outcome probability.
    pub fn measure_projectors<R: Rng + ?Sized>(
        &self,
        projectors: &[Projector],
        rng: &mut R,
    ) -> SimResult<(usize, Self, T)> {
        let probs = self.projector_probabilities(projectors)?;
        let chosen = sample_index(&probs, rng)?;
        let (collapsed, probability) = self.collapse_projector(&projectors[chosen])?;
        Ok((chosen, collapsed, probability))
    }

    /// Like [`measure_projectors`](Self::measure_projectors) but only valid
    /// when one outcome already holds all the weight; no randomness is drawn.
    pub fn measure_projectors_deterministic(
        &self,
        projectors: &[Projector],
    ) -> SimResult<(usize, Self, T)> {
        let probs = self.projector_probabilities(projectors)?;
        let (best, &best_p) = probs
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).expect("finite probabilities"))
            .expect("projector list is nonempty");
        if (best_p - T::one()).abs() > T::NORM_TOL {
            return Err(SimError::NotDeterministic(best_p.to_f64_lossy()));
        }
        let (collapsed, probability) = self.collapse_projector(&projectors[best])?;
        Ok((best, collapsed, probability))
    }

    /// Squared overlap |<self|other>|^2.
    pub fn fidelity(&self, other: &Self) -> SimResult<T> {
        let inner = self.inner(other)?;
        Ok(inner.norm_sqr())
    }

    /// Inner product <self|other> with `self` conjugated.
    pub fn inner(&self, other: &Self) -> SimResult<Complex<T>> {
        self.check_same_size(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.conj() * b
            }))
    }

    /// Largest |a_i - b_i| over the amplitude vectors. Sensitive to global
    /// phase, unlike fidelity.
    pub fn max_amplitude_deviation(&self, other: &Self) -> SimResult<T> {
        self.check_same_size(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(T::zero(), |acc, (a, b)| acc.max((a - b).norm())))
    }

    fn mask_of(&self, qubit: usize) -> usize {
        1usize << (self.num_qubits - 1 - qubit)
    }

    fn check_qubit(&self, qubit: usize) -> SimResult<()> {
        if qubit >= self.num_qubits {
            return Err(SimError::QubitOutOfRange {
                qubit,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }

    fn check_same_size(&self, other: &Self) -> SimResult<()> {
        if self.num_qubits != other.num_qubits {
            return Err(SimError::QubitCountMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        Ok(())
    }

    /// Validates targets and returns their bit shifts, in target order.
    fn target_shifts(&self, targets: &[usize]) -> SimResult<Vec<usize>> {
        let mut seen = 0usize;
        let mut shifts = Vec::with_capacity(targets.len());
        for &t in targets {
            self.check_qubit(t)?;
            let bit = self.mask_of(t);
            if seen & bit != 0 {
                return Err(SimError::DuplicateQubit(t));
            }
            seen |= bit;
            shifts.push(self.num_qubits - 1 - t);
        }
        Ok(shifts)
    }

    fn outcome_of(&self, index: usize, shifts: &[usize]) -> usize {
        shifts
            .iter()
            .fold(0, |acc, &sh| (acc << 1) | ((index >> sh) & 1))
    }

    fn outcome_probabilities(&self, shifts: &[usize]) -> Vec<T> {
        let mut probs = vec![T::zero(); 1 << shifts.len()];
        for (i, amp) in self.amps.iter().enumerate() {
            probs[self.outcome_of(i, shifts)] = probs[self.outcome_of(i, shifts)] + amp.norm_sqr();
        }
        probs
    }

    /// Post-measurement state for one outcome, measured qubits removed.
    fn collapse_outcome(
        &self,
        targets: &[usize],
        shifts: &[usize],
        outcome: usize,
    ) -> SimResult<(Self, T)> {
        let kept_shifts: Vec<usize> = (0..self.num_qubits)
            .filter(|q| !targets.contains(q))
            .map(|q| self.num_qubits - 1 - q)
            .collect();
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << kept_shifts.len()];
        let mut total = T::zero();
        for (i, amp) in self.amps.iter().enumerate() {
            if self.outcome_of(i, shifts) == outcome {
                total = total + amp.norm_sqr();
                let j = kept_shifts
                    .iter()
                    .fold(0, |acc, &sh| (acc << 1) | ((i >> sh) & 1));
                amps[j] = *amp;
            }
        }
        if total <= T::zero() {
            return Err(SimError::ZeroNorm);
        }
        let scale = T::one() / total.sqrt();
        for z in &mut amps {
            *z = z.scale(scale);
        }
        Ok((
            Self {
                num_qubits: self.num_qubits - targets.len(),
                amps,
            },
            total,
        ))
    }

    /// Outcome probabilities of a complete projector set on the leading block.
    fn projector_probabilities(&self, projectors: &[Projector]) -> SimResult<Vec<T>> {
        let block = match projectors.first() {
            Some(p) => p.num_qubits(),
            None => return Err(SimError::ProjectorsIncomplete { num_qubits: 0 }),
        };
        if projectors.iter().any(|p| p.num_qubits() != block) {
            return Err(SimError::ProjectorsIncomplete { num_qubits: block });
        }
        if block > self.num_qubits {
            return Err(SimError::WrongQubitCount {
                expected: block,
                got: self.num_qubits,
            });
        }
        let dim = 1usize << block;
        let mut seen = vec![0u32; dim];
        for p in projectors {
            for &s in p.basis_states() {
                seen[s] += 1;
            }
        }
        if seen.iter().any(|&count| count != 1) {
            return Err(SimError::ProjectorsIncomplete { num_qubits: block });
        }
        let tail = self.num_qubits - block;
        let mut probs = vec![T::zero(); projectors.len()];
        for (i, amp) in self.amps.iter().enumerate() {
            let lead = i >> tail;
            let s = projectors
                .iter()
                .position(|p| p.contains(lead))
                .expect("partition covers every index");
            probs[s] = probs[s] + amp.norm_sqr();
        }
        Ok(probs)
    }

    fn collapse_projector(&self, projector: &Projector) -> SimResult<(Self, T)> {
        let tail = self.num_qubits - projector.num_qubits();
        let mut amps = self.amps.clone();
        let mut total = T::zero();
        for (i, z) in amps.iter_mut().enumerate() {
            if projector.contains(i >> tail) {
                total = total + z.norm_sqr();
            } else {
                *z = Complex::new(T::zero(), T::zero());
            }
        }
        if total <= T::zero() {
            return Err(SimError::ZeroNorm);
        }
        let scale = T::one() / total.sqrt();
        for z in &mut amps {
            *z = z.scale(scale);
        }
        Ok((
            Self {
                num_qubits: self.num_qubits,
                amps,
            },
            total,
        ))
    }
}

fn check_register_size(num_qubits: usize) -> SimResult<()> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(SimError::QubitCount {
            max: MAX_QUBITS,
            got: num_qubits,
        });
    }
    Ok(())
}

fn outcome_bits(outcome: usize, len: usize) -> Bits {
    let bits = (0..len)
        .map(|j| ((outcome >> (len - 1 - j)) & 1) as u8)
        .collect();
    Bits(bits)
}

/// Draws one index from an unnormalized distribution; the final positive bin
/// absorbs rounding slack so the draw always lands.
fn sample_index<T: Scalar, R: Rng + ?Sized>(probs: &[T], rng: &mut R) -> SimResult<usize> {
    let u = T::uniform(rng);
    let mut acc = T::zero();
    let mut last_positive = None;
    for (i, &p) in probs.iter().enumerate() {
        if p > T::zero() {
            acc = acc + p;
            last_positive = Some(i);
            if u < acc {
                return Ok(i);
            }
        }
    }
    last_positive.ok_or(SimError::ZeroNorm)
}

impl<T: Scalar> fmt::Display for StateVector<T> {
    /// Ket expansion with small terms suppressed, e.g.
    /// `0.7071|00> - 0.7071|11>`; complex amplitudes are parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, z) in self.amps.iter().enumerate() {
            if z.norm() <= T::NORM_TOL {
                continue;
            }
            let label = ket_label(i, self.num_qubits);
            let real = z.im.abs() <= T::NORM_TOL;
            if !first {
                // Negative real terms join with a minus instead of "+ -x".
                write!(f, "{}", if real && z.re < T::zero() { " - " } else { " + " })?;
            }
            if real {
                let re = if first { z.re } else { z.re.abs() };
                write!(f, "{:.4}|{}>", re, label)?;
            } else {
                write!(f, "({:.4}{:+.4}i)|{}>", z.re, z.im, label)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Bit label of a basis index, qubit 0 first.
pub fn ket_label(index: usize, num_qubits: usize) -> String {
    (0..num_qubits)
        .map(|q| {
            if index & (1 << (num_qubits - 1 - q)) != 0 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

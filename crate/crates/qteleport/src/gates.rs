//! Single-qubit gate catalog and basis-aligned projectors.
//!
//! Matrices are row-major over the ordered basis (|0>, |1>). Projectors are
//! stored as the set of basis indices they keep, which is cheaper to apply
//! than a dense matrix and exact by construction; the dense form remains
//! available for cross-checks.

use num_complex::Complex;

use crate::error::{SimError, SimResult};
use crate::scalar::Scalar;

/// 2x2 complex matrix acting on one qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GateMatrix2<T: Scalar> {
    rows: [[Complex<T>; 2]; 2],
}

impl<T: Scalar> GateMatrix2<T> {
    /// Builds a gate from row-major entries, rejecting non-finite values.
    /// Unitarity is not enforced here; application sites check it.
    pub fn new(rows: [[Complex<T>; 2]; 2]) -> SimResult<Self> {
        for row in &rows {
            for z in row {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(SimError::NonFinite("gate entry"));
                }
            }
        }
        Ok(Self { rows })
    }

    fn from_rows(rows: [[Complex<T>; 2]; 2]) -> Self {
        Self { rows }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.rows[row][col]
    }

    pub fn rows(&self) -> &[[Complex<T>; 2]; 2] {
        &self.rows
    }

    pub fn adjoint(&self) -> Self {
        Self::from_rows([
            [self.rows[0][0].conj(), self.rows[1][0].conj()],
            [self.rows[0][1].conj(), self.rows[1][1].conj()],
        ])
    }

    /// Matrix product `self * rhs` (rhs acts first).
    pub fn compose(&self, rhs: &Self) -> Self {
        let mut out = [[Complex::new(T::zero(), T::zero()); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.rows[i][0] * rhs.rows[0][j] + self.rows[i][1] * rhs.rows[1][j];
            }
        }
        Self::from_rows(out)
    }

    pub fn neg(&self) -> Self {
        Self::from_rows(self.rows.map(|row| row.map(|z| -z)))
    }

    /// Largest entry of |U'U - I|, the distance from unitarity.
    pub fn unitarity_deviation(&self) -> T {
        let prod = self.adjoint().compose(self);
        let mut worst = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { T::one() } else { T::zero() };
                let diff = prod.rows[i][j] - Complex::new(expect, T::zero());
                worst = worst.max(diff.norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        self.unitarity_deviation() <= tol
    }

    pub(crate) fn ensure_unitary(&self) -> SimResult<()> {
        let deviation = self.unitarity_deviation();
        if deviation <= T::NORM_TOL {
            Ok(())
        } else {
            Err(SimError::NonUnitaryGate {
                deviation: deviation.to_f64_lossy(),
            })
        }
    }

    /// Largest entrywise distance to another gate.
    pub fn max_entry_deviation(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.rows[i][j] - other.rows[i][j]).norm());
            }
        }
        worst
    }
}

fn re<T: Scalar>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

pub fn identity<T: Scalar>() -> GateMatrix2<T> {
    GateMatrix2::from_rows([
        [re(T::one()), re(T::zero())],
        [re(T::zero()), re(T::one())],
    ])
}

pub fn pauli_x<T: Scalar>() -> GateMatrix2<T> {
    GateMatrix2::from_rows([
        [re(T::zero()), re(T::one())],
        [re(T::one()), re(T::zero())],
    ])
}

pub fn pauli_y<T: Scalar>() -> GateMatrix2<T> {
    let i = Complex::new(T::zero(), T::one());
    GateMatrix2::from_rows([[re(T::zero()), -i], [i, re(T::zero())]])
}

pub fn pauli_z<T: Scalar>() -> GateMatrix2<T> {
    GateMatrix2::from_rows([
        [re(T::one()), re(T::zero())],
        [re(T::zero()), re(-T::one())],
    ])
}

pub fn hadamard<T: Scalar>() -> GateMatrix2<T> {
    let s = T::FRAC_1_SQRT_2();
    GateMatrix2::from_rows([[re(s), re(s)], [re(s), re(-s)]])
}

fn half<T: Scalar>(theta: T) -> SimResult<(T, T)> {
    if !theta.is_finite() {
        return Err(SimError::NonFinite("rotation angle"));
    }
    let h = theta / T::real(2.0);
    Ok((h.cos(), h.sin()))
}

/// Rotation about the x axis: cos(t/2) on the diagonal, -i sin(t/2) off it.
pub fn rot_x<T: Scalar>(theta: T) -> SimResult<GateMatrix2<T>> {
    let (c, s) = half(theta)?;
    let off = Complex::new(T::zero(), -s);
    Ok(GateMatrix2::from_rows([[re(c), off], [off, re(c)]]))
}

/// Rotation about the y axis, real-valued.
pub fn rot_y<T: Scalar>(theta: T) -> SimResult<GateMatrix2<T>> {
    let (c, s) = half(theta)?;
    Ok(GateMatrix2::from_rows([[re(c), re(-s)], [re(s), re(c)]]))
}

/// Rotation about the z axis: diag(e^{-it/2}, e^{+it/2}).
pub fn rot_z<T: Scalar>(theta: T) -> SimResult<GateMatrix2<T>> {
    let (c, s) = half(theta)?;
    Ok(GateMatrix2::from_rows([
        [Complex::new(c, -s), re(T::zero())],
        [re(T::zero()), Complex::new(c, s)],
    ]))
}

/// Global phase e^{i delta} times the identity. Physically unobservable in
/// isolation but kept explicit so state reconstructions come out exact.
pub fn phase_global<T: Scalar>(delta: T) -> SimResult<GateMatrix2<T>> {
    if !delta.is_finite() {
        return Err(SimError::NonFinite("phase angle"));
    }
    let ph = Complex::new(delta.cos(), delta.sin());
    Ok(GateMatrix2::from_rows([
        [ph, re(T::zero())],
        [re(T::zero()), ph],
    ]))
}

/// Projector onto a set of computational basis states of a k-qubit block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projector {
    num_qubits: usize,
    basis_states: Vec<usize>,
}

impl Projector {
    /// Keeps the listed basis indices of a `num_qubits` block. Indices are
    /// deduplicated and sorted.
    pub fn new(num_qubits: usize, mut basis_states: Vec<usize>) -> SimResult<Self> {
        if num_qubits == 0 || num_qubits > crate::statevector::MAX_QUBITS {
            return Err(SimError::QubitCount {
                max: crate::statevector::MAX_QUBITS,
                got: num_qubits,
            });
        }
        let dim = 1usize << num_qubits;
        for &s in &basis_states {
            if s >= dim {
                return Err(SimError::OutOfRange {
                    name: "basis state index",
                    value: s as f64,
                    range: "[0, 2^k)",
                });
            }
        }
        basis_states.sort_unstable();
        basis_states.dedup();
        Ok(Self {
            num_qubits,
            basis_states,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn basis_states(&self) -> &[usize] {
        &self.basis_states
    }

    pub fn contains(&self, index: usize) -> bool {
        self.basis_states.binary_search(&index).is_ok()
    }

    /// Dense row-major matrix of the projector, for cross-checks.
    pub fn matrix<T: Scalar>(&self) -> Vec<Complex<T>> {
        let dim = 1usize << self.num_qubits;
        let mut m = vec![Complex::new(T::zero(), T::zero()); dim * dim];
        for &s in &self.basis_states {
            m[s * dim + s] = Complex::new(T::one(), T::zero());
        }
        m
    }
}

/// The four syndrome projectors of the three-qubit bit-flip code, in order:
/// no error, then a flip on qubit 0, 1, 2. Each keeps the codeword pair with
/// the corresponding flip applied.
pub fn syndrome_projectors() -> [Projector; 4] {
    let pair = |a, b| Projector::new(3, vec![a, b]).expect("static projector data");
    [
        pair(0b000, 0b111),
        pair(0b100, 0b011),
        pair(0b010, 0b101),
        pair(0b001, 0b110),
    ]
}

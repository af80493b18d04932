//! Shared oracles for the integration suites.
//!
//! Everything here is built by hand with string bit math and transcribed
//! lookup tables, independent of the library's gate kernels, so the tests
//! cross-check two derivations instead of exercising one code path twice.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const NORM_TOL: f64 = 1e-10;
pub const STAGE_TOL: f64 = 1e-12;

pub fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Basis index of a ket label; leftmost symbol is qubit 0 and most significant.
pub fn idx(bits: &str) -> usize {
    usize::from_str_radix(bits, 2).expect("binary ket label")
}

/// Amplitude pair (a, b) of the Bloch input a|0> + b|1>.
pub fn input_pair(theta: f64, phi: f64) -> (Complex64, Complex64) {
    let a = Complex64::new((theta / 2.0).cos(), 0.0);
    let b = Complex64::from_polar((theta / 2.0).sin(), phi);
    (a, b)
}

/// Five-qubit state right after the encoded block joins the channel pair:
/// (a|000> + b|111>) tensored with (|00> + |11>)/sqrt(2).
pub fn closed_form_assembled(theta: f64, phi: f64) -> Vec<Complex64> {
    let (a, b) = input_pair(theta, phi);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = vec![zero(); 32];
    v[idx("00000")] = a * s;
    v[idx("00011")] = a * s;
    v[idx("11100")] = b * s;
    v[idx("11111")] = b * s;
    v
}

/// Same state after the triply controlled NOT onto qubit 3: the b branch's
/// channel pair flips to (|10> + |01>)/sqrt(2).
pub fn closed_form_after_c3not(theta: f64, phi: f64) -> Vec<Complex64> {
    let (a, b) = input_pair(theta, phi);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = vec![zero(); 32];
    v[idx("00000")] = a * s;
    v[idx("00011")] = a * s;
    v[idx("11110")] = b * s;
    v[idx("11101")] = b * s;
    v
}

/// Residual coefficient pattern on the receiver qubit for each 4-bit outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coef {
    A,
    B,
    MinusB,
}

impl Coef {
    pub fn eval(self, a: Complex64, b: Complex64) -> Complex64 {
        match self {
            Coef::A => a,
            Coef::B => b,
            Coef::MinusB => -b,
        }
    }
}

/// Row m holds the (|0> coefficient, |1> coefficient) of the receiver qubit
/// after the senders observe the 4-bit string m. Transcribed row by row.
pub const RESIDUAL_TABLE: [(Coef, Coef); 16] = [
    (Coef::A, Coef::B),      // 0000
    (Coef::B, Coef::A),      // 0001
    (Coef::A, Coef::MinusB), // 0010
    (Coef::MinusB, Coef::A), // 0011
    (Coef::A, Coef::MinusB), // 0100
    (Coef::MinusB, Coef::A), // 0101
    (Coef::A, Coef::B),      // 0110
    (Coef::B, Coef::A),      // 0111
    (Coef::A, Coef::MinusB), // 1000
    (Coef::MinusB, Coef::A), // 1001
    (Coef::A, Coef::B),      // 1010
    (Coef::B, Coef::A),      // 1011
    (Coef::A, Coef::B),      // 1100
    (Coef::B, Coef::A),      // 1101
    (Coef::A, Coef::MinusB), // 1110
    (Coef::MinusB, Coef::A), // 1111
];

/// Five-qubit state after the interference stage, rebuilt from the residual
/// table with the 1/4 prefactor: sum over m of (1/4)|m>(c0|0> + c1|1>).
pub fn closed_form_after_hadamard(theta: f64, phi: f64) -> Vec<Complex64> {
    let (a, b) = input_pair(theta, phi);
    let mut v = vec![zero(); 32];
    for (m, (c0, c1)) in RESIDUAL_TABLE.iter().enumerate() {
        v[2 * m] = c0.eval(a, b) * 0.25;
        v[2 * m + 1] = c1.eval(a, b) * 0.25;
    }
    v
}

/// Correction exponents (x, z) for each 4-bit message, transcribed verbatim
/// from the 16-row outcome table: Z^z X^x with X applied first.
pub const CORRECTION_TABLE: [(bool, bool); 16] = [
    (false, false), // 0000
    (true, false),  // 0001
    (false, true),  // 0010
    (true, true),   // 0011
    (false, true),  // 0100
    (true, true),   // 0101
    (false, false), // 0110
    (true, false),  // 0111
    (false, true),  // 1000
    (true, true),   // 1001
    (false, false), // 1010
    (true, false),  // 1011
    (false, false), // 1100
    (true, false),  // 1101
    (false, true),  // 1110
    (true, true),   // 1111
];

/// Basis label pairs spanned by the four syndrome projectors, in projector
/// order: no error, then a flip on qubit 0, 1, 2.
pub const SYNDROME_PAIRS: [[&str; 2]; 4] = [
    ["000", "111"],
    ["100", "011"],
    ["010", "101"],
    ["001", "110"],
];

/// Index of the projector whose pair equals {p, q}, order-insensitive.
pub fn syndrome_of(p: &str, q: &str) -> Option<usize> {
    SYNDROME_PAIRS
        .iter()
        .position(|pair| (pair[0] == p && pair[1] == q) || (pair[0] == q && pair[1] == p))
}

/// Flip one character of a bit label.
pub fn flip_label(bits: &str, k: usize) -> String {
    bits.chars()
        .enumerate()
        .map(|(i, c)| if i == k { if c == '0' { '1' } else { '0' } } else { c })
        .collect()
}

pub fn max_amp_diff(actual: &[Complex64], expected: &[Complex64]) -> f64 {
    assert_eq!(actual.len(), expected.len(), "amplitude vector lengths differ");
    actual
        .iter()
        .zip(expected)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn assert_amps_close(actual: &[Complex64], expected: &[Complex64], tol: f64, ctx: &str) {
    let diff = max_amp_diff(actual, expected);
    assert!(diff <= tol, "{ctx}: max amplitude deviation {diff:e} exceeds {tol:e}");
}

/// Uniform Bloch angles; theta in [0, pi], phi in [0, 2 pi).
pub fn random_angles(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let theta = rng.gen::<f64>() * std::f64::consts::PI;
    let phi = rng.gen::<f64>() * std::f64::consts::TAU;
    (theta, phi)
}

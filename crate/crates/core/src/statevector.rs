//! Dense statevector with the gate kernels the adiabatic circuit needs.
//!
//! Qubit `q` is bit `q` of the basis index. Gate conventions:
//! `R_X(theta) = exp(-i theta/2 X)` and `R_ZZ(theta) = exp(-i theta/2 Z Z)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonian::check_dense_budget;

const NORM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Uniform superposition `H^{(x)n} |0...0>`.
    pub fn plus_state(n: usize) -> Result<Self> {
        check_dense_budget(n)?;
        let dim = 1usize << n;
        let amp = Complex64::new((dim as f64).sqrt().recip(), 0.0);
        Ok(Self {
            n_qubits: n,
            amplitudes: vec![amp; dim],
        })
    }

    pub fn basis_state(n: usize, index: usize) -> Result<Self> {
        check_dense_budget(n)?;
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for {n} qubits"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits: n,
            amplitudes,
        })
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        if !dim.is_power_of_two() || dim < 2 {
            return Err(Error::InvalidArgument(format!(
                "amplitude count {dim} is not a power of two >= 2"
            )));
        }
        let n_qubits = dim.trailing_zeros() as usize;
        check_dense_budget(n_qubits)?;
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// L2 distance minimized over a global phase: `sqrt(2 - 2 |<a|b>|)` for
    /// normalized inputs.
    pub fn phase_invariant_distance(&self, other: &StateVector) -> f64 {
        let overlap = self.inner(other).norm();
        (self.norm_sqr() + other.norm_sqr() - 2.0 * overlap)
            .max(0.0)
            .sqrt()
    }

    pub(crate) fn check_normalized(&self) -> Result<()> {
        let norm_sqr = self.norm_sqr();
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(())
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits {
            return Err(Error::QubitOutOfRange {
                index: q,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }

    pub fn apply_rx(&mut self, q: usize, theta: f64) -> Result<()> {
        self.check_qubit(q)?;
        self.rx_unchecked(q, theta);
        Ok(())
    }

    pub(crate) fn rx_unchecked(&mut self, q: usize, theta: f64) {
        let (sin, cos) = (0.5 * theta).sin_cos();
        let c = Complex64::new(cos, 0.0);
        let mis = Complex64::new(0.0, -sin);
        let stride = 1usize << q;
        for block in self.amplitudes.chunks_exact_mut(stride << 1) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a0, a1) in lo.iter_mut().zip(hi) {
                let (x0, x1) = (*a0, *a1);
                *a0 = c * x0 + mis * x1;
                *a1 = mis * x0 + c * x1;
            }
        }
    }

    pub fn apply_rzz(&mut self, i: usize, j: usize, theta: f64) -> Result<()> {
        self.check_qubit(i)?;
        self.check_qubit(j)?;
        if i == j {
            return Err(Error::RepeatedQubit(i));
        }
        self.rzz_unchecked(i, j, theta);
        Ok(())
    }

    pub(crate) fn rzz_unchecked(&mut self, i: usize, j: usize, theta: f64) {
        let same = Complex64::from_polar(1.0, -0.5 * theta);
        let differ = same.conj();
        for (v, a) in self.amplitudes.iter_mut().enumerate() {
            if ((v >> i) ^ (v >> j)) & 1 == 0 {
                *a *= same;
            } else {
                *a *= differ;
            }
        }
    }

    pub fn apply_pauli(&mut self, q: usize, p: Pauli) -> Result<()> {
        self.check_qubit(q)?;
        self.pauli_unchecked(q, p);
        Ok(())
    }

    pub(crate) fn pauli_unchecked(&mut self, q: usize, p: Pauli) {
        let stride = 1usize << q;
        match p {
            Pauli::I => {}
            Pauli::X => {
                for block in self.amplitudes.chunks_exact_mut(stride << 1) {
                    let (lo, hi) = block.split_at_mut(stride);
                    lo.swap_with_slice(hi);
                }
            }
            Pauli::Y => {
                // Y|0> = i|1>, Y|1> = -i|0>
                let i = Complex64::new(0.0, 1.0);
                for block in self.amplitudes.chunks_exact_mut(stride << 1) {
                    let (lo, hi) = block.split_at_mut(stride);
                    for (a0, a1) in lo.iter_mut().zip(hi) {
                        let (x0, x1) = (*a0, *a1);
                        *a0 = -i * x1;
                        *a1 = i * x0;
                    }
                }
            }
            Pauli::Z => {
                for block in self.amplitudes.chunks_exact_mut(stride << 1) {
                    for a in &mut block[stride..] {
                        *a = -*a;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn plus_state_amplitudes() {
        let s1 = StateVector::plus_state(1).unwrap();
        let r = 0.5f64.sqrt();
        assert!(close(s1.amplitudes(), &[c(r, 0.0), c(r, 0.0)], 1e-15));
        let s2 = StateVector::plus_state(2).unwrap();
        assert!(s2
            .amplitudes()
            .iter()
            .all(|a| (a - c(0.5, 0.0)).norm() < 1e-15));
        for n in 1..=10 {
            assert!((StateVector::plus_state(n).unwrap().norm_sqr() - 1.0).abs() < 1e-12);
        }
        assert!(matches!(
            StateVector::plus_state(15),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn rx_examples() {
        let mut s = StateVector::plus_state(2).unwrap();
        let before = s.clone();
        s.apply_rx(1, 0.0).unwrap();
        assert_eq!(s, before);

        let mut zero = StateVector::basis_state(1, 0).unwrap();
        zero.apply_rx(0, PI).unwrap();
        assert!(close(
            zero.amplitudes(),
            &[c(0.0, 0.0), c(0.0, -1.0)],
            1e-15
        ));

        let mut s = StateVector::plus_state(3).unwrap();
        s.apply_rx(2, 0.9).unwrap();
        let before = s.clone();
        s.apply_rx(2, 2.0 * PI).unwrap();
        let negated: Vec<_> = before.amplitudes().iter().map(|a| -a).collect();
        assert!(close(s.amplitudes(), &negated, 1e-14));

        assert!(matches!(
            StateVector::plus_state(2).unwrap().apply_rx(2, 0.1),
            Err(Error::QubitOutOfRange {
                index: 2,
                n_qubits: 2
            })
        ));
    }

    #[test]
    fn rzz_examples() {
        let mut s = StateVector::plus_state(2).unwrap();
        let before = s.clone();
        s.apply_rzz(0, 1, 0.0).unwrap();
        assert_eq!(s, before);

        let gamma = 0.3;
        let mut s = StateVector::basis_state(2, 0b01).unwrap();
        s.apply_rzz(0, 1, -2.0 * gamma).unwrap();
        assert!((s.amplitudes()[1] - Complex64::from_polar(1.0, -gamma)).norm() < 1e-15);

        let mut s = StateVector::plus_state(3).unwrap();
        s.apply_rx(0, 0.7).unwrap();
        let p = s.probabilities();
        s.apply_rzz(0, 2, 1.234).unwrap();
        for (a, b) in p.iter().zip(s.probabilities()) {
            assert!((a - b).abs() < 1e-15);
        }

        let mut s = StateVector::plus_state(2).unwrap();
        assert!(matches!(
            s.apply_rzz(1, 1, 0.1),
            Err(Error::RepeatedQubit(1))
        ));
        assert!(s.apply_rzz(0, 5, 0.1).is_err());
    }

    /// Dense matrix of `op` acting on qubit `q` (or the pair) of an `n`-qubit register,
    /// built from Kronecker products.
    fn embed_one(n: usize, q: usize, op: [[Complex64; 2]; 2]) -> ComplexMatrix {
        let dim = 1 << n;
        let mut m = ComplexMatrix::zeros(dim);
        for row in 0..dim {
            for col in 0..dim {
                if (row ^ col) & !(1 << q) != 0 {
                    continue;
                }
                m[(row, col)] = op[(row >> q) & 1][(col >> q) & 1];
            }
        }
        m
    }

    fn apply_to_basis(n: usize, f: impl Fn(&mut StateVector)) -> ComplexMatrix {
        let cols: Vec<Vec<Complex64>> = (0..1 << n)
            .map(|v| {
                let mut s = StateVector::basis_state(n, v).unwrap();
                f(&mut s);
                s.into_amplitudes()
            })
            .collect();
        ComplexMatrix::from_columns(&cols)
    }

    #[test]
    fn gate_matrices_match_dense_construction() {
        for n in 1..=3 {
            for q in 0..n {
                for &theta in &[0.0, 0.4, -1.3, PI, 2.9] {
                    let (s, co) = (0.5f64 * theta).sin_cos();
                    let rx = [[c(co, 0.0), c(0.0, -s)], [c(0.0, -s), c(co, 0.0)]];
                    let expected = embed_one(n, q, rx);
                    let got = apply_to_basis(n, |sv| sv.apply_rx(q, theta).unwrap());
                    assert!(got.max_abs_diff(&expected) <= 1e-12);
                }
            }
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let theta = 0.83;
                    let dim = 1 << n;
                    let mut expected = ComplexMatrix::zeros(dim);
                    for v in 0..dim {
                        let zz = if ((v >> i) ^ (v >> j)) & 1 == 0 {
                            1.0
                        } else {
                            -1.0
                        };
                        expected[(v, v)] = Complex64::from_polar(1.0, -0.5 * theta * zz);
                    }
                    let got = apply_to_basis(n, |sv| sv.apply_rzz(i, j, theta).unwrap());
                    assert!(got.max_abs_diff(&expected) <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn pauli_matrices() {
        let x = [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]];
        let y = [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]];
        let z = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]];
        for (p, m) in [(Pauli::X, x), (Pauli::Y, y), (Pauli::Z, z)] {
            for q in 0..3 {
                let got = apply_to_basis(3, |sv| sv.apply_pauli(q, p).unwrap());
                assert!(got.max_abs_diff(&embed_one(3, q, m)) == 0.0, "{p:?} on {q}");
            }
        }
        let id = apply_to_basis(2, |sv| sv.apply_pauli(1, Pauli::I).unwrap());
        assert_eq!(id, ComplexMatrix::identity(4));
    }

    #[test]
    fn distance_ignores_global_phase() {
        let a = StateVector::plus_state(3).unwrap();
        let b = StateVector::from_amplitudes(
            a.amplitudes()
                .iter()
                .map(|x| x * Complex64::from_polar(1.0, 1.1))
                .collect(),
        )
        .unwrap();
        assert!(a.phase_invariant_distance(&b) < 1e-7);
        let e = StateVector::basis_state(3, 0).unwrap();
        let f = StateVector::basis_state(3, 1).unwrap();
        assert!((e.phase_invariant_distance(&f) - 2f64.sqrt()).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn gates_preserve_norm(
            n in 1usize..6,
            ops in proptest::collection::vec((0usize..6, 0usize..6, -7.0f64..7.0, any::<bool>()), 0..60),
        ) {
            let mut s = StateVector::plus_state(n).unwrap();
            for (a, b, theta, two) in ops {
                let (a, b) = (a % n, b % n);
                if two && a != b {
                    s.apply_rzz(a, b, theta).unwrap();
                } else {
                    s.apply_rx(a, theta).unwrap();
                }
            }
            prop_assert!((s.norm_sqr() - 1.0).abs() <= 1e-9);
        }
    }
}

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::evolution::TrotterSchedule;
use crate::graph::Graph;
use crate::linalg::{cluster_sorted, jacobi_hermitian, ComplexMatrix};
use crate::statevector::StateVector;

/// Largest qubit count for which the full Trotter unitary is assembled.
pub const MAX_UNITARY_QUBITS: usize = 10;

const UNITARITY_TOLERANCE: f64 = 1e-8;
const PHASE_CLUSTER_TOLERANCE: f64 = 1e-8;

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_phase(phi: f64) -> f64 {
    let mut x = phi.rem_euclid(2.0 * PI);
    if x > PI {
        x -= 2.0 * PI;
    }
    if x <= -PI {
        x += 2.0 * PI;
    }
    x
}

/// Shortest signed angular distance from `from` to `to`.
pub fn phase_delta(from: f64, to: f64) -> f64 {
    wrap_phase(to - from)
}

/// Fixed-`s` product of `n_steps` gate layers: `R_X(2 (1-s) dt)` on every
/// qubit, then `R_ZZ(-2 s dt)` on every edge. Column `v` is the image of `|v>`.
///
/// The `R_ZZ` gates contribute a global phase `exp(i s t |E|)` on top of
/// `exp(i t [(1-s) H_M + 2 s H_MC])`.
pub fn trotter_unitary(g: &Graph, s: f64, sched: TrotterSchedule) -> Result<ComplexMatrix> {
    let n = g.n_vertices();
    if n > MAX_UNITARY_QUBITS {
        return Err(Error::Budget {
            what: "qubits for dense unitaries",
            requested: n,
            limit: MAX_UNITARY_QUBITS,
        });
    }
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::InvalidArgument(format!("s = {s} outside [0, 1]")));
    }
    let beta = (1.0 - s) * sched.dt();
    let gamma = s * sched.dt();
    let columns: Vec<Vec<Complex64>> = (0..1usize << n)
        .map(|v| {
            let mut sv = StateVector::basis_state(n, v)?;
            for _ in 0..sched.n_steps() {
                for q in 0..n {
                    sv.rx_unchecked(q, 2.0 * beta);
                }
                for &(i, j) in g.edges() {
                    sv.rzz_unchecked(i, j, -2.0 * gamma);
                }
            }
            Ok(sv.into_amplitudes())
        })
        .collect::<Result<_>>()?;
    Ok(ComplexMatrix::from_columns(&columns))
}

/// Global phase the `R_ZZ` convention adds to [`trotter_unitary`] relative to
/// `exp(i t [(1-s) H_M + 2 s H_MC])`.
pub fn rzz_global_phase(g: &Graph, s: f64, t: f64) -> f64 {
    s * t * g.n_edges() as f64
}

#[derive(Debug, Clone)]
pub struct UnitaryEigen {
    /// Ascending in `(-pi, pi]`.
    pub phases: Vec<f64>,
    /// Orthonormal eigenvectors as columns, matching `phases`.
    pub vectors: ComplexMatrix,
}

/// Eigen-decomposition of a unitary matrix.
///
/// Uses normality: the Hermitian part `(U + U^dag)/2` is diagonalized first
/// (eigenvalues `cos phi`), then inside every cluster of equal `cos phi` the
/// Hermitian matrix `(U - U^dag)/2i` (eigenvalues `sin phi`) separates the
/// `e^{i phi}` / `e^{-i phi}` pairs. Final phases are `arg <w|U|w>`.
pub fn unitary_eigen(u: &ComplexMatrix) -> Result<UnitaryEigen> {
    let deviation = u.unitarity_deviation();
    if deviation > UNITARITY_TOLERANCE {
        return Err(Error::NotUnitary { deviation });
    }
    let dim = u.dim();
    let ud = u.adjoint();
    let mut cos_part = ComplexMatrix::zeros(dim);
    let mut sin_part = ComplexMatrix::zeros(dim);
    let half = Complex64::new(0.5, 0.0);
    let half_over_i = Complex64::new(0.0, -0.5);
    for i in 0..dim {
        for j in 0..dim {
            cos_part[(i, j)] = (u[(i, j)] + ud[(i, j)]) * half;
            sin_part[(i, j)] = (u[(i, j)] - ud[(i, j)]) * half_over_i;
        }
    }
    let (cos_values, basis) = jacobi_hermitian(&cos_part, true)?;
    let basis = basis.expect("vectors requested");

    let mut pairs: Vec<(f64, Vec<Complex64>)> = Vec::with_capacity(dim);
    for range in cluster_sorted(&cos_values, PHASE_CLUSTER_TOLERANCE) {
        let cols: Vec<Vec<Complex64>> = range.clone().map(|k| basis.column(k)).collect();
        let vectors = if cols.len() == 1 {
            cols
        } else {
            // Restrict the sine part to the cluster and rotate within it.
            let m = cols.len();
            let images: Vec<Vec<Complex64>> = cols.iter().map(|c| sin_part.mul_vec(c)).collect();
            let mut restricted = ComplexMatrix::zeros(m);
            for a in 0..m {
                for b in 0..m {
                    restricted[(a, b)] = dot(&cols[a], &images[b]);
                }
            }
            let (_, rot) = jacobi_hermitian(&hermitize(restricted), true)?;
            let rot = rot.expect("vectors requested");
            (0..m)
                .map(|b| {
                    let mut w = vec![Complex64::new(0.0, 0.0); dim];
                    for (a, col) in cols.iter().enumerate() {
                        let r = rot[(a, b)];
                        for (wi, ci) in w.iter_mut().zip(col) {
                            *wi += ci * r;
                        }
                    }
                    w
                })
                .collect()
        };
        for w in vectors {
            let phase = wrap_phase(dot(&w, &u.mul_vec(&w)).arg());
            pairs.push((phase, w));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let phases = pairs.iter().map(|p| p.0).collect();
    let vectors = ComplexMatrix::from_columns(&pairs.into_iter().map(|p| p.1).collect::<Vec<_>>());
    Ok(UnitaryEigen { phases, vectors })
}

/// Sorted eigenvalue angles of a unitary, in `(-pi, pi]`.
pub fn eigenphases(u: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(unitary_eigen(u)?.phases)
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn hermitize(mut m: ComplexMatrix) -> ComplexMatrix {
    let n = m.dim();
    for i in 0..n {
        m[(i, i)].im = 0.0;
        for j in 0..i {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
    }
    m
}

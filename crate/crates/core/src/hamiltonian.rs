//! Problem, mixer and interpolated Hamiltonians in the computational basis,
//! plus the exact-diagonalization oracle.
//!
//! The problem Hamiltonian is diagonal with entry `-C(v)` on basis state `v`.
//! The mixer is `-sum_i X_i`, i.e. `-1` between basis states at Hamming
//! distance one. Both are real, so every `H(s)` is real symmetric.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{cluster_sorted, jacobi_symmetric, ComplexMatrix, RealMatrix};

/// Largest qubit count for which dense `2^n x 2^n` matrices are built.
pub const MAX_DENSE_QUBITS: usize = 14;

/// Eigenvalues closer than this are treated as one degenerate level.
pub const DEGENERACY_TOLERANCE: f64 = 1e-8;

/// Scale of the problem term that matches circuits built from `R_ZZ(-2 gamma)`
/// gates, which advance each edge phase twice as fast as `H_MC` itself.
pub const DEFAULT_ZZ_FACTOR: f64 = 2.0;

pub(crate) fn check_dense_budget(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "qubit count must be at least 1".into(),
        ));
    }
    if n > MAX_DENSE_QUBITS {
        return Err(Error::Budget {
            what: "qubits for dense matrices",
            requested: n,
            limit: MAX_DENSE_QUBITS,
        });
    }
    Ok(())
}

/// Diagonal of the Max-Cut Hamiltonian: `diag[v] = -C(v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalProblem {
    n_qubits: usize,
    diag: Vec<f64>,
}

impl DiagonalProblem {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn values(&self) -> &[f64] {
        &self.diag
    }

    pub fn to_matrix(&self) -> DenseHermitian {
        DenseHermitian(RealMatrix::from_diagonal(&self.diag))
    }
}

pub fn build_problem_diagonal(g: &Graph) -> Result<DiagonalProblem> {
    let n = g.n_vertices();
    check_dense_budget(n)?;
    let diag = (0..1u64 << n).map(|v| -(g.cut_of_word(v) as f64)).collect();
    Ok(DiagonalProblem { n_qubits: n, diag })
}

/// Real symmetric matrix standing in for a Hermitian operator in the
/// computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseHermitian(RealMatrix);

impl DenseHermitian {
    /// Wraps a symmetric matrix; rejects anything that is not exactly symmetric.
    pub fn new(m: RealMatrix) -> Result<Self> {
        if !m.dim().is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "dimension {} is not a power of two",
                m.dim()
            )));
        }
        if !m.is_symmetric() {
            return Err(Error::InvalidArgument("matrix is not symmetric".into()));
        }
        Ok(Self(m))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }
}

/// `-sum_i X_i` on `n` qubits.
pub fn build_mixer(n: usize) -> Result<DenseHermitian> {
    check_dense_budget(n)?;
    let dim = 1usize << n;
    let mut m = RealMatrix::zeros(dim);
    for v in 0..dim {
        for q in 0..n {
            m[(v, v ^ (1 << q))] = -1.0;
        }
    }
    Ok(DenseHermitian(m))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpolationParams {
    s: f64,
    zz_factor: f64,
}

impl InterpolationParams {
    pub fn new(s: f64, zz_factor: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::InvalidArgument(format!("s = {s} outside [0, 1]")));
        }
        if !(zz_factor > 0.0 && zz_factor.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "zz_factor = {zz_factor} must be positive"
            )));
        }
        Ok(Self { s, zz_factor })
    }

    /// Interpolation point with the default problem scale.
    pub fn at(s: f64) -> Result<Self> {
        Self::new(s, DEFAULT_ZZ_FACTOR)
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn zz_factor(&self) -> f64 {
        self.zz_factor
    }
}

/// `(1 - s) H_M + s * zz_factor * H_MC`.
pub fn interpolate(g: &Graph, p: InterpolationParams) -> Result<DenseHermitian> {
    let mixer = build_mixer(g.n_vertices())?;
    let problem = build_problem_diagonal(g)?;
    Ok(interpolate_parts(&mixer, &problem, p))
}

pub(crate) fn interpolate_parts(
    mixer: &DenseHermitian,
    problem: &DiagonalProblem,
    p: InterpolationParams,
) -> DenseHermitian {
    let s = p.s();
    let mut m = mixer.0.clone();
    let dim = m.dim();
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] *= 1.0 - s;
        }
        m[(i, i)] += s * p.zz_factor() * problem.diag[i];
    }
    DenseHermitian(m)
}

#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Ascending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, matching `values`.
    pub vectors: Option<RealMatrix>,
}

impl Spectrum {
    /// Distinct levels as `(value, multiplicity)`, merging values within
    /// [`DEGENERACY_TOLERANCE`].
    pub fn levels(&self) -> Vec<(f64, usize)> {
        cluster_sorted(&self.values, DEGENERACY_TOLERANCE)
            .into_iter()
            .map(|r| (self.values[r.start], r.len()))
            .collect()
    }

    pub fn ground_energy(&self) -> f64 {
        self.values[0]
    }

    /// Midpoint between the ground level and the next distinct level, or
    /// `None` when the whole spectrum is one level.
    pub fn mid_gap(&self) -> Option<f64> {
        let levels = self.levels();
        let ground_top = self.values[levels.first()?.1 - 1];
        levels.get(1).map(|&(next, _)| 0.5 * (ground_top + next))
    }
}

pub fn exact_spectrum(h: &DenseHermitian, want_vectors: bool) -> Result<Spectrum> {
    check_dense_budget(h.dim().trailing_zeros().max(1) as usize)?;
    let (values, vectors) = jacobi_symmetric(&h.0, want_vectors)?;
    Ok(Spectrum { values, vectors })
}

/// `e^{i t H} = V diag(e^{i t lambda}) V^T`.
pub fn exact_unitary(h: &DenseHermitian, t: f64) -> Result<ComplexMatrix> {
    let spectrum = exact_spectrum(h, true)?;
    let v = spectrum.vectors.expect("vectors requested");
    Ok(unitary_from_eigen(&spectrum.values, &v, t))
}

pub(crate) fn unitary_from_eigen(values: &[f64], vectors: &RealMatrix, t: f64) -> ComplexMatrix {
    let dim = values.len();
    let phases: Vec<Complex64> = values
        .iter()
        .map(|&l| Complex64::from_polar(1.0, t * l))
        .collect();
    let mut u = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..dim {
                acc += phases[k] * (vectors[(i, k)] * vectors[(j, k)]);
            }
            u[(i, j)] = acc;
        }
    }
    u
}

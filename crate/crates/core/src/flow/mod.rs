//! Spectral flow of the fixed-`s` Trotter unitary across `s in [0, 1]`.
//!
//! At each sample the full `2^n x 2^n` circuit unitary is diagonalized, its
//! eigenphases are scaled by `Lambda(s) = scale * s` for display, and the
//! phases are linked into branches between consecutive samples.

mod index;
mod tracking;
mod unitary;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::evolution::{linspace, TrotterSchedule};
use crate::graph::{brute_force_maxcut, Graph};

pub use index::{intersection_index, intersection_index_of_family, IndexOptions, IndexReport};
pub use tracking::{track_branches, Branch};
pub use unitary::{
    eigenphases, phase_delta, rzz_global_phase, trotter_unitary, unitary_eigen, wrap_phase,
    UnitaryEigen, MAX_UNITARY_QUBITS,
};

pub const DEFAULT_FLOW_SAMPLES: usize = 20;
pub const DEFAULT_FLOW_STEPS: usize = 50;
pub const DEFAULT_FLOW_DT: f64 = 0.1;
pub const DEFAULT_FLOW_SCALE: f64 = 20.0;

#[derive(Debug, Clone, Serialize)]
pub struct FlowSample {
    pub s: f64,
    /// Ascending in `(-pi, pi]`.
    pub eigenphases: Vec<f64>,
    /// `Lambda(s) e^{i phi}` for each phase.
    pub scaled_points: Vec<Complex64>,
}

/// How many times the spectrum can wind around the circle.
///
/// The fixed-`s` circuit generates `(1-s) H_M + s (2 H_MC + |E|)`, whose
/// spread is convex in `s` and therefore largest at an endpoint: `2n` at
/// `s = 0` and `2 C_max` at `s = 1`. Once `t * spread >= 2 pi` distinct
/// levels can land on the same point of the circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WrapReport {
    pub t: f64,
    pub max_spread: f64,
    /// `t * max_spread / 2 pi`.
    pub windings: f64,
    pub wrapped: bool,
}

impl WrapReport {
    pub fn for_graph(g: &Graph, t: f64, max_cut: usize) -> Self {
        let max_spread = (2.0 * g.n_vertices() as f64).max(2.0 * max_cut as f64);
        let windings = t * max_spread / (2.0 * PI);
        Self {
            t,
            max_spread,
            windings,
            wrapped: windings >= 1.0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralFlow {
    pub samples: Vec<FlowSample>,
    pub branches: Vec<Branch>,
    /// `Lambda(s) = scale * s`.
    pub scale: f64,
    pub wrap: WrapReport,
    /// Phase of the optimal partitions at `s = 1`.
    pub ground_phase: f64,
}

impl SpectralFlow {
    /// Branches whose final phase sits within `tol` of the `s = 1` ground phase.
    pub fn branches_into_ground(&self, tol: f64) -> Vec<usize> {
        self.branches
            .iter()
            .enumerate()
            .filter(|(_, b)| {
                b.points
                    .last()
                    .is_some_and(|&(_, phi)| phase_delta(self.ground_phase, phi).abs() <= tol)
            })
            .map(|(k, _)| k)
            .collect()
    }
}

/// Phase of `|v>` under the `s = 1` circuit when `v` is an optimal partition.
pub fn ground_phase_at_end(g: &Graph, t: f64, max_cut: usize) -> f64 {
    wrap_phase(t * (g.n_edges() as f64 - 2.0 * max_cut as f64))
}

pub fn compute_flow(
    g: &Graph,
    n_samples: usize,
    sched: TrotterSchedule,
    scale: f64,
) -> Result<SpectralFlow> {
    if n_samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 samples of s, got {n_samples}"
        )));
    }
    if g.n_vertices() > MAX_UNITARY_QUBITS {
        return Err(Error::Budget {
            what: "qubits for dense unitaries",
            requested: g.n_vertices(),
            limit: MAX_UNITARY_QUBITS,
        });
    }
    let max_cut = brute_force_maxcut(g)?.max_cut;
    let samples = linspace(n_samples)
        .into_par_iter()
        .map(|s| {
            let phases = eigenphases(&trotter_unitary(g, s, sched)?)?;
            Ok(make_sample(s, phases, scale))
        })
        .collect::<Result<Vec<_>>>()?;
    let branches = track_branches(&samples);
    Ok(SpectralFlow {
        samples,
        branches,
        scale,
        wrap: WrapReport::for_graph(g, sched.tau(), max_cut),
        ground_phase: ground_phase_at_end(g, sched.tau(), max_cut),
    })
}

pub(crate) fn make_sample(s: f64, eigenphases: Vec<f64>, scale: f64) -> FlowSample {
    let radius = scale * s;
    // Adding +0.0 turns the -0.0 components of radius-zero points into +0.0.
    let scaled_points = eigenphases
        .iter()
        .map(|&phi| {
            let z = Complex64::from_polar(radius, phi);
            Complex64::new(z.re + 0.0, z.im + 0.0)
        })
        .collect();
    FlowSample {
        s,
        eigenphases,
        scaled_points,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::reference_graph;

    fn default_sched() -> TrotterSchedule {
        TrotterSchedule::new(DEFAULT_FLOW_DT, DEFAULT_FLOW_STEPS).unwrap()
    }

    #[test]
    fn reference_flow_shape() {
        let g = reference_graph();
        let flow = compute_flow(&g, 20, default_sched(), 20.0).unwrap();
        assert_eq!(flow.samples.len(), 20);
        assert!(flow
            .samples
            .iter()
            .all(|s| s.eigenphases.len() == 32 && s.scaled_points.len() == 32));
        assert_eq!(flow.branches.len(), 32);
        assert!(flow.branches.iter().all(|b| b.points.len() == 20));
        assert_eq!(flow.branches_into_ground(1e-6).len(), 2);
        assert!(flow.samples[0]
            .scaled_points
            .iter()
            .all(|z| z.norm() == 0.0));
        let last = flow.samples.last().unwrap();
        assert!(last
            .scaled_points
            .iter()
            .all(|z| (z.norm() - 20.0).abs() < 1e-12));
    }

    #[test]
    fn triangle_has_six_ground_branches() {
        let g = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let flow = compute_flow(&g, 20, default_sched(), 20.0).unwrap();
        assert_eq!(flow.branches_into_ground(1e-6).len(), 6);
    }

    #[test]
    fn constant_hamiltonian_flow_is_flat() {
        // Same unitary at every sample.
        let g = reference_graph();
        let sched = default_sched();
        let phases = eigenphases(&trotter_unitary(&g, 0.0, sched).unwrap()).unwrap();
        let samples: Vec<FlowSample> = linspace(6)
            .into_iter()
            .map(|s| make_sample(s, phases.clone(), 1.0))
            .collect();
        for b in track_branches(&samples) {
            let first = b.points[0].1;
            assert!(b.points.iter().all(|&(_, phi)| phi == first));
        }
    }

    #[test]
    fn wrap_detection() {
        let g = reference_graph();
        let large = WrapReport::for_graph(&g, 5.0, 5);
        assert!(large.wrapped);
        assert!((large.max_spread - 10.0).abs() < 1e-12);
        let small = WrapReport::for_graph(&g, 0.1, 5);
        assert!(!small.wrapped);

        let flow = compute_flow(&g, 3, TrotterSchedule::new(0.1, 1).unwrap(), 1.0).unwrap();
        assert!(!flow.wrap.wrapped);
        let flow = compute_flow(&g, 3, TrotterSchedule::new(0.1, 200).unwrap(), 1.0).unwrap();
        assert!(flow.wrap.wrapped && flow.wrap.windings > 30.0);
    }

    #[test]
    fn wrap_bound_covers_actual_spread() {
        use crate::hamiltonian::{
            build_mixer, build_problem_diagonal, exact_spectrum, DenseHermitian,
        };
        use crate::linalg::RealMatrix;
        let g = reference_graph();
        let bound = WrapReport::for_graph(&g, 1.0, 5).max_spread;
        let mixer = build_mixer(5).unwrap();
        let problem = build_problem_diagonal(&g).unwrap();
        for s in linspace(11) {
            let mut m = RealMatrix::zeros(32);
            for i in 0..32 {
                for j in 0..32 {
                    m[(i, j)] = (1.0 - s) * mixer.get(i, j);
                }
                m[(i, i)] += s * (2.0 * problem.values()[i] + 6.0);
            }
            let spectrum = exact_spectrum(&DenseHermitian::new(m).unwrap(), false).unwrap();
            let spread = spectrum.values.last().unwrap() - spectrum.values[0];
            assert!(spread <= bound + 1e-9);
        }
    }

    #[test]
    fn rejects_too_few_samples() {
        assert!(compute_flow(&reference_graph(), 1, default_sched(), 20.0).is_err());
    }
}

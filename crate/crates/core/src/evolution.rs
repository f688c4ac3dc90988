//! Trotterized adiabatic evolution from the mixer ground state towards the
//! Max-Cut ground manifold.
//!
//! Step `k` of `N` uses `s_k = k / (N - 1)` (both endpoints included, a
//! single step sits at `s = 0`). Each step applies `R_X(2 (1 - s_k) dt)` on
//! every qubit, then `R_ZZ(-2 s_k dt)` on every edge.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, MaxCutSolution};
use crate::statevector::StateVector;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrotterSchedule {
    dt: f64,
    n_steps: usize,
}

impl TrotterSchedule {
    pub fn new(dt: f64, n_steps: usize) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "time step {dt} must be positive"
            )));
        }
        Ok(Self { dt, n_steps })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    /// Total evolution time `n_steps * dt`.
    pub fn tau(&self) -> f64 {
        self.n_steps as f64 * self.dt
    }

    /// Interpolation parameter of every step.
    pub fn s_grid(&self) -> Vec<f64> {
        linspace(self.n_steps)
    }
}

/// `count` uniformly spaced points covering `[0, 1]` inclusively.
pub fn linspace(count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => {
            let last = (count - 1) as f64;
            (0..count).map(|k| k as f64 / last).collect()
        }
    }
}

/// One gate of the adiabatic circuit, in application order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    Rx { qubit: usize },
    Rzz { i: usize, j: usize },
}

/// Applies the full circuit to `state`, calling `after_gate` right after
/// every gate.
pub(crate) fn run_circuit(
    g: &Graph,
    sched: TrotterSchedule,
    state: &mut StateVector,
    mut after_gate: impl FnMut(&mut StateVector, Gate),
) {
    for s in sched.s_grid() {
        let beta = (1.0 - s) * sched.dt();
        let gamma = s * sched.dt();
        for q in 0..g.n_vertices() {
            state.rx_unchecked(q, 2.0 * beta);
            after_gate(state, Gate::Rx { qubit: q });
        }
        for &(i, j) in g.edges() {
            state.rzz_unchecked(i, j, -2.0 * gamma);
            after_gate(state, Gate::Rzz { i, j });
        }
    }
}

/// Runs the adiabatic circuit from the uniform superposition.
pub fn qaa_evolve(g: &Graph, sched: TrotterSchedule) -> Result<StateVector> {
    let mut state = StateVector::plus_state(g.n_vertices())?;
    run_circuit(g, sched, &mut state, |_, _| {});
    Ok(state)
}

/// Total probability carried by the optimal partitions.
pub fn ground_manifold_overlap(sv: &StateVector, sol: &MaxCutSolution) -> Result<f64> {
    if let Some(p) = sol.solutions.first() {
        if p.len() != sv.n_qubits() {
            return Err(Error::LengthMismatch {
                expected: sv.n_qubits(),
                actual: p.len(),
            });
        }
    }
    let amps = sv.amplitudes();
    Ok(sol.words().map(|w| amps[w as usize].norm_sqr()).sum())
}

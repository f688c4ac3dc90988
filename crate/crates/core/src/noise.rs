//! Stochastic Pauli trajectories for depolarizing gate noise and symmetric
//! readout error.
//!
//! Every shot is one trajectory. After each ideal `R_X` a uniformly chosen
//! `X`, `Y` or `Z` hits that qubit with probability `p_1q`; after each ideal
//! `R_ZZ` one of the 15 non-identity two-qubit Paulis hits the pair with
//! probability `p_2q`. The state preparation layer is noiseless. The final
//! measurement is followed by independent bit flips with probability `p_ro`.
//!
//! Random draws per shot (see [`crate::seed`] for the streams):
//! * gate-noise stream: two uniforms `u, w` per gate in circuit order; an
//!   error fires when `u < p`, and the Pauli is number `floor(w * 3)` of
//!   `X, Y, Z` or `floor(w * 15) + 1` of the pair list ordered as
//!   `4 * a + b` with `a, b` indexing `I, X, Y, Z` on the lower/higher qubit;
//! * measurement stream: one uniform, inverse-CDF over basis probabilities;
//! * readout stream: one uniform per bit, qubit 0 first.
//!
//! With all probabilities zero this reproduces [`sample_measurements`]
//! bit for bit.
//!
//! [`sample_measurements`]: crate::histogram::sample_measurements

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::evolution::{qaa_evolve, run_circuit, Gate, TrotterSchedule};
use crate::graph::Graph;
use crate::histogram::{Histogram, OutcomeTable};
use crate::seed::{run_seed, shot_rng, uniform, Stream};
use crate::statevector::{Pauli, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseModel {
    pub p_1q: f64,
    pub p_2q: f64,
    pub p_ro: f64,
}

/// Best-coupling Heron r3 error rates.
pub const HERON_R3_OPT: NoiseModel = NoiseModel {
    p_1q: 1e-4,
    p_2q: 2e-3,
    p_ro: 8e-3,
};

/// Median Heron r2 error rates.
pub const HERON_R2_MED: NoiseModel = NoiseModel {
    p_1q: 2e-4,
    p_2q: 6e-3,
    p_ro: 1.5e-2,
};

pub const NOISELESS: NoiseModel = NoiseModel {
    p_1q: 0.0,
    p_2q: 0.0,
    p_ro: 0.0,
};

impl NoiseModel {
    pub fn new(p_1q: f64, p_2q: f64, p_ro: f64) -> Result<Self> {
        let model = Self { p_1q, p_2q, p_ro };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [
            ("p_1q", self.p_1q),
            ("p_2q", self.p_2q),
            ("p_ro", self.p_ro),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidArgument(format!(
                    "{name} = {p} outside [0, 1]"
                )));
            }
        }
        Ok(())
    }

    pub fn is_noiseless(&self) -> bool {
        self.p_1q == 0.0 && self.p_2q == 0.0 && self.p_ro == 0.0
    }
}

impl FromStr for NoiseModel {
    type Err = Error;

    /// `heron-r3-opt`, `heron-r2-med`, `none`, or `custom:p1,p2,pro`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heron-r3-opt" => Ok(HERON_R3_OPT),
            "heron-r2-med" => Ok(HERON_R2_MED),
            "none" => Ok(NOISELESS),
            _ => {
                let body = s
                    .strip_prefix("custom:")
                    .ok_or_else(|| Error::UnknownPreset(s.into()))?;
                let values: Vec<f64> = body
                    .split(',')
                    .map(|x| x.trim().parse::<f64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::UnknownPreset(s.into()))?;
                match values[..] {
                    [p1, p2, pro] => NoiseModel::new(p1, p2, pro),
                    _ => Err(Error::UnknownPreset(s.into())),
                }
            }
        }
    }
}

impl fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == HERON_R3_OPT {
            f.write_str("heron-r3-opt")
        } else if *self == HERON_R2_MED {
            f.write_str("heron-r2-med")
        } else if self.is_noiseless() {
            f.write_str("none")
        } else {
            write!(f, "custom:{},{},{}", self.p_1q, self.p_2q, self.p_ro)
        }
    }
}

#[derive(Debug, Clone)]
pub struct NoisyRunConfig {
    pub graph: Graph,
    pub schedule: TrotterSchedule,
    pub noise: NoiseModel,
    pub shots: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy)]
struct ErrorEvent {
    gate_index: usize,
    first: Pauli,
    second: Pauli,
}

/// Gate-noise draws for one shot, in circuit order.
fn draw_gate_errors(
    g: &Graph,
    sched: TrotterSchedule,
    noise: &NoiseModel,
    seed: u64,
    shot: u64,
) -> Vec<ErrorEvent> {
    if noise.p_1q == 0.0 && noise.p_2q == 0.0 {
        return Vec::new();
    }
    let mut rng = shot_rng(seed, shot, Stream::GateNoise);
    let mut events = Vec::new();
    let per_step = g.n_vertices() + g.n_edges();
    for gate_index in 0..sched.n_steps() * per_step {
        let two_qubit = gate_index % per_step >= g.n_vertices();
        let u = uniform(&mut rng);
        let w = uniform(&mut rng);
        if two_qubit {
            if u < noise.p_2q {
                let k = (w * 15.0) as usize + 1;
                events.push(ErrorEvent {
                    gate_index,
                    first: Pauli::ALL[k / 4],
                    second: Pauli::ALL[k % 4],
                });
            }
        } else if u < noise.p_1q {
            events.push(ErrorEvent {
                gate_index,
                first: Pauli::ALL[(w * 3.0) as usize + 1],
                second: Pauli::I,
            });
        }
    }
    events
}

fn noisy_trajectory(
    g: &Graph,
    sched: TrotterSchedule,
    events: &[ErrorEvent],
) -> Result<StateVector> {
    let mut state = StateVector::plus_state(g.n_vertices())?;
    let mut next = events.iter().peekable();
    let mut gate_index = 0;
    run_circuit(g, sched, &mut state, |sv, gate| {
        if let Some(ev) = next.next_if(|ev| ev.gate_index == gate_index) {
            match gate {
                Gate::Rx { qubit } => sv.pauli_unchecked(qubit, ev.first),
                Gate::Rzz { i, j } => {
                    sv.pauli_unchecked(i, ev.first);
                    sv.pauli_unchecked(j, ev.second);
                }
            }
        }
        gate_index += 1;
    });
    Ok(state)
}

/// One histogram of `cfg.shots` noisy trajectories.
pub fn noisy_qaa_histogram(cfg: &NoisyRunConfig) -> Result<Histogram> {
    cfg.noise.validate()?;
    if cfg.shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    let g = &cfg.graph;
    let n = g.n_vertices();
    let ideal = OutcomeTable::new(&qaa_evolve(g, cfg.schedule)?)?;
    let outcomes = (0..cfg.shots)
        .into_par_iter()
        .map(|shot| {
            let events = draw_gate_errors(g, cfg.schedule, &cfg.noise, cfg.seed, shot);
            let u = uniform(&mut shot_rng(cfg.seed, shot, Stream::Measurement));
            let word = if events.is_empty() {
                ideal.draw(u)
            } else {
                OutcomeTable::new(&noisy_trajectory(g, cfg.schedule, &events)?)?.draw(u)
            };
            Ok(readout(word, n, cfg.noise.p_ro, cfg.seed, shot))
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(Histogram::from_outcomes(n, outcomes))
}

fn readout(mut word: u64, n_bits: usize, p_ro: f64, seed: u64, shot: u64) -> u64 {
    if p_ro > 0.0 {
        let mut rng = shot_rng(seed, shot, Stream::Readout);
        for q in 0..n_bits {
            if uniform(&mut rng) < p_ro {
                word ^= 1 << q;
            }
        }
    }
    word
}

/// Measures a fixed state `shots` times and applies readout flips only.
pub fn measure_with_readout(
    sv: &StateVector,
    shots: u64,
    seed: u64,
    p_ro: f64,
) -> Result<Histogram> {
    NoiseModel::new(0.0, 0.0, p_ro)?;
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    let table = OutcomeTable::new(sv)?;
    let n = sv.n_qubits();
    let outcomes: Vec<u64> = (0..shots)
        .into_par_iter()
        .map(|shot| {
            let word = table.draw(uniform(&mut shot_rng(seed, shot, Stream::Measurement)));
            readout(word, n, p_ro, seed, shot)
        })
        .collect();
    Ok(Histogram::from_outcomes(n, outcomes))
}

/// One histogram per Trotter depth. Depth `k` of the list runs with seed
/// [`run_seed`]`(seed, k)`, so a one-element sweep equals a single run.
pub fn depth_sweep(
    g: &Graph,
    noise: NoiseModel,
    depths: &[usize],
    dt: f64,
    shots: u64,
    seed: u64,
) -> Result<Vec<Histogram>> {
    if depths.is_empty() {
        return Err(Error::InvalidArgument("depth list is empty".into()));
    }
    depths
        .iter()
        .enumerate()
        .map(|(k, &n_steps)| {
            noisy_qaa_histogram(&NoisyRunConfig {
                graph: g.clone(),
                schedule: TrotterSchedule::new(dt, n_steps)?,
                noise,
                shots,
                seed: run_seed(seed, k as u64),
            })
        })
        .collect()
}

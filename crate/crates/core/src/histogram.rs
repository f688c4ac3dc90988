//! Measurement histograms and the noiseless shot sampler.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{msb_string, MaxCutSolution};
use crate::seed::{shot_rng, uniform, Stream};
use crate::statevector::StateVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    n_qubits: usize,
    shots: u64,
    counts: BTreeMap<u64, u64>,
}

impl Histogram {
    pub(crate) fn from_outcomes(n_qubits: usize, outcomes: impl IntoIterator<Item = u64>) -> Self {
        let mut counts = BTreeMap::new();
        let mut shots = 0;
        for w in outcomes {
            *counts.entry(w).or_insert(0) += 1;
            shots += 1;
        }
        Self {
            n_qubits,
            shots,
            counts,
        }
    }

    /// Pools the shots of another histogram over the same register into this one.
    pub fn merge(&mut self, other: &Histogram) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::LengthMismatch {
                expected: self.n_qubits,
                actual: other.n_qubits,
            });
        }
        for (&w, &c) in &other.counts {
            *self.counts.entry(w).or_insert(0) += c;
        }
        self.shots += other.shots;
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    /// Non-zero counts keyed by basis word (bit `q` = qubit `q`).
    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn count(&self, word: u64) -> u64 {
        self.counts.get(&word).copied().unwrap_or(0)
    }

    pub fn frequency(&self, word: u64) -> f64 {
        self.count(word) as f64 / self.shots as f64
    }

    /// Outcomes by descending count, ties broken by ascending word.
    pub fn ranked(&self) -> Vec<(u64, u64)> {
        let mut entries: Vec<(u64, u64)> = self.counts.iter().map(|(&w, &c)| (w, c)).collect();
        entries.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        entries
    }

    /// The `k` most frequent outcomes (all of them when `k == 0`).
    pub fn top(&self, k: usize) -> Vec<(u64, u64)> {
        let mut ranked = self.ranked();
        if k > 0 {
            ranked.truncate(k);
        }
        ranked
    }

    pub fn bitstring(&self, word: u64) -> String {
        msb_string(word, self.n_qubits)
    }

    /// Fraction of shots that landed on an optimal partition.
    pub fn solution_share(&self, sol: &MaxCutSolution) -> f64 {
        sol.words().map(|w| self.count(w)).sum::<u64>() as f64 / self.shots as f64
    }

    /// Whether the `D` most frequent outcomes are exactly the `D` solutions.
    pub fn solutions_are_top(&self, sol: &MaxCutSolution) -> bool {
        let top = self.top(sol.degeneracy());
        top.len() == sol.degeneracy()
            && top.iter().all(|&(w, c)| c > 0 && sol.contains_word(w))
            && self.separates(sol)
    }

    /// Minimum solution count strictly above the maximum non-solution count.
    fn separates(&self, sol: &MaxCutSolution) -> bool {
        let min_solution = sol.words().map(|w| self.count(w)).min().unwrap_or(0);
        let max_other = self
            .counts
            .iter()
            .filter(|(w, _)| !sol.contains_word(**w))
            .map(|(_, &c)| c)
            .max()
            .unwrap_or(0);
        min_solution > max_other
    }

    pub fn to_report(&self, top: usize) -> HistogramReport {
        let kept = self.top(top);
        let kept_total: u64 = kept.iter().map(|&(_, c)| c).sum();
        HistogramReport {
            n_qubits: self.n_qubits,
            shots: self.shots,
            counts: kept
                .into_iter()
                .map(|(w, c)| (self.bitstring(w), c))
                .collect(),
            other: self.shots - kept_total,
        }
    }
}

/// Serializable view of a histogram with MSB-first bitstring keys, most
/// frequent first.
#[derive(Debug, Clone, Serialize)]
pub struct HistogramReport {
    pub n_qubits: usize,
    pub shots: u64,
    #[serde(serialize_with = "ordered_map")]
    pub counts: Vec<(String, u64)>,
    /// Shots falling outside the listed entries.
    pub other: u64,
}

fn ordered_map<S: serde::Serializer>(
    entries: &[(String, u64)],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = serializer.serialize_map(Some(entries.len()))?;
    for (k, v) in entries {
        map.serialize_entry(k, v)?;
    }
    map.end()
}

/// Inverse-CDF lookup table over basis probabilities.
#[derive(Debug, Clone)]
pub(crate) struct OutcomeTable {
    cumulative: Vec<f64>,
}

impl OutcomeTable {
    pub(crate) fn new(sv: &StateVector) -> Result<Self> {
        sv.check_normalized()?;
        let mut acc = 0.0;
        let cumulative = sv
            .amplitudes()
            .iter()
            .map(|a| {
                acc += a.norm_sqr();
                acc
            })
            .collect();
        Ok(Self { cumulative })
    }

    /// Maps a uniform draw to a basis index.
    pub(crate) fn draw(&self, u: f64) -> u64 {
        let total = *self.cumulative.last().expect("non-empty state");
        let target = u * total;
        let idx = self.cumulative.partition_point(|&c| c <= target);
        // Guard against rounding at the top end: fall back to the last non-empty outcome.
        let idx = idx.min(self.cumulative.len() - 1);
        if idx > 0 && self.cumulative[idx] == self.cumulative[idx - 1] {
            let mut j = idx;
            while j > 0 && self.cumulative[j] == self.cumulative[j - 1] {
                j -= 1;
            }
            return j as u64;
        }
        idx as u64
    }
}

/// Draws `shots` independent computational-basis outcomes.
///
/// Shot `k` reads one uniform from its own measurement stream (see
/// [`crate::seed`]), so the result is independent of thread count.
pub fn sample_measurements(sv: &StateVector, shots: u64, seed: u64) -> Result<Histogram> {
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    let table = OutcomeTable::new(sv)?;
    let outcomes: Vec<u64> = (0..shots)
        .into_par_iter()
        .map(|k| table.draw(uniform(&mut shot_rng(seed, k, Stream::Measurement))))
        .collect();
    Ok(Histogram::from_outcomes(sv.n_qubits(), outcomes))
}

//! Signed count of spectral branches crossing a reference line drawn
//! through the ground-state gap of the real-axis flow `H(s)`.
//!
//! The line joins a point inside the gap above the ground level of `H(0)` to
//! one inside the gap of `H(1)`. Branches are the sorted eigenvalues of
//! `H(s)`. Crossings are counted between grid points; an interval is split
//! until every branch that keeps its side of the line provably cannot have
//! touched it in between (Lipschitz certificate), or a depth cap is hit.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::evolution::linspace;
use crate::graph::{brute_force_maxcut, Graph};
use crate::hamiltonian::{
    build_mixer, build_problem_diagonal, exact_spectrum, interpolate_parts, DenseHermitian,
    InterpolationParams, DEFAULT_ZZ_FACTOR, DEGENERACY_TOLERANCE,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexOptions {
    /// Initial uniform grid size over `[0, 1]`.
    pub n_samples: usize,
    pub zz_factor: f64,
    /// Maximum number of interval halvings below the initial grid.
    pub max_depth: u32,
}

impl Default for IndexOptions {
    fn default() -> Self {
        Self {
            n_samples: 20,
            zz_factor: DEFAULT_ZZ_FACTOR,
            max_depth: 14,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexReport {
    /// `crossings_down - crossings_up`.
    pub index: i64,
    /// Branches moving from above the line to below it as `s` increases.
    pub crossings_down: usize,
    pub crossings_up: usize,
    /// Eigenvalues below the line at `s = 0`.
    pub rank_start: usize,
    /// Eigenvalues below the line at `s = 1`.
    pub rank_end: usize,
    pub line_start: f64,
    pub line_end: f64,
    /// Number of `s` values at which `H(s)` was diagonalized.
    pub evaluations: usize,
}

/// Intersection index of `(1 - s) H_M + s * zz * H_MC` for a graph.
///
/// The reference line runs from `-n + 1` (between the mixer ground level
/// `-n` and the next level `-n + 2`) to `-zz * C + zz / 2` (half a cut unit
/// above the scaled Max-Cut energy).
pub fn intersection_index(g: &Graph, opts: IndexOptions) -> Result<IndexReport> {
    let n = g.n_vertices();
    let mixer = build_mixer(n)?;
    let problem = build_problem_diagonal(g)?;
    let max_cut = brute_force_maxcut(g)?.max_cut as f64;
    let zz = opts.zz_factor;
    InterpolationParams::new(0.0, zz)?;
    let line_start = -(n as f64) + 1.0;
    let line_end = -zz * max_cut + 0.5 * zz;
    // ||d H / d s|| <= ||H_M|| + zz * ||H_MC||
    let lipschitz = n as f64 + zz * max_cut;
    intersection_index_of_family(
        |s| {
            Ok(interpolate_parts(
                &mixer,
                &problem,
                InterpolationParams::new(s, zz)?,
            ))
        },
        line_start,
        line_end,
        lipschitz,
        opts,
    )
}

/// Intersection index of an arbitrary Hermitian family against the line from
/// `(0, line_start)` to `(1, line_end)`. `lipschitz` bounds `||d H / d s||`.
pub fn intersection_index_of_family<F>(
    family: F,
    line_start: f64,
    line_end: f64,
    lipschitz: f64,
    opts: IndexOptions,
) -> Result<IndexReport>
where
    F: Fn(f64) -> Result<DenseHermitian>,
{
    if opts.n_samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 samples of s, got {}",
            opts.n_samples
        )));
    }
    let line = |s: f64| (1.0 - s) * line_start + s * line_end;
    // Branch-minus-line values change at most this fast.
    let rate = lipschitz.abs() + (line_end - line_start).abs();
    let offsets = |s: f64| -> Result<Vec<f64>> {
        let spectrum = exact_spectrum(&family(s)?, false)?;
        let l = line(s);
        Ok(spectrum.values.iter().map(|&v| v - l).collect())
    };

    let grid = linspace(opts.n_samples);
    let mut evaluations = 0;
    let mut current = offsets(0.0)?;
    evaluations += 1;
    check_gap(&current, 0.0)?;
    let rank_start = below(&current);

    let mut down = 0;
    let mut up = 0;
    let mut stack: Vec<(f64, f64, Vec<f64>, u32)> = Vec::new();
    for window in grid.windows(2) {
        let (a, b) = (window[0], window[1]);
        let end = offsets(b)?;
        evaluations += 1;
        // Depth-first over [a, b]; `current` always holds the left endpoint.
        stack.push((a, b, end, 0));
        while let Some((lo, hi, hi_vals, depth)) = stack.pop() {
            if depth < opts.max_depth && !certified(&current, &hi_vals, rate * (hi - lo)) {
                let mid = 0.5 * (lo + hi);
                let mid_vals = offsets(mid)?;
                evaluations += 1;
                stack.push((mid, hi, hi_vals, depth + 1));
                stack.push((lo, mid, mid_vals, depth + 1));
                continue;
            }
            for (x, y) in current.iter().zip(&hi_vals) {
                match (*x < 0.0, *y < 0.0) {
                    (false, true) => down += 1,
                    (true, false) => up += 1,
                    _ => {}
                }
            }
            current = hi_vals;
        }
    }
    check_gap(&current, 1.0)?;
    let rank_end = below(&current);
    let index = down as i64 - up as i64;
    debug_assert_eq!(index, rank_end as i64 - rank_start as i64);
    Ok(IndexReport {
        index,
        crossings_down: down,
        crossings_up: up,
        rank_start,
        rank_end,
        line_start,
        line_end,
        evaluations,
    })
}

fn below(offsets: &[f64]) -> usize {
    offsets.iter().filter(|&&d| d < 0.0).count()
}

/// The line must sit strictly between the ground level and a distinct level
/// above it.
fn check_gap(offsets: &[f64], s: f64) -> Result<()> {
    let ground = offsets[0];
    let has_excited = offsets.iter().any(|&d| d - ground > DEGENERACY_TOLERANCE);
    let clear = offsets.iter().all(|d| d.abs() > DEGENERACY_TOLERANCE);
    if ground >= 0.0 || !has_excited || !clear {
        return Err(Error::DegenerateGap { s });
    }
    Ok(())
}

/// No branch that ends on its starting side can have reached the line.
fn certified(start: &[f64], end: &[f64], max_travel: f64) -> bool {
    start.iter().zip(end).all(|(x, y)| {
        let same_side = (*x < 0.0) == (*y < 0.0);
        !same_side || x.abs() + y.abs() > max_travel
    })
}

use serde::Serialize;

use super::unitary::{phase_delta, wrap_phase};
use super::FlowSample;

/// One continuous eigenphase track: `(s, phase)` with phases in `(-pi, pi]`.
#[derive(Debug, Clone, Serialize)]
pub struct Branch {
    pub points: Vec<(f64, f64)>,
}

/// Links eigenphases of consecutive samples into branches.
///
/// Each branch is extrapolated one sample ahead with its last step, then the
/// predictions are matched to the next phases. For points on a circle under a
/// convex cost the optimal matching pairs the two sorted lists up to a cyclic
/// shift, so only the `m` shifts are tried and the one with the smallest
/// squared error wins (the first on ties). Extrapolation carries branches
/// straight through crossings instead of bouncing off them.
///
/// # Panics
///
/// If the samples do not all have the same number of eigenphases.
pub fn track_branches(samples: &[FlowSample]) -> Vec<Branch> {
    let Some(first) = samples.first() else {
        return Vec::new();
    };
    let m = first.eigenphases.len();
    let mut branches: Vec<Branch> = first
        .eigenphases
        .iter()
        .map(|&phi| Branch {
            points: vec![(first.s, phi)],
        })
        .collect();
    let mut velocity = vec![0.0f64; m];

    for next in &samples[1..] {
        assert_eq!(next.eigenphases.len(), m, "samples differ in size");
        let mut order: Vec<(f64, usize)> = branches
            .iter()
            .zip(&velocity)
            .enumerate()
            .map(|(b, (branch, v))| {
                (
                    wrap_phase(branch.points.last().expect("branch has a point").1 + v),
                    b,
                )
            })
            .collect();
        order.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));

        let cost = |shift: usize| -> f64 {
            order
                .iter()
                .enumerate()
                .map(|(i, &(pred, _))| phase_delta(pred, next.eigenphases[(i + shift) % m]).powi(2))
                .sum()
        };
        let mut best = (f64::INFINITY, 0);
        for shift in 0..m {
            let c = cost(shift);
            if c < best.0 {
                best = (c, shift);
            }
        }
        for (i, &(_, b)) in order.iter().enumerate() {
            let phi = next.eigenphases[(i + best.1) % m];
            let last = branches[b].points.last().expect("branch has a point").1;
            velocity[b] = phase_delta(last, phi);
            branches[b].points.push((next.s, phi));
        }
    }
    branches
}

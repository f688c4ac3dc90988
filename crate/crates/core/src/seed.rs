//! Per-shot random streams.
//!
//! Every shot owns an independent ChaCha8 generator so histograms do not
//! depend on thread count or scheduling. The derivation is fixed:
//!
//! ```text
//! mix64(x)       = SplitMix64 finalizer of x + 0x9E3779B97F4A7C15
//! shot_seed(m,k) = mix64(m ^ mix64(k))
//! key            = LE bytes of [s, mix64(s), mix64(mix64(s)), mix64(mix64(mix64(s)))]
//!                  with s = shot_seed(master, shot)
//! ```
//!
//! The 256-bit key seeds a ChaCha8 core (8 rounds, 64-bit block counter
//! starting at zero). Each purpose reads its own ChaCha stream id (see
//! [`Stream`]). Uniform reals are `(next_u64 >> 11) * 2^-53`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn mix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn shot_seed(master: u64, shot: u64) -> u64 {
    mix64(master ^ mix64(shot))
}

/// Seed of the `index`-th run in a sweep. Index 0 keeps the master seed.
pub fn run_seed(master: u64, index: u64) -> u64 {
    master.wrapping_add(index.wrapping_mul(GOLDEN))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Measurement = 0,
    GateNoise = 1,
    Readout = 2,
}

pub fn shot_rng(master: u64, shot: u64, stream: Stream) -> ChaCha8Rng {
    let s0 = shot_seed(master, shot);
    let s1 = mix64(s0);
    let s2 = mix64(s1);
    let s3 = mix64(s2);
    let mut key = [0u8; 32];
    for (chunk, word) in key.chunks_exact_mut(8).zip([s0, s1, s2, s3]) {
        chunk.copy_from_slice(&word.to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(stream as u64);
    rng
}

/// Uniform in `[0, 1)` with 53 bits of resolution.
pub fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.gen::<u64>() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

//! Seeded slice sampling and the deterministic parallel reduction.
//!
//! Samples are produced in fixed-size chunks; chunk `c` draws from
//! `ChaCha8Rng::seed_from_u64(seed)` switched to stream `c`. Chunk results are
//! collected in order and summed with a fixed pairwise tree, so output does not
//! depend on the number of worker threads.

use crate::lattice::{identity, Mat};
use crate::SimError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const CHUNK: usize = 1024;
pub const THREADS_ENV: &str = "EXPCONE_THREADS";

/// A box `[-r, r]^{m(n-m)}` in the coordinates of the unipotent radical
/// `{[[1_m, p], [0, 1_{n-m}]]}` with `N` uniform samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SliceSpec {
    pub n: usize,
    pub m: usize,
    pub radius: f64,
    pub samples: usize,
    pub seed: u64,
}

impl SliceSpec {
    pub fn validate(&self) -> Result<(), SimError> {
        if !(2..=3).contains(&self.n) {
            return Err(SimError::UnsupportedDimension(self.n));
        }
        if self.m == 0 || self.m >= self.n {
            return Err(SimError::InvalidSpec(format!(
                "shape ({}, {}) is not a proper block split",
                self.m,
                self.n.saturating_sub(self.m)
            )));
        }
        if !(self.radius.is_finite() && self.radius >= 0.0) {
            return Err(SimError::InvalidSpec(
                "slice radius must be finite and >= 0".into(),
            ));
        }
        if self.samples == 0 {
            return Err(SimError::InvalidSpec(
                "slice sample count must be >= 1".into(),
            ));
        }
        Ok(())
    }

    /// Dimension `m(n - m)` of the radical.
    pub fn dim_u(&self) -> usize {
        self.m * (self.n - self.m)
    }

    pub fn num_chunks(&self) -> usize {
        self.samples.div_ceil(CHUNK)
    }

    /// Half-open sample index range of chunk `c`.
    pub fn chunk_range(&self, c: usize) -> std::ops::Range<usize> {
        let lo = c * CHUNK;
        lo..(lo + CHUNK).min(self.samples)
    }
}

pub fn chunk_rng(seed: u64, chunk: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    rng
}

/// Radical coordinates `p` (row-major `m × (n-m)`) for every sample of chunk `c`.
pub fn sample_chunk(spec: &SliceSpec, c: usize) -> Vec<Vec<f64>> {
    let mut rng = chunk_rng(spec.seed, c);
    let r = spec.radius;
    spec.chunk_range(c)
        .map(|_| {
            (0..spec.dim_u())
                .map(|_| -r + 2.0 * r * rng.random::<f64>())
                .collect()
        })
        .collect()
}

/// All `N` samples in order.
pub fn sample_slice(spec: &SliceSpec) -> Vec<Vec<f64>> {
    (0..spec.num_chunks())
        .flat_map(|c| sample_chunk(spec, c))
        .collect()
}

/// The unipotent matrix `[[1_m, p], [0, 1]]` (row-major).
pub fn unipotent<const N: usize>(m: usize, p: &[f64]) -> Mat<N> {
    let mut g = identity::<N>();
    let w = N - m;
    for i in 0..m {
        for j in 0..w {
            g[i][m + j] = p[i * w + j];
        }
    }
    g
}

fn thread_count() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// Evaluates `f` on `0..count` in parallel and returns results in index order.
pub fn map_ordered<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    let run = || (0..count).into_par_iter().map(&f).collect::<Vec<T>>();
    match thread_count() {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        },
        None => run(),
    }
}

/// Sum with a fixed balanced binary tree.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

/// Componentwise [`pairwise_sum`] of equal-length vectors.
pub fn pairwise_sum_vec(xs: &[Vec<f64>], len: usize) -> Vec<f64> {
    match xs.len() {
        0 => vec![0.0; len],
        1 => xs[0].clone(),
        n => {
            let a = pairwise_sum_vec(&xs[..n / 2], len);
            let b = pairwise_sum_vec(&xs[n / 2..], len);
            a.iter().zip(&b).map(|(x, y)| x + y).collect()
        }
    }
}

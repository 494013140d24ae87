//! Order-deterministic summation.
//!
//! Everything that feeds an entropy goes through [`pairwise_sum`] or
//! [`par_sum_by`]. Both split the input into a fixed tree of blocks whose
//! shape depends only on the input length, never on the number of worker
//! threads, so results are bit-identical across thread counts.

use rayon::prelude::*;

const BLOCK: usize = 256;
const PAR_CHUNK: usize = 4096;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Pairwise sum with compensated leaf blocks.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= BLOCK {
        return values.iter().copied().collect::<CompensatedSum>().value();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Sums `f(i)` for `i in 0..n` in parallel with a fixed reduction tree.
pub fn par_sum_by<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let chunks = n.div_ceil(PAR_CHUNK);
    let partials: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * PAR_CHUNK;
            let hi = (lo + PAR_CHUNK).min(n);
            let buf: Vec<f64> = (lo..hi).map(&f).collect();
            pairwise_sum(&buf)
        })
        .collect();
    pairwise_sum(&partials)
}

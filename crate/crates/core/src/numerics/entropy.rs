//! Shannon and differential entropies (bits) and the mutual information
//! `S_A + S_B - S_AB` used as the tomographic entanglement indicator.
//!
//! Integrals are rectangle sums with every sample weighted by the cell
//! measure, so integrating out one axis of a [`JointGrid`] commutes with the
//! quadrature. The grid mutual information is then exactly the discrete
//! mutual information of the cell masses and cannot go negative except
//! through roundoff.

use super::grid::{marginals, DiscreteJoint, JointGrid, Marginal1D};
use super::sum::{pairwise_sum, par_sum_by};
use crate::error::{Error, Result};

/// Cells below this density are exact zeros (`0 log 0 = 0`).
pub const ZERO_CUTOFF: f64 = 1e-300;

/// Roundoff allowance for mutual-information nonnegativity.
pub const EPS_NUM: f64 = 1e-9;

#[inline]
pub(crate) fn neg_plogp(w: f64) -> f64 {
    if w < ZERO_CUTOFF {
        0.0
    } else {
        -w * w.log2()
    }
}

/// Differential entropy in bits of a normalized sampled density.
pub trait DifferentialEntropy {
    fn entropy_bits(&self) -> f64;
}

impl DifferentialEntropy for Marginal1D {
    fn entropy_bits(&self) -> f64 {
        let terms: Vec<f64> = self.values().iter().map(|&w| neg_plogp(w)).collect();
        pairwise_sum(&terms) * self.axis().step()
    }
}

impl DifferentialEntropy for JointGrid {
    fn entropy_bits(&self) -> f64 {
        let (na, _) = self.shape();
        par_sum_by(na, |i| {
            let terms: Vec<f64> = self.row(i).iter().map(|&w| neg_plogp(w)).collect();
            pairwise_sum(&terms)
        }) * self.cell_area()
    }
}

pub fn entropy_continuous<T: DifferentialEntropy + ?Sized>(dist: &T) -> f64 {
    dist.entropy_bits()
}

/// Shannon entropy in bits of probability weights.
pub fn shannon_bits(p: &[f64]) -> f64 {
    let terms: Vec<f64> = p.iter().map(|&w| neg_plogp(w)).collect();
    pairwise_sum(&terms)
}

/// Clamps roundoff-level negatives to zero and rejects anything beyond.
pub(crate) fn checked_mi(mi: f64) -> Result<f64> {
    if mi < -EPS_NUM {
        Err(Error::NegativeMutualInformation(mi))
    } else {
        Ok(mi.max(0.0))
    }
}

/// `S_A + S_B - S_AB` for a normalized joint density.
pub fn mutual_information(grid: &JointGrid) -> Result<f64> {
    let (ma, mb) = marginals(grid);
    let mi = ma.entropy_bits() + mb.entropy_bits() - grid.entropy_bits();
    checked_mi(mi)
}

/// Shannon mutual information of a discrete joint distribution.
pub fn discrete_mutual_information(p: &DiscreteJoint) -> f64 {
    let ra = p.row_marginal();
    let cb = p.col_marginal();
    let terms: Vec<f64> = (0..p.rows())
        .flat_map(|i| (0..p.cols()).map(move |j| (i, j)))
        .map(|(i, j)| {
            let pij = p.get(i, j);
            if pij < ZERO_CUTOFF {
                0.0
            } else {
                pij * (pij / (ra[i] * cb[j])).log2()
            }
        })
        .collect();
    pairwise_sum(&terms).max(0.0)
}

//! Square grids whose value depends only on the index offset `j - i`.
//!
//! The biphoton time-time slices are functions of `t_I - t_S` alone. On a
//! square grid with a shared axis the `n x n` values collapse to `2n - 1`
//! distinct entries with multiplicity `n - |k|`, which turns every grid sum
//! into an `O(n)` computation while producing exactly the numbers the
//! materialized [`JointGrid`] would.

use super::entropy::{checked_mi, neg_plogp};
use super::grid::{Axis1D, JointGrid, Marginal1D};
use super::sum::{pairwise_sum, CompensatedSum};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalProfile {
    axis: Axis1D,
    /// `values[k + n - 1]` is the grid value at offset `k = j - i`.
    values: Vec<f64>,
}

impl DiagonalProfile {
    pub fn new(axis: Axis1D, values: Vec<f64>) -> Result<Self> {
        let n = axis.len();
        if values.len() != 2 * n - 1 {
            return Err(Error::ShapeMismatch(format!(
                "{} offsets for a {n}-point axis (expected {})",
                values.len(),
                2 * n - 1
            )));
        }
        if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::param("values", format!("entry {bad} is not a finite nonnegative number")));
        }
        Ok(Self { axis, values })
    }

    /// Samples `f(tau)` at every offset `tau = k * step`.
    pub fn from_fn(axis: Axis1D, f: impl Fn(f64) -> f64 + Sync) -> Result<Self> {
        use rayon::prelude::*;
        let n = axis.len() as isize;
        let h = axis.step();
        let values = ((-(n - 1))..n).into_par_iter().map(|k| f(k as f64 * h)).collect();
        Self::new(axis, values)
    }

    pub fn axis(&self) -> &Axis1D {
        &self.axis
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Offset of the sample at `index` in units of the axis step.
    pub fn offset(&self, index: usize) -> isize {
        index as isize - (self.axis.len() as isize - 1)
    }

    /// Value at offset `k = j - i` in units of the axis step.
    pub fn at_offset(&self, k: isize) -> f64 {
        self.values[(k + self.axis.len() as isize - 1) as usize]
    }

    /// `τ` at `index`.
    pub fn tau(&self, index: usize) -> f64 {
        self.offset(index) as f64 * self.axis.step()
    }

    fn multiplicity(&self, index: usize) -> f64 {
        (self.axis.len() as isize - self.offset(index).abs()) as f64
    }

    pub fn total_mass(&self) -> f64 {
        let h = self.axis.step();
        let terms: Vec<f64> = self
            .values
            .iter()
            .enumerate()
            .map(|(idx, v)| v * self.multiplicity(idx))
            .collect();
        pairwise_sum(&terms) * h * h
    }

    pub fn normalize(&self) -> Result<Self> {
        let mass = self.total_mass();
        if !(mass > 0.0) {
            return Err(Error::DegenerateDistribution);
        }
        Ok(Self {
            axis: self.axis,
            values: self.values.iter().map(|v| v / mass).collect(),
        })
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    pub fn to_grid(&self) -> JointGrid {
        let n = self.axis.len();
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                v[i * n + j] = self.values[j + n - 1 - i];
            }
        }
        JointGrid::new(self.axis, self.axis, v).expect("profile values are validated")
    }

    /// Marginals over the row axis (integrating out columns) and the column axis.
    pub fn marginals(&self) -> (Marginal1D, Marginal1D) {
        let n = self.axis.len();
        let h = self.axis.step();
        // prefix[m] = sum of values[..m]
        let mut prefix = Vec::with_capacity(self.values.len() + 1);
        let mut acc = CompensatedSum::new();
        prefix.push(0.0);
        for &v in &self.values {
            acc.add(v);
            prefix.push(acc.value());
        }
        let range = |lo: usize, hi: usize| (prefix[hi + 1] - prefix[lo]) * h;
        // row i covers offsets -i ..= n-1-i
        let rows = (0..n).map(|i| range(n - 1 - i, 2 * n - 2 - i)).collect();
        // column j covers offsets j-(n-1) ..= j
        let cols = (0..n).map(|j| range(j, j + n - 1)).collect();
        (
            Marginal1D::new(self.axis, rows).expect("nonnegative"),
            Marginal1D::new(self.axis, cols).expect("nonnegative"),
        )
    }

    pub fn joint_entropy_bits(&self) -> f64 {
        let h = self.axis.step();
        let terms: Vec<f64> = self
            .values
            .iter()
            .enumerate()
            .map(|(idx, &w)| neg_plogp(w) * self.multiplicity(idx))
            .collect();
        pairwise_sum(&terms) * h * h
    }

    /// Mutual information of the (normalized) profile grid.
    pub fn mutual_information(&self) -> Result<f64> {
        use super::entropy::DifferentialEntropy;
        let (a, b) = self.marginals();
        checked_mi(a.entropy_bits() + b.entropy_bits() - self.joint_entropy_bits())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::entropy::{mutual_information, DifferentialEntropy};
    use crate::numerics::grid::{marginals, normalize};

    fn sample_profile() -> DiagonalProfile {
        let ax = Axis1D::new(-2.0, 2.0, 37).unwrap();
        DiagonalProfile::from_fn(ax, |t| (-(t * t) * 3.0).exp() * (1.0 + (5.0 * t).cos().powi(2)))
            .unwrap()
            .normalize()
            .unwrap()
    }

    #[test]
    fn profile_matches_materialized_grid() {
        let p = sample_profile();
        let g = p.to_grid();
        assert!((g.total_mass() - 1.0).abs() < 1e-12);
        let gn = normalize(&g).unwrap();
        assert!((p.joint_entropy_bits() - gn.entropy_bits()).abs() < 1e-12);
        let (pa, pb) = p.marginals();
        let (ga, gb) = marginals(&gn);
        for (x, y) in pa.values().iter().zip(ga.values()) {
            assert!((x - y).abs() < 1e-12);
        }
        for (x, y) in pb.values().iter().zip(gb.values()) {
            assert!((x - y).abs() < 1e-12);
        }
        let mi_p = p.mutual_information().unwrap();
        let mi_g = mutual_information(&gn).unwrap();
        assert!(mi_p > 0.5);
        assert!((mi_p - mi_g).abs() < 1e-11);
    }

    #[test]
    fn rejects_wrong_length() {
        let ax = Axis1D::new(0.0, 1.0, 4).unwrap();
        assert!(DiagonalProfile::new(ax, vec![1.0; 4]).is_err());
        assert!(DiagonalProfile::new(ax, vec![1.0; 7]).is_ok());
    }

    #[test]
    fn offsets_are_centered() {
        let p = sample_profile();
        assert_eq!(p.offset(0), -36);
        assert_eq!(p.offset(36), 0);
        assert_eq!(p.offset(72), 36);
    }
}

use serde::Serialize;

use super::sum::{pairwise_sum, par_sum_by};
use crate::error::{Error, Result};

/// Uniformly spaced sample points `lo, lo + step, ..., hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis1D {
    lo: f64,
    hi: f64,
    n: usize,
}

impl Axis1D {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::InvalidAxis(format!("non-finite bounds [{lo}, {hi}]")));
        }
        if hi <= lo {
            return Err(Error::InvalidAxis(format!("hi ({hi}) must exceed lo ({lo})")));
        }
        if n < 2 {
            return Err(Error::InvalidAxis(format!("need at least 2 points, got {n}")));
        }
        Ok(Self { lo, hi, n })
    }

    /// Axis with the given step starting at `lo`, extended so that it reaches `hi`.
    pub fn with_step(lo: f64, hi: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) {
            return Err(Error::InvalidAxis(format!("step must be positive, got {step}")));
        }
        let n = ((hi - lo) / step).ceil() as usize + 1;
        Self::new(lo, lo + step * (n - 1) as f64, n)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.n - 1) as f64
    }

    #[inline]
    pub fn point(&self, i: usize) -> f64 {
        self.lo + self.step() * i as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let step = self.step();
        (0..self.n).map(move |i| self.lo + step * i as f64)
    }

    /// Same sample points reflected through zero.
    pub fn reflected(&self) -> Self {
        Self {
            lo: -self.hi,
            hi: -self.lo,
            n: self.n,
        }
    }
}

/// A sampled nonnegative density on `axis_a × axis_b`, row-major in `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointGrid {
    axis_a: Axis1D,
    axis_b: Axis1D,
    values: Vec<f64>,
}

impl JointGrid {
    pub fn new(axis_a: Axis1D, axis_b: Axis1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != axis_a.len() * axis_b.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} values for a {}x{} grid",
                values.len(),
                axis_a.len(),
                axis_b.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::param("values", format!("entry {bad} is not a finite nonnegative number")));
        }
        Ok(Self {
            axis_a,
            axis_b,
            values,
        })
    }

    /// Samples `f(a, b)` on the grid, rows in parallel.
    pub fn from_fn<F>(axis_a: Axis1D, axis_b: Axis1D, f: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> f64 + Sync,
    {
        use rayon::prelude::*;
        let nb = axis_b.len();
        let mut values = vec![0.0; axis_a.len() * nb];
        values.par_chunks_mut(nb).enumerate().for_each(|(i, row)| {
            let a = axis_a.point(i);
            for (j, v) in row.iter_mut().enumerate() {
                *v = f(a, axis_b.point(j));
            }
        });
        Self::new(axis_a, axis_b, values)
    }

    pub fn axis_a(&self) -> &Axis1D {
        &self.axis_a
    }

    pub fn axis_b(&self) -> &Axis1D {
        &self.axis_b
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.axis_a.len(), self.axis_b.len())
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.axis_b.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let nb = self.axis_b.len();
        &self.values[i * nb..(i + 1) * nb]
    }

    pub fn cell_area(&self) -> f64 {
        self.axis_a.step() * self.axis_b.step()
    }

    /// Riemann integral of the density.
    pub fn total_mass(&self) -> f64 {
        let nb = self.axis_b.len();
        par_sum_by(self.axis_a.len(), |i| pairwise_sum(&self.values[i * nb..(i + 1) * nb]))
            * self.cell_area()
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Swaps the roles of the two axes.
    pub fn transposed(&self) -> JointGrid {
        let (na, nb) = self.shape();
        let mut values = vec![0.0; na * nb];
        for i in 0..na {
            for j in 0..nb {
                values[j * na + i] = self.values[i * nb + j];
            }
        }
        JointGrid {
            axis_a: self.axis_b,
            axis_b: self.axis_a,
            values,
        }
    }

    /// Pointwise `|self - other|`; the grids must share both axes.
    pub fn abs_diff(&self, other: &JointGrid) -> Result<JointGrid> {
        if self.axis_a != other.axis_a || self.axis_b != other.axis_b {
            return Err(Error::ShapeMismatch("grids are sampled on different axes".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .collect();
        Ok(JointGrid {
            axis_a: self.axis_a,
            axis_b: self.axis_b,
            values,
        })
    }

    /// Largest pointwise difference relative to the peak of `self`.
    pub fn relative_linf(&self, other: &JointGrid) -> Result<f64> {
        let diff = self.abs_diff(other)?;
        Ok(diff.max_value() / self.max_value())
    }
}

/// Rescales `grid` so that its Riemann integral is one.
pub fn normalize(grid: &JointGrid) -> Result<JointGrid> {
    let mass = grid.total_mass();
    if !(mass > 0.0) || !grid.values.iter().any(|&v| v > 0.0) {
        return Err(Error::DegenerateDistribution);
    }
    let scale = 1.0 / mass;
    Ok(JointGrid {
        axis_a: grid.axis_a,
        axis_b: grid.axis_b,
        values: grid.values.iter().map(|v| v * scale).collect(),
    })
}

/// A sampled 1-D density.
#[derive(Debug, Clone, PartialEq)]
pub struct Marginal1D {
    axis: Axis1D,
    values: Vec<f64>,
}

impl Marginal1D {
    pub fn new(axis: Axis1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != axis.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} values on a {}-point axis",
                values.len(),
                axis.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::param("values", format!("entry {bad} is not a finite nonnegative number")));
        }
        Ok(Self { axis, values })
    }

    pub fn from_fn(axis: Axis1D, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = axis.points().map(f).collect();
        Self::new(axis, values)
    }

    pub fn axis(&self) -> &Axis1D {
        &self.axis
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn total_mass(&self) -> f64 {
        pairwise_sum(&self.values) * self.axis.step()
    }

    pub fn normalized(&self) -> Result<Self> {
        let mass = self.total_mass();
        if !(mass > 0.0) {
            return Err(Error::DegenerateDistribution);
        }
        Ok(Self {
            axis: self.axis,
            values: self.values.iter().map(|v| v / mass).collect(),
        })
    }
}

/// Marginal densities over `a` (integrating out `b`) and over `b`.
pub fn marginals(grid: &JointGrid) -> (Marginal1D, Marginal1D) {
    let (na, nb) = grid.shape();
    let hb = grid.axis_b.step();
    let ha = grid.axis_a.step();
    let over_a: Vec<f64> = (0..na).map(|i| pairwise_sum(grid.row(i)) * hb).collect();
    let mut column = vec![0.0; na];
    let over_b: Vec<f64> = (0..nb)
        .map(|j| {
            for (i, c) in column.iter_mut().enumerate() {
                *c = grid.values[i * nb + j];
            }
            pairwise_sum(&column) * ha
        })
        .collect();
    (
        Marginal1D {
            axis: grid.axis_a,
            values: over_a,
        },
        Marginal1D {
            axis: grid.axis_b,
            values: over_b,
        },
    )
}

/// Discrete joint probability table, row-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteJoint {
    rows: usize,
    cols: usize,
    p: Vec<f64>,
}

impl DiscreteJoint {
    pub const SUM_TOLERANCE: f64 = 1e-12;

    pub fn new(rows: usize, cols: usize, p: Vec<f64>) -> Result<Self> {
        if p.len() != rows * cols || rows == 0 || cols == 0 {
            return Err(Error::ShapeMismatch(format!(
                "{} probabilities for a {rows}x{cols} table",
                p.len()
            )));
        }
        if let Some(bad) = p.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::param("p", format!("entry {bad} is not a probability")));
        }
        let total = pairwise_sum(&p);
        if (total - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(Error::param("p", format!("probabilities sum to {total}")));
        }
        Ok(Self { rows, cols, p })
    }

    /// Normalizes arbitrary nonnegative weights into a probability table.
    pub fn from_weights(rows: usize, cols: usize, weights: Vec<f64>) -> Result<Self> {
        let total = pairwise_sum(&weights);
        if !(total > 0.0) {
            return Err(Error::DegenerateDistribution);
        }
        Self::new(rows, cols, weights.into_iter().map(|w| w / total).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.p
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.p[i * self.cols + j]
    }

    pub fn row_marginal(&self) -> Vec<f64> {
        (0..self.rows)
            .map(|i| pairwise_sum(&self.p[i * self.cols..(i + 1) * self.cols]))
            .collect()
    }

    pub fn col_marginal(&self) -> Vec<f64> {
        (0..self.cols)
            .map(|j| {
                let col: Vec<f64> = (0..self.rows).map(|i| self.get(i, j)).collect();
                pairwise_sum(&col)
            })
            .collect()
    }
}

use nalgebra::DMatrix;

use super::params::TalbotParams;
use crate::error::{Error, Result};
use crate::numerics::{pairwise_sum, Axis1D};

/// Tail bound for the retained grating orders: `exp{-(2πMσ)²/(2ℓ²)} < M_TAIL`.
pub const M_TAIL: f64 = 1e-12;

/// Truncated Talbot basis `T_d(x) = A Σ_{|m|≤M} a_m exp{-(x - ds - mℓ)²/(4δ²)}`.
///
/// The normalization does not depend on `d` since `T_d(x) = T_0(x - ds)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TalbotBasis {
    m_max: usize,
    /// `a_m = exp{-(2πmσ)²/(2ℓ²)}` for `m = -M..=M`.
    order_weights: Vec<f64>,
    norm: f64,
    params: TalbotParams,
}

impl TalbotBasis {
    /// Smallest truncation whose dropped orders are below [`M_TAIL`].
    pub fn adaptive(params: &TalbotParams) -> Result<Self> {
        params.validate()?;
        let k = 2.0 * std::f64::consts::PI * params.grating_width / params.period;
        let mut m = 0usize;
        while (-(k * m as f64).powi(2) / 2.0).exp() >= M_TAIL {
            m += 1;
        }
        Self::with_truncation(params, m)
    }

    pub fn with_truncation(params: &TalbotParams, m_max: usize) -> Result<Self> {
        params.validate()?;
        let k = 2.0 * std::f64::consts::PI * params.grating_width / params.period;
        let order_weights: Vec<f64> = (-(m_max as i64)..=m_max as i64)
            .map(|m| (-(k * m as f64).powi(2) / 2.0).exp())
            .collect();
        let delta = params.aperture_width;
        let ell = params.period;
        // ∫ exp{-(x-c)²/4δ² - (x-c')²/4δ²} dx = √(2π) δ exp{-(c-c')²/8δ²}
        let mut terms = Vec::with_capacity(order_weights.len().pow(2));
        for (i, ai) in order_weights.iter().enumerate() {
            for (j, aj) in order_weights.iter().enumerate() {
                let sep = (i as f64 - j as f64) * ell;
                terms.push(ai * aj * (-sep * sep / (8.0 * delta * delta)).exp());
            }
        }
        let self_overlap = (2.0 * std::f64::consts::PI).sqrt() * delta * pairwise_sum(&terms);
        Ok(Self {
            m_max,
            order_weights,
            norm: 1.0 / self_overlap.sqrt(),
            params: *params,
        })
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    pub fn params(&self) -> &TalbotParams {
        &self.params
    }

    /// `𝒜_d`, identical for every slit.
    pub fn normalization(&self, _d: usize) -> f64 {
        self.norm
    }

    /// Grating-order amplitudes `a_m`, indexed from `m = -M`.
    pub fn order_weights(&self) -> &[f64] {
        &self.order_weights
    }

    /// Probability that a photon in `T_d` sits in the patch of order `m` (indexed from `-M`).
    pub fn order_probabilities(&self) -> Vec<f64> {
        let sq: Vec<f64> = self.order_weights.iter().map(|a| a * a).collect();
        let total = pairwise_sum(&sq);
        sq.into_iter().map(|w| w / total).collect()
    }

    pub fn eval(&self, d: usize, x: f64) -> f64 {
        let p = &self.params;
        let four_delta_sq = 4.0 * p.aperture_width * p.aperture_width;
        let centre0 = d as f64 * p.spacing;
        let m0 = -(self.m_max as f64);
        let terms: Vec<f64> = self
            .order_weights
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let y = x - centre0 - (m0 + i as f64) * p.period;
                a * (-y * y / four_delta_sq).exp()
            })
            .collect();
        self.norm * pairwise_sum(&terms)
    }

    /// Window `[-(M+1)ℓ, (M+2)ℓ]` covering every retained patch centre with margin.
    pub fn window(&self) -> (f64, f64) {
        let ell = self.params.period;
        let m = self.m_max as f64;
        (-(m + 1.0) * ell, (m + 2.0) * ell)
    }

    /// Window axis at `step_fraction * δ` spacing.
    pub fn window_axis(&self, step_fraction: f64) -> Result<Axis1D> {
        let (lo, hi) = self.window();
        Axis1D::with_step(lo, hi, step_fraction * self.params.aperture_width)
    }

    /// Overlaps `⟨T_d|T_d'⟩` in closed form.
    pub fn gram_matrix(&self) -> DMatrix<f64> {
        let p = &self.params;
        let dim = p.slits;
        let delta = p.aperture_width;
        let pref = (2.0 * std::f64::consts::PI).sqrt() * delta * self.norm * self.norm;
        DMatrix::from_fn(dim, dim, |d, e| {
            let mut terms = Vec::with_capacity(self.order_weights.len().pow(2));
            for (i, ai) in self.order_weights.iter().enumerate() {
                for (j, aj) in self.order_weights.iter().enumerate() {
                    let sep = (d as f64 - e as f64) * p.spacing + (i as f64 - j as f64) * p.period;
                    terms.push(ai * aj * (-sep * sep / (8.0 * delta * delta)).exp());
                }
            }
            pref * pairwise_sum(&terms)
        })
    }

    /// Overlaps `⟨T_d|T_d'⟩` by rectangle quadrature on the evaluation window.
    pub fn gram_matrix_quadrature(&self, step_fraction: f64) -> Result<DMatrix<f64>> {
        use rayon::prelude::*;
        let axis = self.window_axis(step_fraction)?;
        let dim = self.params.slits;
        let samples: Vec<Vec<f64>> = (0..dim)
            .into_par_iter()
            .map(|d| axis.points().map(|x| self.eval(d, x)).collect())
            .collect();
        let h = axis.step();
        Ok(DMatrix::from_fn(dim, dim, |d, e| {
            let prod: Vec<f64> = samples[d].iter().zip(&samples[e]).map(|(a, b)| a * b).collect();
            pairwise_sum(&prod) * h
        }))
    }
}

/// Largest absolute off-diagonal entry.
pub fn max_off_diagonal(m: &DMatrix<f64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if i != j {
                worst = worst.max(m[(i, j)].abs());
            }
        }
    }
    worst
}

/// `T_d(x)` for slit `d`.
pub fn basis_function(d: usize, x: f64, basis: &TalbotBasis, params: &TalbotParams) -> Result<f64> {
    if d >= params.slits {
        return Err(Error::param("d", format!("slit index {d} out of range for D = {}", params.slits)));
    }
    if basis.params() != params {
        return Err(Error::param("basis", "basis was built for different parameters"));
    }
    Ok(basis.eval(d, x))
}

use serde::Serialize;

use crate::error::{Error, Result};

/// Geometry and source parameters of the entangled Talbot carpets.
///
/// Lengths are in units of the grating period unless `period` is changed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TalbotParams {
    /// Number of slits in each aperture.
    pub slits: usize,
    /// Spatial correlation `R = (κ+² - κ-²)/(κ+² + κ-²)`.
    pub correlation: f64,
    /// Grating period ℓ.
    pub period: f64,
    /// Inter-slit spacing s.
    pub spacing: f64,
    /// Aperture slit width δ.
    pub aperture_width: f64,
    /// Grating slit width σ.
    pub grating_width: f64,
    /// Pump profile width κ+.
    pub kappa_plus: f64,
}

impl TalbotParams {
    /// Standard geometry: ℓ = 1, s = ℓ/D, δ = 0.025 s, σ = 0.05 ℓ, κ+ = 9 ℓ.
    pub fn new(slits: usize, correlation: f64) -> Result<Self> {
        let period = 1.0;
        let spacing = period / slits.max(1) as f64;
        let p = Self {
            slits,
            correlation,
            period,
            spacing,
            aperture_width: 0.025 * spacing,
            grating_width: 0.05 * period,
            kappa_plus: 9.0 * period,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.slits < 2 {
            return Err(Error::param("D", format!("need at least 2 slits, got {}", self.slits)));
        }
        if !(0.0..=1.0).contains(&self.correlation) {
            return Err(Error::param("R", format!("must lie in [0, 1], got {}", self.correlation)));
        }
        for (name, v) in [
            ("period", self.period),
            ("spacing", self.spacing),
            ("aperture_width", self.aperture_width),
            ("grating_width", self.grating_width),
            ("kappa_plus", self.kappa_plus),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::param(name, format!("must be positive and finite, got {v}")));
            }
        }
        Ok(())
    }

    /// True when the Gaussian correlation collapses to a Kronecker delta.
    pub fn is_perfectly_correlated(&self) -> bool {
        self.correlation == 1.0
    }

    /// κ-² from R; zero at R = 1.
    pub fn kappa_minus_sq(&self) -> f64 {
        let r = self.correlation;
        self.kappa_plus * self.kappa_plus * (1.0 - r) / (1.0 + r)
    }

    /// 1/Δ+² = 1/κ+² + 1/κ-²; infinite at R = 1.
    pub fn inv_delta_plus_sq(&self) -> f64 {
        1.0 / (self.kappa_plus * self.kappa_plus) + 1.0 / self.kappa_minus_sq()
    }

    /// 1/Δ-² = 1/κ+² - 1/κ-².
    pub fn inv_delta_minus_sq(&self) -> f64 {
        1.0 / (self.kappa_plus * self.kappa_plus) - 1.0 / self.kappa_minus_sq()
    }

    pub fn delta_plus_sq(&self) -> f64 {
        1.0 / self.inv_delta_plus_sq()
    }

    pub fn delta_minus_sq(&self) -> f64 {
        1.0 / self.inv_delta_minus_sq()
    }

    /// Exponent scale `s²/(4Δ+²)` of the coefficient Gaussian.
    pub fn coefficient_scale(&self) -> f64 {
        self.spacing * self.spacing * 0.25 * self.inv_delta_plus_sq()
    }
}

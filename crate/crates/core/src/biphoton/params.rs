use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::Axis1D;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Frequency-comb parameters. All frequencies are angular (rad/s).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BiphotonParams {
    /// Pump frequency ω_p.
    pub omega_p: f64,
    /// Cavity resonance spacing ω̄.
    pub omega_bar: f64,
    /// Width Δω of each comb tooth.
    pub delta_omega: f64,
    /// Mean signal-idler difference frequency Ω₀.
    pub omega_0: f64,
    /// Width ΔΩ of the difference-frequency envelope.
    pub delta_big_omega: f64,
    /// Teeth retained on each side: `|n| ≤ n_teeth`.
    pub n_teeth: usize,
}

impl Default for BiphotonParams {
    fn default() -> Self {
        let mut p = Self {
            omega_p: TWO_PI * 391.8856e12,
            omega_bar: TWO_PI * 19.2e9,
            delta_omega: TWO_PI * 1.92e9,
            omega_0: TWO_PI * 10.9e12,
            delta_big_omega: TWO_PI * 6e12,
            n_teeth: 0,
        };
        p.n_teeth = p.envelope_teeth();
        p
    }
}

impl BiphotonParams {
    /// Tooth truncation giving ε_TEI ≈ 6.50 (α) and 5.44 (β) bits at the default window.
    pub const CALIBRATED_TEETH: usize = 9;

    pub fn calibrated() -> Self {
        Self {
            n_teeth: Self::CALIBRATED_TEETH,
            ..Self::default()
        }
    }

    /// Teeth needed to span Ω₀/2 + 4ΔΩ/2 from the comb centre.
    pub fn envelope_teeth(&self) -> usize {
        ((self.omega_0 / 2.0 + 2.0 * self.delta_big_omega) / self.omega_bar).ceil() as usize
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("omega_p", self.omega_p),
            ("omega_bar", self.omega_bar),
            ("delta_omega", self.delta_omega),
            ("omega_0", self.omega_0),
            ("delta_big_omega", self.delta_big_omega),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::param(name, format!("must be positive and finite, got {v}")));
            }
        }
        if self.delta_omega >= self.omega_bar {
            return Err(Error::param("delta_omega", "teeth must be narrower than their spacing"));
        }
        if self.n_teeth == 0 {
            return Err(Error::param("n_teeth", "need at least one tooth on each side"));
        }
        Ok(())
    }

    /// `ΔΩ²/(Δω² + ΔΩ²)`.
    fn envelope_ratio(&self) -> f64 {
        let a = self.delta_omega * self.delta_omega;
        let b = self.delta_big_omega * self.delta_big_omega;
        b / (a + b)
    }

    /// Per-tooth phase rate `ω̄ΔΩ²/(2(Δω² + ΔΩ²))` of the comb factors.
    pub fn comb_phase_rate(&self) -> f64 {
        0.5 * self.omega_bar * self.envelope_ratio()
    }

    /// `Δω²ΔΩ²/(Δω² + ΔΩ²)`; the slice envelope is `exp(-τ² · rate / 2)`.
    pub fn envelope_rate(&self) -> f64 {
        self.delta_omega * self.delta_omega * self.envelope_ratio()
    }

    pub fn envelope(&self, tau: f64) -> f64 {
        (-0.5 * tau * tau * self.envelope_rate()).exp()
    }

    /// Period in τ of `|F|`.
    pub fn comb_period(&self) -> f64 {
        TWO_PI / self.comb_phase_rate()
    }
}

/// Which of the two comb states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CombState {
    /// Signal and idler both in the in-phase comb `f_cav`.
    Alpha,
    /// Signal in the alternating comb `g_cav`, idler in `f_cav`.
    Beta,
}

impl CombState {
    pub fn name(self) -> &'static str {
        match self {
            CombState::Alpha => "alpha",
            CombState::Beta => "beta",
        }
    }

    /// Sign of signal tooth `n`.
    pub fn signal_sign(self, n: i64) -> f64 {
        match self {
            CombState::Alpha => 1.0,
            CombState::Beta => {
                if n.rem_euclid(2) == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }
}

/// Square `[-T, T]²` window in seconds for both photons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimeWindow {
    pub half_width: f64,
    pub n_grid: usize,
}

impl TimeWindow {
    pub const DEFAULT_GRID: usize = 4096;

    /// `T = 10/Δω` on a 4096-point grid.
    pub fn default_for(params: &BiphotonParams) -> Self {
        Self {
            half_width: 10.0 / params.delta_omega,
            n_grid: Self::DEFAULT_GRID,
        }
    }

    /// Half-width given in units of `1/Δω`.
    pub fn in_tooth_units(params: &BiphotonParams, multiple: f64, n_grid: usize) -> Self {
        Self {
            half_width: multiple / params.delta_omega,
            n_grid,
        }
    }

    pub fn axis(&self) -> Result<Axis1D> {
        Axis1D::new(-self.half_width, self.half_width, self.n_grid)
    }

    pub fn step(&self) -> f64 {
        2.0 * self.half_width / (self.n_grid as f64 - 1.0)
    }

    pub fn validate(&self, params: &BiphotonParams) -> Result<()> {
        if !(self.half_width.is_finite() && self.half_width > 0.0) || self.n_grid < 2 {
            return Err(Error::param("window", format!("invalid window {self:?}")));
        }
        let min_half = 5.0 / params.delta_omega;
        if self.half_width < min_half * (1.0 - 1e-12) {
            return Err(Error::param(
                "window_T",
                format!(
                    "half-width {:.4e} s is inside the envelope support (need ≥ 5/Δω = {:.4e} s)",
                    self.half_width, min_half
                ),
            ));
        }
        let max_step = params.comb_period() / 16.0;
        if self.step() > max_step {
            return Err(Error::GridTooCoarse(format!(
                "time step {:.3e} s exceeds comb period / 16 = {:.3e} s",
                self.step(),
                max_step
            )));
        }
        Ok(())
    }
}

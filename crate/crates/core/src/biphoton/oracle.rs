//! Frequency-domain oracle for the time-time slices.
//!
//! Builds the difference-frequency amplitude `A(u)` of the comb state,
//! Fourier-transforms it to `τ`, and squares. Only `τ = k·h` on the window
//! grid is needed, so the `u` samples are folded modulo the transform length
//! and a single FFT yields every offset exactly.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::numerics::{DiagonalProfile, JointGrid};

use super::params::{BiphotonParams, CombState, TimeWindow};
use super::slice::pair_counts;

/// Energy allowed beyond a quarter of the transform's `τ` period.
pub const ALIAS_ENERGY_LIMIT: f64 = 1e-6;

/// Tooth Gaussians are dropped beyond this many `Δω` from their centre.
const TOOTH_REACH: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOptions {
    /// Sum every tooth pair with unit weight and centre `f_-` on a tooth
    /// multiple, which is the model the closed forms assume. Otherwise the
    /// absolute signal/idler teeth around `(ω_p ± Ω₀)/2` are used.
    pub matched: bool,
    /// Multiplier on `ΔΩ` in `f_-`.
    pub envelope_widen: f64,
    /// Frequency step as a fraction of `Δω` (upper bound).
    pub freq_step_fraction: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            matched: true,
            envelope_widen: 1.0,
            freq_step_fraction: 0.125,
        }
    }
}

impl OracleOptions {
    fn validate(&self) -> Result<()> {
        if !(self.envelope_widen.is_finite() && self.envelope_widen > 0.0) {
            return Err(Error::param("envelope_widen", "must be positive"));
        }
        if !(self.freq_step_fraction > 0.0 && self.freq_step_fraction <= 1.0) {
            return Err(Error::param("freq_step_fraction", "must lie in (0, 1]"));
        }
        Ok(())
    }
}

fn amplitude_matched(u: f64, counts: &[f64], p: &BiphotonParams, widen: f64) -> f64 {
    let two_n = (counts.len() as i64 - 1) / 2;
    let reach = (TOOTH_REACH * p.delta_omega / p.omega_bar).ceil() as i64;
    let centre = (u / p.omega_bar).round() as i64;
    let inv = 1.0 / (4.0 * p.delta_omega * p.delta_omega);
    let mut comb = 0.0;
    for j in (centre - reach).max(-two_n)..=(centre + reach).min(two_n) {
        let x = u - j as f64 * p.omega_bar;
        comb += counts[(j + two_n) as usize] * (-x * x * inv).exp();
    }
    let wd = widen * p.delta_big_omega;
    comb * (-u * u / (4.0 * wd * wd)).exp()
}

fn tooth_sum(state: CombState, omega: f64, centre: i64, p: &BiphotonParams, signed: bool) -> f64 {
    let n = p.n_teeth as i64;
    let reach = (TOOTH_REACH * p.delta_omega / p.omega_bar).ceil() as i64;
    let near = (omega / p.omega_bar).round() as i64;
    let inv = 1.0 / (2.0 * p.delta_omega * p.delta_omega);
    let mut s = 0.0;
    for k in (near - reach).max(centre - n)..=(near + reach).min(centre + n) {
        let x = omega - k as f64 * p.omega_bar;
        let sign = if signed { state.signal_sign(k - centre) } else { 1.0 };
        s += sign * (-x * x * inv).exp();
    }
    s
}

fn amplitude_physical(state: CombState, u: f64, p: &BiphotonParams, widen: f64) -> f64 {
    let signal_centre = ((p.omega_p + p.omega_0) / (2.0 * p.omega_bar)).round() as i64;
    let idler_centre = ((p.omega_p - p.omega_0) / (2.0 * p.omega_bar)).round() as i64;
    let omega = p.omega_0 + u;
    let s = tooth_sum(state, 0.5 * (p.omega_p + omega), signal_centre, p, true);
    let i = tooth_sum(state, 0.5 * (p.omega_p - omega), idler_centre, p, false);
    let wd = widen * p.delta_big_omega;
    s * i * (-u * u / (4.0 * wd * wd)).exp()
}

/// Normalized oracle `w(τ)` on the window.
pub fn fourier_oracle_profile(
    state: CombState,
    window: &TimeWindow,
    params: &BiphotonParams,
    options: &OracleOptions,
) -> Result<DiagonalProfile> {
    params.validate()?;
    window.validate(params)?;
    options.validate()?;
    let axis = window.axis()?;
    let n = window.n_grid;
    let h = window.step();

    let du_max = params.delta_omega * options.freq_step_fraction;
    let n_fft = ((4.0 * std::f64::consts::PI / (h * du_max)).ceil() as usize).max(2 * n - 1);
    let du = 4.0 * std::f64::consts::PI / (h * n_fft as f64);
    let span = 2.0 * params.n_teeth as f64 * params.omega_bar
        + (10.0 * std::f64::consts::SQRT_2 + TOOTH_REACH / 4.0) * params.delta_omega;
    let n_u = (2.0 * span / du).ceil() as usize + 1;

    let counts = pair_counts(state, params.n_teeth);
    let samples: Vec<f64> = (0..n_u)
        .into_par_iter()
        .map(|i| {
            let u = -span + du * i as f64;
            if options.matched {
                amplitude_matched(u, &counts, params, options.envelope_widen)
            } else {
                amplitude_physical(state, u, params, options.envelope_widen)
            }
        })
        .collect();

    let mut buf = vec![Complex64::new(0.0, 0.0); n_fft];
    for (i, a) in samples.iter().enumerate() {
        buf[i % n_fft].re += a * du;
    }
    FftPlanner::new().plan_fft_forward(n_fft).process(&mut buf);
    let power: Vec<f64> = buf.iter().map(|z| z.norm_sqr()).collect();

    let total: f64 = power.iter().sum();
    let quarter = n_fft / 4;
    let far: f64 = power[quarter + 1..n_fft - quarter].iter().sum();
    if !(total > 0.0) {
        return Err(Error::DegenerateDistribution);
    }
    if far / total > ALIAS_ENERGY_LIMIT {
        return Err(Error::GridTooCoarse(format!(
            "oracle transform aliases: {:.3e} of the energy lies beyond a quarter period",
            far / total
        )));
    }

    let values = (-(n as isize - 1)..n as isize)
        .map(|k| power[k.rem_euclid(n_fft as isize) as usize])
        .collect();
    DiagonalProfile::new(axis, values)?.normalize()
}

pub fn fourier_oracle_slice(
    state: CombState,
    window: &TimeWindow,
    params: &BiphotonParams,
    options: &OracleOptions,
) -> Result<JointGrid> {
    Ok(fourier_oracle_profile(state, window, params, options)?.to_grid())
}

/// `max|a - b| / max|a|` over two profiles on the same axis.
pub fn relative_linf(reference: &DiagonalProfile, other: &DiagonalProfile) -> Result<f64> {
    if reference.axis() != other.axis() {
        return Err(Error::InvalidAxis("profiles live on different axes".into()));
    }
    let diff = reference
        .values()
        .iter()
        .zip(other.values())
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    Ok(diff / reference.max_value())
}

//! Closed-form joint temporal intensities.
//!
//! `w^α(t_S, t_I) ∝ env(τ)·|F(τ)|⁴` and `w^β ∝ env(τ)·|G(τ)F(τ)|²`, with
//! `τ = t_I - t_S`. Both depend on `τ` only, so they are stored as
//! [`DiagonalProfile`]s; [`closed_form_slice`] materializes the full grid.

use crate::error::Result;
use crate::numerics::{DiagonalProfile, JointGrid};

use super::comb::dirichlet;
use super::params::{BiphotonParams, CombState, TimeWindow};

/// Unnormalized `w(τ)`.
pub fn intensity(state: CombState, tau: f64, params: &BiphotonParams) -> f64 {
    let x = tau * params.comb_phase_rate();
    let f = dirichlet(params.n_teeth, x);
    let comb = match state {
        CombState::Alpha => f * f * f * f,
        CombState::Beta => {
            let g = dirichlet(params.n_teeth, x + std::f64::consts::PI);
            (g * f) * (g * f)
        }
    };
    params.envelope(tau) * comb
}

/// Normalized `w` on the window, stored by offset `τ`.
pub fn closed_form_profile(
    state: CombState,
    window: &TimeWindow,
    params: &BiphotonParams,
) -> Result<DiagonalProfile> {
    params.validate()?;
    window.validate(params)?;
    let axis = window.axis()?;
    DiagonalProfile::from_fn(axis, |tau| intensity(state, tau, params))?.normalize()
}

pub fn closed_form_slice(
    state: CombState,
    window: &TimeWindow,
    params: &BiphotonParams,
) -> Result<JointGrid> {
    Ok(closed_form_profile(state, window, params)?.to_grid())
}

/// ε_TEI of the time-time slice in bits.
pub fn tei_time_slice(state: CombState, window: &TimeWindow, params: &BiphotonParams) -> Result<f64> {
    closed_form_profile(state, window, params)?.mutual_information()
}

/// `|w^α - w^β|` of the normalized profiles.
pub fn profile_difference(a: &DiagonalProfile, b: &DiagonalProfile) -> Result<DiagonalProfile> {
    if a.axis() != b.axis() {
        return Err(crate::Error::InvalidAxis("profiles live on different axes".into()));
    }
    let values = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y).abs())
        .collect();
    DiagonalProfile::new(*a.axis(), values)
}

pub fn slice_difference(window: &TimeWindow, params: &BiphotonParams) -> Result<JointGrid> {
    let a = closed_form_profile(CombState::Alpha, window, params)?;
    let b = closed_form_profile(CombState::Beta, window, params)?;
    Ok(profile_difference(&a, &b)?.to_grid())
}

/// Closed form of `∫ w(τ) dτ` for the unnormalized intensity:
/// `(π/μ₀) Σ_{j,j'} c_j c_j' exp(-(j-j')² θ² / (2s²))`, with `s² = Δω²ΔΩ²/(Δω²+ΔΩ²)`,
/// `μ₀ = sqrt(π s²/2)`, `θ` the comb phase rate and `c_j` the signed count of
/// tooth pairs `(n, m)` with `n - m = j`.
pub fn line_normalization(state: CombState, params: &BiphotonParams) -> f64 {
    let counts = pair_counts(state, params.n_teeth);
    let s2 = params.envelope_rate();
    let theta = params.comb_phase_rate();
    let k = theta * theta / (2.0 * s2);
    let mu0 = (std::f64::consts::PI * s2 / 2.0).sqrt();
    let mut total = crate::numerics::CompensatedSum::default();
    for (j, cj) in counts.iter().enumerate() {
        for (jp, cjp) in counts.iter().enumerate() {
            let dj = j as f64 - jp as f64;
            total.add(cj * cjp * (-k * dj * dj).exp());
        }
    }
    std::f64::consts::PI / mu0 * total.value()
}

/// Numeric `∫ w(τ) dτ` over `|τ| ≤ 12/Δω`, resolving each Dirichlet peak
/// with about 64 samples.
pub fn line_integral_numeric(state: CombState, params: &BiphotonParams) -> f64 {
    let half = 12.0 / params.delta_omega;
    let h = params.comb_period() / (64.0 * (2 * params.n_teeth + 1) as f64);
    let n = (2.0 * half / h).ceil() as usize + 1;
    let step = 2.0 * half / (n - 1) as f64;
    crate::numerics::par_sum_by(n, |i| intensity(state, -half + step * i as f64, params)) * step
}

/// Closed-form line normalization divided by its numeric counterpart; ≈ 1.
pub fn normalization_ratio(state: CombState, params: &BiphotonParams) -> f64 {
    line_normalization(state, params) / line_integral_numeric(state, params)
}

/// `c_j` for `j = -2N..=2N` (index `j + 2N`).
pub(crate) fn pair_counts(state: CombState, n_teeth: usize) -> Vec<f64> {
    let n = n_teeth as i64;
    let mut c = vec![0.0; (4 * n + 1) as usize];
    for a in -n..=n {
        for b in -n..=n {
            c[(a - b + 2 * n) as usize] += state.signal_sign(a);
        }
    }
    c
}

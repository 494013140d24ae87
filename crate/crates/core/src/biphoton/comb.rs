//! Comb factors `F(τ) = Σ_{|n|≤N} e^{iτnθ}` and `G(τ) = Σ_{|n|≤N} (-1)^n e^{iτnθ}`.
//!
//! Both sums are symmetric in `n`, hence real, and reduce to the Dirichlet
//! kernel `sin((N+½)x)/sin(x/2)` at `x = θτ` and `x = θτ + π`.

use num_complex::Complex64;

use super::params::BiphotonParams;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// `Σ_{|n|≤N} e^{inx}`.
pub fn dirichlet(n_teeth: usize, x: f64) -> f64 {
    let n = n_teeth as f64;
    let count = 2.0 * n + 1.0;
    let mut y = x.rem_euclid(TWO_PI);
    if y > std::f64::consts::PI {
        y -= TWO_PI;
    }
    if y.abs() < 1e-6 {
        // Σ cos(ny) ≈ (2N+1) - y² Σ n²/2 + y⁴ Σ n⁴/24
        let s2 = n * (n + 1.0) * count / 3.0;
        let s4 = n * (n + 1.0) * count * (3.0 * n * n + 3.0 * n - 1.0) / 15.0;
        return count - y * y * s2 / 2.0 + y.powi(4) * s4 / 24.0;
    }
    ((n + 0.5) * y).sin() / (0.5 * y).sin()
}

pub fn comb_factor_f(tau: f64, params: &BiphotonParams) -> Complex64 {
    Complex64::new(dirichlet(params.n_teeth, tau * params.comb_phase_rate()), 0.0)
}

pub fn comb_factor_g(tau: f64, params: &BiphotonParams) -> Complex64 {
    Complex64::new(
        dirichlet(params.n_teeth, tau * params.comb_phase_rate() + std::f64::consts::PI),
        0.0,
    )
}

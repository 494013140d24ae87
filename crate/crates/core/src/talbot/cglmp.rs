//! Local D-outcome Fourier measurements, their joint outcome statistics,
//! and the CGLMP-type Bell expression `I_D`.

use num_complex::Complex64;
use serde::Serialize;

use super::coeff::CoeffMatrix;
use crate::error::{Error, Result};
use crate::numerics::{discrete_mutual_information, DiscreteJoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    A,
    B,
}

/// One local measurement: a phase-shifted discrete Fourier basis on one side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasurementSetting {
    pub side: Side,
    pub shift: f64,
}

impl MeasurementSetting {
    pub fn new(side: Side, shift: f64) -> Result<Self> {
        if !(shift > -0.5 && shift <= 0.5) {
            return Err(Error::param("shift", format!("must lie in (-0.5, 0.5], got {shift}")));
        }
        Ok(Self { side, shift })
    }

    pub const A1: Self = Self { side: Side::A, shift: 0.0 };
    pub const A2: Self = Self { side: Side::A, shift: 0.5 };
    pub const B1: Self = Self { side: Side::B, shift: 0.25 };
    pub const B2: Self = Self { side: Side::B, shift: -0.25 };

    /// The same basis with its phase shifter removed.
    pub fn unshifted(self) -> Self {
        Self { shift: 0.0, ..self }
    }
}

/// Components of the outcome vector: `e^{2πi d(f+α)/D}/√D` on A, `e^{2πi d(-g+β)/D}/√D` on B.
pub fn measurement_state(setting: MeasurementSetting, outcome: usize, dim: usize) -> Result<Vec<Complex64>> {
    if outcome >= dim {
        return Err(Error::param("outcome", format!("{outcome} out of range for D = {dim}")));
    }
    let o = outcome as f64;
    let phase_unit = match setting.side {
        Side::A => o + setting.shift,
        Side::B => -o + setting.shift,
    };
    let scale = 1.0 / (dim as f64).sqrt();
    Ok((0..dim)
        .map(|d| Complex64::from_polar(scale, 2.0 * std::f64::consts::PI * d as f64 * phase_unit / dim as f64))
        .collect())
}

/// `P(f, g) = |(⟨f| ⊗ ⟨g|) Ψ|²` with A outcomes on rows and B outcomes on columns.
pub fn joint_outcome_distribution(
    c: &CoeffMatrix,
    setting_a: MeasurementSetting,
    setting_b: MeasurementSetting,
) -> Result<DiscreteJoint> {
    if setting_a.side != Side::A || setting_b.side != Side::B {
        return Err(Error::param("settings", "need one A-side and one B-side setting"));
    }
    let dim = c.dim();
    let bras = |s: MeasurementSetting| -> Result<Vec<Vec<Complex64>>> {
        (0..dim)
            .map(|o| Ok(measurement_state(s, o, dim)?.into_iter().map(|z| z.conj()).collect()))
            .collect()
    };
    let fa = bras(setting_a)?;
    let gb = bras(setting_b)?;
    let mut weights = Vec::with_capacity(dim * dim);
    for f in &fa {
        // v[d2] = Σ_d1 conj(φ_f[d1]) C[d1, d2]
        let v: Vec<Complex64> = (0..dim)
            .map(|d2| (0..dim).map(|d1| f[d1] * c.get(d1, d2)).sum())
            .collect();
        for g in &gb {
            let amp: Complex64 = v.iter().zip(g).map(|(a, b)| a * b).sum();
            weights.push(amp.norm_sqr());
        }
    }
    DiscreteJoint::from_weights(dim, dim, weights)
}

/// `P(A = B + k) = Σ_q P(A = (q+k) mod D, B = q)`.
fn prob_a_is_b_plus(p: &DiscreteJoint, k: i64) -> f64 {
    let d = p.rows() as i64;
    (0..d).map(|q| p.get((q + k).rem_euclid(d) as usize, q as usize)).sum()
}

/// `P(B = A + k) = Σ_q P(A = q, B = (q+k) mod D)`.
fn prob_b_is_a_plus(p: &DiscreteJoint, k: i64) -> f64 {
    let d = p.rows() as i64;
    (0..d).map(|q| p.get(q as usize, (q + k).rem_euclid(d) as usize)).sum()
}

/// CGLMP expression `I_D = Σ_k (1 - 2k/(D-1)) J_k` over the canonical settings.
///
/// Local realistic states satisfy `I_D ≤ 2`.
pub fn cglmp_id(c: &CoeffMatrix) -> Result<f64> {
    use MeasurementSetting as M;
    let dim = c.dim();
    if dim < 2 {
        return Err(Error::param("D", "CGLMP needs at least two outcomes"));
    }
    let a1b1 = joint_outcome_distribution(c, M::A1, M::B1)?;
    let a1b2 = joint_outcome_distribution(c, M::A1, M::B2)?;
    let a2b1 = joint_outcome_distribution(c, M::A2, M::B1)?;
    let a2b2 = joint_outcome_distribution(c, M::A2, M::B2)?;
    let mut total = 0.0;
    for k in 0..(dim / 2) as i64 {
        let j_k = prob_a_is_b_plus(&a1b1, k) - prob_a_is_b_plus(&a1b1, -k - 1) + prob_b_is_a_plus(&a1b2, k)
            - prob_b_is_a_plus(&a1b2, -k - 1)
            + prob_b_is_a_plus(&a2b1, k + 1)
            - prob_b_is_a_plus(&a2b1, -k)
            + prob_a_is_b_plus(&a2b2, k)
            - prob_a_is_b_plus(&a2b2, -k - 1);
        total += (1.0 - 2.0 * k as f64 / (dim as f64 - 1.0)) * j_k;
    }
    Ok(total)
}

/// Mutual information of the outcomes of two Fourier measurements.
pub fn tei_discrete_basis_with(
    c: &CoeffMatrix,
    setting_a: MeasurementSetting,
    setting_b: MeasurementSetting,
) -> Result<f64> {
    Ok(discrete_mutual_information(&joint_outcome_distribution(c, setting_a, setting_b)?))
}

/// Indicator in the A₁ and B₁ Fourier bases as read off the screens, i.e. with
/// the phase shifters of the Bell test left out.
pub fn tei_discrete_basis(c: &CoeffMatrix) -> Result<f64> {
    tei_discrete_basis_with(c, MeasurementSetting::A1.unshifted(), MeasurementSetting::B1.unshifted())
}

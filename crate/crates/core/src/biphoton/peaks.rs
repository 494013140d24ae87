use crate::numerics::DiagonalProfile;

/// Peaks below this fraction of the global maximum are ignored.
pub const PEAK_THRESHOLD: f64 = 0.1;

/// Local maxima of `w(τ)` above `threshold · max`, refined by a parabola
/// through the three neighbouring samples. Returns `τ` positions in order.
pub fn find_peaks(profile: &DiagonalProfile, threshold: f64) -> Vec<f64> {
    let v = profile.values();
    let cut = threshold * profile.max_value();
    let h = profile.axis().step();
    let mut peaks = Vec::new();
    for i in 1..v.len().saturating_sub(1) {
        let (l, c, r) = (v[i - 1], v[i], v[i + 1]);
        if c < cut || c < l || c <= r {
            continue;
        }
        let denom = l - 2.0 * c + r;
        let shift = if denom < 0.0 { 0.5 * (l - r) / denom } else { 0.0 };
        peaks.push(profile.tau(i) + shift * h);
    }
    peaks
}

/// Mean spacing of consecutive peaks, `None` with fewer than two.
pub fn mean_peak_spacing(peaks: &[f64]) -> Option<f64> {
    (peaks.len() >= 2).then(|| (peaks[peaks.len() - 1] - peaks[0]) / (peaks.len() - 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biphoton::{closed_form_profile, BiphotonParams, CombState, TimeWindow};
    use crate::numerics::Axis1D;

    #[test]
    fn parabolic_refinement_recovers_offgrid_peak() {
        let axis = Axis1D::new(-1.0, 1.0, 101).unwrap();
        let prof = DiagonalProfile::from_fn(axis, |t| (-(t - 0.0137) * (t - 0.0137) * 50.0).exp()).unwrap();
        let p = find_peaks(&prof, 0.1);
        assert_eq!(p.len(), 1);
        assert!((p[0] - 0.0137).abs() < 2e-4);
    }

    #[test]
    fn beta_peaks_at_half_the_alpha_spacing() {
        let p = BiphotonParams::calibrated();
        let w = TimeWindow::in_tooth_units(&p, 10.0, 4096);
        let a = closed_form_profile(CombState::Alpha, &w, &p).unwrap();
        let b = closed_form_profile(CombState::Beta, &w, &p).unwrap();
        let sa = mean_peak_spacing(&find_peaks(&a, PEAK_THRESHOLD)).unwrap();
        let sb = mean_peak_spacing(&find_peaks(&b, PEAK_THRESHOLD)).unwrap();
        assert!((sa - p.comb_period()).abs() <= w.step());
        assert!((sb - sa / 2.0).abs() <= w.step());
    }
}

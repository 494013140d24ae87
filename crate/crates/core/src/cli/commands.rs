use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use crate::biphoton::{
    closed_form_profile, find_peaks, fourier_oracle_profile, mean_peak_spacing, normalization_ratio,
    profile_difference, relative_linf, CombState, TimeWindow, PEAK_THRESHOLD,
};
use crate::error::{Error, Result};
use crate::numerics::{
    entropy_continuous, mutual_information, Axis1D, DiagonalProfile, JointGrid, Marginal1D,
};
use crate::talbot::{
    cglmp_id, coeff_matrix, joint_outcome_distribution, max_off_diagonal, subsystem_density, svne,
    tei_discrete_basis, tei_position, MeasurementSetting, TalbotBasis, TeiPath,
};

use super::config::RunConfig;
use super::output::{echo_params, format_sci, CsvSink};
use super::report::{CheckResult, EntanglementReport, SelftestSummary};

fn preamble(cfg: &RunConfig, command: &str) -> Vec<String> {
    let mut lines = vec![
        format!("tomo {}", env!("CARGO_PKG_VERSION")),
        format!("command = {command}"),
    ];
    lines.extend(echo_params("", cfg));
    lines.push(format!("tei_path = {:?}", cfg.tei_path));
    lines
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, f64)> {
    let t = Instant::now();
    let v = f()?;
    Ok((v, t.elapsed().as_secs_f64()))
}

pub const SWEEP_INDICATORS: [&str; 4] = ["tei_position", "svne", "tei_discrete", "i_d"];

/// Writes one `(D, R, value)` CSV per indicator.
pub fn talbot_sweep(cfg: &RunConfig) -> Result<Vec<EntanglementReport>> {
    cfg.validate_sweep()?;
    std::fs::create_dir_all(&cfg.out)?;
    let mut reports = Vec::new();
    let mut rows: [Vec<(usize, f64, f64)>; 4] = Default::default();
    for &d in &cfg.slits {
        for &r in &cfg.correlations {
            let p = cfg.talbot_params(d, r)?;
            let c = coeff_matrix(&p)?;
            let (tei, t0) = timed(|| tei_position(&p, cfg.tei_path))?;
            let (s, t1) = timed(|| Ok(svne(&c)))?;
            let (td, t2) = timed(|| tei_discrete_basis(&c))?;
            let (id, t3) = timed(|| cglmp_id(&c))?;
            for (k, (name, v, t)) in [
                ("tei_position", tei, t0),
                ("svne", s, t1),
                ("tei_discrete", td, t2),
                ("i_d", id, t3),
            ]
            .into_iter()
            .enumerate()
            {
                rows[k].push((d, r, v));
                reports.push(EntanglementReport::new(name, v, &p, t));
            }
        }
    }
    for (name, rows) in SWEEP_INDICATORS.iter().zip(&rows) {
        let mut comments = preamble(cfg, "talbot sweep");
        comments.push(format!("indicator = {name}"));
        let mut sink = CsvSink::create(&cfg.out.join(format!("{name}.csv")), &comments, &["D", "R", "value"], cfg.precision)?;
        for (d, r, v) in rows {
            sink.row(&[&d.to_string()], &[*r, *v])?;
        }
        sink.finish()?;
    }
    write_json(&cfg.out.join("report.json"), &reports)?;
    Ok(reports)
}

/// Writes `ρ_A` and the `(A₁, B₁)` outcome table for a single `(D, R)`.
pub fn talbot_density(cfg: &RunConfig) -> Result<()> {
    cfg.validate_sweep()?;
    let (&[d], &[r]) = (cfg.slits.as_slice(), cfg.correlations.as_slice()) else {
        return Err(Error::Config("talbot density takes a single D and R".into()));
    };
    std::fs::create_dir_all(&cfg.out)?;
    let p = cfg.talbot_params(d, r)?;
    let c = coeff_matrix(&p)?;
    let rho = subsystem_density(&c);

    let mut comments = preamble(cfg, "talbot density");
    comments.push(format!("D = {d}"));
    comments.push(format!("R = {}", format_sci(r, cfg.precision)));
    let mut sink = CsvSink::create(&cfg.out.join("rho_a.csv"), &comments, &["i", "j", "value"], cfg.precision)?;
    for i in 0..d {
        for j in 0..d {
            sink.row(&[&i.to_string(), &j.to_string()], &[rho[(i, j)]])?;
        }
    }
    sink.finish()?;

    let (a, b) = (MeasurementSetting::A1, MeasurementSetting::B1);
    let table = joint_outcome_distribution(&c, a, b)?;
    comments.push(format!("settings = A shift {}, B shift {}", a.shift, b.shift));
    let mut sink = CsvSink::create(&cfg.out.join("p_a1_b1.csv"), &comments, &["p", "q", "value"], cfg.precision)?;
    for i in 0..d {
        for j in 0..d {
            sink.row(&[&i.to_string(), &j.to_string()], &[table.get(i, j)])?;
        }
    }
    sink.finish()
}

fn write_profile_grid(path: &Path, comments: &[String], prof: &DiagonalProfile, precision: usize) -> Result<()> {
    let axis = prof.axis();
    let n = axis.len();
    let mut sink = CsvSink::create(path, comments, &["t_s", "t_i", "value"], precision)?;
    for i in 0..n {
        for j in 0..n {
            let k = j as isize - i as isize;
            sink.row(&[], &[axis.point(i), axis.point(j), prof.at_offset(k)])?;
        }
    }
    sink.finish()
}

#[derive(Debug, Clone, Serialize)]
pub struct BiphotonOutcome {
    pub tei_alpha: f64,
    pub tei_beta: f64,
    pub peak_spacing_alpha: Option<f64>,
    pub peak_spacing_beta: Option<f64>,
    pub normalization_ratio_alpha: f64,
    pub normalization_ratio_beta: f64,
    pub oracle_linf_alpha: Option<f64>,
    pub oracle_linf_beta: Option<f64>,
    pub reports: Vec<EntanglementReport>,
}

#[derive(Serialize)]
struct SliceSettings<'a> {
    state: &'static str,
    params: &'a crate::biphoton::BiphotonParams,
    window: &'a TimeWindow,
}

/// Closed-form slices, their difference, ε_TEI for both states and, with
/// `oracle`, the Fourier-oracle slices and their discrepancy.
pub fn biphoton_slice(cfg: &RunConfig) -> Result<BiphotonOutcome> {
    std::fs::create_dir_all(&cfg.out)?;
    let (params, window) = (&cfg.biphoton, &cfg.window);
    let mut comments = preamble(cfg, "biphoton slice");
    let axis = window.axis()?;
    comments.push(format!(
        "axis t_s = t_i = [{}, {}] s, n = {}, step = {} s",
        format_sci(axis.lo(), cfg.precision),
        format_sci(axis.hi(), cfg.precision),
        axis.len(),
        format_sci(axis.step(), cfg.precision)
    ));

    let mut reports = Vec::new();
    let mut profiles = Vec::new();
    let mut teis = Vec::new();
    for state in [CombState::Alpha, CombState::Beta] {
        let ((prof, tei), t) = timed(|| {
            let prof = closed_form_profile(state, window, params)?;
            let tei = prof.mutual_information()?;
            Ok((prof, tei))
        })?;
        let settings = SliceSettings { state: state.name(), params, window };
        reports.push(EntanglementReport::new("tei_time", tei, &settings, t));
        profiles.push(prof);
        teis.push(tei);
    }
    let diff = profile_difference(&profiles[0], &profiles[1])?;
    for (name, prof) in [("w_alpha", &profiles[0]), ("w_beta", &profiles[1]), ("w_diff", &diff)] {
        write_profile_grid(&cfg.out.join(format!("{name}.csv")), &comments, prof, cfg.precision)?;
    }

    let spacing: Vec<Option<f64>> = profiles
        .iter()
        .map(|p| mean_peak_spacing(&find_peaks(p, PEAK_THRESHOLD)))
        .collect();
    let ratios = [
        normalization_ratio(CombState::Alpha, params),
        normalization_ratio(CombState::Beta, params),
    ];

    let mut linf = [None, None];
    if cfg.oracle {
        let opts = cfg.oracle_options();
        for (k, state) in [CombState::Alpha, CombState::Beta].into_iter().enumerate() {
            let o = fourier_oracle_profile(state, window, params, &opts)?;
            linf[k] = Some(relative_linf(&profiles[k], &o)?);
            let mut c = comments.clone();
            c.push(format!("oracle matched = {}, envelope_widen = {}", opts.matched, opts.envelope_widen));
            write_profile_grid(&cfg.out.join(format!("w_{}_oracle.csv", state.name())), &c, &o, cfg.precision)?;
        }
    }

    let mut sink = CsvSink::create(&cfg.out.join("report.csv"), &comments, &["quantity", "state", "value"], cfg.precision)?;
    for (k, state) in ["alpha", "beta"].into_iter().enumerate() {
        sink.row(&["tei_time", state], &[teis[k]])?;
        sink.row(&["peak_spacing", state], &[spacing[k].unwrap_or(f64::NAN)])?;
        sink.row(&["normalization_ratio", state], &[ratios[k]])?;
        if let Some(l) = linf[k] {
            sink.row(&["oracle_linf", state], &[l])?;
        }
    }
    sink.finish()?;

    let outcome = BiphotonOutcome {
        tei_alpha: teis[0],
        tei_beta: teis[1],
        peak_spacing_alpha: spacing[0],
        peak_spacing_beta: spacing[1],
        normalization_ratio_alpha: ratios[0],
        normalization_ratio_beta: ratios[1],
        oracle_linf_alpha: linf[0],
        oracle_linf_beta: linf[1],
        reports,
    };
    write_json(&cfg.out.join("report.json"), &outcome)?;
    Ok(outcome)
}

fn check(name: &'static str, limit: f64, f: impl FnOnce() -> Result<f64>, ok: impl FnOnce(f64) -> bool) -> CheckResult {
    match f() {
        Ok(v) => CheckResult {
            name,
            passed: v.is_finite() && ok(v),
            value: Some(v),
            limit,
            detail: String::new(),
        },
        Err(e) => CheckResult {
            name,
            passed: false,
            value: None,
            limit,
            detail: e.to_string(),
        },
    }
}

fn gaussian_pdf(x: f64, var: f64) -> f64 {
    (-0.5 * x * x / var).exp() / (2.0 * std::f64::consts::PI * var).sqrt()
}

/// Runs the invariant suite. `selftest_grid_scale > 1` coarsens every
/// quadrature grid by that factor.
pub fn selftest(cfg: &RunConfig) -> SelftestSummary {
    let s = cfg.selftest_grid_scale;
    let pts = |span: f64, step: f64| ((span / (step * s)).round() as usize).max(2) + 1;
    let mut checks = Vec::new();

    checks.push(check(
        "gaussian_entropy",
        1e-4,
        || {
            let axis = Axis1D::new(-10.0, 10.0, pts(20.0, 0.01))?;
            let m = Marginal1D::from_fn(axis, |x| gaussian_pdf(x, 1.0))?.normalized()?;
            let exact = 0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E).log2();
            Ok((entropy_continuous(&m) - exact).abs())
        },
        |v| v <= 1e-4,
    ));

    checks.push(check(
        "product_grid_mi",
        1e-9,
        || {
            let axis = Axis1D::new(-8.0, 8.0, pts(16.0, 0.05))?;
            let g = JointGrid::from_fn(axis, axis, |x, y| gaussian_pdf(x, 1.0) * gaussian_pdf(y, 2.0))?;
            mutual_information(&crate::numerics::normalize(&g)?)
        },
        |v| v <= 1e-9,
    ));

    let rho = 0.9f64;
    let gaussian_mi = || -> Result<f64> {
        let axis = Axis1D::new(-8.0, 8.0, pts(16.0, 0.02))?;
        let det = 1.0 - rho * rho;
        let g = JointGrid::from_fn(axis, axis, |x, y| {
            (-(x * x - 2.0 * rho * x * y + y * y) / (2.0 * det)).exp()
        })?;
        mutual_information(&crate::numerics::normalize(&g)?)
    };
    checks.push(check("mi_nonnegative", 0.0, gaussian_mi, |v| v >= 0.0));
    checks.push(check(
        "gaussian_mi_analytic",
        1e-3,
        || Ok((gaussian_mi()? + 0.5 * (1.0 - rho * rho).log2()).abs()),
        |v| v <= 1e-3,
    ));

    checks.push(check(
        "gram_off_diagonal",
        1e-20,
        || {
            let p = crate::talbot::TalbotParams::new(10, 0.998)?;
            Ok(max_off_diagonal(&TalbotBasis::adaptive(&p)?.gram_matrix()))
        },
        |v| v < 1e-20,
    ));

    checks.push(check(
        "gram_diagonal_quadrature",
        1e-9,
        || {
            let p = crate::talbot::TalbotParams::new(4, 0.998)?;
            let g = TalbotBasis::adaptive(&p)?.gram_matrix_quadrature(0.25 * s)?;
            Ok((0..4).map(|d| (g[(d, d)] - 1.0).abs()).fold(0.0, f64::max))
        },
        |v| v <= 1e-9,
    ));

    checks.push(check(
        "talbot_direct_vs_patch",
        1e-3,
        || {
            let p = crate::talbot::TalbotParams::new(3, 0.9998)?;
            let direct = tei_position(&p, TeiPath::Direct { m_max: 2, step_fraction: 0.5 * s })?;
            let patch = tei_position(&p, TeiPath::Patch)?;
            Ok((direct - patch).abs())
        },
        |v| v <= 1e-3,
    ));

    checks.push(check(
        "svne_vs_eigen",
        1e-10,
        || {
            let c = coeff_matrix(&crate::talbot::TalbotParams::new(10, 0.998)?)?;
            let eig = subsystem_density(&c).symmetric_eigen();
            let w: Vec<f64> = eig.eigenvalues.iter().map(|x| x.max(0.0)).collect();
            Ok((svne(&c) - crate::numerics::shannon_bits(&w)).abs())
        },
        |v| v <= 1e-10,
    ));

    checks.push(check(
        "cglmp_two_qubit",
        1e-9,
        || {
            let c = coeff_matrix(&crate::talbot::TalbotParams::new(2, 1.0)?)?;
            Ok((cglmp_id(&c)? - 2.0 * std::f64::consts::SQRT_2).abs())
        },
        |v| v <= 1e-9,
    ));

    checks.push(check(
        "cglmp_local_bound",
        2.0 + 1e-9,
        || {
            (2..=10)
                .map(|d| cglmp_id(&coeff_matrix(&crate::talbot::TalbotParams::new(d, 0.0)?)?))
                .try_fold(f64::NEG_INFINITY, |m, v| v.map(|v| m.max(v)))
        },
        |v| v <= 2.0 + 1e-9,
    ));

    let bp = crate::biphoton::BiphotonParams::calibrated();
    let oracle_grid = ((1024.0 / s).round() as usize).max(2);
    for (name, state) in [("oracle_alpha", CombState::Alpha), ("oracle_beta", CombState::Beta)] {
        checks.push(check(
            name,
            1e-3,
            || {
                let w = TimeWindow::in_tooth_units(&bp, 10.0, oracle_grid);
                let c = closed_form_profile(state, &w, &bp)?;
                let o = fourier_oracle_profile(state, &w, &bp, &Default::default())?;
                relative_linf(&c, &o)
            },
            |v| v <= 1e-3,
        ));
    }

    let w = TimeWindow::in_tooth_units(&bp, 10.0, ((4096.0 / s).round() as usize).max(2));
    checks.push(check(
        "peak_interleave",
        w.step(),
        || {
            let sa = mean_peak_spacing(&find_peaks(&closed_form_profile(CombState::Alpha, &w, &bp)?, PEAK_THRESHOLD));
            let sb = mean_peak_spacing(&find_peaks(&closed_form_profile(CombState::Beta, &w, &bp)?, PEAK_THRESHOLD));
            match (sa, sb) {
                (Some(a), Some(b)) => Ok((b - a / 2.0).abs()),
                _ => Err(Error::DegenerateDistribution),
            }
        },
        |v| v <= w.step(),
    ));

    checks.push(check(
        "biphoton_normalization",
        1e-6,
        || {
            Ok([CombState::Alpha, CombState::Beta]
                .into_iter()
                .map(|st| (normalization_ratio(st, &bp) - 1.0).abs())
                .fold(0.0, f64::max))
        },
        |v| v <= 1e-6,
    ));

    checks.push(check(
        "csv_float_roundtrip",
        1e-12,
        || {
            [std::f64::consts::PI, -1.0 / 3.0, 6.02e-23, 1.0e300]
                .iter()
                .map(|x| {
                    let back: f64 = format_sci(*x, 12)
                        .parse()
                        .map_err(|_| Error::Config("unparsable float".into()))?;
                    Ok(((back - x) / x).abs())
                })
                .try_fold(0.0f64, |m, v: Result<f64>| v.map(|v| m.max(v)))
        },
        |v| v <= 1e-12,
    ));

    let passed = checks.iter().all(|c| c.passed);
    SelftestSummary { passed, checks }
}

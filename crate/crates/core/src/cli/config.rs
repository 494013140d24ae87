//! Flat `key = value` run configuration. `#` starts a comment; keys are
//! case-sensitive; list values are comma-separated.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::biphoton::{BiphotonParams, OracleOptions, TimeWindow};
use crate::error::{Error, Result};
use crate::talbot::{TeiPath, SWEEP_CORRELATIONS};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

pub const KNOWN_KEYS: &[&str] = &[
    "D",
    "R",
    "kappa_plus",
    "tei_path",
    "pump_hz",
    "comb_spacing_hz",
    "tooth_width_hz",
    "difference_hz",
    "difference_width_hz",
    "n_teeth",
    "window_T",
    "window_T_units",
    "n_grid",
    "oracle",
    "oracle_envelope_widen",
    "float_format",
    "threads",
    "out",
    "selftest_grid_scale",
];

pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", no + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if !KNOWN_KEYS.contains(&k) {
            return Err(Error::Config(format!("line {}: unknown key `{k}`", no + 1)));
        }
        if map.insert(k.to_string(), v.to_string()).is_some() {
            return Err(Error::Config(format!("line {}: duplicate key `{k}`", no + 1)));
        }
    }
    Ok(map)
}

pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config_text(&text)
}

fn parse_one<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Config(format!("`{key}`: cannot parse `{v}`")))
}

fn parse_list<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>> {
    v.split(',').map(|s| parse_one(key, s.trim())).collect()
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(Error::Config(format!("`{key}`: expected true/false, got `{v}`"))),
    }
}

/// Fully resolved settings for one CLI invocation.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    #[serde(skip)]
    pub out: PathBuf,
    pub float_format: String,
    #[serde(skip)]
    pub precision: usize,
    pub threads: Option<usize>,
    pub slits: Vec<usize>,
    pub correlations: Vec<f64>,
    pub kappa_plus: Option<f64>,
    #[serde(skip)]
    pub tei_path: TeiPath,
    pub biphoton: BiphotonParams,
    pub window: TimeWindow,
    pub oracle: bool,
    pub oracle_envelope_widen: f64,
    pub selftest_grid_scale: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let biphoton = BiphotonParams::calibrated();
        Self {
            out: PathBuf::from("out"),
            float_format: "%.12e".into(),
            precision: 12,
            threads: None,
            slits: (2..=10).collect(),
            correlations: SWEEP_CORRELATIONS.to_vec(),
            kappa_plus: None,
            tei_path: TeiPath::Patch,
            window: TimeWindow::default_for(&biphoton),
            biphoton,
            oracle: false,
            oracle_envelope_widen: 1.0,
            selftest_grid_scale: 1.0,
        }
    }
}

impl RunConfig {
    /// Applies `key = value` pairs in a fixed order so derived defaults
    /// (window from Δω) see the final parameters.
    pub fn apply(&mut self, map: &BTreeMap<String, String>) -> Result<()> {
        let get = |k: &str| map.get(k).map(String::as_str);
        if let Some(v) = get("D") {
            self.slits = parse_list("D", v)?;
        }
        if let Some(v) = get("R") {
            self.correlations = parse_list("R", v)?;
        }
        if let Some(v) = get("kappa_plus") {
            self.kappa_plus = Some(parse_one("kappa_plus", v)?);
        }
        if let Some(v) = get("tei_path") {
            self.tei_path = match v {
                "patch" => TeiPath::Patch,
                "direct" => TeiPath::DEFAULT_DIRECT,
                _ => return Err(Error::Config(format!("`tei_path`: expected patch or direct, got `{v}`"))),
            };
        }
        let b = &mut self.biphoton;
        for (key, field) in [
            ("pump_hz", &mut b.omega_p),
            ("comb_spacing_hz", &mut b.omega_bar),
            ("tooth_width_hz", &mut b.delta_omega),
            ("difference_hz", &mut b.omega_0),
            ("difference_width_hz", &mut b.delta_big_omega),
        ] {
            if let Some(v) = get(key) {
                *field = TWO_PI * parse_one::<f64>(key, v)?;
            }
        }
        if let Some(v) = get("n_teeth") {
            b.n_teeth = parse_one("n_teeth", v)?;
        }
        self.window = TimeWindow::default_for(&self.biphoton);
        if let Some(v) = get("window_T_units") {
            self.window.half_width = parse_one::<f64>("window_T_units", v)? / self.biphoton.delta_omega;
        }
        if let Some(v) = get("window_T") {
            self.window.half_width = parse_one("window_T", v)?;
        }
        if let Some(v) = get("n_grid") {
            self.window.n_grid = parse_one("n_grid", v)?;
        }
        if let Some(v) = get("oracle") {
            self.oracle = parse_bool("oracle", v)?;
        }
        if let Some(v) = get("oracle_envelope_widen") {
            self.oracle_envelope_widen = parse_one("oracle_envelope_widen", v)?;
        }
        if let Some(v) = get("float_format") {
            self.precision = super::output::parse_float_format(v)?;
            self.float_format = v.to_string();
        }
        if let Some(v) = get("threads") {
            self.threads = Some(parse_one("threads", v)?);
        }
        if let Some(v) = get("out") {
            self.out = PathBuf::from(v);
        }
        if let Some(v) = get("selftest_grid_scale") {
            let s: f64 = parse_one("selftest_grid_scale", v)?;
            if !(s.is_finite() && s >= 1.0) {
                return Err(Error::Config("`selftest_grid_scale` must be ≥ 1".into()));
            }
            self.selftest_grid_scale = s;
        }
        Ok(())
    }

    pub fn oracle_options(&self) -> OracleOptions {
        OracleOptions {
            envelope_widen: self.oracle_envelope_widen,
            ..OracleOptions::default()
        }
    }

    pub fn talbot_params(&self, slits: usize, correlation: f64) -> Result<crate::talbot::TalbotParams> {
        let mut p = crate::talbot::TalbotParams::new(slits, correlation)?;
        if let Some(k) = self.kappa_plus {
            p.kappa_plus = k;
            p.validate()?;
        }
        Ok(p)
    }

    pub fn validate_sweep(&self) -> Result<()> {
        if self.slits.is_empty() || self.correlations.is_empty() {
            return Err(Error::Config("empty D or R list".into()));
        }
        if let Some(d) = self.slits.iter().find(|d| !(2..=12).contains(*d)) {
            return Err(Error::param("D", format!("{d} outside [2, 12]")));
        }
        if let Some(r) = self.correlations.iter().find(|r| !(0.0..=1.0).contains(*r)) {
            return Err(Error::param("R", format!("{r} outside [0, 1]")));
        }
        Ok(())
    }
}

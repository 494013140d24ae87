use serde::Serialize;

/// One indicator value with the settings that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct EntanglementReport {
    /// One of `tei_position`, `tei_discrete`, `svne`, `i_d`, `tei_time`.
    pub indicator: &'static str,
    pub value: f64,
    pub parameters: serde_json::Value,
    pub timing_seconds: f64,
}

impl EntanglementReport {
    pub fn new<P: Serialize>(indicator: &'static str, value: f64, params: &P, timing_seconds: f64) -> Self {
        Self {
            indicator,
            value,
            parameters: serde_json::to_value(params).unwrap_or(serde_json::Value::Null),
            timing_seconds,
        }
    }
}

/// Outcome of one selftest invariant.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub value: Option<f64>,
    pub limit: f64,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestSummary {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

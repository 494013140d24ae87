use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Formats `x` like C `printf("%.{precision}e")`: the exponent carries a sign
/// and at least two digits.
pub fn format_sci(x: f64, precision: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:.precision$e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// Parses a `%.<p>e` format string.
pub fn parse_float_format(format: &str) -> Result<usize> {
    format.strip_prefix("%.")
        .and_then(|r| r.strip_suffix('e'))
        .and_then(|p| p.parse::<usize>().ok())
        .filter(|p| *p <= 17)
        .ok_or_else(|| Error::Config(format!("unsupported float format `{format}` (expected %.<p>e)")))
}

/// CSV file with `#` metadata lines ahead of the header row.
pub struct CsvSink {
    inner: csv::Writer<BufWriter<File>>,
    precision: usize,
    scratch: Vec<String>,
}

impl CsvSink {
    pub fn create(path: &Path, comments: &[String], header: &[&str], precision: usize) -> Result<Self> {
        let mut file = BufWriter::with_capacity(1 << 20, File::create(path)?);
        for c in comments {
            writeln!(file, "# {c}")?;
        }
        let mut inner = csv::WriterBuilder::new().from_writer(file);
        inner.write_record(header)?;
        Ok(Self {
            inner,
            precision,
            scratch: Vec::new(),
        })
    }

    /// Writes leading text fields followed by formatted floats.
    pub fn row(&mut self, labels: &[&str], values: &[f64]) -> Result<()> {
        self.scratch.clear();
        self.scratch.extend(labels.iter().map(|s| s.to_string()));
        self.scratch.extend(values.iter().map(|v| format_sci(*v, self.precision)));
        self.inner.write_record(&self.scratch)?;
        Ok(())
    }

    pub fn finish(self) -> Result<()> {
        let mut w = self.inner.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        w.flush()?;
        Ok(())
    }
}

/// `key = value` comment lines for every leaf field of a serializable value;
/// nested objects use dotted keys and floats use `%.12e`.
pub fn echo_params<T: serde::Serialize>(prefix: &str, value: &T) -> Vec<String> {
    let mut out = Vec::new();
    if let Ok(v) = serde_json::to_value(value) {
        flatten(prefix, &v, &mut out);
    }
    out
}

fn render(v: &serde_json::Value) -> String {
    use serde_json::Value;
    match v {
        Value::Number(n) if n.is_f64() => format_sci(n.as_f64().unwrap_or(f64::NAN), 12),
        Value::Array(items) => items.iter().map(render).collect::<Vec<_>>().join(", "),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(key: &str, v: &serde_json::Value, out: &mut Vec<String>) {
    match v {
        serde_json::Value::Object(map) => {
            for (k, child) in map {
                let key = if key.is_empty() { k.clone() } else { format!("{key}.{k}") };
                flatten(&key, child, out);
            }
        }
        leaf => {
            let mut line = String::new();
            let _ = write!(line, "{key} = {}", render(leaf));
            out.push(line);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_c_printf() {
        assert_eq!(format_sci(0.0, 12), "0.000000000000e+00");
        assert_eq!(format_sci(1.0, 12), "1.000000000000e+00");
        assert_eq!(format_sci(-1.234567890123456, 12), "-1.234567890123e+00");
        assert_eq!(format_sci(1.5e-300, 12), "1.500000000000e-300");
        assert_eq!(format_sci(6.02214076e23, 3), "6.022e+23");
        assert_eq!(format_sci(1.234e-5, 12), "1.234000000000e-05");
        assert_eq!(format_sci(f64::NAN, 12), "nan");
    }

    #[test]
    fn echo_flattens_nested_values() {
        #[derive(serde::Serialize)]
        struct Inner {
            x: f64,
        }
        #[derive(serde::Serialize)]
        struct Outer {
            n: usize,
            list: Vec<f64>,
            inner: Inner,
        }
        let lines = echo_params("", &Outer { n: 3, list: vec![0.5, 1.0], inner: Inner { x: 2.0 } });
        assert_eq!(
            lines,
            vec![
                "inner.x = 2.000000000000e+00",
                "list = 5.000000000000e-01, 1.000000000000e+00",
                "n = 3",
            ]
        );
    }

    #[test]
    fn float_format_strings() {
        assert_eq!(parse_float_format("%.12e").unwrap(), 12);
        assert!(parse_float_format("%12e").is_err());
        assert!(parse_float_format("%.12f").is_err());
    }
}

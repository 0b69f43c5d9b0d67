//! Result envelope and the text, JSON and CSV renderings.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use hullwalk::tables::RatioTable;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub mode: String,
    pub tolerance: Option<f64>,
    pub stderr: Option<f64>,
    pub seed: Option<u64>,
}

/// Envelope shared by every command except `tables`, which emits its own
/// versioned table document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandResult {
    pub schema_version: u32,
    pub command: String,
    pub params: Value,
    pub result: Value,
    pub provenance: Provenance,
}

impl CommandResult {
    pub fn new(command: &str, params: Value, result: Value, provenance: Provenance) -> Self {
        CommandResult { schema_version: SCHEMA_VERSION, command: command.into(), params, result, provenance }
    }

    /// `field,value` rows with dotted field names.
    pub fn to_csv(&self) -> String {
        let doc = serde_json::to_value(self).expect("result serializes");
        let mut rows = Vec::new();
        flatten("", &doc, &mut rows);
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["field", "value"]).expect("in-memory write");
        for (k, v) in rows {
            w.write_record([k, v]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        Value::Null => out.push((prefix.to_string(), String::new())),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

pub enum Rendered {
    Command { result: CommandResult, headline: String },
    Table(RatioTable),
}

impl Rendered {
    pub fn render(&self, format: Format) -> String {
        match (self, format) {
            (Rendered::Command { result, headline }, Format::Text) => text(headline, result),
            (Rendered::Command { result, .. }, Format::Json) => {
                serde_json::to_string_pretty(result).expect("result serializes") + "\n"
            }
            (Rendered::Command { result, .. }, Format::Csv) => result.to_csv(),
            (Rendered::Table(t), Format::Text) => t.to_string(),
            (Rendered::Table(t), Format::Json) => t.to_json() + "\n",
            (Rendered::Table(t), Format::Csv) => t.to_csv(),
        }
    }
}

fn text(headline: &str, r: &CommandResult) -> String {
    let mut s = format!("{headline}\n");
    if let Value::Object(map) = &r.result {
        for (k, v) in map {
            s.push_str(&format!("  {k}: {}\n", text_value(v)));
        }
    }
    let p = &r.provenance;
    s.push_str(&format!("  mode: {}\n", p.mode));
    if let Some(t) = p.tolerance {
        s.push_str(&format!("  tolerance: {}\n", sig6(t)));
    }
    if let Some(seed) = p.seed {
        s.push_str(&format!("  seed: {seed}\n"));
    }
    s
}

fn text_value(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => sig6(n.as_f64().unwrap_or(f64::NAN)),
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => format!("[{}]", items.iter().map(text_value).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

/// Six significant digits, trailing zeros trimmed, scientific notation for
/// very small or very large magnitudes.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&exp) {
        let s = format!("{x:.5e}");
        let (mantissa, e) = s.split_once('e').expect("exponent present");
        return format!("{}e{e}", trim_zeros(mantissa));
    }
    let decimals = (5 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(0.3125), "0.3125");
        assert_eq!(sig6(0.8090169943749475), "0.809017");
        assert_eq!(sig6(1.0), "1");
        assert_eq!(sig6(123456.7), "123457");
        assert_eq!(sig6(1234567.0), "1.23457e6");
        assert_eq!(sig6(0.0000123456789), "1.23457e-5");
        assert_eq!(sig6(-0.5), "-0.5");
        assert_eq!(sig6(0.0), "0");
    }

    #[test]
    fn csv_flattens_nested_fields() {
        let r = CommandResult::new(
            "hull",
            json!({ "steps": 2 }),
            json!({ "vertices": [[0, 0], [1, 1]], "degenerate": true }),
            Provenance { mode: "exact".into(), tolerance: None, stderr: None, seed: None },
        );
        let csv = r.to_csv();
        assert!(csv.starts_with("field,value\n"));
        assert!(csv.contains("result.vertices.1.0,1\n"));
        assert!(csv.contains("result.degenerate,true\n"));
        assert!(csv.contains("provenance.seed,\n"));
    }

    #[test]
    fn json_round_trip() {
        let r = CommandResult::new(
            "pn",
            json!({ "k": 2, "m": 1, "n": 2 }),
            json!({ "value": "5/16", "value_f64": 0.3125 }),
            Provenance { mode: "exact".into(), tolerance: None, stderr: None, seed: None },
        );
        let back: CommandResult = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}

//! Report assembly and rendering.

use std::fmt::Write as _;

use grpoly_core::verifiers::Verdict;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Everything a command produces. `wall_time_ms` is only filled in on request so
/// that default output is reproducible byte for byte.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub verdict: Verdict,
    pub versions: Value,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str, inputs: Value, results: Value, verdict: Verdict, seed: u64) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            results,
            verdict,
            versions: serde_json::json!({
                "grpoly-cli": env!("CARGO_PKG_VERSION"),
                "grpoly-core": grpoly_core::VERSION,
            }),
            seed,
            wall_time_ms: None,
        }
    }

    pub fn exit_code(&self) -> u8 {
        exit_code(self.verdict)
    }

    pub fn render(&self, format: Format) -> String {
        let value = canonical(&serde_json::to_value(self).expect("report serializes"));
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&value).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = String::new();
                render_text(&mut s, &value, 0);
                s
            }
        }
    }
}

pub fn exit_code(verdict: Verdict) -> u8 {
    match verdict {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
        Verdict::InconclusiveBounded => 3,
    }
}

/// Rebuilds every object with its keys in sorted order.
pub fn canonical(v: &Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            let mut out = Map::new();
            for k in keys {
                out.insert(k.clone(), canonical(&m[k]));
            }
            Value::Object(out)
        }
        Value::Array(a) => Value::Array(a.iter().map(canonical).collect()),
        other => other.clone(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_text(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_scalar(x) {
                    let _ = writeln!(out, "{pad}{k}: {}", scalar(x));
                } else if matches!(x, Value::Array(a) if a.iter().all(is_scalar))
                    || matches!(x, Value::Object(o) if o.is_empty())
                {
                    let _ = writeln!(out, "{pad}{k}: {x}");
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    render_text(out, x, depth + 1);
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if is_scalar(x) || matches!(x, Value::Array(_)) {
                    let _ = writeln!(out, "{pad}- {x}");
                } else {
                    let _ = writeln!(out, "{pad}-");
                    render_text(out, x, depth + 1);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_are_sorted() {
        let v = canonical(&json!({"b": 1, "a": {"z": [1, {"y": 2, "x": 3}], "c": null}}));
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"a":{"c":null,"z":[1,{"x":3,"y":2}]},"b":1}"#
        );
    }

    #[test]
    fn text_rendering() {
        let r = Report::new(
            "analyze",
            json!({"file": "C2.json"}),
            json!({"order": 2, "series": [2, 1], "checks": [{"name": "x", "verdict": "pass"}]}),
            Verdict::Pass,
            7,
        );
        let t = r.render(Format::Text);
        assert!(t.contains("command: analyze\n"));
        assert!(t.contains("  order: 2\n"));
        assert!(t.contains("  series: [2,1]\n"));
        assert!(t.contains("    -\n      name: x\n"));
        assert!(t.contains("verdict: pass\n"));
        assert_eq!(r.exit_code(), 0);
        assert_eq!(exit_code(Verdict::InconclusiveBounded), 3);
    }
}

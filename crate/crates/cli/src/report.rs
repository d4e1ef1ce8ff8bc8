//! Reports are built once as ordered JSON and rendered either as JSON or as
//! indented text, so both formats carry the same fields.

use std::fmt::Display;

use serde_json::{Map, Value};

pub const SCHEMA_VERSION: &str = "1";

/// An exact string for any number or rational.
pub fn s(v: impl Display) -> Value {
    Value::String(v.to_string())
}

pub fn obj(pairs: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

pub struct Report {
    command: &'static str,
    input: Value,
    sections: Vec<(&'static str, Value)>,
    warnings: Vec<String>,
    seconds: Option<f64>,
}

impl Report {
    pub fn new(command: &'static str, input: Value) -> Self {
        Report { command, input, sections: Vec::new(), warnings: Vec::new(), seconds: None }
    }

    pub fn section(&mut self, name: &'static str, v: Value) {
        self.sections.push((name, v));
    }

    pub fn warn(&mut self, w: impl Into<String>) {
        self.warnings.push(w.into());
    }

    pub fn set_timing(&mut self, seconds: f64) {
        self.seconds = Some(seconds);
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema_version".into(), s(SCHEMA_VERSION));
        m.insert("command".into(), s(self.command));
        m.insert("input".into(), self.input.clone());
        for (k, v) in &self.sections {
            m.insert(k.to_string(), v.clone());
        }
        m.insert("warnings".into(), Value::Array(self.warnings.iter().map(s).collect()));
        if let Some(t) = self.seconds {
            m.insert("timing".into(), obj(vec![("seconds", s(format!("{:.3}", t)))]));
        }
        Value::Object(m)
    }
}

pub fn to_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(t) if !t.contains('\n') => Some(t.clone()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Null => Some("none".into()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

fn push_value(out: &mut String, indent: usize, key: &str, v: &Value) {
    let pad = " ".repeat(indent);
    if let Some(t) = scalar(v) {
        out.push_str(&format!("{}{}: {}\n", pad, key, t));
        return;
    }
    match v {
        Value::String(t) => {
            out.push_str(&format!("{}{}:\n", pad, key));
            for line in t.lines() {
                out.push_str(&format!("{}  {}\n", pad, line));
            }
        }
        Value::Array(items) if items.iter().all(|i| scalar(i).is_some()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            out.push_str(&format!("{}{}: [{}]\n", pad, key, parts.join(", ")));
        }
        Value::Array(items) => {
            out.push_str(&format!("{}{}:\n", pad, key));
            for item in items {
                match item {
                    Value::Object(m) => {
                        let inline: Vec<String> = m
                            .iter()
                            .map(|(k, v)| scalar(v).map(|t| format!("{}={}", k, t)))
                            .collect::<Option<_>>()
                            .unwrap_or_default();
                        if inline.len() == m.len() {
                            out.push_str(&format!("{}  - {}\n", pad, inline.join(" ")));
                        } else {
                            out.push_str(&format!("{}  -\n", pad));
                            for (k, v) in m {
                                push_value(out, indent + 4, k, v);
                            }
                        }
                    }
                    other => push_value(out, indent + 2, "-", other),
                }
            }
        }
        Value::Object(m) => {
            out.push_str(&format!("{}{}:\n", pad, key));
            for (k, v) in m {
                push_value(out, indent + 2, k, v);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

/// Indented `key: value` lines; the schema version is left to JSON.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(m) = v {
        for (k, v) in m {
            if k == "schema_version" || (k == "warnings" && v.as_array().is_some_and(|a| a.is_empty())) {
                continue;
            }
            push_value(&mut out, 0, k, v);
        }
    }
    out
}

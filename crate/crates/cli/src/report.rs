//! The value every command produces, and its two renderers.

use std::fmt::Write as _;

use abelchi_core::rational::format_rational;
use abelchi_core::{Classification, ExtLimit, RatFun};
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub values: Map<String, Value>,
    pub verdicts: Vec<Verdict>,
}

impl Report {
    pub fn new(command: &str, input: Option<&str>) -> Self {
        Report {
            command: command.into(),
            input: input.map(Into::into),
            values: Map::new(),
            verdicts: Vec::new(),
        }
    }

    pub fn value(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.values.insert(key.into(), v.into());
        self
    }

    pub fn verdict(&mut self, name: &str, pass: bool, detail: Option<String>) -> &mut Self {
        self.verdicts.push(Verdict {
            name: name.into(),
            pass,
            detail,
        });
        self
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}

pub fn limit_value(l: &ExtLimit) -> Value {
    Value::String(l.to_string())
}

pub fn ratfun_value(f: &RatFun) -> Value {
    let coeffs =
        |p: &abelchi_core::Poly| p.coeffs().iter().map(format_rational).collect::<Vec<_>>();
    json!({ "num": coeffs(f.num()), "den": coeffs(f.den()) })
}

pub fn classification_value(c: &Classification) -> Value {
    serde_json::to_value(c).expect("plain struct")
}

/// Pretty JSON: one object for a single report, an array otherwise.
pub fn render_json(reports: &[Report]) -> String {
    let v = match reports {
        [one] => serde_json::to_value(one),
        many => serde_json::to_value(many),
    }
    .expect("reports are plain data");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn human_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn render_human(reports: &[Report], timestamp: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(t) = timestamp {
        let _ = writeln!(out, "# generated {t}");
    }
    for (i, r) in reports.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match &r.input {
            Some(input) => {
                let _ = writeln!(out, "{} {}", r.command, input);
            }
            None => {
                let _ = writeln!(out, "{}", r.command);
            }
        }
        for (k, v) in &r.values {
            match v {
                Value::Object(fields) => {
                    let _ = writeln!(out, "  {k}:");
                    for (fk, fv) in fields {
                        let _ = writeln!(out, "    {fk}: {}", human_scalar(fv));
                    }
                }
                Value::Array(rows) if !rows.is_empty() && rows.iter().all(Value::is_array) => {
                    let _ = writeln!(out, "  {k}:");
                    for row in rows {
                        let cells: Vec<String> = row
                            .as_array()
                            .into_iter()
                            .flatten()
                            .map(human_scalar)
                            .collect();
                        let _ = writeln!(out, "    {}", cells.join("  "));
                    }
                }
                _ => {
                    let _ = writeln!(out, "  {k}: {}", human_scalar(v));
                }
            }
        }
        for v in &r.verdicts {
            let tag = if v.pass { "PASS" } else { "FAIL" };
            match &v.detail {
                Some(d) => {
                    let _ = writeln!(out, "  {tag} {}: {d}", v.name);
                }
                None => {
                    let _ = writeln!(out, "  {tag} {}", v.name);
                }
            }
        }
    }
    out
}

//! Serializable scenario reports with deterministic rendering.
//!
//! JSON output is a single object `{checks, inputs, outputs, scenario}`
//! with all object keys sorted, floats rendered in scientific notation with
//! 16 significant digits, and a trailing newline. Identical reports render
//! to identical bytes.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// A report value: float, integer, string, or flag.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    F64(f64),
    Int(i64),
    Str(String),
    Bool(bool),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::F64(x)
    }
}

impl From<i64> for Value {
    fn from(x: i64) -> Self {
        Value::Int(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Str(x.to_string())
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

/// One named comparison: pass iff `|observed - expected| <= tolerance`
/// (`within`) or `observed <= tolerance` (`upper_bound`).
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub expected: f64,
    pub observed: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn within(name: impl Into<String>, expected: f64, observed: f64, tolerance: f64) -> Self {
        let pass = (observed - expected).abs() <= tolerance;
        Self {
            name: name.into(),
            expected,
            observed,
            tolerance,
            pass,
        }
    }

    /// One-sided bound check with `expected` fixed at zero.
    pub fn upper_bound(name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            expected: 0.0,
            observed,
            tolerance: bound,
            pass: observed <= bound,
        }
    }
}

/// Result record of one scenario run.
#[derive(Clone, Debug, Default)]
pub struct ScenarioReport {
    pub scenario: String,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
}

impl ScenarioReport {
    pub fn new(scenario: impl Into<String>) -> Self {
        Self {
            scenario: scenario.into(),
            ..Default::default()
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn output(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.outputs.insert(key.to_string(), value.into());
        self
    }

    pub fn check(&mut self, check: Check) -> &mut Self {
        self.checks.push(check);
        self
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    /// Reject non-finite numeric content before serialization.
    pub fn validate_finite(&self) -> Result<()> {
        let bad = |v: &Value| matches!(v, Value::F64(x) if !x.is_finite());
        for (key, value) in self.inputs.iter().chain(self.outputs.iter()) {
            if bad(value) {
                return Err(Error::InvalidSpec(format!(
                    "report field {key} is not finite"
                )));
            }
        }
        for check in &self.checks {
            if !check.expected.is_finite()
                || !check.observed.is_finite()
                || !check.tolerance.is_finite()
            {
                return Err(Error::InvalidSpec(format!(
                    "report check {} carries a non-finite number",
                    check.name
                )));
            }
        }
        Ok(())
    }

    /// Deterministic JSON rendering, newline-terminated.
    pub fn to_json(&self) -> Result<String> {
        self.validate_finite()?;
        let mut out = String::new();
        out.push_str("{\n  \"checks\": [");
        for (i, check) in self.checks.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str("\n    {\n");
            out.push_str(&format!(
                "      \"expected\": {},\n",
                fmt_f64(check.expected)
            ));
            out.push_str(&format!("      \"name\": {},\n", quote(&check.name)));
            out.push_str(&format!(
                "      \"observed\": {},\n",
                fmt_f64(check.observed)
            ));
            out.push_str(&format!("      \"pass\": {},\n", check.pass));
            out.push_str(&format!(
                "      \"tolerance\": {}\n    }}",
                fmt_f64(check.tolerance)
            ));
        }
        if self.checks.is_empty() {
            out.push_str("],\n");
        } else {
            out.push_str("\n  ],\n");
        }
        render_map(&mut out, "inputs", &self.inputs);
        out.push_str(",\n");
        render_map(&mut out, "outputs", &self.outputs);
        out.push_str(",\n");
        out.push_str(&format!("  \"scenario\": {}\n}}\n", quote(&self.scenario)));
        Ok(out)
    }
}

fn render_map(out: &mut String, name: &str, map: &BTreeMap<String, Value>) {
    out.push_str(&format!("  \"{name}\": {{"));
    for (i, (key, value)) in map.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!("\n    {}: {}", quote(key), render_value(value)));
    }
    if map.is_empty() {
        out.push('}');
    } else {
        out.push_str("\n  }");
    }
}

fn render_value(value: &Value) -> String {
    match value {
        Value::F64(x) => fmt_f64(*x),
        Value::Int(x) => x.to_string(),
        Value::Str(s) => quote(s),
        Value::Bool(b) => b.to_string(),
    }
}

/// Scientific notation with 16 significant digits; `-0.0` normalized.
pub fn fmt_f64(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.15e}")
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_has_sixteen_significant_digits() {
        assert_eq!(fmt_f64(-1.0), "-1.000000000000000e0");
        assert_eq!(fmt_f64(0.0), "0.000000000000000e0");
        assert_eq!(fmt_f64(-0.0), "0.000000000000000e0");
        let pi = std::f64::consts::PI;
        assert_eq!(fmt_f64(pi), "3.141592653589793e0");
        // Round-trips exactly.
        assert_eq!(fmt_f64(pi).parse::<f64>().unwrap(), pi);
    }

    #[test]
    fn json_is_deterministic_and_sorted() {
        let mut report = ScenarioReport::new("demo");
        report.input("n", 4usize);
        report.input("j", 1.0);
        report.output("beta", std::f64::consts::PI);
        report.check(Check::within("phase", -1.0, -1.0 + 1e-12, 1e-9));
        let a = report.to_json().unwrap();
        let b = report.to_json().unwrap();
        assert_eq!(a, b);
        assert!(a.ends_with('\n'));
        // Keys appear in sorted order.
        let checks_pos = a.find("\"checks\"").unwrap();
        let inputs_pos = a.find("\"inputs\"").unwrap();
        let outputs_pos = a.find("\"outputs\"").unwrap();
        let scenario_pos = a.find("\"scenario\"").unwrap();
        assert!(checks_pos < inputs_pos && inputs_pos < outputs_pos && outputs_pos < scenario_pos);
        let j_pos = a.find("\"j\"").unwrap();
        let n_pos = a.find("\"n\"").unwrap();
        assert!(j_pos < n_pos);
    }

    #[test]
    fn non_finite_rejected() {
        let mut report = ScenarioReport::new("demo");
        report.output("bad", f64::NAN);
        assert!(report.to_json().is_err());
    }

    #[test]
    fn upper_bound_check_semantics() {
        assert!(Check::upper_bound("x", 1e-12, 1e-9).pass);
        assert!(!Check::upper_bound("x", 2e-9, 1e-9).pass);
        assert!(Check::upper_bound("monotone", -0.3, 0.0).pass);
    }

    #[test]
    fn emitted_json_round_trips_through_a_real_parser() {
        let mut report = ScenarioReport::new("demo \"quoted\"\npath");
        report.input("n", 7usize);
        report.input("tiny", 3.0e-308);
        report.input("huge", 1.7e308);
        report.output("negative", -2.5e-17);
        report.output("flag", true);
        report.output("label", "x\ty");
        report.check(Check::within("closed_form", 1.0, 1.0 + 1e-12, 1e-9));
        let text = report.to_json().unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&text).expect("parses");
        assert_eq!(parsed["scenario"], "demo \"quoted\"\npath");
        assert_eq!(parsed["inputs"]["n"], 7);
        assert_eq!(parsed["inputs"]["tiny"].as_f64().unwrap(), 3.0e-308);
        assert_eq!(parsed["inputs"]["huge"].as_f64().unwrap(), 1.7e308);
        assert_eq!(parsed["outputs"]["negative"].as_f64().unwrap(), -2.5e-17);
        assert_eq!(parsed["outputs"]["flag"], true);
        assert_eq!(parsed["outputs"]["label"], "x\ty");
        assert_eq!(parsed["checks"][0]["name"], "closed_form");
        assert!(parsed["checks"][0]["pass"].as_bool().unwrap());
    }
}

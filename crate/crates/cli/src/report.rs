//! Machine-readable reports with deterministic JSON serialization.

use pcoact_core::fdalg::{Element, Tolerance};
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// `null` when the check is not a tolerance test or the residual is not finite.
    pub residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub version: &'static str,
    pub seed: u64,
    pub tolerance: f64,
    pub checks: Vec<Check>,
    /// Keys are kept sorted, so the output is byte-stable.
    pub data: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, seed: u64, tol: Tolerance) -> Self {
        Report { command: command.into(), version: env!("CARGO_PKG_VERSION"), seed, tolerance: tol.get(), checks: Vec::new(), data: Map::new() }
    }

    /// A tolerance test: passes iff `residual ≤ tol`.
    pub fn residual(&mut self, name: &str, residual: f64) {
        let passed = Tolerance(self.tolerance).accepts(residual);
        self.checks.push(Check { name: name.into(), passed, residual: residual.is_finite().then_some(residual) });
    }

    /// A boolean finding with an optional supporting residual.
    pub fn flag(&mut self, name: &str, passed: bool, residual: Option<f64>) {
        let residual = residual.filter(|r| r.is_finite());
        debug_assert!(!passed || residual.is_none_or(|r| r <= self.tolerance), "{name}: a passing check must be within tolerance");
        self.checks.push(Check { name: name.into(), passed, residual });
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.data.insert(key.into(), value.into());
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn exit_code(&self) -> u8 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn clean(x: f64) -> f64 {
    if x.abs() < 1e-15 {
        0.0
    } else {
        x
    }
}

/// Real coordinates when every imaginary part vanishes, `[re, im]` pairs otherwise.
pub fn coords(x: &Element) -> Value {
    if x.coords().iter().all(|z| z.im.abs() < 1e-15) {
        x.coords().iter().map(|z| Value::from(clean(z.re))).collect()
    } else {
        x.coords().iter().map(|z| Value::from(vec![clean(z.re), clean(z.im)])).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_follows_the_checks() {
        let mut r = Report::new("verify", 0, Tolerance::default());
        r.residual("small", 1e-12);
        assert_eq!(r.exit_code(), 0);
        r.residual("large", f64::INFINITY);
        assert_eq!(r.exit_code(), 1);
        assert!(r.to_json().contains("\"residual\": null"));
    }
}

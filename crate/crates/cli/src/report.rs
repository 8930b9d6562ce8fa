use std::collections::BTreeMap;
use std::time::Instant;

use serde_json::{json, Value};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Default tolerances, keyed by residual name. A residual named `base.suffix`
/// is checked against the tolerance of `base`.
const DEFAULT_TOLERANCES: &[(&str, f64)] = &[
    ("pairing_residual", 1e-12),
    ("associativity_residual", 1e-10),
    ("jacobi_residual", 1e-10),
    ("round_trip_residual", 1e-12),
    ("mean_value_residual", 1e-12),
    ("double_check", 1e-12),
    ("radon_roundtrip", 1e-5),
    ("classical_star", 1e-4),
    ("quantum_star", 1e-3),
    ("classical_limit", 1e-10),
    ("poisson_radon", 1e-4),
    ("monotonicity_violation", 0.0),
    ("mean_value_gap", 1e-3),
];

#[derive(Clone, Debug)]
pub struct Tolerances(BTreeMap<String, f64>);

impl Tolerances {
    /// Defaults with `name=value` overrides applied.
    pub fn with_overrides(overrides: &[String]) -> Result<Self, CliError> {
        let mut map: BTreeMap<String, f64> = DEFAULT_TOLERANCES
            .iter()
            .map(|&(k, v)| (k.to_string(), v))
            .collect();
        for o in overrides {
            let (name, value) = o
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("--tol expects name=value, got \"{o}\"")))?;
            let slot = map
                .get_mut(name.trim())
                .ok_or_else(|| CliError::Usage(format!("unknown tolerance \"{}\"", name.trim())))?;
            let v: f64 = value.trim().parse().map_err(|_| {
                CliError::Usage(format!("tolerance \"{name}\" is not a number: \"{value}\""))
            })?;
            if !(v >= 0.0 && v.is_finite()) {
                return Err(CliError::Usage(format!(
                    "tolerance \"{name}\" must be finite and nonnegative"
                )));
            }
            *slot = v;
        }
        Ok(Self(map))
    }

    pub fn get(&self, residual: &str) -> f64 {
        let base = residual.split('.').next().unwrap_or(residual);
        self.0[base]
    }
}

pub struct Report {
    command: String,
    inputs: BTreeMap<String, Value>,
    tolerances: Tolerances,
    used: BTreeMap<String, f64>,
    residuals: BTreeMap<String, f64>,
    values: BTreeMap<String, Value>,
    started: Instant,
}

impl Report {
    pub fn new(command: &str, tolerances: Tolerances) -> Self {
        Self {
            command: command.into(),
            inputs: BTreeMap::new(),
            tolerances,
            used: BTreeMap::new(),
            residuals: BTreeMap::new(),
            values: BTreeMap::new(),
            started: Instant::now(),
        }
    }

    pub fn input(&mut self, name: &str, v: impl Into<Value>) {
        self.inputs.insert(name.into(), v.into());
    }

    pub fn value(&mut self, name: &str, v: impl Into<Value>) {
        self.values.insert(name.into(), v.into());
    }

    pub fn residual(&mut self, name: &str, r: f64) {
        let base = name.split('.').next().unwrap_or(name).to_string();
        self.used.insert(base, self.tolerances.get(name));
        self.residuals.insert(name.into(), r);
    }

    pub fn tolerance(&self, name: &str) -> f64 {
        self.tolerances.get(name)
    }

    pub fn passed(&self) -> bool {
        // NaN compares false and fails
        self.residuals
            .iter()
            .all(|(k, &r)| r <= self.tolerances.get(k))
    }

    pub fn to_json(&self) -> Value {
        let residuals: BTreeMap<&String, Value> = self
            .residuals
            .iter()
            .map(|(k, &v)| (k, number(v)))
            .collect();
        json!({
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "tolerances": self.used,
            "residuals": residuals,
            "values": self.values,
            "status": if self.passed() { "pass" } else { "fail" },
            "elapsed_ms": self.started.elapsed().as_millis() as u64,
        })
    }
}

/// JSON has no NaN or infinity; those are written as strings.
pub fn number(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        json!(v.to_string())
    }
}

pub fn complex(z: num_complex::Complex64) -> Value {
    json!([number(z.re), number(z.im)])
}

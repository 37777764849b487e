//! Sweep configuration: defaults, `key=value` files and validation.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use spinscatter::{CombineMode, Lattice, SpinLabel};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Chain,
    Zpnr,
}

impl ModelKind {
    pub fn lattice(self, u_prime: f64) -> Lattice {
        match self {
            ModelKind::Chain => Lattice::chain_with_u_prime(u_prime),
            ModelKind::Zpnr => Lattice::zpnr_with_u_prime(u_prime),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Chain => "chain",
            ModelKind::Zpnr => "zpnr",
        })
    }
}

impl FromStr for ModelKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "chain" => Ok(ModelKind::Chain),
            "zpnr" => Ok(ModelKind::Zpnr),
            _ => Err(CliError::Config(format!(
                "unknown model {s:?} (expected chain or zpnr)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub model: ModelKind,
    pub m: usize,
    pub u_prime: f64,
    pub initial: SpinLabel,
    pub k_min: f64,
    pub k_max: f64,
    pub k_steps: usize,
    pub combine_mode: CombineMode,
    pub output: PathBuf,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            model: ModelKind::Chain,
            m: 2,
            u_prime: 10.0,
            initial: SpinLabel::parse("udd").expect("valid label"),
            k_min: 0.01,
            k_max: std::f64::consts::PI - 0.01,
            k_steps: 1000,
            combine_mode: CombineMode::Weighted,
            output: PathBuf::from("sweep.csv"),
        }
    }
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Config(format!("invalid value {value:?} for {key}")))
}

impl SweepConfig {
    /// Sets one field from its flag name (`u-prime` and `u_prime` are both accepted).
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let value = value.trim();
        match key.trim().replace('_', "-").as_str() {
            "model" => self.model = value.parse()?,
            "m" => self.m = parse_num(key, value)?,
            "u-prime" => self.u_prime = parse_num(key, value)?,
            "initial" => {
                self.initial =
                    SpinLabel::parse(value).map_err(|e| CliError::Config(e.to_string()))?
            }
            "k-min" => self.k_min = parse_num(key, value)?,
            "k-max" => self.k_max = parse_num(key, value)?,
            "k-steps" => self.k_steps = parse_num(key, value)?,
            "combine-mode" => {
                self.combine_mode = value
                    .parse()
                    .map_err(|e: spinscatter::Error| CliError::Config(e.to_string()))?
            }
            "output" => self.output = PathBuf::from(value),
            other => {
                return Err(CliError::Config(format!(
                    "unknown configuration key {other:?}"
                )))
            }
        }
        Ok(())
    }

    /// Applies a plain-text file of `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!(
                    "line {}: expected key=value, got {line:?}",
                    lineno + 1
                ))
            })?;
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        self.apply_text(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let pi = std::f64::consts::PI;
        if !(0.0 < self.k_min && self.k_min < self.k_max && self.k_max < pi) {
            return Err(CliError::Config(format!(
                "need 0 < k-min < k-max < pi (got {}, {})",
                self.k_min, self.k_max
            )));
        }
        if self.k_steps < 2 {
            return Err(CliError::Config("k-steps must be at least 2".into()));
        }
        if !self.u_prime.is_finite() {
            return Err(CliError::Config("u-prime must be finite".into()));
        }
        Ok(())
    }

    pub fn lattice(&self) -> Lattice {
        self.model.lattice(self.u_prime)
    }

    pub fn grid(&self) -> Vec<f64> {
        let step = (self.k_max - self.k_min) / (self.k_steps - 1) as f64;
        (0..self.k_steps)
            .map(|i| {
                if i + 1 == self.k_steps {
                    self.k_max
                } else {
                    self.k_min + step * i as f64
                }
            })
            .collect()
    }
}

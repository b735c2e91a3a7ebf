//! Run configuration, budgets and rational parsing.

use std::env;

use aecode_core::code::DEFAULT_DISTANCE_BUDGET;
use aecode_core::graph::DEFAULT_SVD_MAX_SIDE;
use aecode_core::group::{InstanceParams, Instantiation};
use aecode_core::Rational;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const ENV_DISTANCE_BUDGET: &str = "AECODE_DISTANCE_BUDGET";
pub const ENV_SVD_MAX_SIDE: &str = "AECODE_SVD_MAX_SIDE";
pub const ENV_MC_SAMPLES: &str = "AECODE_MC_SAMPLES";

pub const DEFAULT_MC_SAMPLES: u64 = 100_000;

/// Caps on the expensive analyses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    pub distance: u64,
    pub svd_max_side: usize,
    pub mc_samples: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            distance: DEFAULT_DISTANCE_BUDGET,
            svd_max_side: DEFAULT_SVD_MAX_SIDE,
            mc_samples: DEFAULT_MC_SAMPLES,
        }
    }
}

impl Budgets {
    /// Defaults overridden by the `AECODE_*` environment variables.
    pub fn from_env() -> Result<Self, CliError> {
        let mut b = Budgets::default();
        if let Some(v) = read_env(ENV_DISTANCE_BUDGET)? {
            b.distance = v;
        }
        if let Some(v) = read_env(ENV_SVD_MAX_SIDE)? {
            b.svd_max_side = v as usize;
        }
        if let Some(v) = read_env(ENV_MC_SAMPLES)? {
            b.mc_samples = v;
        }
        Ok(b)
    }
}

fn read_env(name: &str) -> Result<Option<u64>, CliError> {
    match env::var(name) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Config(format!("{name} must be a nonnegative integer, got {s:?}"))),
        Err(_) => Ok(None),
    }
}

/// Parses `a/b` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let s = s.trim();
    let bad = || CliError::Config(format!("expected a rational a/b, got {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if b == 0 {
                return Err(bad());
            }
            Ok(Rational::new(a, b))
        }
        None => s.parse::<i64>().map(Rational::from_integer).map_err(|_| bad()),
    }
}

pub fn format_rational(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Global degree bound, either absolute or as a fraction of `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeSpec {
    Full,
    Absolute(usize),
    Fraction(Rational),
}

impl DegreeSpec {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let s = s.trim();
        if s == "n" {
            return Ok(DegreeSpec::Full);
        }
        if s.contains('/') {
            return Ok(DegreeSpec::Fraction(parse_rational(s)?));
        }
        s.parse()
            .map(DegreeSpec::Absolute)
            .map_err(|_| CliError::Config(format!("D must be an integer, \"n\" or a fraction of n, got {s:?}")))
    }

    /// `D` for code length `n`; fractions round down.
    pub fn resolve(&self, n: usize) -> usize {
        match *self {
            DegreeSpec::Full => n,
            DegreeSpec::Absolute(d) => d,
            DegreeSpec::Fraction(f) => (f * Rational::from_integer(n as i64)).floor().to_integer().max(0) as usize,
        }
    }
}

/// Everything needed to rebuild an instance and its code deterministically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceConfig {
    pub p: u32,
    pub m: u32,
    /// "I" or "II".
    pub instantiation: String,
    /// `a/b`; 1 for instantiation I.
    pub gamma: String,
    pub r: String,
    #[serde(rename = "D")]
    pub d: usize,
    pub seed: u64,
}

impl InstanceConfig {
    pub fn params(&self) -> Result<InstanceParams, CliError> {
        let instantiation = match self.instantiation.as_str() {
            "I" => Instantiation::First,
            "II" => Instantiation::Second {
                gamma: parse_rational(&self.gamma)?,
            },
            other => {
                return Err(CliError::Config(format!(
                    "instantiation must be I or II, got {other:?}"
                )))
            }
        };
        Ok(InstanceParams {
            p: self.p,
            m: self.m,
            instantiation,
        })
    }

    pub fn rate(&self) -> Result<Rational, CliError> {
        parse_rational(&self.r)
    }
}

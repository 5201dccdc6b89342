use serde::Deserialize;

use crate::error::{Error, Result};

const FROZEN: &str = include_str!("../../thresholds.toml");

/// Pass/fail thresholds of the statistical checks, read from the
/// `thresholds.toml` checked in next to the crate manifest.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Thresholds {
    pub version: u32,
    pub sweep: SweepThresholds,
    pub compare: CompareThresholds,
    pub threshold: ThresholdThresholds,
    pub generations: GenerationsThresholds,
    pub partial: PartialThresholds,
    pub h2k: H2kThresholds,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepThresholds {
    pub normalized_min: f64,
    pub normalized_max: f64,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareThresholds {
    /// Fraction of `n` that counts as a full cascade.
    pub full_fraction: f64,
    pub min_success_fraction: f64,
    /// Multiplier on `2 ((r-1)! / (n p^r))^(1/(r-1))` for the subcritical side.
    pub below_slack: f64,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdThresholds {
    pub level: f64,
    /// Allowed ratio between the largest and smallest normalized `p50`.
    pub ratio_factor: f64,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerationsThresholds {
    /// `tau` must not exceed this times `ln ln n`.
    pub tau_cap_factor: f64,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialThresholds {
    /// Multiplier on `max(1, n / d^3)`.
    pub slack: f64,
    pub min_success_fraction: f64,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct H2kThresholds {
    /// Longest paths must not exceed this times `ln k`.
    pub path_cap_factor: f64,
}

impl Thresholds {
    pub fn frozen() -> Self {
        Self::parse(FROZEN).expect("checked-in thresholds.toml is valid")
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn tau_cap(&self, n: usize) -> f64 {
        self.generations.tau_cap_factor * (n as f64).ln().ln()
    }

    pub fn h2k_cap(&self, k: usize) -> f64 {
        self.h2k.path_cap_factor * (k as f64).ln()
    }

    pub fn partial_bound(&self, n: usize, d: f64) -> f64 {
        self.partial.slack * (n as f64 / d.powi(3)).max(1.0)
    }

    /// Smallest number of successes out of `trials` that meets `fraction`.
    pub fn required(trials: usize, fraction: f64) -> usize {
        (trials as f64 * fraction - 1e-9).ceil().max(0.0) as usize
    }
}

//! Monte-Carlo batch harness.
//!
//! A run is described by an [`ExperimentConfig`] and produces a list of
//! [`ExperimentRecord`]s plus a list of statistical flags. Trials run in
//! parallel on a rayon pool; each trial derives its own seed from the master
//! seed and its key, and records are sorted by key before they are written,
//! so output is byte-identical for any thread count.

mod compare;
mod config;
mod generations;
mod partial;
mod record;
mod sweep;
mod threshold;
mod thresholds;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::time::Instant;

use rand::seq::index::sample;

use crate::error::{Error, Result};
use crate::graph::{sample_gnp, GnpParams, Graph, VertexSet};
use crate::rng::{derive_seed, seeded};

pub use config::{ExperimentConfig, Format, Mode, Point};
pub use generations::growth_violations;
pub use record::{sort_records, write_records, ExperimentRecord, CSV_HEADER, SCHEMA_VERSION};
pub use threshold::threshold_scale;
pub use thresholds::{
    CompareThresholds, GenerationsThresholds, H2kThresholds, PartialThresholds, SweepThresholds,
    ThresholdThresholds, Thresholds,
};

/// Result of a batch run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub records: Vec<ExperimentRecord>,
    /// Statistical checks that did not pass. Non-empty means exit code 2.
    pub flags: Vec<String>,
    /// Parameters outside the regime a check is meant for.
    pub warnings: Vec<String>,
}

impl Outcome {
    pub fn flagged(&self) -> bool {
        !self.flags.is_empty()
    }
}

/// Runs a batch mode with the frozen thresholds.
pub fn run(config: &ExperimentConfig) -> Result<Outcome> {
    run_with(config, &Thresholds::frozen())
}

pub fn run_with(config: &ExperimentConfig, thresholds: &Thresholds) -> Result<Outcome> {
    config.validate()?;
    if !config.mode.is_batch() {
        return Err(Error::Config(format!(
            "mode {} works on a single graph and is not a batch mode",
            config.mode.name()
        )));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let mut out = pool.install(|| match config.mode {
        Mode::Sweep => sweep::run(config, thresholds),
        Mode::Threshold => threshold::run(config, thresholds),
        Mode::Compare => compare::run(config, thresholds),
        Mode::Generations => generations::run(config, thresholds),
        Mode::Partial => partial::run(config, thresholds),
        _ => unreachable!(),
    })?;
    sort_records(&mut out.records);
    Ok(out)
}

/// Writes the records to `config.output_path`, or to `fallback` when no
/// path is set.
pub fn write_outcome<W: Write>(
    config: &ExperimentConfig,
    outcome: &Outcome,
    fallback: W,
) -> Result<()> {
    match &config.output_path {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_records(&outcome.records, config.format, &mut w)?;
            w.flush()?;
            Ok(())
        }
        None => write_records(&outcome.records, config.format, fallback),
    }
}

/// `size d^(r/(r-1)) log2 d / n`.
pub fn normalized_size(size: usize, n: usize, d: f64, r: u32) -> f64 {
    let r = f64::from(r);
    size as f64 * d.powf(r / (r - 1.0)) * d.log2() / n as f64
}

/// Uniformly random `k`-subset of `0..n`.
pub fn random_subset(n: usize, k: usize, rng_seed: u64) -> VertexSet {
    let mut rng = seeded(rng_seed);
    sample(&mut rng, n, k.min(n))
        .into_iter()
        .map(|v| v as u32)
        .collect()
}

pub(crate) fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let m = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[m]
    } else {
        (values[m - 1] + values[m]) / 2.0
    })
}

/// The value a trial key hashes: `d` when the grid is given by degree,
/// otherwise `p`.
pub(crate) fn density_key(config: &ExperimentConfig, point: &Point) -> f64 {
    if config.p.is_empty() {
        point.d
    } else {
        point.p
    }
}

pub(crate) fn sample_trial_graph(n: usize, p: f64, trial_seed: u64) -> Result<Graph> {
    Ok(sample_gnp(&GnpParams::new(
        n,
        p,
        derive_seed(trial_seed, &[0]),
    )?))
}

pub(crate) struct Timer(Option<Instant>);

impl Timer {
    pub(crate) fn start(config: &ExperimentConfig) -> Self {
        Timer(config.timing.then(Instant::now))
    }

    pub(crate) fn ms(&self) -> Option<u64> {
        self.0.map(|t| t.elapsed().as_millis() as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalized_size_formula() {
        // r = 2: size d^2 log2 d / n.
        let v = normalized_size(10, 1000, 8.0, 2);
        assert!((v - 10.0 * 64.0 * 3.0 / 1000.0).abs() < 1e-12);
        let v = normalized_size(10, 1000, 8.0, 3);
        assert!((v - 10.0 * 8f64.powf(1.5) * 3.0 / 1000.0).abs() < 1e-9);
    }

    #[test]
    fn medians() {
        assert_eq!(median(&mut []), None);
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), Some(2.5));
    }

    #[test]
    fn random_subsets() {
        let s = random_subset(100, 30, 5);
        assert_eq!(s.len(), 30);
        assert!(s.iter().all(|v| v < 100));
        assert_eq!(s, random_subset(100, 30, 5));
        assert_eq!(random_subset(10, 50, 1), VertexSet::full(10));
    }

    #[test]
    fn single_graph_modes_rejected() {
        let cfg = ExperimentConfig {
            mode: Mode::Solve,
            n: vec![10],
            d: vec![2.0],
            ..Default::default()
        };
        assert!(run(&cfg).is_err());
    }
}

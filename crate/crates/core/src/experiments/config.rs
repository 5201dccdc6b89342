use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{derive_seed, label_hash};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Sweep,
    Threshold,
    Compare,
    Generations,
    Partial,
    Solve,
    Construct,
    Percolate,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Sweep => "sweep",
            Mode::Threshold => "threshold",
            Mode::Compare => "compare",
            Mode::Generations => "generations",
            Mode::Partial => "partial",
            Mode::Solve => "solve",
            Mode::Construct => "construct",
            Mode::Percolate => "percolate",
        }
    }

    /// Modes that run a batch of trials over sampled graphs.
    pub fn is_batch(self) -> bool {
        matches!(
            self,
            Mode::Sweep | Mode::Threshold | Mode::Compare | Mode::Generations | Mode::Partial
        )
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Everything a batch run depends on. Loaded from TOML; missing keys take
/// the defaults below.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub n: Vec<usize>,
    /// Average degrees; `p = d / n`. Mutually exclusive with `p`.
    pub d: Vec<f64>,
    pub p: Vec<f64>,
    pub r: u32,
    pub trials: usize,
    pub master_seed: u64,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    /// Worker threads; `None` uses rayon's default.
    pub threads: Option<usize>,
    /// Fill `wall_ms`. Off by default so output is reproducible byte for byte.
    pub timing: bool,
    /// Tuple search: `k_target = max(r + 1, ceil(c1 log2 n))` unless set.
    pub c1: f64,
    pub k_target: Option<usize>,
    /// Threshold mode: trials per probe, relative bracket width to stop at,
    /// and the initial bracket as multiples of `(n ln^(r-1) n)^(-1/r)`.
    pub probe_trials: usize,
    pub bisection_tolerance: f64,
    pub bracket: [f64; 2],
    /// Compare mode: random sets drawn per size while bisecting for the
    /// empirical critical size.
    pub critical_trials: usize,
    /// Sweep mode: also solve exactly when `n` is at most this.
    pub exact_max_n: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            mode: Mode::Sweep,
            n: Vec::new(),
            d: Vec::new(),
            p: Vec::new(),
            r: 2,
            trials: 10,
            master_seed: 0,
            output_path: None,
            format: Format::Csv,
            threads: None,
            timing: false,
            c1: 0.1,
            k_target: None,
            probe_trials: 30,
            bisection_tolerance: 0.1,
            bracket: [0.25, 4.0],
            critical_trials: 5,
            exact_max_n: 16,
        }
    }
}

/// One `(n, d, p)` cell of a batch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub n: usize,
    pub d: f64,
    pub p: f64,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.r < 2 {
            return bad(format!("r must be >= 2, got {}", self.r));
        }
        if self.trials == 0 {
            return bad("trials must be >= 1".into());
        }
        if self.n.is_empty() {
            return bad("n list is empty".into());
        }
        if let Some(&n) = self.n.iter().find(|&&n| n < 2) {
            return bad(format!("n values must be >= 2, got {n}"));
        }
        let needs_density = !matches!(self.mode, Mode::Threshold);
        if needs_density && self.d.is_empty() && self.p.is_empty() {
            return bad("give a d list or a p list".into());
        }
        if !self.d.is_empty() && !self.p.is_empty() {
            return bad("d and p lists are mutually exclusive".into());
        }
        if self.d.iter().any(|&d| !(d >= 0.0) || !d.is_finite()) {
            return bad("d values must be finite and >= 0".into());
        }
        if self.p.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
            return bad("p values must lie in [0, 1]".into());
        }
        for &n in &self.n {
            for &d in &self.d {
                if d / n as f64 > 1.0 {
                    return bad(format!("d = {d} exceeds n = {n}"));
                }
            }
        }
        if self.threads == Some(0) {
            return bad("threads must be >= 1".into());
        }
        if !(self.c1 > 0.0 && self.c1 < 1.0) {
            return bad(format!("c1 must lie in (0, 1), got {}", self.c1));
        }
        if self.probe_trials == 0 || self.critical_trials == 0 {
            return bad("probe_trials and critical_trials must be >= 1".into());
        }
        if !(self.bisection_tolerance > 0.0) {
            return bad("bisection_tolerance must be > 0".into());
        }
        let [lo, hi] = self.bracket;
        if !(lo > 0.0 && lo < hi && hi.is_finite()) {
            return bad(format!(
                "bracket must satisfy 0 < lo < hi, got [{lo}, {hi}]"
            ));
        }
        Ok(())
    }

    /// The `(n, d, p)` grid in list order.
    pub fn points(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for &n in &self.n {
            if self.p.is_empty() {
                for &d in &self.d {
                    let p = if n == 0 { 0.0 } else { d / n as f64 };
                    out.push(Point { n, d, p });
                }
            } else {
                for &p in &self.p {
                    out.push(Point {
                        n,
                        d: n as f64 * p,
                        p,
                    });
                }
            }
        }
        out
    }

    /// Per-trial seed: a hash of the master seed, the mode, and the trial
    /// key. Independent of scheduling and of the rest of the grid.
    pub fn trial_seed(&self, n: usize, density: f64, trial: usize) -> u64 {
        self.seed_for(self.mode.name(), n, density, trial)
    }

    pub(crate) fn seed_for(&self, label: &str, n: usize, density: f64, trial: usize) -> u64 {
        derive_seed(
            self.master_seed,
            &[label_hash(label), n as u64, density.to_bits(), trial as u64],
        )
    }
}

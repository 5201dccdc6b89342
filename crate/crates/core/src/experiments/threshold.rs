use rayon::prelude::*;

use super::{sample_trial_graph, ExperimentConfig, ExperimentRecord, Outcome, Thresholds, Timer};
use crate::constructor::{search_minimal_tuple, TupleSearchParams};
use crate::error::Result;
use crate::rng::derive_seed;

/// `(n ln^(r-1) n)^(-1/r)`, the scale of the `m(G, r) = r` threshold.
pub fn threshold_scale(n: usize, r: u32) -> f64 {
    let n = n as f64;
    (n * n.ln().powi(r as i32 - 1)).powf(-1.0 / f64::from(r))
}

/// Tuple-search parameters for one trial.
pub(super) fn tuple_params(config: &ExperimentConfig, n: usize, seed: u64) -> TupleSearchParams {
    let mut params = TupleSearchParams::for_graph(n, config.r, config.c1, seed);
    if let Some(k) = config.k_target {
        params.k_target = k;
        params.max_iterations = (n / (2 * k.max(1))).max(1);
    }
    params
}

pub(super) fn run(config: &ExperimentConfig, thresholds: &Thresholds) -> Result<Outcome> {
    let level = thresholds.threshold.level;
    let mut out = Outcome::default();

    for &n in &config.n {
        let scale = threshold_scale(n, config.r);
        let mut probe = |p: f64| -> Result<f64> {
            let rows: Vec<Result<ExperimentRecord>> = (0..config.probe_trials)
                .into_par_iter()
                .map(|trial| {
                    let timer = Timer::start(config);
                    let seed = config.trial_seed(n, p, trial);
                    let graph = sample_trial_graph(n, p, seed)?;
                    let found = search_minimal_tuple(
                        &graph,
                        &tuple_params(config, n, derive_seed(seed, &[1])),
                    )?
                    .found;
                    let mut rec =
                        ExperimentRecord::new("threshold", n, n as f64 * p, p, config.r, "trial")
                            .trial(trial, seed);
                    rec.success = Some(found.is_some());
                    if let Some(f) = found {
                        rec.seed_count = Some(f.seeds.len());
                        rec.active_count = Some(f.result.active_count());
                        rec.tau = Some(f.result.tau());
                        rec.contagious = Some(true);
                    }
                    rec.wall_ms = timer.ms();
                    Ok(rec)
                })
                .collect();
            let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
            let hits = rows.iter().filter(|r| r.success == Some(true)).count();
            let rate = hits as f64 / rows.len() as f64;
            let mut rec = ExperimentRecord::new("threshold", n, n as f64 * p, p, config.r, "probe");
            rec.value = Some(rate);
            rec.success = Some(rate >= level);
            out.records.extend(rows);
            out.records.push(rec);
            Ok(rate)
        };

        let mut lo = config.bracket[0] * scale;
        let mut hi = (config.bracket[1] * scale).min(1.0);
        let mut flag = None;
        if probe(hi)? < level {
            flag = Some("no-crossing");
        } else if probe(lo)? >= level {
            flag = Some("below-bracket");
            hi = lo;
        } else {
            while hi / lo > 1.0 + config.bisection_tolerance {
                let mid = (lo * hi).sqrt();
                if probe(mid)? >= level {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
        }

        let p50 = (lo * hi).sqrt();
        let ratio = p50 / scale;
        let mut summary =
            ExperimentRecord::new("threshold", n, n as f64 * p50, p50, config.r, "summary");
        summary.value = Some(ratio);
        summary.success = Some(flag.is_none());
        if let Some(f) = flag {
            summary.value = None;
            summary.flag = Some(f.to_string());
            out.flags.push(format!("threshold n={n}: {f}"));
        }
        out.records.push(summary);
        for (variant, p) in [("bracket_lo", lo), ("bracket_hi", hi)] {
            let mut rec = ExperimentRecord::new("threshold", n, n as f64 * p, p, config.r, variant);
            rec.value = Some(p);
            out.records.push(rec);
        }
    }
    Ok(out)
}

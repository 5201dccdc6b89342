use rayon::prelude::*;

use super::threshold::tuple_params;
use super::{
    density_key, median, sample_trial_graph, ExperimentConfig, ExperimentRecord, Outcome,
    Thresholds, Timer,
};
use crate::constructor::search_minimal_tuple;
use crate::error::Result;
use crate::percolation::PercolationResult;
use crate::rng::derive_seed;

/// Rounds that break the one-round growth bound: while at least `log2 n`
/// vertices are active and `p <= 1/sqrt(2 e n)`, a round starting with `k`
/// active vertices must infect fewer than `k^2` new ones. Returns 0 when `p`
/// is outside that regime.
pub fn growth_violations(result: &PercolationResult, p: f64) -> usize {
    let n = result.vertex_count();
    if n == 0 || p > 1.0 / (2.0 * std::f64::consts::E * n as f64).sqrt() {
        return 0;
    }
    let floor = (n as f64).log2();
    let mut k = result.seeds().len();
    let mut bad = 0;
    for &new in result.per_round() {
        if k as f64 >= floor && new >= k.saturating_mul(k) {
            bad += 1;
        }
        k += new;
    }
    bad
}

pub(super) fn run(config: &ExperimentConfig, thresholds: &Thresholds) -> Result<Outcome> {
    let mut out = Outcome::default();

    for point in config.points() {
        let key = density_key(config, &point);
        let cap = thresholds.tau_cap(point.n);
        let rows: Vec<Result<ExperimentRecord>> = (0..config.trials)
            .into_par_iter()
            .map(|trial| {
                let timer = Timer::start(config);
                let seed = config.trial_seed(point.n, key, trial);
                let graph = sample_trial_graph(point.n, point.p, seed)?;
                let search = search_minimal_tuple(
                    &graph,
                    &tuple_params(config, point.n, derive_seed(seed, &[1])),
                )?;
                let mut rec = match search.found {
                    Some(found) => {
                        let tau = found.result.tau();
                        let mut rec = ExperimentRecord::new(
                            "generations",
                            point.n,
                            point.d,
                            point.p,
                            config.r,
                            "tuple",
                        );
                        rec.seed_count = Some(found.seeds.len());
                        rec.active_count = Some(found.result.active_count());
                        rec.tau = Some(tau);
                        rec.contagious = Some(true);
                        rec.success = Some(tau >= 1 && f64::from(tau) <= cap);
                        rec.violations = Some(growth_violations(&found.result, point.p));
                        rec
                    }
                    None => {
                        let mut rec = ExperimentRecord::new(
                            "generations",
                            point.n,
                            point.d,
                            point.p,
                            config.r,
                            "none",
                        );
                        rec.contagious = Some(false);
                        rec
                    }
                };
                rec = rec.trial(trial, seed);
                rec.wall_ms = timer.ms();
                Ok(rec)
            })
            .collect();
        let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;

        let found: Vec<&ExperimentRecord> = rows.iter().filter(|r| r.variant == "tuple").collect();
        let mut taus: Vec<f64> = found.iter().filter_map(|r| r.tau).map(f64::from).collect();
        let out_of_range = found.iter().filter(|r| r.success == Some(false)).count();
        let violations: usize = found.iter().filter_map(|r| r.violations).sum();

        let mut summary = ExperimentRecord::new(
            "generations",
            point.n,
            point.d,
            point.p,
            config.r,
            "summary",
        );
        summary.seed_count = Some(found.len());
        summary.value = median(&mut taus);
        summary.critical_size = Some(cap);
        summary.violations = Some(violations);
        let mut problems = Vec::new();
        if found.is_empty() {
            problems.push("no-tuples");
        }
        if out_of_range > 0 {
            problems.push("tau-out-of-range");
        }
        if violations > 0 {
            problems.push("growth-violation");
        }
        summary.success = Some(problems.is_empty());
        if !problems.is_empty() {
            summary.flag = Some(problems.join(";"));
            out.flags.push(format!(
                "generations n={} p={}: {} ({} found, {out_of_range} tau out of range, {violations} growth violations)",
                point.n,
                point.p,
                problems.join(", "),
                found.len()
            ));
        }
        out.records.extend(rows);
        out.records.push(summary);
    }
    Ok(out)
}

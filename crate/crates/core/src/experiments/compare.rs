use rayon::prelude::*;

use super::{
    density_key, median, normalized_size, random_subset, sample_trial_graph, ExperimentConfig,
    ExperimentRecord, Outcome, Thresholds, Timer,
};
use crate::bounds::critical_random_seed_size;
use crate::constructor::{construct_contagious, StageParams};
use crate::error::Result;
use crate::graph::Graph;
use crate::percolation::{percolate, PercolationParams};
use crate::rng::derive_seed;

/// Seed-set sizes `ceil(2 a_c)` and `floor(a_c / 2)`, capped at `n`.
pub fn dichotomy_sizes(n: usize, p: f64, r: u32) -> (usize, usize) {
    let a_c = critical_random_seed_size(n, p, r);
    let above = ((2.0 * a_c - 1e-9).ceil().max(0.0) as usize).min(n);
    let below = ((a_c / 2.0 + 1e-9).floor().max(0.0) as usize).min(n);
    (above, below)
}

/// `2 ((r-1)! / (n p^r))^(1/(r-1))`, the most a subcritical random set
/// should infect.
pub fn subcritical_bound(n: usize, p: f64, r: u32) -> f64 {
    let r_f = f64::from(r);
    let factorial: f64 = (1..r).map(f64::from).product();
    2.0 * (factorial / (n as f64 * p.powi(r as i32))).powf(1.0 / (r_f - 1.0))
}

/// Smallest `k` such that at least half of `trials` random `k`-sets reach
/// `full` active vertices, found by galloping from `start` then bisecting.
fn empirical_critical_size(
    graph: &Graph,
    perc: PercolationParams,
    full: f64,
    start: usize,
    trials: usize,
    seed: u64,
) -> Result<usize> {
    let n = graph.vertex_count();
    let hits = |k: usize| -> Result<bool> {
        let mut wins = 0;
        for j in 0..trials {
            let set = random_subset(n, k, derive_seed(seed, &[k as u64, j as u64]));
            if percolate(graph, &set, perc)?.active_count() as f64 >= full {
                wins += 1;
            }
        }
        Ok(2 * wins >= trials)
    };
    let mut lo = 0;
    let mut hi = start.clamp(1, n.max(1));
    while hi < n && !hits(hi)? {
        lo = hi;
        hi = (2 * hi).min(n);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if hits(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

pub(super) fn run(config: &ExperimentConfig, thresholds: &Thresholds) -> Result<Outcome> {
    let perc = PercolationParams::new(config.r)?;
    let stage = StageParams::for_threshold(config.r);
    let th = &thresholds.compare;
    let mut out = Outcome::default();

    for point in config.points() {
        let (n, p, r) = (point.n, point.p, config.r);
        let key = density_key(config, &point);
        if !(point.d > 1.0 && p * (n as f64).powf(1.0 / f64::from(r)) < 1.0) {
            out.warnings.push(format!(
                "compare n={n} p={p}: outside 1/n << p << n^(-1/{r}); the dichotomy is not expected"
            ));
        }
        let a_c = critical_random_seed_size(n, p, r);
        let (above, below) = dichotomy_sizes(n, p, r);
        let full = th.full_fraction * n as f64;
        let below_cap = th.below_slack * subcritical_bound(n, p, r);

        let rows: Vec<Result<Vec<ExperimentRecord>>> = (0..config.trials)
            .into_par_iter()
            .map(|trial| {
                let timer = Timer::start(config);
                let seed = config.trial_seed(n, key, trial);
                let graph = sample_trial_graph(n, p, seed)?;
                let rec = |variant: &str| {
                    ExperimentRecord::new("compare", n, point.d, p, r, variant).trial(trial, seed)
                };

                let hi = percolate(
                    &graph,
                    &random_subset(n, above, derive_seed(seed, &[1])),
                    perc,
                )?;
                let mut a = rec("random_above");
                a.seed_count = Some(above);
                a.active_count = Some(hi.active_count());
                a.value = Some(hi.active_count() as f64 / n.max(1) as f64);
                a.contagious = Some(hi.contagious());
                a.critical_size = Some(a_c);
                a.success = Some(hi.active_count() as f64 >= full);

                let lo = percolate(
                    &graph,
                    &random_subset(n, below, derive_seed(seed, &[2])),
                    perc,
                )?;
                let mut b = rec("random_below");
                b.seed_count = Some(below);
                b.active_count = Some(lo.active_count());
                b.value = Some(lo.active_count() as f64 / n.max(1) as f64);
                b.contagious = Some(lo.contagious());
                b.critical_size = Some(a_c);
                b.success = Some(lo.active_count() as f64 <= below_cap);

                let (set, trace) = construct_contagious(&graph, &stage, derive_seed(seed, &[3]))?;
                let res = percolate(&graph, &set, perc)?;
                assert!(res.contagious());
                let mut c = rec("constructed");
                c.seed_count = Some(set.len());
                c.constructed_size = Some(set.len());
                c.normalized_size = Some(normalized_size(set.len(), n, point.d, r));
                c.active_count = Some(res.active_count());
                c.tau = Some(res.tau());
                c.contagious = Some(true);
                c.critical_size = Some(empirical_critical_size(
                    &graph,
                    perc,
                    full,
                    above,
                    config.critical_trials,
                    derive_seed(seed, &[4]),
                )? as f64);
                c.flag = trace.fallback_used.then(|| "fallback".to_string());

                let ms = timer.ms();
                let mut rows = vec![a, b, c];
                for row in &mut rows {
                    row.wall_ms = ms;
                }
                Ok(rows)
            })
            .collect();
        let rows: Vec<ExperimentRecord> = rows
            .into_iter()
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();

        let need = Thresholds::required(config.trials, th.min_success_fraction);
        for (variant, label) in [
            ("random_above", "summary_above"),
            ("random_below", "summary_below"),
        ] {
            let hits = rows
                .iter()
                .filter(|x| x.variant == variant && x.success == Some(true))
                .count();
            let mut s = ExperimentRecord::new("compare", n, point.d, p, r, label);
            s.seed_count = Some(hits);
            s.value = Some(hits as f64 / config.trials as f64);
            s.critical_size = Some(a_c);
            s.success = Some(hits >= need);
            if hits < need {
                s.flag = Some(format!("{variant}-low"));
                out.flags.push(format!(
                    "compare n={n} p={p}: {variant} succeeded {hits}/{}, need {need}",
                    config.trials
                ));
            }
            out.records.push(s);
        }
        let mut sizes: Vec<f64> = rows
            .iter()
            .filter_map(|x| x.constructed_size.map(|v| v as f64))
            .collect();
        let mut crit: Vec<f64> = rows
            .iter()
            .filter(|x| x.variant == "constructed")
            .filter_map(|x| x.critical_size)
            .collect();
        let mut s = ExperimentRecord::new("compare", n, point.d, p, r, "summary_constructed");
        s.value = median(&mut sizes);
        s.critical_size = median(&mut crit);
        out.records.push(s);
        out.records.extend(rows);
    }
    Ok(out)
}

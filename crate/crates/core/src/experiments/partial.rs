use rayon::prelude::*;

use super::{
    density_key, random_subset, sample_trial_graph, ExperimentConfig, ExperimentRecord, Outcome,
    Thresholds, Timer,
};
use crate::constructor::StageParams;
use crate::error::Result;
use crate::percolation::{percolate, PercolationParams};
use crate::rng::derive_seed;

pub(super) fn run(config: &ExperimentConfig, thresholds: &Thresholds) -> Result<Outcome> {
    let perc = PercolationParams::new(config.r)?;
    let d0 = StageParams::for_threshold(config.r).d0_min;
    let mut out = Outcome::default();

    for point in config.points() {
        let key = density_key(config, &point);
        let bound = thresholds.partial_bound(point.n, point.d);
        let rows: Vec<Result<ExperimentRecord>> = (0..config.trials)
            .into_par_iter()
            .map(|trial| {
                let timer = Timer::start(config);
                let seed = config.trial_seed(point.n, key, trial);
                let graph = sample_trial_graph(point.n, point.p, seed)?;
                let seeds = random_subset(point.n, point.n.div_ceil(2), derive_seed(seed, &[1]));
                let res = percolate(&graph, &seeds, perc)?;
                let inactive = point.n - res.active_count();
                let mut rec = ExperimentRecord::new(
                    "partial",
                    point.n,
                    point.d,
                    point.p,
                    config.r,
                    "random_half",
                )
                .trial(trial, seed);
                rec.seed_count = Some(seeds.len());
                rec.active_count = Some(res.active_count());
                rec.tau = Some(res.tau());
                rec.contagious = Some(res.contagious());
                rec.value = Some(inactive as f64);
                rec.critical_size = Some(bound);
                rec.success = Some(inactive as f64 <= bound);
                if graph.edge_count() == 0 || point.d < d0 {
                    rec.flag = Some("out-of-model".into());
                }
                rec.wall_ms = timer.ms();
                Ok(rec)
            })
            .collect();
        let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;

        let in_model: Vec<&ExperimentRecord> = rows.iter().filter(|r| r.flag.is_none()).collect();
        let hits = in_model.iter().filter(|r| r.success == Some(true)).count();
        let need = Thresholds::required(in_model.len(), thresholds.partial.min_success_fraction);
        let mut summary =
            ExperimentRecord::new("partial", point.n, point.d, point.p, config.r, "summary");
        summary.seed_count = Some(hits);
        summary.value = Some(if in_model.is_empty() {
            0.0
        } else {
            hits as f64 / in_model.len() as f64
        });
        summary.critical_size = Some(bound);
        if in_model.is_empty() {
            summary.flag = Some("out-of-model".into());
            out.warnings.push(format!(
                "partial n={} d={}: every trial is outside the model (d < {d0} or no edges)",
                point.n, point.d
            ));
        } else {
            summary.success = Some(hits >= need);
            if hits < need {
                summary.flag = Some("partial-low".into());
                out.flags.push(format!(
                    "partial n={} d={}: {hits}/{} trials within {bound}, need {need}",
                    point.n,
                    point.d,
                    in_model.len()
                ));
            }
        }
        out.records.extend(rows);
        out.records.push(summary);
    }
    Ok(out)
}

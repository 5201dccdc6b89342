//! Lower-bound certificates and the quantities that go with them.
//!
//! The lower bounds on contagious-set size rest on one counting fact: if
//! `t0` seeds infect the whole graph, then the seeds together with the first
//! `t - t0` infected vertices span at least `r (t - t0)` edges, because every
//! infected vertex has `r` neighbors that were active before it.
//! [`density_witness`] extracts that prefix from a trace and counts.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::percolation::PercolationResult;
use crate::rng::seeded;

/// The `(t0, t, edges)` certificate extracted from a percolation trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DensityWitnessReport {
    pub t0: usize,
    pub t: usize,
    pub edges_found: usize,
    pub edges_required: usize,
    pub holds: bool,
}

/// Counts the edges spanned by the seeds plus the first `t - t0` infected
/// vertices (by generation, ties by id) and compares with `r (t - t0)`.
pub fn density_witness(
    graph: &Graph,
    result: &PercolationResult,
    t: usize,
) -> Result<DensityWitnessReport> {
    let t0 = result.seeds().len();
    if t < t0 || t > result.active_count() {
        return Err(Error::PrefixOutOfRange {
            t,
            min: t0,
            max: result.active_count(),
        });
    }
    let back = back_edge_counts(graph, result);
    let edges_found = back[..t].iter().sum();
    let edges_required = result.r() as usize * (t - t0);
    Ok(DensityWitnessReport {
        t0,
        t,
        edges_found,
        edges_required,
        holds: edges_found >= edges_required,
    })
}

/// For each position in the activation order, the number of neighbors that
/// appear strictly earlier in the order.
fn back_edge_counts(graph: &Graph, result: &PercolationResult) -> Vec<usize> {
    let order = result.activation_order();
    let mut pos = vec![usize::MAX; graph.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        pos[v as usize] = i;
    }
    order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            graph
                .neighbors(v)
                .iter()
                .filter(|&&u| pos[u as usize] < i)
                .count()
        })
        .collect()
}

static AUDITED: AtomicU64 = AtomicU64::new(0);

/// Number of traces checked by [`audit_trace`] in this process.
pub fn audited_trace_count() -> u64 {
    AUDITED.load(Ordering::Relaxed)
}

/// Replays `result` and checks the density witness at every prefix size.
///
/// # Panics
///
/// If the trace is not the least fixed point or any prefix falls short of
/// `r (t - t0)` edges. Either means the engine is broken.
pub fn audit_trace(graph: &Graph, result: &PercolationResult) {
    if let Err(e) = result.validate(graph) {
        panic!("percolation trace failed replay: {e}");
    }
    let t0 = result.seeds().len();
    let r = result.r() as usize;
    let mut edges = 0usize;
    for (i, b) in back_edge_counts(graph, result).into_iter().enumerate() {
        edges += b;
        let t = i + 1;
        if t > t0 && edges < r * (t - t0) {
            panic!(
                "density witness fails at t = {t}: {edges} < {}",
                r * (t - t0)
            );
        }
    }
    AUDITED.fetch_add(1, Ordering::Relaxed);
}

/// Critical size of a uniformly random seed set:
/// `(1 - 1/r) ((r-1)! / (n p^r))^(1/(r-1))`.
pub fn critical_random_seed_size(n: usize, p: f64, r: u32) -> f64 {
    let r_f = f64::from(r);
    let factorial: f64 = (1..r).map(f64::from).product();
    (1.0 - 1.0 / r_f) * (factorial / (n as f64 * p.powi(r as i32))).powf(1.0 / (r_f - 1.0))
}

/// Random DAG on `k` vertices where each vertex `i >= 2` (0-based) has arcs
/// to two distinct uniformly chosen vertices below it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationsDag {
    k: usize,
    /// `arcs[i - 2]` are the two targets of vertex `i`.
    arcs: Vec<[u32; 2]>,
}

impl GenerationsDag {
    pub fn sample(k: usize, rng_seed: u64) -> Self {
        let mut rng = seeded(rng_seed);
        let arcs = (2..k as u32)
            .map(|i| {
                let a = rng.gen_range(0..i);
                let mut b = rng.gen_range(0..i - 1);
                if b >= a {
                    b += 1;
                }
                [a, b]
            })
            .collect();
        GenerationsDag { k, arcs }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn targets(&self, i: usize) -> Option<[u32; 2]> {
        i.checked_sub(2).and_then(|j| self.arcs.get(j)).copied()
    }

    /// Length in arcs of the longest directed path.
    pub fn longest_path(&self) -> u32 {
        let mut depth = vec![0u32; self.k];
        for (j, &[a, b]) in self.arcs.iter().enumerate() {
            depth[j + 2] = 1 + depth[a as usize].max(depth[b as usize]);
        }
        depth.into_iter().max().unwrap_or(0)
    }
}

/// Samples the two-parent generations DAG and returns it with its longest
/// path length.
pub fn h2k_longest_path(k: usize, rng_seed: u64) -> Result<(GenerationsDag, u32)> {
    if k < 2 {
        return Err(Error::InvalidParam(format!("k must be >= 2, got {k}")));
    }
    let dag = GenerationsDag::sample(k, rng_seed);
    let len = dag.longest_path();
    Ok((dag, len))
}

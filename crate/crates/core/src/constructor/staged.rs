use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph, Vertex, VertexSet};
use crate::percolation::{mandatory_seeds, percolate, PercolationParams, Percolator};

/// Graphs with fewer vertices than this always take the greedy fallback.
pub const MIN_STAGED_N: usize = 64;

/// Tuning of the staged construction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StageParams {
    pub r: u32,
    /// Average degree below which the staged schedule is not attempted.
    pub d0_min: f64,
    /// Multiplier on every stage size target.
    pub c_seed: f64,
}

impl StageParams {
    /// Defaults for threshold `r`: `c_seed = 1` for `r = 2`, otherwise
    /// `ceil(102 (r-1)^(r-1))` capped at 100.
    pub fn for_threshold(r: u32) -> Self {
        let c_seed = if r <= 2 {
            1.0
        } else {
            let k = f64::from(r - 1);
            (6.0 * 17.0 * k.powf(k)).ceil().min(100.0)
        };
        StageParams {
            r,
            d0_min: 8.0,
            c_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        PercolationParams::new(self.r)?;
        if !(self.c_seed > 0.0) || !self.c_seed.is_finite() {
            return Err(Error::InvalidParam(format!(
                "c_seed must be > 0, got {}",
                self.c_seed
            )));
        }
        if !(self.d0_min >= 0.0) {
            return Err(Error::InvalidParam(format!(
                "d0_min must be >= 0, got {}",
                self.d0_min
            )));
        }
        Ok(())
    }
}

/// One doubling stage `i = 1..=ell`.
#[derive(Clone, Debug, Serialize)]
pub struct IterationRecord {
    pub i: usize,
    /// Component-size scale before and after rounding.
    pub s_raw: f64,
    pub s: usize,
    /// Cap on how many eligible vertices enter `b`.
    pub b_cap: usize,
    /// Newly reached vertices with enough neighbors in the previous `c`.
    pub b: VertexSet,
    /// Number of components of the graph induced on `b`.
    pub x: usize,
    /// Upper limit on the number of components seeded.
    pub y_cap: usize,
    /// Components seeded, largest first.
    pub selected: Vec<Vec<Vertex>>,
    /// One seed per selected component (its smallest vertex).
    pub d: VertexSet,
    pub c_target: usize,
    pub c: VertexSet,
    pub failure: Option<String>,
}

impl IterationRecord {
    pub fn y(&self) -> usize {
        self.selected.len()
    }

    pub fn failed(&self) -> bool {
        self.failure.is_some()
    }
}

/// Everything the construction decided, for audit and replay.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionTrace {
    pub r: u32,
    pub n: usize,
    /// Average degree `2m/n` the schedule was computed from.
    pub d: f64,
    pub rng_seed: u64,
    pub ell: usize,
    /// Initial block: `D0 = B0 = C0`.
    pub d0: VertexSet,
    pub iterations: Vec<IterationRecord>,
    pub a01: VertexSet,
    pub a02: VertexSet,
    pub final_seeds: VertexSet,
    pub fallback_used: bool,
    pub fallback_reason: Option<String>,
}

/// Builds a contagious set for `graph`.
///
/// Stage I runs `ell = ceil(log2 log2 d)` doubling stages; stage `i` aims to
/// infect `c_seed n / (d^(r/(r-1)) 2^(ell-i))` vertices by seeding one vertex
/// in each of the largest components among vertices with `r - 1` neighbors
/// in the previous stage's infected block. Stage II runs the process from
/// all those seeds, and Stage III seeds every vertex still inactive.
/// A stage that misses its target keeps what it got; Stage III absorbs the
/// shortfall, so the returned set is always contagious.
///
/// Graphs that are too small, too sparse, or lack a giant component get a
/// greedy completion instead: all degree-`< r` vertices, then repeatedly the
/// inactive vertex of largest degree.
///
/// `rng_seed` is recorded in the trace; the stages themselves are
/// deterministic.
///
/// # Panics
///
/// If the final seed set fails re-verification by the engine.
pub fn construct_contagious(
    graph: &Graph,
    params: &StageParams,
    rng_seed: u64,
) -> Result<(VertexSet, ConstructionTrace)> {
    params.validate()?;
    let perc = PercolationParams::new(params.r)?;
    let n = graph.vertex_count();
    let d = graph.average_degree();

    let mut trace = ConstructionTrace {
        r: params.r,
        n,
        d,
        rng_seed,
        ell: 0,
        d0: VertexSet::new(),
        iterations: Vec::new(),
        a01: VertexSet::new(),
        a02: VertexSet::new(),
        final_seeds: VertexSet::new(),
        fallback_used: false,
        fallback_reason: None,
    };

    let reason = if n < MIN_STAGED_N {
        Some(format!("n = {n} below {MIN_STAGED_N}"))
    } else if d < params.d0_min || d <= 2.0 {
        Some(format!(
            "average degree {d:.3} below {}",
            params.d0_min.max(2.0)
        ))
    } else if graph.largest_component_size() * 2 < n {
        Some("no component spans half the vertices".to_string())
    } else {
        None
    };

    if let Some(reason) = reason {
        let (mandatory, greedy) = greedy_completion(graph, perc);
        trace.fallback_used = true;
        trace.fallback_reason = Some(reason);
        trace.final_seeds = mandatory.union(&greedy);
        trace.a01 = mandatory;
        trace.a02 = greedy;
    } else {
        stage_one(graph, params, &mut trace)?;
        let a01 = trace
            .iterations
            .iter()
            .fold(trace.d0.clone(), |acc, it| acc.union(&it.d));
        let after = percolate(graph, &a01, perc)?;
        trace.a02 = after.inactive();
        trace.final_seeds = a01.union(&trace.a02);
        trace.a01 = a01;
    }

    let check = percolate(graph, &trace.final_seeds, perc)?;
    assert!(
        check.contagious(),
        "constructed seed set of size {} is not contagious",
        trace.final_seeds.len()
    );
    Ok((trace.final_seeds.clone(), trace))
}

fn stage_one(graph: &Graph, params: &StageParams, trace: &mut ConstructionTrace) -> Result<()> {
    let n = graph.vertex_count();
    let r = params.r;
    let d = trace.d;
    let log_d = d.log2();
    let ell = log_d.log2().ceil().max(1.0) as usize;
    trace.ell = ell;

    // Stage targets scale from c_seed n / d^(r/(r-1)).
    let exponent = f64::from(r) / f64::from(r - 1);
    let base = params.c_seed * n as f64 / d.powf(exponent);
    let clamp = |x: f64| (x.floor() as usize).clamp(1, n);

    let d0 = VertexSet::prefix(clamp(base / log_d));
    let mut used = vec![false; n];
    for v in &d0 {
        used[v as usize] = true;
    }
    let need = (r - 1).max(1);
    let mut hits = vec![0u32; n];
    let mut prev_c = d0.clone();
    trace.d0 = d0;

    for i in 1..=ell {
        let levels_left = (ell - i) as i32;
        let s_raw = if r == 2 {
            (log_d - 4.0) / (levels_left as f64 + 4.0)
        } else {
            log_d / ((levels_left as f64 + 1.0) * f64::from(r * r))
        };
        let s = (s_raw.round() as i64).max(1) as usize;
        let c_real = base / 2f64.powi(levels_left);
        let c_target = clamp(c_real);
        let y_cap = ((c_real / s as f64).floor() as usize).max(1);
        let b_cap = if r == 2 {
            (d * prev_c.len() as f64 / 2.0).floor() as usize
        } else {
            // c^(r-1) n / (2^((ell-i+1)(r-1)+1) d (r-1)^(r-1))
            let k = f64::from(r - 1);
            let e = (levels_left as f64 + 1.0) * k + 1.0;
            (params.c_seed.powf(k) * n as f64 / (2f64.powf(e) * d * k.powf(k))).floor() as usize
        }
        .max(1);

        // Step 1: eligible vertices outside every earlier block.
        let mut reached = Vec::new();
        for u in &prev_c {
            for &w in graph.neighbors(u) {
                if used[w as usize] {
                    continue;
                }
                if hits[w as usize] == 0 {
                    reached.push(w);
                }
                hits[w as usize] += 1;
            }
        }
        let mut eligible: Vec<Vertex> = reached
            .iter()
            .copied()
            .filter(|&w| hits[w as usize] >= need)
            .collect();
        for &w in &reached {
            hits[w as usize] = 0;
        }
        eligible.sort_unstable();
        eligible.truncate(b_cap);
        let b = VertexSet::from_vec(eligible);
        for v in &b {
            used[v as usize] = true;
        }

        // Step 2: seed the largest components until the target is covered.
        let components = connected_components(graph, &b)?;
        let x = components.len();
        let mut selected = Vec::new();
        let mut covered = 0usize;
        for comp in &components {
            if covered >= c_target || selected.len() >= y_cap {
                break;
            }
            covered += comp.len();
            selected.push(comp.clone());
        }
        let failure = if covered < c_target {
            Some(if x == 0 {
                "no eligible vertices".to_string()
            } else if selected.len() == x {
                format!("all {x} components cover {covered} < {c_target}")
            } else {
                format!("{y_cap} largest components cover {covered} < {c_target}")
            })
        } else {
            None
        };
        let d_i = VertexSet::from_vec(selected.iter().map(|comp| comp[0]).collect());
        let c_i = VertexSet::from_vec(
            selected
                .iter()
                .flat_map(|comp| comp.iter().copied())
                .take(c_target)
                .collect(),
        );

        let stop = c_i.is_empty();
        prev_c = c_i.clone();
        trace.iterations.push(IterationRecord {
            i,
            s_raw,
            s,
            b_cap,
            b,
            x,
            y_cap,
            selected,
            d: d_i,
            c_target,
            c: c_i,
            failure,
        });
        if stop {
            // Nothing infected this stage, so later stages would find nothing.
            break;
        }
    }
    Ok(())
}

/// Mandatory seeds plus greedy max-degree additions until contagious.
fn greedy_completion(graph: &Graph, perc: PercolationParams) -> (VertexSet, VertexSet) {
    let n = graph.vertex_count();
    let mandatory = mandatory_seeds(graph, perc);
    let mut engine = Percolator::new(n, perc);
    for v in &mandatory {
        engine.activate(v);
    }
    engine.run(graph);

    let mut order: Vec<Vertex> = graph.vertices().collect();
    order.sort_by(|&a, &b| graph.degree(b).cmp(&graph.degree(a)).then(a.cmp(&b)));
    let mut added = Vec::new();
    for v in order {
        if engine.active_count() == n {
            break;
        }
        if engine.activate(v) {
            added.push(v);
            engine.run(graph);
        }
    }
    (mandatory, VertexSet::from_vec(added))
}

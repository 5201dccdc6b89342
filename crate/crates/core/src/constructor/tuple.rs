use rand::seq::SliceRandom;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::percolation::{
    mandatory_seeds, percolate, PercolationParams, PercolationResult, Percolator,
};
use crate::rng::seeded;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TupleSearchParams {
    pub r: u32,
    /// Length of the chain each attempt tries to grow before testing.
    pub k_target: usize,
    pub c1: f64,
    pub max_iterations: usize,
    pub rng_seed: u64,
}

impl TupleSearchParams {
    /// `k_target = max(r + 1, ceil(c1 log2 n))` and
    /// `max_iterations = max(1, floor(n / (2 k_target)))`.
    pub fn for_graph(n: usize, r: u32, c1: f64, rng_seed: u64) -> Self {
        let k = ((c1 * (n.max(1) as f64).log2()).ceil().max(0.0) as usize).max(r as usize + 1);
        TupleSearchParams {
            r,
            k_target: k,
            c1,
            max_iterations: (n / (2 * k)).max(1),
            rng_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        PercolationParams::new(self.r)?;
        if self.k_target < self.r as usize + 1 {
            return Err(Error::InvalidParam(format!(
                "k_target {} must be at least r + 1 = {}",
                self.k_target,
                self.r + 1
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidParam("max_iterations must be >= 1".into()));
        }
        if !(self.c1 > 0.0 && self.c1 < 1.0) {
            return Err(Error::InvalidParam(format!(
                "c1 must lie in (0, 1), got {}",
                self.c1
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TupleOutcome {
    /// No vertex of the block for chain position `j` (1-based) qualified.
    BlockFailed {
        j: usize,
    },
    /// The chain reached `k_target` but the closure stopped short.
    NotContagious {
        closure: usize,
    },
    Contagious,
}

/// Summary of one attempt.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TupleIteration {
    pub chain: Vec<Vertex>,
    /// Size of the smallest block in this attempt's partition.
    pub min_block: usize,
    pub outcome: TupleOutcome,
}

#[derive(Clone, Debug)]
pub struct TupleFound {
    pub seeds: VertexSet,
    pub result: PercolationResult,
}

#[derive(Clone, Debug)]
pub struct TupleSearchOutcome {
    pub found: Option<TupleFound>,
    pub iterations: Vec<TupleIteration>,
    /// Set when the search stopped because the pool ran dry.
    pub pool_exhausted: bool,
}

/// Searches for `r` vertices whose closure is the whole graph.
///
/// Each attempt takes the first `r` live vertices of a seeded shuffle, splits
/// the rest of the live pool round-robin into `k_target - r` blocks, and for
/// `j = r+1..=k_target` picks from block `j - r` a vertex with at least `r`
/// neighbors among the chain so far. A complete chain is infected by its
/// first `r` vertices; those are then tested for contagion. Every vertex an
/// attempt used leaves the pool. The search ends after `max_iterations`
/// attempts, when fewer than `k_target` vertices remain, or as soon as more
/// than `r` vertices have degree below `r`, since no `r`-set can then be
/// contagious.
pub fn search_minimal_tuple(
    graph: &Graph,
    params: &TupleSearchParams,
) -> Result<TupleSearchOutcome> {
    params.validate()?;
    let n = graph.vertex_count();
    if n <= params.k_target {
        return Err(Error::InvalidParam(format!(
            "need n > k_target, got n = {n}, k_target = {}",
            params.k_target
        )));
    }
    let perc = PercolationParams::new(params.r)?;
    let r = params.r as usize;
    let k = params.k_target;
    let blocks = k - r;

    let mut outcome = TupleSearchOutcome {
        found: None,
        iterations: Vec::new(),
        pool_exhausted: false,
    };
    if mandatory_seeds(graph, perc).len() > r {
        return Ok(outcome);
    }

    let mut order: Vec<Vertex> = graph.vertices().collect();
    order.shuffle(&mut seeded(params.rng_seed));
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v as usize] = i;
    }
    let mut live = LiveSet::new(n);
    let mut cursor = 0usize;

    let mut chain = Chain::new(n);
    let mut engine = Percolator::new(n, perc);

    for _ in 0..params.max_iterations {
        let pool = live.len();
        if pool < k {
            outcome.pool_exhausted = true;
            break;
        }
        let min_block = (pool - r) / blocks;

        while chain.members.len() < r {
            while !live.contains(cursor) {
                cursor += 1;
            }
            chain.add(graph, order[cursor], r);
            cursor += 1;
        }

        let mut failed_at = None;
        for j in r + 1..=k {
            let block = j - r - 1;
            // Rank within the live pool minus the r initial vertices, which
            // precede every other live vertex in shuffle order.
            let pick = chain
                .ready
                .iter()
                .copied()
                .filter(|&w| !chain.in_chain[w as usize] && live.contains(pos[w as usize]))
                .filter(|&w| (live.rank(pos[w as usize]) - r) % blocks == block)
                .min_by_key(|&w| pos[w as usize]);
            match pick {
                Some(w) => chain.add(graph, w, r),
                None => {
                    failed_at = Some(j);
                    break;
                }
            }
        }

        let chain_vec = chain.clear();
        for &v in &chain_vec {
            live.remove(pos[v as usize]);
        }

        let result = match failed_at {
            Some(j) => TupleOutcome::BlockFailed { j },
            None => {
                let closure = engine.closure_size(graph, chain_vec[..r].iter().copied());
                if closure == n {
                    TupleOutcome::Contagious
                } else {
                    TupleOutcome::NotContagious { closure }
                }
            }
        };
        let success = result == TupleOutcome::Contagious;
        let seeds = VertexSet::from_vec(chain_vec[..r].to_vec());
        outcome.iterations.push(TupleIteration {
            chain: chain_vec,
            min_block,
            outcome: result,
        });
        if success {
            let result = percolate(graph, &seeds, perc)?;
            assert!(
                result.contagious(),
                "tuple search certificate rejected by engine"
            );
            outcome.found = Some(TupleFound { seeds, result });
            return Ok(outcome);
        }
    }
    Ok(outcome)
}

/// The chain under construction and, for every vertex, how many chain
/// members it is adjacent to.
struct Chain {
    members: Vec<Vertex>,
    in_chain: Vec<bool>,
    hits: Vec<u32>,
    touched: Vec<Vertex>,
    /// Vertices whose hit count reached `r`, in the order they got there.
    ready: Vec<Vertex>,
}

impl Chain {
    fn new(n: usize) -> Self {
        Chain {
            members: Vec::new(),
            in_chain: vec![false; n],
            hits: vec![0; n],
            touched: Vec::new(),
            ready: Vec::new(),
        }
    }

    fn add(&mut self, graph: &Graph, v: Vertex, r: usize) {
        self.in_chain[v as usize] = true;
        self.members.push(v);
        for &w in graph.neighbors(v) {
            let h = &mut self.hits[w as usize];
            if *h == 0 {
                self.touched.push(w);
            }
            *h += 1;
            if *h as usize == r {
                self.ready.push(w);
            }
        }
    }

    /// Resets the counters and hands back the members.
    fn clear(&mut self) -> Vec<Vertex> {
        for &w in &self.touched {
            self.hits[w as usize] = 0;
        }
        self.touched.clear();
        self.ready.clear();
        for &v in &self.members {
            self.in_chain[v as usize] = false;
        }
        std::mem::take(&mut self.members)
    }
}

/// Live positions of the shuffled order, with rank queries (Fenwick tree).
struct LiveSet {
    tree: Vec<u32>,
    alive: Vec<bool>,
    len: usize,
}

impl LiveSet {
    fn new(n: usize) -> Self {
        let mut tree = vec![0u32; n + 1];
        for i in 1..=n {
            tree[i] += 1;
            let parent = i + (i & i.wrapping_neg());
            if parent <= n {
                tree[parent] += tree[i];
            }
        }
        LiveSet {
            tree,
            alive: vec![true; n],
            len: n,
        }
    }

    fn len(&self) -> usize {
        self.len
    }

    fn contains(&self, p: usize) -> bool {
        self.alive[p]
    }

    fn remove(&mut self, p: usize) {
        if !std::mem::replace(&mut self.alive[p], false) {
            return;
        }
        self.len -= 1;
        let mut i = p + 1;
        while i < self.tree.len() {
            self.tree[i] -= 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Number of live positions strictly before `p`.
    fn rank(&self, p: usize) -> usize {
        let mut i = p;
        let mut sum = 0usize;
        while i > 0 {
            sum += self.tree[i] as usize;
            i -= i & i.wrapping_neg();
        }
        sum
    }
}

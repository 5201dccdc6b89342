//! Exact minimum contagious sets for small graphs.
//!
//! Iterative deepening over the target size, with mandatory seeds forced in
//! and the remaining vertices chosen in lexicographic order. Closures are
//! computed on bitsets. Three prunes keep the tree small:
//!
//! * a vertex already in the closure of the partial set is never added;
//! * a branch is cut when even all remaining candidates together cannot
//!   reach the whole graph;
//! * a partial set whose closure was already seen with at least as many
//!   candidates left is skipped.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::percolation::{mandatory_seeds, percolate, PercolationParams};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

const MEMO_LIMIT: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExactStatus {
    Exact,
    BudgetExceeded,
}

/// Outcome of [`min_contagious_exact`].
///
/// With [`ExactStatus::BudgetExceeded`], `size` is the largest size at which
/// the search had started, so every smaller set has been ruled out, and
/// `witness` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactResult {
    pub size: usize,
    pub witness: VertexSet,
    pub nodes_explored: u64,
    pub status: ExactStatus,
}

impl ExactResult {
    pub fn is_exact(&self) -> bool {
        self.status == ExactStatus::Exact
    }
}

/// Computes `m(G, r)` by branch and bound. `nodes_explored` counts closure
/// evaluations.
pub fn min_contagious_exact(graph: &Graph, r: u32, node_budget: u64) -> Result<ExactResult> {
    let params = PercolationParams::new(r)?;
    if node_budget == 0 {
        return Err(Error::InvalidParam("node_budget must be positive".into()));
    }
    let n = graph.vertex_count();
    let mandatory = mandatory_seeds(graph, params);
    let free: Vec<Vertex> = graph
        .vertices()
        .filter(|&v| !mandatory.contains(v))
        .collect();

    let mut search = Search {
        bits: Bits::new(graph, r),
        free,
        budget: node_budget,
        nodes: 0,
        memo: HashMap::new(),
        picked: Vec::new(),
    };
    let mut base = search.bits.set_of(mandatory.iter());
    if !search.closure(&mut base) {
        unreachable!("budget is positive");
    }

    let start = mandatory.len().max(n.min(r as usize));
    for size in start..=n {
        search.memo.clear();
        let picks = size - mandatory.len();
        match search.dfs(&base, 0, picks) {
            Step::Found => {
                let witness = mandatory.union(&VertexSet::from_vec(search.picked.clone()));
                let check = percolate(graph, &witness, params)?;
                assert!(check.contagious(), "exact witness rejected by engine");
                return Ok(ExactResult {
                    size,
                    witness,
                    nodes_explored: search.nodes,
                    status: ExactStatus::Exact,
                });
            }
            Step::OutOfBudget => {
                return Ok(ExactResult {
                    size,
                    witness: VertexSet::new(),
                    nodes_explored: search.nodes,
                    status: ExactStatus::BudgetExceeded,
                });
            }
            Step::Exhausted => {}
        }
    }
    // Only reachable for the empty graph: the whole vertex set always works.
    Ok(ExactResult {
        size: n,
        witness: VertexSet::full(n),
        nodes_explored: search.nodes,
        status: ExactStatus::Exact,
    })
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Search {
    bits: Bits,
    free: Vec<Vertex>,
    budget: u64,
    nodes: u64,
    memo: HashMap<(Vec<u64>, usize), usize>,
    picked: Vec<Vertex>,
}

impl Search {
    fn closure(&mut self, set: &mut [u64]) -> bool {
        if self.nodes >= self.budget {
            return false;
        }
        self.nodes += 1;
        self.bits.close(set);
        true
    }

    /// `closed` is the closure of the current partial set; choose `picks`
    /// more from `free[from..]`.
    fn dfs(&mut self, closed: &[u64], from: usize, picks: usize) -> Step {
        if self.bits.is_full(closed) {
            // Any superset of the right size works; pad with the smallest
            // unused candidates so the witness has the searched size.
            if picks > 0 {
                let pad: Vec<Vertex> = self.free[from..].iter().copied().take(picks).collect();
                if pad.len() < picks {
                    return Step::Exhausted;
                }
                self.picked.extend(pad);
            }
            return Step::Found;
        }
        if picks == 0 || self.free.len() - from < picks {
            return Step::Exhausted;
        }

        let key = (closed.to_vec(), picks);
        if let Some(&seen) = self.memo.get(&key) {
            if seen <= from {
                return Step::Exhausted;
            }
        }
        if self.memo.len() < MEMO_LIMIT || self.memo.contains_key(&key) {
            self.memo.insert(key, from);
        }

        let mut upper = closed.to_vec();
        for &v in &self.free[from..] {
            Bits::set(&mut upper, v);
        }
        if !self.closure(&mut upper) {
            return Step::OutOfBudget;
        }
        if !self.bits.is_full(&upper) {
            return Step::Exhausted;
        }

        for i in from..=self.free.len() - picks {
            let v = self.free[i];
            if Bits::get(closed, v) {
                continue;
            }
            let mut next = closed.to_vec();
            Bits::set(&mut next, v);
            if !self.closure(&mut next) {
                return Step::OutOfBudget;
            }
            self.picked.push(v);
            match self.dfs(&next, i + 1, picks - 1) {
                Step::Exhausted => {
                    self.picked.pop();
                }
                other => return other,
            }
        }
        Step::Exhausted
    }
}

/// Adjacency as bit rows, for closures on small graphs.
struct Bits {
    n: usize,
    r: u32,
    rows: Vec<Vec<u64>>,
}

impl Bits {
    fn new(graph: &Graph, r: u32) -> Self {
        let n = graph.vertex_count();
        let rows = graph
            .vertices()
            .map(|v| {
                let mut row = vec![0u64; n.div_ceil(64)];
                for &u in graph.neighbors(v) {
                    Bits::set(&mut row, u);
                }
                row
            })
            .collect();
        Bits { n, r, rows }
    }

    fn set_of(&self, vs: impl Iterator<Item = Vertex>) -> Vec<u64> {
        let mut set = vec![0u64; self.n.div_ceil(64)];
        for v in vs {
            Bits::set(&mut set, v);
        }
        set
    }

    fn get(set: &[u64], v: Vertex) -> bool {
        set[v as usize / 64] >> (v % 64) & 1 == 1
    }

    fn set(set: &mut [u64], v: Vertex) {
        set[v as usize / 64] |= 1 << (v % 64);
    }

    fn is_full(&self, set: &[u64]) -> bool {
        set.iter().map(|w| w.count_ones() as usize).sum::<usize>() == self.n
    }

    fn close(&self, set: &mut [u64]) {
        loop {
            let mut changed = false;
            for v in 0..self.n as Vertex {
                if Bits::get(set, v) {
                    continue;
                }
                let hits: u32 = self.rows[v as usize]
                    .iter()
                    .zip(set.iter())
                    .map(|(a, b)| (a & b).count_ones())
                    .sum();
                if hits >= self.r {
                    Bits::set(set, v);
                    changed = true;
                }
            }
            if !changed {
                return;
            }
        }
    }
}

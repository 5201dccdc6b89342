//! The r-neighbor activation process.
//!
//! Starting from a seed set `A0`, round `i` activates every inactive vertex
//! with at least `r` neighbors in `A(i-1)`. The process stops at the least
//! fixed point, the closure of the seeds. Rounds are synchronous: a vertex's
//! generation is the first round in which it is active.
//!
//! [`Percolator`] is the reusable engine. It keeps one counter per vertex
//! and a frontier of the previous round's activations, so a run costs time
//! proportional to the degrees of the vertices it activates. Reset only
//! touches what the last run touched, which makes thousands of small runs on
//! a large graph cheap.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

const NEVER: u32 = u32::MAX;

/// Activation threshold `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PercolationParams {
    r: u32,
}

impl PercolationParams {
    pub fn new(r: u32) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidParam(format!(
                "threshold r must be >= 2, got {r}"
            )));
        }
        Ok(PercolationParams { r })
    }

    #[inline]
    pub fn r(&self) -> u32 {
        self.r
    }
}

/// Full trace of one run of the process.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PercolationResult {
    r: u32,
    seeds: VertexSet,
    generation: Vec<u32>,
    active_count: usize,
    tau: u32,
    per_round: Vec<usize>,
}

impl PercolationResult {
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn seeds(&self) -> &VertexSet {
        &self.seeds
    }

    pub fn vertex_count(&self) -> usize {
        self.generation.len()
    }

    /// Round in which `v` became active; `None` if it never does.
    #[inline]
    pub fn generation(&self, v: Vertex) -> Option<u32> {
        match self.generation[v as usize] {
            NEVER => None,
            g => Some(g),
        }
    }

    #[inline]
    pub fn is_active(&self, v: Vertex) -> bool {
        self.generation[v as usize] != NEVER
    }

    pub fn active_count(&self) -> usize {
        self.active_count
    }

    /// The closure of the seeds.
    pub fn active(&self) -> VertexSet {
        VertexSet::from_vec(
            (0..self.generation.len() as Vertex)
                .filter(|&v| self.is_active(v))
                .collect(),
        )
    }

    pub fn inactive(&self) -> VertexSet {
        VertexSet::from_vec(
            (0..self.generation.len() as Vertex)
                .filter(|&v| !self.is_active(v))
                .collect(),
        )
    }

    /// Number of generations: the last round that activated anything.
    pub fn tau(&self) -> u32 {
        self.tau
    }

    pub fn contagious(&self) -> bool {
        self.active_count == self.generation.len()
    }

    /// `per_round()[i]` is the number of vertices activated in round `i + 1`.
    pub fn per_round(&self) -> &[usize] {
        &self.per_round
    }

    /// Active vertices ordered by generation, ties by vertex id.
    pub fn activation_order(&self) -> Vec<Vertex> {
        let mut buckets = vec![0usize; self.tau as usize + 2];
        for &g in &self.generation {
            if g != NEVER {
                buckets[g as usize + 1] += 1;
            }
        }
        for i in 1..buckets.len() {
            buckets[i] += buckets[i - 1];
        }
        let mut order = vec![0; self.active_count];
        for (v, &g) in self.generation.iter().enumerate() {
            if g != NEVER {
                order[buckets[g as usize]] = v as Vertex;
                buckets[g as usize] += 1;
            }
        }
        order
    }

    /// Replays the trace against `graph` and reports the first broken
    /// invariant. A valid trace is exactly the synchronous least fixed point:
    /// every vertex of generation `g >= 1` has at least `r` neighbors of
    /// generation `< g` and fewer than `r` of generation `< g - 1`, and every
    /// inactive vertex has fewer than `r` active neighbors.
    pub fn validate(&self, graph: &Graph) -> std::result::Result<(), String> {
        let n = graph.vertex_count();
        if self.generation.len() != n {
            return Err(format!(
                "trace has {} vertices, graph {n}",
                self.generation.len()
            ));
        }
        let r = self.r as usize;
        for v in graph.vertices() {
            let g = self.generation[v as usize];
            if (g == 0) != self.seeds.contains(v) {
                return Err(format!("vertex {v}: generation 0 iff seed violated"));
            }
            let earlier = |bound: u32| {
                graph
                    .neighbors(v)
                    .iter()
                    .filter(|&&u| self.generation[u as usize] < bound)
                    .count()
            };
            match g {
                0 => {}
                NEVER => {
                    if earlier(NEVER) >= r {
                        return Err(format!("inactive vertex {v} has >= r active neighbors"));
                    }
                }
                g => {
                    if earlier(g) < r {
                        return Err(format!(
                            "vertex {v} (generation {g}) lacks r earlier neighbors"
                        ));
                    }
                    if earlier(g - 1) >= r {
                        return Err(format!(
                            "vertex {v} (generation {g}) could activate earlier"
                        ));
                    }
                }
            }
        }
        let active = self.generation.iter().filter(|&&g| g != NEVER).count();
        if active != self.active_count {
            return Err("active count mismatch".into());
        }
        let max_gen = self
            .generation
            .iter()
            .filter(|&&g| g != NEVER)
            .max()
            .copied()
            .unwrap_or(0);
        if max_gen != self.tau {
            return Err(format!("tau {} but max generation {max_gen}", self.tau));
        }
        if self.per_round.len() != self.tau as usize
            || self.per_round.iter().sum::<usize>() != active - self.seeds.len()
        {
            return Err("per-round counts inconsistent".into());
        }
        Ok(())
    }
}

impl Serialize for PercolationResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let generation: Vec<Option<u32>> = (0..self.generation.len() as Vertex)
            .map(|v| self.generation(v))
            .collect();
        let mut s = serializer.serialize_struct("PercolationResult", 5)?;
        s.serialize_field("tau", &self.tau)?;
        s.serialize_field("contagious", &self.contagious())?;
        s.serialize_field("active_count", &self.active_count)?;
        s.serialize_field("generation", &generation)?;
        s.serialize_field("per_round", &self.per_round)?;
        s.end()
    }
}

/// Reusable activation engine bound to one vertex count and threshold.
#[derive(Clone, Debug)]
pub struct Percolator {
    r: u32,
    count: Vec<u32>,
    generation: Vec<u32>,
    touched: Vec<Vertex>,
    frontier: Vec<Vertex>,
    active_count: usize,
    round: u32,
    per_round: Vec<usize>,
}

impl Percolator {
    pub fn new(n: usize, params: PercolationParams) -> Self {
        Percolator {
            r: params.r,
            count: vec![0; n],
            generation: vec![NEVER; n],
            touched: Vec::new(),
            frontier: Vec::new(),
            active_count: 0,
            round: 0,
            per_round: Vec::new(),
        }
    }

    /// Clears the state of the previous run in time proportional to what it
    /// touched.
    pub fn reset(&mut self) {
        for &v in &self.touched {
            self.count[v as usize] = 0;
            self.generation[v as usize] = NEVER;
        }
        self.touched.clear();
        self.frontier.clear();
        self.active_count = 0;
        self.round = 0;
        self.per_round.clear();
    }

    pub fn active_count(&self) -> usize {
        self.active_count
    }

    #[inline]
    pub fn is_active(&self, v: Vertex) -> bool {
        self.generation[v as usize] != NEVER
    }

    /// Marks `v` active at the current round and queues it for propagation.
    /// Returns false if it was already active.
    pub fn activate(&mut self, v: Vertex) -> bool {
        let i = v as usize;
        if self.generation[i] != NEVER {
            return false;
        }
        if self.count[i] == 0 {
            self.touched.push(v);
        }
        self.generation[i] = self.round;
        self.active_count += 1;
        self.frontier.push(v);
        true
    }

    /// Runs synchronous rounds until nothing changes.
    pub fn run(&mut self, graph: &Graph) {
        let r = self.r;
        let mut next = Vec::new();
        while !self.frontier.is_empty() {
            let generation = self.round + 1;
            for &v in &self.frontier {
                for &u in graph.neighbors(v) {
                    let i = u as usize;
                    if self.generation[i] != NEVER {
                        continue;
                    }
                    let c = self.count[i] + 1;
                    self.count[i] = c;
                    if c == 1 {
                        self.touched.push(u);
                    }
                    if c == r {
                        self.generation[i] = generation;
                        next.push(u);
                    }
                }
            }
            std::mem::swap(&mut self.frontier, &mut next);
            next.clear();
            if !self.frontier.is_empty() {
                self.round = generation;
                self.active_count += self.frontier.len();
                self.per_round.push(self.frontier.len());
            }
        }
    }

    /// Activates `seeds` on a clean engine, runs to fixation, and returns the
    /// size of the closure.
    pub fn closure_size<I>(&mut self, graph: &Graph, seeds: I) -> usize
    where
        I: IntoIterator<Item = Vertex>,
    {
        self.reset();
        for v in seeds {
            self.activate(v);
        }
        self.run(graph);
        self.active_count
    }

    fn into_result(self, seeds: VertexSet) -> PercolationResult {
        PercolationResult {
            r: self.r,
            seeds,
            generation: self.generation,
            active_count: self.active_count,
            tau: self.round,
            per_round: self.per_round,
        }
    }
}

/// Runs the process from `seeds` to fixation.
///
/// Time is `O(n + m)`. In debug and test builds (or with the `audit`
/// feature) every trace is replayed and density-checked before it is
/// returned.
pub fn percolate(
    graph: &Graph,
    seeds: &VertexSet,
    params: PercolationParams,
) -> Result<PercolationResult> {
    graph.check_set(seeds)?;
    let mut engine = Percolator::new(graph.vertex_count(), params);
    for v in seeds {
        engine.activate(v);
    }
    engine.run(graph);
    let result = engine.into_result(seeds.clone());
    if cfg!(any(debug_assertions, feature = "audit")) {
        crate::bounds::audit_trace(graph, &result);
    }
    Ok(result)
}

/// Vertices of degree below `r`. No such vertex can ever be infected, so
/// every contagious set contains all of them.
pub fn mandatory_seeds(graph: &Graph, params: PercolationParams) -> VertexSet {
    VertexSet::from_vec(
        graph
            .vertices()
            .filter(|&v| graph.degree(v) < params.r as usize)
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2() -> PercolationParams {
        PercolationParams::new(2).unwrap()
    }

    #[test]
    fn threshold_must_exceed_one() {
        assert!(PercolationParams::new(1).is_err());
        assert!(PercolationParams::new(0).is_err());
    }

    #[test]
    fn four_cycle_opposite_seeds() {
        let c4 = Graph::cycle(4).unwrap();
        let res = percolate(&c4, &VertexSet::from([0, 2]), r2()).unwrap();
        assert!(res.contagious());
        assert_eq!(res.tau(), 1);
        assert_eq!(res.per_round(), &[2]);
    }

    #[test]
    fn clique_plus_isolated_vertex() {
        let g = Graph::complete(4).with_isolated(1);
        let res = percolate(&g, &VertexSet::from([0, 1]), r2()).unwrap();
        assert_eq!(res.active(), VertexSet::from([0, 1, 2, 3]));
        assert!(!res.contagious());
        assert_eq!(res.generation(4), None);
    }

    #[test]
    fn path_middle_vertex() {
        let res = percolate(&Graph::path(3), &VertexSet::from([0, 2]), r2()).unwrap();
        assert_eq!(res.generation(1), Some(1));
        assert_eq!(res.tau(), 1);
    }

    #[test]
    fn all_seeds() {
        let g = Graph::petersen();
        for r in 2..5 {
            let res =
                percolate(&g, &VertexSet::full(10), PercolationParams::new(r).unwrap()).unwrap();
            assert_eq!(res.tau(), 0);
            assert!(res.contagious());
            assert!(res.per_round().is_empty());
        }
    }

    #[test]
    fn seed_with_active_neighbors_stays_generation_zero() {
        let res = percolate(&Graph::complete(3), &VertexSet::full(3), r2()).unwrap();
        assert!((0..3).all(|v| res.generation(v) == Some(0)));
    }

    #[test]
    fn out_of_range_seed() {
        assert!(percolate(&Graph::complete(3), &VertexSet::from([3]), r2()).is_err());
    }

    #[test]
    fn json_shape() {
        let g = Graph::path(3).with_isolated(1);
        let res = percolate(&g, &VertexSet::from([0, 2]), r2()).unwrap();
        let json = serde_json::to_string(&res).unwrap();
        assert_eq!(
            json,
            r#"{"tau":1,"contagious":false,"active_count":3,"generation":[0,1,0,null],"per_round":[1]}"#
        );
    }

    #[test]
    fn activation_order_sorts_by_generation_then_id() {
        // 0,4 seeds; 2 is adjacent to both; 1 and 3 are adjacent to 2 and a seed.
        let g = Graph::from_edges(5, [(0, 2), (4, 2), (1, 0), (1, 2), (3, 2), (3, 4)]).unwrap();
        let res = percolate(&g, &VertexSet::from([4, 0]), r2()).unwrap();
        assert_eq!(res.activation_order(), vec![0, 4, 2, 1, 3]);
    }

    #[test]
    fn mandatory_examples() {
        assert!(mandatory_seeds(&Graph::complete(4), r2()).is_empty());
        assert_eq!(
            mandatory_seeds(&Graph::star(3), r2()),
            VertexSet::from([1, 2, 3])
        );
        assert_eq!(
            mandatory_seeds(&Graph::edgeless(6), r2()),
            VertexSet::full(6)
        );
    }

    #[test]
    fn percolator_reuse_matches_fresh_runs() {
        let g = Graph::petersen();
        let mut engine = Percolator::new(10, r2());
        for (a, b) in [(0, 2), (0, 5), (1, 7), (3, 8)] {
            let reused = engine.closure_size(&g, [a, b]);
            let fresh = percolate(&g, &VertexSet::from([a, b]), r2())
                .unwrap()
                .active_count();
            assert_eq!(reused, fresh);
        }
    }

    #[test]
    fn incremental_activation_reaches_closure_of_union() {
        let g = Graph::cycle(6).unwrap();
        let mut engine = Percolator::new(6, r2());
        engine.closure_size(&g, [0]);
        assert_eq!(engine.active_count(), 1);
        engine.activate(2);
        engine.run(&g);
        assert_eq!(engine.active_count(), 3);
        let direct = percolate(&g, &VertexSet::from([0, 2]), r2()).unwrap();
        assert_eq!(direct.active_count(), 3);
    }

    #[test]
    fn validate_rejects_tampered_trace() {
        let g = Graph::cycle(4).unwrap();
        let mut res = percolate(&g, &VertexSet::from([0, 2]), r2()).unwrap();
        assert!(res.validate(&g).is_ok());
        res.generation[1] = 2;
        assert!(res.validate(&g).is_err());
    }
}

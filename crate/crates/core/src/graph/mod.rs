//! Static undirected simple graphs.
//!
//! A [`Graph`] is stored in compressed sparse row form: one offsets array and
//! one flat neighbor array, with every adjacency slice sorted ascending. Graphs
//! are immutable after construction, so they can be shared freely between
//! threads running independent trials.

mod components;
mod edgelist;
mod sample;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use components::{connected_components, induced_edge_count};
pub use edgelist::{read_edge_list, write_edge_list};
pub use sample::{sample_gnp, GnpParams};

/// Vertex identifier. Vertices of a graph on `n` vertices are `0..n`.
pub type Vertex = u32;

/// An undirected simple graph with sorted adjacency.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<Vertex>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.vertex_count())
            .field("m", &self.edge_count())
            .finish()
    }
}

impl Graph {
    /// The graph on `n` vertices with no edges.
    pub fn edgeless(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            neighbors: Vec::new(),
        }
    }

    /// Builds a graph from an arbitrary list of undirected edges.
    ///
    /// Each pair may be given in either orientation. Self-loops, duplicate
    /// edges and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list: Vec<(Vertex, Vertex)> = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w as usize >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidParam(format!("self-loop at vertex {u}")));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidParam(format!(
                "duplicate edge {{{}, {}}}",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_sorted_edges(n, &list))
    }

    /// Builds the CSR arrays from edges `(u, v)` with `u < v`, sorted either
    /// by `(u, v)` or by `(v, u)`. Both orders leave every adjacency slice
    /// sorted, because each vertex receives its smaller neighbors before its
    /// larger ones and each group arrives in increasing order.
    pub(crate) fn from_sorted_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut acc = 0;
        for d in &degree {
            acc += d;
            offsets.push(acc);
        }
        let mut cursor: Vec<usize> = offsets[..n].to_vec();
        let mut neighbors = vec![0 as Vertex; acc];
        for &(u, v) in edges {
            neighbors[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        let g = Graph { offsets, neighbors };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n as Vertex {
            for v in u + 1..n as Vertex {
                edges.push((u, v));
            }
        }
        Self::from_sorted_edges(n, &edges)
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`. Requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParam(format!("cycle needs n >= 3, got {n}")));
        }
        let n32 = n as Vertex;
        Self::from_edges(n, (0..n32).map(|i| (i, (i + 1) % n32)))
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n as Vertex).map(|i| (i - 1, i)).collect();
        Self::from_sorted_edges(n, &edges)
    }

    /// The star with center `0` and `leaves` leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves as Vertex).map(|i| (0, i)).collect();
        Self::from_sorted_edges(leaves + 1, &edges)
    }

    /// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::from_edges(10, edges).expect("petersen edges are valid")
    }

    /// This graph plus `extra` isolated vertices appended after the existing ones.
    pub fn with_isolated(&self, extra: usize) -> Self {
        let mut offsets = self.offsets.clone();
        let last = *offsets.last().expect("offsets never empty");
        offsets.extend(std::iter::repeat(last).take(extra));
        Graph {
            offsets,
            neighbors: self.neighbors.clone(),
        }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sorted neighbors of `v`.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Empirical average degree `2m / n` (0 for the empty graph).
    pub fn average_degree(&self) -> f64 {
        match self.vertex_count() {
            0 => 0.0,
            n => 2.0 * self.edge_count() as f64 / n as f64,
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.vertex_count() as Vertex
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if (v as usize) < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.vertex_count(),
            })
        }
    }

    pub(crate) fn check_set(&self, set: &VertexSet) -> Result<()> {
        // Sets are sorted, so the largest member decides.
        match set.as_slice().last() {
            Some(&v) => self.check_vertex(v),
            None => Ok(()),
        }
    }

    /// Verifies symmetry, sortedness, and absence of loops and duplicates.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        for u in self.vertices() {
            let adj = self.neighbors(u);
            if adj.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("adjacency of {u} not strictly increasing"));
            }
            for &v in adj {
                if v == u {
                    return Err(format!("self-loop at {u}"));
                }
                if v as usize >= self.vertex_count() {
                    return Err(format!("neighbor {v} of {u} out of range"));
                }
                if !self.has_edge(v, u) {
                    return Err(format!("edge {u}->{v} has no reverse"));
                }
            }
        }
        Ok(())
    }

    /// Number of vertices in the largest connected component.
    pub fn largest_component_size(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        let mut best = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s as Vertex);
            let mut size = 0;
            while let Some(u) = queue.pop_front() {
                size += 1;
                for &w in self.neighbors(u) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        queue.push_back(w);
                    }
                }
            }
            best = best.max(size);
        }
        best
    }
}

/// A set of vertex ids, kept sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn from_vec(mut members: Vec<Vertex>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }

    /// All vertices `0..n`.
    pub fn full(n: usize) -> Self {
        VertexSet((0..n as Vertex).collect())
    }

    /// Vertices `0..k`.
    pub fn prefix(k: usize) -> Self {
        Self::full(k)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.0, &other.0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        VertexSet(out)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| other.contains(v)).collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }
}

impl From<Vec<Vertex>> for VertexSet {
    fn from(v: Vec<Vertex>) -> Self {
        VertexSet::from_vec(v)
    }
}

impl From<VertexSet> for Vec<Vertex> {
    fn from(s: VertexSet) -> Self {
        s.0
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(v: [Vertex; N]) -> Self {
        VertexSet::from_vec(v.to_vec())
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet::from_vec(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = Vertex;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Vertex>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_counts() {
        let k5 = Graph::complete(5);
        assert_eq!(k5.vertex_count(), 5);
        assert_eq!(k5.edge_count(), 10);
        assert!(k5.check_invariants().is_ok());
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn adjacency_is_sorted_and_symmetric() {
        let g = Graph::from_edges(6, [(5, 0), (3, 1), (0, 2), (2, 5), (1, 0)]).unwrap();
        assert_eq!(g.neighbors(0), &[1, 2, 5]);
        assert_eq!(g.neighbors(5), &[0, 2]);
        assert!(g.check_invariants().is_ok());
        assert_eq!(g.edges().count(), 5);
    }

    #[test]
    fn petersen_is_cubic() {
        let p = Graph::petersen();
        assert_eq!(p.edge_count(), 15);
        assert!(p.vertices().all(|v| p.degree(v) == 3));
    }

    #[test]
    fn isolated_padding() {
        let g = Graph::complete(4).with_isolated(1);
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.degree(4), 0);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn vertex_set_normalizes() {
        let s = VertexSet::from_vec(vec![4, 1, 4, 2]);
        assert_eq!(s.as_slice(), &[1, 2, 4]);
        let t = VertexSet::from([2, 3]);
        assert_eq!(s.union(&t).as_slice(), &[1, 2, 3, 4]);
        assert_eq!(s.intersection(&t).as_slice(), &[2]);
        assert!(VertexSet::from([1, 4]).is_subset(&s));
    }

    #[test]
    fn largest_component() {
        let g = Graph::complete(4).with_isolated(3);
        assert_eq!(g.largest_component_size(), 4);
    }
}

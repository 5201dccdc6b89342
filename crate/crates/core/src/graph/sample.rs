use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Graph, Vertex};
use crate::error::{Error, Result};
use crate::rng::seeded;

/// At or above this edge probability the sampler flips one coin per pair
/// instead of drawing geometric skips.
const DENSE_THRESHOLD: f64 = 0.25;

/// Parameters of the binomial random graph `G(n, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GnpParams {
    n: usize,
    p: f64,
    rng_seed: u64,
}

impl GnpParams {
    pub fn new(n: usize, p: f64, rng_seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParam(format!(
                "edge probability {p} not in [0, 1]"
            )));
        }
        if n > Vertex::MAX as usize {
            return Err(Error::InvalidParam(format!(
                "n = {n} exceeds vertex id range"
            )));
        }
        Ok(GnpParams { n, p, rng_seed })
    }

    /// Parameters with `p = d / n`.
    pub fn with_degree(n: usize, d: f64, rng_seed: u64) -> Result<Self> {
        if n == 0 {
            return Self::new(0, 0.0, rng_seed);
        }
        Self::new(n, d / n as f64, rng_seed)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn rng_seed(&self) -> u64 {
        self.rng_seed
    }

    /// Expected average degree `d = n p`.
    pub fn d(&self) -> f64 {
        self.n as f64 * self.p
    }
}

/// Samples `G(n, p)`: every one of the `n(n-1)/2` pairs is an edge
/// independently with probability `p`.
///
/// The output is a pure function of `params`. Sparse graphs are sampled by
/// geometric skipping over the pair sequence, so the cost is `O(n + m)`.
pub fn sample_gnp(params: &GnpParams) -> Graph {
    let n = params.n;
    if n < 2 || params.p == 0.0 {
        return Graph::edgeless(n);
    }
    if params.p == 1.0 {
        return Graph::complete(n);
    }
    let edges = if params.p >= DENSE_THRESHOLD {
        dense_edges(params)
    } else {
        skip_edges(params)
    };
    Graph::from_sorted_edges(n, &edges)
}

/// One Bernoulli trial per pair, pairs in `(u, v)` lexicographic order.
pub(crate) fn dense_edges(params: &GnpParams) -> Vec<(Vertex, Vertex)> {
    let mut rng = seeded(params.rng_seed);
    let n = params.n as Vertex;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(params.p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Geometric skipping over pairs `(w, v)`, `w < v`, ordered by `v` then `w`.
///
/// The gap between consecutive present pairs is `Geometric(p)`, drawn by
/// inversion as `floor(ln(1 - U) / ln(1 - p))`.
pub(crate) fn skip_edges(params: &GnpParams) -> Vec<(Vertex, Vertex)> {
    let mut rng = seeded(params.rng_seed);
    let n = params.n as u64;
    let total_pairs = n * (n - 1) / 2;
    let log_q = (-params.p).ln_1p();
    let expected = total_pairs as f64 * params.p;
    let mut edges = Vec::with_capacity((expected + 4.0 * expected.sqrt() + 16.0) as usize);

    // `idx` is the linear index of the next candidate pair; (w, v) tracks it.
    let mut idx: u64 = 0;
    let (mut v, mut w): (u64, u64) = (1, 0);
    loop {
        let u: f64 = rng.gen();
        let skip = ((-u).ln_1p() / log_q).floor();
        let remaining = total_pairs - idx;
        if skip >= remaining as f64 {
            break;
        }
        let skip = skip as u64;
        idx += skip;
        w += skip;
        while w >= v {
            w -= v;
            v += 1;
        }
        edges.push((w as Vertex, v as Vertex));
        idx += 1;
        if idx >= total_pairs {
            break;
        }
        w += 1;
        if w >= v {
            w = 0;
            v += 1;
        }
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_has_no_edges() {
        let g = sample_gnp(&GnpParams::new(1, 0.7, 9).unwrap());
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn p_one_is_complete() {
        let g = sample_gnp(&GnpParams::new(5, 1.0, 0).unwrap());
        assert_eq!(g.edge_count(), 10);
    }

    #[test]
    fn p_zero_is_edgeless() {
        let g = sample_gnp(&GnpParams::new(50, 0.0, 3).unwrap());
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn rejects_bad_probability() {
        assert!(GnpParams::new(10, 1.5, 0).is_err());
        assert!(GnpParams::new(10, -0.1, 0).is_err());
        assert!(GnpParams::new(10, f64::NAN, 0).is_err());
    }

    #[test]
    fn degree_accessor() {
        let params = GnpParams::with_degree(1000, 20.0, 1).unwrap();
        assert!((params.p() - 0.02).abs() < 1e-15);
        assert!((params.d() - 20.0).abs() < 1e-9);
    }

    #[test]
    fn same_seed_same_graph() {
        let params = GnpParams::new(2000, 0.01, 42).unwrap();
        assert_eq!(sample_gnp(&params), sample_gnp(&params));
        let other = GnpParams::new(2000, 0.01, 43).unwrap();
        assert_ne!(sample_gnp(&params), sample_gnp(&other));
    }

    #[test]
    fn skip_sampler_stays_in_range() {
        // Near-dense probability through the sparse path exercises the
        // carry logic of the pair cursor.
        for seed in 0..20 {
            let params = GnpParams::new(40, 0.2, seed).unwrap();
            let edges = skip_edges(&params);
            assert!(edges.iter().all(|&(w, v)| w < v && v < 40));
            assert!(edges
                .windows(2)
                .all(|p| (p[0].1, p[0].0) < (p[1].1, p[1].0)));
        }
    }

    // Per-pair frequency of both samplers over many seeds: every fixed pair
    // must land within a binomial 4-sigma band around p.
    fn pair_frequencies(sampler: fn(&GnpParams) -> Vec<(Vertex, Vertex)>, p: f64) -> Vec<f64> {
        let n = 12usize;
        let samples = 2000;
        let mut hits = vec![0u32; n * n];
        for seed in 0..samples {
            let params = GnpParams::new(n, p, seed as u64).unwrap();
            for (u, v) in sampler(&params) {
                hits[u as usize * n + v as usize] += 1;
            }
        }
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                out.push(hits[u * n + v] as f64 / samples as f64);
            }
        }
        out
    }

    #[test]
    fn both_samplers_are_bernoulli_per_pair() {
        for (sampler, p) in [(skip_edges as fn(&_) -> _, 0.1f64), (dense_edges, 0.3)] {
            let sigma = (p * (1.0 - p) / 2000.0).sqrt();
            for f in pair_frequencies(sampler, p) {
                assert!((f - p).abs() <= 4.0 * sigma, "frequency {f} vs {p}");
            }
        }
    }
}

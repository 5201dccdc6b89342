//! r-neighbor bootstrap percolation on graphs, with tools for finding small
//! contagious sets in sparse random graphs.
//!
//! A vertex becomes active once at least `r` of its neighbors are active.
//! A seed set is *contagious* when it eventually activates every vertex, and
//! `m(G, r)` is the size of the smallest contagious set.
//!
//! * [`graph`]: compressed adjacency, `G(n, p)` sampling, edge-list I/O.
//! * [`percolation`]: the synchronous engine and its traces.
//! * [`constructor`]: a staged construction for sparse graphs and a search
//!   for contagious `r`-sets near the threshold where `m(G, r) = r`.
//! * [`exact`]: branch and bound for `m(G, r)` on small graphs.
//! * [`bounds`]: density certificates, the random-seed critical size, and
//!   the two-parent random DAG.
//! * [`experiments`]: the seeded Monte-Carlo harness behind the CLI.
//!
//! ```
//! use contagion::{percolate, Graph, PercolationParams, VertexSet};
//!
//! let g = Graph::cycle(4)?;
//! let res = percolate(&g, &VertexSet::from([0, 2]), PercolationParams::new(2)?)?;
//! assert!(res.contagious());
//! assert_eq!(res.tau(), 1);
//! # Ok::<(), contagion::Error>(())
//! ```

pub mod bounds;
pub mod constructor;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod graph;
pub mod percolation;
pub mod rng;

pub use bounds::{
    critical_random_seed_size, density_witness, h2k_longest_path, DensityWitnessReport,
    GenerationsDag,
};
pub use constructor::{construct_contagious, search_minimal_tuple, StageParams, TupleSearchParams};
pub use error::{Error, Result};
pub use exact::{min_contagious_exact, ExactResult, ExactStatus, DEFAULT_NODE_BUDGET};
pub use graph::{sample_gnp, GnpParams, Graph, Vertex, VertexSet};
pub use percolation::{
    mandatory_seeds, percolate, PercolationParams, PercolationResult, Percolator,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/percolation.md")]
    mod percolation {}
    #[doc = include_str!("../../../book/src/construction.md")]
    mod construction {}
    #[doc = include_str!("../../../book/src/tuples.md")]
    mod tuples {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}

//! Constructive upper bounds: small contagious sets built from the structure
//! of a sparse random graph.
//!
//! [`construct_contagious`] grows an infected set in doubling stages, each
//! stage seeding one vertex per large component among the neighbors of the
//! previous stage, then lets the process run and seeds whatever is left.
//! [`search_minimal_tuple`] looks for `r` vertices whose closure is
//! everything, which is the right tool once the graph is dense enough for
//! `m(G, r) = r`.

mod staged;
mod tuple;

pub use staged::{
    construct_contagious, ConstructionTrace, IterationRecord, StageParams, MIN_STAGED_N,
};
pub use tuple::{
    search_minimal_tuple, TupleFound, TupleIteration, TupleOutcome, TupleSearchOutcome,
    TupleSearchParams,
};

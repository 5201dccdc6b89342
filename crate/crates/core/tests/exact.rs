mod oracle;

use contagion::{
    construct_contagious, min_contagious_exact, percolate, sample_gnp, GnpParams, Graph,
    PercolationParams, StageParams, Vertex, DEFAULT_NODE_BUDGET,
};
use proptest::prelude::*;

/// Frozen output of the brute-force oracle on the Petersen graph.
const PETERSEN_M2: usize = 3;
const PETERSEN_M3: usize = 6;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.1f64..0.9).prop_flat_map(|(n, q)| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(proptest::bool::weighted(q), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for v in 1..n as Vertex {
                for u in 0..v {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

#[test]
fn petersen_matches_frozen_oracle() {
    let g = Graph::petersen();
    assert_eq!(oracle::brute_force_min(&g, 2), PETERSEN_M2);
    assert_eq!(oracle::brute_force_min(&g, 3), PETERSEN_M3);
    for (r, want) in [(2, PETERSEN_M2), (3, PETERSEN_M3)] {
        let res = min_contagious_exact(&g, r, DEFAULT_NODE_BUDGET).unwrap();
        assert!(res.is_exact());
        assert_eq!(res.size, want);
        assert!(oracle::is_contagious(&g, res.witness.as_slice(), r));
    }
}

#[test]
fn agrees_with_brute_force_on_samples() {
    for seed in 0..40 {
        let n = 6 + (seed as usize % 9);
        let g = sample_gnp(&GnpParams::new(n, 0.45, seed).unwrap());
        for r in 2..=3 {
            let res = min_contagious_exact(&g, r, DEFAULT_NODE_BUDGET).unwrap();
            assert!(res.is_exact());
            assert_eq!(
                res.size,
                oracle::brute_force_min(&g, r),
                "seed {seed}, r {r}"
            );
        }
    }
}

#[test]
fn sandwiched_by_constructor() {
    for seed in 0..20 {
        let g = sample_gnp(&GnpParams::new(16, 0.3, seed).unwrap());
        let exact = min_contagious_exact(&g, 2, DEFAULT_NODE_BUDGET).unwrap();
        let (built, _) = construct_contagious(&g, &StageParams::for_threshold(2), seed).unwrap();
        assert!(exact.is_exact());
        assert!(2 <= exact.size && exact.size <= built.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn exact_size_and_witness(g in arb_graph(11), r in 2u32..=4) {
        let res = min_contagious_exact(&g, r, DEFAULT_NODE_BUDGET).unwrap();
        prop_assert!(res.is_exact());
        prop_assert_eq!(res.size, oracle::brute_force_min(&g, r));
        prop_assert_eq!(res.witness.len(), res.size);
        prop_assert!(res.size >= g.vertex_count().min(r as usize));
        let check = percolate(&g, &res.witness, PercolationParams::new(r).unwrap()).unwrap();
        prop_assert!(check.contagious());
        for v in oracle::low_degree(&g, r) {
            prop_assert!(res.witness.contains(v));
        }
    }
}

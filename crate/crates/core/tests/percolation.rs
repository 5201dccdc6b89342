mod oracle;

use contagion::{mandatory_seeds, percolate, Graph, PercolationParams, Vertex, VertexSet};
use proptest::prelude::*;

fn arb_case(max_n: usize) -> impl Strategy<Value = (Graph, u32, VertexSet)> {
    (1..=max_n, 2u32..=4).prop_flat_map(|(n, r)| {
        let pairs = n * (n - 1) / 2;
        (
            proptest::collection::vec(proptest::bool::weighted(0.45), pairs),
            proptest::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(bits, pick)| {
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
                let seeds = (0..n as Vertex).filter(|&v| pick[v as usize]).collect();
                (Graph::from_edges(n, edges).unwrap(), r, seeds)
            })
    })
}

fn params(r: u32) -> PercolationParams {
    PercolationParams::new(r).unwrap()
}

#[test]
fn reference_examples() {
    let c4 = Graph::cycle(4).unwrap();
    let res = percolate(&c4, &VertexSet::from([0, 2]), params(2)).unwrap();
    assert!(res.contagious() && res.tau() == 1);

    let k4 = Graph::complete(4).with_isolated(1);
    let res = percolate(&k4, &VertexSet::from([0, 1]), params(2)).unwrap();
    assert_eq!(res.active(), VertexSet::from([0, 1, 2, 3]));
    assert!(!res.contagious());

    let path = Graph::path(3);
    let res = percolate(&path, &VertexSet::from([0, 2]), params(2)).unwrap();
    assert_eq!((res.generation(1), res.tau()), (Some(1), 1));

    for r in 2..6 {
        let g = Graph::petersen();
        let res = percolate(&g, &VertexSet::full(10), params(r)).unwrap();
        assert!(res.contagious() && res.tau() == 0);
    }

    assert!(mandatory_seeds(&Graph::complete(4), params(2)).is_empty());
    assert_eq!(
        mandatory_seeds(&Graph::star(3), params(2)),
        VertexSet::from([1, 2, 3])
    );
    assert_eq!(
        mandatory_seeds(&Graph::edgeless(6), params(2)),
        VertexSet::full(6)
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn engine_matches_rescan((g, r, seeds) in arb_case(10)) {
        let res = percolate(&g, &seeds, params(r)).unwrap();
        let engine: Vec<Option<u32>> = g.vertices().map(|v| res.generation(v)).collect();
        prop_assert_eq!(engine, oracle::rescan_generations(&g, seeds.as_slice(), r));
    }

    #[test]
    fn result_fields_are_consistent((g, r, seeds) in arb_case(12)) {
        let res = percolate(&g, &seeds, params(r)).unwrap();
        res.validate(&g).unwrap();
        for v in g.vertices() {
            prop_assert_eq!(res.generation(v) == Some(0), seeds.contains(v));
            prop_assert_eq!(res.is_active(v), res.generation(v).is_some());
            if let Some(k) = res.generation(v).filter(|&k| k > 0) {
                let earlier = g.neighbors(v).iter().filter(|&&u| res.generation(u).is_some_and(|j| j < k)).count();
                prop_assert!(earlier >= r as usize);
            }
        }
        let max_gen = g.vertices().filter_map(|v| res.generation(v)).max().unwrap_or(0);
        prop_assert_eq!(res.tau(), max_gen);
        prop_assert_eq!(res.contagious(), res.active_count() == g.vertex_count());
        prop_assert_eq!(res.per_round().iter().sum::<usize>(), res.active_count() - seeds.len());
    }

    #[test]
    fn monotone_in_seeds((g, r, a) in arb_case(12), extra in any::<u16>()) {
        let b = a.union(&g.vertices().filter(|v| extra >> v & 1 == 1).collect());
        let ra = percolate(&g, &a, params(r)).unwrap();
        let rb = percolate(&g, &b, params(r)).unwrap();
        prop_assert!(ra.active().is_subset(&rb.active()));
        for v in ra.active().iter() {
            prop_assert!(rb.generation(v).unwrap() <= ra.generation(v).unwrap());
        }
    }

    #[test]
    fn closure_is_idempotent((g, r, seeds) in arb_case(12)) {
        let first = percolate(&g, &seeds, params(r)).unwrap();
        let again = percolate(&g, &first.active(), params(r)).unwrap();
        prop_assert_eq!(again.active(), first.active());
        prop_assert_eq!(again.tau(), 0);
    }

    #[test]
    fn low_degree_vertices_are_never_infected((g, r, seeds) in arb_case(12)) {
        let mandatory = mandatory_seeds(&g, params(r));
        let expected = oracle::low_degree(&g, r);
        prop_assert_eq!(mandatory.as_slice(), expected.as_slice());
        let res = percolate(&g, &seeds, params(r)).unwrap();
        prop_assert!(mandatory.intersection(&res.active()).is_subset(&seeds));
    }
}

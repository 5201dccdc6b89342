//! Deliberately naive reference implementations. Nothing here shares code
//! with the library beyond `Graph` accessors.
#![allow(dead_code)]

use contagion::{Graph, Vertex};

/// Synchronous rescan: every round, look at every inactive vertex and count
/// its active neighbors from scratch.
pub fn rescan_generations(graph: &Graph, seeds: &[Vertex], r: u32) -> Vec<Option<u32>> {
    let n = graph.vertex_count();
    let mut gen = vec![None; n];
    for &s in seeds {
        gen[s as usize] = Some(0);
    }
    let mut round = 0;
    loop {
        round += 1;
        let fresh: Vec<usize> = (0..n)
            .filter(|&v| gen[v].is_none())
            .filter(|&v| {
                (0..n)
                    .filter(|&u| gen[u].is_some() && graph.has_edge(u as Vertex, v as Vertex))
                    .count()
                    >= r as usize
            })
            .collect();
        if fresh.is_empty() {
            return gen;
        }
        for v in fresh {
            gen[v] = Some(round);
        }
    }
}

pub fn is_contagious(graph: &Graph, seeds: &[Vertex], r: u32) -> bool {
    rescan_generations(graph, seeds, r)
        .iter()
        .all(Option::is_some)
}

/// Minimum contagious set size by trying every subset, smallest first.
pub fn brute_force_min(graph: &Graph, r: u32) -> usize {
    let n = graph.vertex_count();
    assert!(n <= 20, "brute force is for tiny graphs");
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for mask in 0u32..(1 << n) {
        by_size[mask.count_ones() as usize].push(mask);
    }
    for (size, masks) in by_size.iter().enumerate() {
        for &mask in masks {
            let seeds: Vec<Vertex> = (0..n as Vertex).filter(|v| mask >> v & 1 == 1).collect();
            if is_contagious(graph, &seeds, r) {
                return size;
            }
        }
    }
    unreachable!("the full vertex set is always contagious")
}

pub fn low_degree(graph: &Graph, r: u32) -> Vec<Vertex> {
    graph
        .vertices()
        .filter(|&v| graph.degree(v) < r as usize)
        .collect()
}

/// Edges with both ends in `subset`, by scanning all pairs.
pub fn pair_scan_edges(graph: &Graph, subset: &[Vertex]) -> usize {
    let mut count = 0;
    for (i, &u) in subset.iter().enumerate() {
        for &v in &subset[i + 1..] {
            if graph.has_edge(u, v) {
                count += 1;
            }
        }
    }
    count
}

/// Component labels by repeated relaxation to the minimum neighbor label.
pub fn relaxation_components(graph: &Graph, subset: &[Vertex]) -> Vec<Vec<Vertex>> {
    let n = graph.vertex_count();
    let mut inside = vec![false; n];
    for &v in subset {
        inside[v as usize] = true;
    }
    let mut label: Vec<Vertex> = (0..n as Vertex).collect();
    loop {
        let mut changed = false;
        for &v in subset {
            for &u in graph.neighbors(v) {
                if inside[u as usize] && label[u as usize] < label[v as usize] {
                    label[v as usize] = label[u as usize];
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut groups: std::collections::BTreeMap<Vertex, Vec<Vertex>> = Default::default();
    for &v in subset {
        groups.entry(label[v as usize]).or_default().push(v);
    }
    let mut comps: Vec<Vec<Vertex>> = groups.into_values().collect();
    for c in &mut comps {
        c.sort_unstable();
    }
    comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    comps
}

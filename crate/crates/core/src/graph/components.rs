use std::collections::VecDeque;

use super::{Graph, Vertex, VertexSet};
use crate::error::Result;

/// Connected components of the subgraph induced by `restrict`.
///
/// Each component is sorted ascending. Components are ordered by size
/// descending, then by smallest member ascending; the staged constructor
/// relies on this order to break ties between equal-size components.
pub fn connected_components(graph: &Graph, restrict: &VertexSet) -> Result<Vec<Vec<Vertex>>> {
    graph.check_set(restrict)?;
    let n = graph.vertex_count();
    // 0 = outside restrict, 1 = inside and unvisited, 2 = visited.
    let mut state = vec![0u8; n];
    for v in restrict {
        state[v as usize] = 1;
    }
    let mut components = Vec::new();
    let mut queue = VecDeque::new();
    for s in restrict {
        if state[s as usize] != 1 {
            continue;
        }
        state[s as usize] = 2;
        queue.push_back(s);
        let mut comp = Vec::new();
        while let Some(u) = queue.pop_front() {
            comp.push(u);
            for &w in graph.neighbors(u) {
                if state[w as usize] == 1 {
                    state[w as usize] = 2;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    components.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    Ok(components)
}

/// Number of edges with both endpoints in `subset`.
pub fn induced_edge_count(graph: &Graph, subset: &VertexSet) -> Result<usize> {
    graph.check_set(subset)?;
    let mut inside = vec![false; graph.vertex_count()];
    for v in subset {
        inside[v as usize] = true;
    }
    let twice: usize = subset
        .iter()
        .map(|u| {
            graph
                .neighbors(u)
                .iter()
                .filter(|&&w| inside[w as usize])
                .count()
        })
        .sum();
    Ok(twice / 2)
}

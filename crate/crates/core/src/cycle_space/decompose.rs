use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

use super::edge_set::{is_cycle_space_element, EdgeSetF2};

/// Rotates and orients a cycle so it starts at its smallest vertex and
/// continues toward the smaller of that vertex's two cycle neighbors.
pub fn canonical_cycle(mut cycle: Vec<VertexId>) -> Vec<VertexId> {
    if cycle.is_empty() {
        return cycle;
    }
    let i = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap();
    cycle.rotate_left(i);
    if cycle.len() > 2 && cycle[cycle.len() - 1] < cycle[1] {
        cycle[1..].reverse();
    }
    cycle
}

/// Splits an even-degree edge set into edge-disjoint simple cycles.
///
/// Greedy: walk along unused edges (smallest neighbor first) until a vertex
/// repeats, cut off the closed part, keep walking. Cycles come back in
/// canonical form, sorted.
pub fn decompose_into_cycles(g: &Graph, x: &EdgeSetF2) -> Result<Vec<Vec<VertexId>>> {
    if !is_cycle_space_element(g, x)? {
        return Err(Error::invalid("edge set has a vertex of odd degree"));
    }
    let n = g.num_vertices();
    let mut adj: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n];
    for &e in x.edges() {
        let (u, v) = g.edge(e);
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let mut used = vec![false; g.num_edges()];
    let mut pos: Vec<Option<usize>> = vec![None; n];
    let mut cycles = Vec::new();

    for s in 0..n {
        let mut stack = vec![s];
        pos[s] = Some(0);
        loop {
            let u = *stack.last().unwrap();
            let next = adj[u].iter().copied().find(|&(_, e)| !used[e]);
            let Some((w, e)) = next else {
                break;
            };
            used[e] = true;
            match pos[w] {
                Some(i) => {
                    let cycle: Vec<VertexId> = stack.drain(i + 1..).collect();
                    for &c in &cycle {
                        pos[c] = None;
                    }
                    let mut full = vec![w];
                    full.extend(cycle);
                    cycles.push(canonical_cycle(full));
                }
                None => {
                    pos[w] = Some(stack.len());
                    stack.push(w);
                }
            }
        }
        for &v in &stack {
            pos[v] = None;
        }
    }
    cycles.sort();
    Ok(cycles)
}

/// A simple cycle `C'` with `E(P) ⊆ E(C') ⊆ x`, listed starting with `path`.
///
/// Requires `E(P) ⊆ x`, `x` in the cycle space, and that no internal vertex
/// of `P` meets an edge of `x` outside `E(P)`.
pub fn extract_cycle_containing_path(g: &Graph, x: &EdgeSetF2, path: &[VertexId]) -> Result<Vec<VertexId>> {
    if path.len() < 2 || !g.is_simple_path(path) {
        return Err(Error::invalid("path must be a simple path with at least one edge"));
    }
    let ep = EdgeSetF2::from_path(g, path)?;
    if !ep.is_subset(x) {
        return Err(Error::invalid("path edges are not all in the edge set"));
    }
    if !is_cycle_space_element(g, x)? {
        return Err(Error::invalid("edge set is not in the cycle space"));
    }
    let rest = x.xor(&ep)?;
    let deg = rest.degrees(g)?;
    if let Some(&v) = path[1..path.len() - 1].iter().find(|&&v| deg[v] > 0) {
        return Err(Error::invalid(format!(
            "internal path vertex {v} meets an edge of the set outside the path"
        )));
    }

    let n = g.num_vertices();
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for &e in rest.edges() {
        let (u, v) = g.edge(e);
        adj[u].push(v);
        adj[v].push(u);
    }
    let (start, target) = (path[path.len() - 1], path[0]);
    let mut prev = vec![usize::MAX; n];
    prev[start] = start;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        if u == target {
            break;
        }
        adj[u].sort_unstable();
        for &w in &adj[u] {
            if prev[w] == usize::MAX {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    if prev[target] == usize::MAX {
        return Err(Error::invalid("no return path from the end of the path to its start"));
    }
    let mut back = Vec::new();
    let mut cur = prev[target];
    while cur != start {
        back.push(cur);
        cur = prev[cur];
    }
    back.reverse();
    let mut cycle = path.to_vec();
    cycle.extend(back);
    Ok(cycle)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowtie() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap()
    }

    fn all_edges(g: &Graph) -> EdgeSetF2 {
        EdgeSetF2::from_edges(g, 0..g.num_edges()).unwrap()
    }

    #[test]
    fn figure_eight_splits_into_two_triangles() {
        let g = bowtie();
        let cycles = decompose_into_cycles(&g, &all_edges(&g)).unwrap();
        assert_eq!(cycles, vec![vec![0, 1, 2], vec![2, 3, 4]]);
    }

    #[test]
    fn decomposition_sums_back() {
        let g = bowtie();
        let x = all_edges(&g);
        let mut acc = EdgeSetF2::empty(&g);
        for c in decompose_into_cycles(&g, &x).unwrap() {
            acc = acc.xor(&EdgeSetF2::from_cycle(&g, &c).unwrap()).unwrap();
        }
        assert_eq!(acc, x);
    }

    #[test]
    fn odd_set_rejected() {
        let g = bowtie();
        let x = EdgeSetF2::from_path(&g, &[0, 1]).unwrap();
        assert!(decompose_into_cycles(&g, &x).is_err());
    }

    #[test]
    fn cycle_through_path_ignores_disjoint_triangle() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 4)]).unwrap();
        let x = all_edges(&g);
        let c = extract_cycle_containing_path(&g, &x, &[0, 1, 2]).unwrap();
        assert_eq!(c, vec![0, 1, 2, 3]);
    }

    #[test]
    fn internal_vertex_touching_rest_is_rejected() {
        let g = bowtie();
        let x = all_edges(&g);
        assert!(extract_cycle_containing_path(&g, &x, &[1, 2, 3]).is_err());
    }
}

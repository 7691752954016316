//! Simple undirected graphs whose adjacency lists double as rotation systems.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// A finite simple graph on dense vertex ids `0..n`.
///
/// The neighbor sequence of each vertex is stored in the order it was given.
/// For embedded graphs that order is the clockwise rotation, so the same
/// structure serves metric queries and face tracing.
#[derive(Clone, Debug)]
pub struct Graph {
    nbrs: Vec<Vec<VertexId>>,
    /// `nbr_edges[v][i]` is the id of the edge `{v, nbrs[v][i]}`.
    nbr_edges: Vec<Vec<EdgeId>>,
    edges: Vec<(VertexId, VertexId)>,
    fingerprint: u64,
}

impl Graph {
    /// Builds a graph from per-vertex neighbor sequences.
    ///
    /// Rejects self-loops, parallel edges, out-of-range ids and asymmetric
    /// adjacency. Edge ids are assigned by scanning vertices in increasing
    /// order and, within a vertex, neighbors in sequence order, recording
    /// each edge at its smaller endpoint.
    pub fn from_rotation(nbrs: Vec<Vec<VertexId>>) -> Result<Self> {
        let n = nbrs.len();
        for (v, list) in nbrs.iter().enumerate() {
            let mut seen = list.clone();
            seen.sort_unstable();
            for w in seen.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::invalid(format!("parallel edge {v}-{}", w[0])));
                }
            }
            for &w in list {
                if w >= n {
                    return Err(Error::UnknownVertex(w));
                }
                if w == v {
                    return Err(Error::invalid(format!("self-loop at {v}")));
                }
            }
        }

        let mut nbr_edges: Vec<Vec<EdgeId>> = nbrs.iter().map(|l| vec![usize::MAX; l.len()]).collect();
        let mut edges = Vec::new();
        for u in 0..n {
            for (i, &v) in nbrs[u].iter().enumerate() {
                if u < v {
                    let j = nbrs[v].iter().position(|&x| x == u).ok_or_else(|| {
                        Error::invalid(format!("asymmetric adjacency: {u} lists {v} but not conversely"))
                    })?;
                    let e = edges.len();
                    edges.push((u, v));
                    nbr_edges[u][i] = e;
                    nbr_edges[v][j] = e;
                }
            }
        }
        for (v, list) in nbr_edges.iter().enumerate() {
            if let Some(i) = list.iter().position(|&e| e == usize::MAX) {
                return Err(Error::invalid(format!(
                    "asymmetric adjacency: {v} lists {} but not conversely",
                    nbrs[v][i]
                )));
            }
        }

        let mut h = DefaultHasher::new();
        nbrs.hash(&mut h);
        Ok(Graph {
            nbrs,
            nbr_edges,
            edges,
            fingerprint: h.finish(),
        })
    }

    /// Builds a graph from an edge list; neighbor order is insertion order.
    pub fn from_edges(n: usize, edge_list: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut nbrs = vec![Vec::new(); n];
        for &(u, v) in edge_list {
            if u >= n || v >= n {
                return Err(Error::UnknownVertex(u.max(v)));
            }
            nbrs[u].push(v);
            nbrs[v].push(u);
        }
        Self::from_rotation(nbrs)
    }

    pub fn num_vertices(&self) -> usize {
        self.nbrs.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.nbrs[v]
    }

    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.nbr_edges[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.nbrs[v].len()
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v < self.nbrs.len()
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn edge_id(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        if !self.contains(u) {
            return None;
        }
        self.nbrs[u]
            .iter()
            .position(|&w| w == v)
            .map(|i| self.nbr_edges[u][i])
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// Position of `u` in the rotation of `v`.
    pub fn slot_of(&self, v: VertexId, u: VertexId) -> Option<usize> {
        self.nbrs[v].iter().position(|&w| w == u)
    }

    /// Hash of the rotation system; identifies the host of an edge vector.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn rotation(&self) -> &[Vec<VertexId>] {
        &self.nbrs
    }

    /// Connected component label per vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.num_vertices();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in &self.nbrs[u] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_path(&self, path: &[VertexId]) -> bool {
        !path.is_empty()
            && path.iter().all(|&v| self.contains(v))
            && path.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }

    /// True when `path` is a walk along edges with no repeated vertex.
    pub fn is_simple_path(&self, path: &[VertexId]) -> bool {
        if !self.is_path(path) {
            return false;
        }
        let mut sorted = path.to_vec();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn handshake_and_symmetry() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let deg_sum: usize = (0..4).map(|v| g.degree(v)).sum();
        assert_eq!(deg_sum, 2 * g.num_edges());
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            assert_eq!(g.edge_id(u, v), Some(e));
            assert_eq!(g.edge_id(v, u), Some(e));
        }
    }

    #[test]
    fn rejects_loops_parallels_and_asymmetry() {
        assert!(Graph::from_rotation(vec![vec![0]]).is_err());
        assert!(Graph::from_rotation(vec![vec![1, 1], vec![0, 0]]).is_err());
        assert!(Graph::from_rotation(vec![vec![1], vec![]]).is_err());
        assert!(matches!(
            Graph::from_rotation(vec![vec![5]]),
            Err(Error::UnknownVertex(5))
        ));
    }

    #[test]
    fn components_of_disjoint_paths() {
        let g = Graph::from_edges(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        let (label, count) = g.components();
        assert_eq!(count, 2);
        assert_eq!(label[0], label[1]);
        assert_ne!(label[1], label[2]);
    }

    #[test]
    fn simple_path_checks() {
        let g = path(4);
        assert!(g.is_simple_path(&[0, 1, 2, 3]));
        assert!(!g.is_simple_path(&[0, 1, 0]));
        assert!(!g.is_path(&[0, 2]));
    }
}

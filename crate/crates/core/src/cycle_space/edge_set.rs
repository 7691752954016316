use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

use super::f2::BitRow;

/// A vector of the edge space of a fixed host graph, stored as a sorted list
/// of edge ids. Addition is symmetric difference.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeSetF2 {
    host: u64,
    num_edges: usize,
    edges: Vec<EdgeId>,
}

impl EdgeSetF2 {
    pub fn empty(g: &Graph) -> Self {
        EdgeSetF2 {
            host: g.fingerprint(),
            num_edges: g.num_edges(),
            edges: Vec::new(),
        }
    }

    /// Sum of the given edges; an edge listed twice cancels.
    pub fn from_edges(g: &Graph, edges: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        let mut list: Vec<EdgeId> = edges.into_iter().collect();
        if let Some(&e) = list.iter().find(|&&e| e >= g.num_edges()) {
            return Err(Error::invalid(format!("edge id {e} out of range")));
        }
        list.sort_unstable();
        let mut out: Vec<EdgeId> = Vec::with_capacity(list.len());
        for e in list {
            if out.last() == Some(&e) {
                out.pop();
            } else {
                out.push(e);
            }
        }
        Ok(EdgeSetF2 {
            host: g.fingerprint(),
            num_edges: g.num_edges(),
            edges: out,
        })
    }

    fn walk_edges(g: &Graph, vertices: &[VertexId], closed: bool) -> Result<Vec<EdgeId>> {
        let mut ids = Vec::with_capacity(vertices.len());
        let steps = vertices.windows(2).map(|w| (w[0], w[1]));
        let closing = (closed && vertices.len() > 1).then(|| (vertices[vertices.len() - 1], vertices[0]));
        for (u, v) in steps.chain(closing) {
            ids.push(
                g.edge_id(u, v)
                    .ok_or_else(|| Error::invalid(format!("{u}-{v} is not an edge")))?,
            );
        }
        Ok(ids)
    }

    /// E(P) for a walk given by its vertex sequence.
    pub fn from_path(g: &Graph, path: &[VertexId]) -> Result<Self> {
        Self::from_edges(g, Self::walk_edges(g, path, false)?)
    }

    /// E(C) for a closed walk `v0 v1 ... vk` (the edge `vk v0` is implied).
    pub fn from_cycle(g: &Graph, cycle: &[VertexId]) -> Result<Self> {
        Self::from_edges(g, Self::walk_edges(g, cycle, true)?)
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn is_subset(&self, other: &EdgeSetF2) -> bool {
        self.host == other.host && self.edges.iter().all(|&e| other.contains(e))
    }

    pub fn same_host(&self, g: &Graph) -> bool {
        self.host == g.fingerprint() && self.num_edges == g.num_edges()
    }

    fn check_host(&self, g: &Graph) -> Result<()> {
        if self.same_host(g) {
            Ok(())
        } else {
            Err(Error::HostMismatch)
        }
    }

    pub fn xor(&self, other: &EdgeSetF2) -> Result<EdgeSetF2> {
        if self.host != other.host || self.num_edges != other.num_edges {
            return Err(Error::HostMismatch);
        }
        let (a, b) = (&self.edges, &other.edges);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
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
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(EdgeSetF2 {
            host: self.host,
            num_edges: self.num_edges,
            edges: out,
        })
    }

    pub fn to_row(&self) -> BitRow {
        BitRow::from_indices(self.num_edges, self.edges.iter().copied())
    }

    /// Number of edges of the set at each vertex.
    pub fn degrees(&self, g: &Graph) -> Result<Vec<usize>> {
        self.check_host(g)?;
        let mut deg = vec![0; g.num_vertices()];
        for &e in &self.edges {
            let (u, v) = g.edge(e);
            deg[u] += 1;
            deg[v] += 1;
        }
        Ok(deg)
    }

    /// Vertices met by the set, in increasing order.
    pub fn vertices(&self, g: &Graph) -> Result<Vec<VertexId>> {
        let deg = self.degrees(g)?;
        Ok((0..deg.len()).filter(|&v| deg[v] > 0).collect())
    }
}

pub fn xor(a: &EdgeSetF2, b: &EdgeSetF2) -> Result<EdgeSetF2> {
    a.xor(b)
}

/// True iff every vertex meets an even number of edges of `x`.
pub fn is_cycle_space_element(g: &Graph, x: &EdgeSetF2) -> Result<bool> {
    Ok(x.degrees(g)?.iter().all(|d| d % 2 == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> Graph {
        // triangles 0-1-2 and 1-2-3 share the edge 1-2
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (1, 3), (3, 2)]).unwrap()
    }

    #[test]
    fn self_sum_vanishes() {
        let g = two_triangles();
        let a = EdgeSetF2::from_cycle(&g, &[0, 1, 2]).unwrap();
        assert!(a.xor(&a).unwrap().is_empty());
    }

    #[test]
    fn shared_edge_cancels() {
        let g = two_triangles();
        let t1 = EdgeSetF2::from_cycle(&g, &[0, 1, 2]).unwrap();
        let t2 = EdgeSetF2::from_cycle(&g, &[1, 3, 2]).unwrap();
        let s = xor(&t1, &t2).unwrap();
        assert_eq!(s, EdgeSetF2::from_cycle(&g, &[0, 1, 3, 2]).unwrap());
        assert!(!s.contains(g.edge_id(1, 2).unwrap()));
        assert!(is_cycle_space_element(&g, &s).unwrap());
    }

    #[test]
    fn single_edge_is_not_a_cycle() {
        let g = two_triangles();
        let e = EdgeSetF2::from_path(&g, &[0, 1]).unwrap();
        assert!(!is_cycle_space_element(&g, &e).unwrap());
    }

    #[test]
    fn host_mismatch_detected() {
        let g = two_triangles();
        let h = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let a = EdgeSetF2::from_path(&g, &[0, 1]).unwrap();
        let b = EdgeSetF2::from_path(&h, &[0, 1]).unwrap();
        assert!(matches!(a.xor(&b), Err(Error::HostMismatch)));
        assert!(matches!(is_cycle_space_element(&h, &a), Err(Error::HostMismatch)));
    }
}

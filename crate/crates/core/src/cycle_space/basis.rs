use std::collections::VecDeque;

use crate::error::Result;
use crate::graph::{EdgeId, Graph, VertexId};

use super::edge_set::EdgeSetF2;

/// Fundamental cycles of a BFS spanning forest.
#[derive(Clone, Debug)]
pub struct CycleBasis {
    pub tree_edges: Vec<EdgeId>,
    /// One cycle per non-tree edge, in increasing order of that edge's id.
    pub cycles: Vec<EdgeSetF2>,
    pub components: usize,
}

impl CycleBasis {
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.num_vertices();
        let mut parent: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
        let mut depth = vec![u32::MAX; n];
        let mut in_tree = vec![false; g.num_edges()];
        let mut components = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if depth[s] != u32::MAX {
                continue;
            }
            components += 1;
            depth[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for (&w, &e) in g.neighbors(u).iter().zip(g.incident_edges(u)) {
                    if depth[w] == u32::MAX {
                        depth[w] = depth[u] + 1;
                        parent[w] = Some((u, e));
                        in_tree[e] = true;
                        queue.push_back(w);
                    }
                }
            }
        }

        let mut cycles = Vec::new();
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if in_tree[e] {
                continue;
            }
            let mut ids = vec![e];
            let (mut a, mut b) = (u, v);
            while a != b {
                if depth[a] >= depth[b] {
                    let (p, pe) = parent[a].expect("non-root has a parent");
                    ids.push(pe);
                    a = p;
                } else {
                    let (p, pe) = parent[b].expect("non-root has a parent");
                    ids.push(pe);
                    b = p;
                }
            }
            cycles.push(EdgeSetF2::from_edges(g, ids)?);
        }
        let tree_edges = (0..g.num_edges()).filter(|&e| in_tree[e]).collect();
        Ok(CycleBasis {
            tree_edges,
            cycles,
            components,
        })
    }

    pub fn dim(&self) -> usize {
        self.cycles.len()
    }
}

//! Spherically symmetric trees with prescribed sphere sizes, and two such
//! trees glued along sparse leaves.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::patch::{Dart, PlanarPatch};

use super::whole_graph_radius;

/// `s(0) = 1`, `s(r) = max(1, round((r+1)^alpha - r^alpha))`.
pub fn alpha_sphere_sizes(alpha: f64, radius: u32) -> Vec<usize> {
    let mut sizes = vec![1usize];
    for r in 1..=radius {
        let r = r as f64;
        let s = ((r + 1.0).powf(alpha) - r.powf(alpha)).round();
        sizes.push(s.max(1.0) as usize);
    }
    sizes
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(1.0..=3.0).contains(&alpha) {
        return Err(Error::invalid(format!("alpha {alpha} outside [1, 3]")));
    }
    Ok(())
}

/// Number of children of the `j`-th of `a` parents when `b` children are
/// spread as evenly as possible.
fn share(j: usize, a: usize, b: usize) -> usize {
    (j + 1) * b / a - j * b / a
}

/// A rooted tree as parent links, with level `r` occupying a contiguous id
/// range. Children of a vertex are consecutive and increasing.
#[derive(Clone, Debug)]
pub struct LayeredTree {
    pub parent: Vec<Option<VertexId>>,
    pub children: Vec<Vec<VertexId>>,
    pub level_start: Vec<usize>,
}

impl LayeredTree {
    pub fn from_sizes(sizes: &[usize]) -> Self {
        let mut parent = vec![None];
        let mut children = vec![Vec::new()];
        let mut level_start = vec![0];
        for r in 1..sizes.len() {
            let (prev_start, a) = (level_start[r - 1], sizes[r - 1]);
            let start = parent.len();
            level_start.push(start);
            let b = sizes[r];
            let mut next = start;
            for j in 0..a {
                for _ in 0..share(j, a, b) {
                    parent.push(Some(prev_start + j));
                    children.push(Vec::new());
                    children[prev_start + j].push(next);
                    next += 1;
                }
            }
        }
        level_start.push(parent.len());
        LayeredTree {
            parent,
            children,
            level_start,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Rotation `[parent, children...]` at every vertex.
    pub fn rotation(&self) -> Vec<Vec<VertexId>> {
        (0..self.len())
            .map(|v| self.parent[v].into_iter().chain(self.children[v].iter().copied()).collect())
            .collect()
    }

    pub fn depth_of(&self, v: VertexId) -> usize {
        self.level_start.partition_point(|&s| s <= v) - 1
    }

    /// Vertices at depth `d` in depth-first (preorder) order.
    pub fn level_in_dfs_order(&self, d: usize) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut stack = vec![(0usize, 0usize)];
        while let Some((v, depth)) = stack.pop() {
            if depth == d {
                out.push(v);
                continue;
            }
            for &c in self.children[v].iter().rev() {
                stack.push((c, depth + 1));
            }
        }
        out
    }

    pub fn distance(&self, mut a: VertexId, mut b: VertexId) -> usize {
        let mut d = 0;
        while a != b {
            if self.depth_of(a) >= self.depth_of(b) {
                a = self.parent[a].unwrap();
            } else {
                b = self.parent[b].unwrap();
            }
            d += 1;
        }
        d
    }
}

/// Spherically symmetric tree rooted at vertex 0 with sphere sizes
/// [`alpha_sphere_sizes`]; `alpha = 1` gives a path.
pub fn alpha_tree(alpha: f64, radius: u32) -> Result<PlanarPatch> {
    check_alpha(alpha)?;
    if radius == 0 {
        return Err(Error::invalid("tree radius must be at least 1"));
    }
    let tree = LayeredTree::from_sizes(&alpha_sphere_sizes(alpha, radius));
    let g = Graph::from_rotation(tree.rotation())?;
    let first = tree.children[0][0];
    PlanarPatch::new(g, Dart::new(0, first), vec![0], radius, false)
}

/// Two copies `T`, `T'` of the alpha tree with some deepest leaves identified.
#[derive(Clone, Debug)]
pub struct GluedTrees {
    pub patch: PlanarPatch,
    pub tree: LayeredTree,
    /// Vertex of `G` for each vertex of `T`.
    pub from_t: Vec<VertexId>,
    /// Vertex of `G` for each vertex of `T'`.
    pub from_t_prime: Vec<VertexId>,
    /// Glued leaves as vertices of `T`, in selection order.
    pub glued: Vec<VertexId>,
}

/// Picks leaves at depth `radius` in DFS order so that the `i`-th chosen
/// leaf is at distance at least `2^i` from all earlier ones.
pub fn spaced_leaves(tree: &LayeredTree, depth: usize, count: usize) -> Vec<VertexId> {
    let mut chosen: Vec<VertexId> = Vec::new();
    for v in tree.level_in_dfs_order(depth) {
        if chosen.len() == count {
            break;
        }
        let need = 1usize.checked_shl(chosen.len() as u32).unwrap_or(usize::MAX);
        if chosen.iter().all(|&u| tree.distance(u, v) >= need) {
            chosen.push(v);
        }
    }
    chosen
}

/// The glued-trees graph. `T'` is embedded as the mirror image of `T`, so
/// gluing along leaves keeps the graph plane. Zero leaves gives the disjoint
/// union.
pub fn glued_trees(alpha: f64, radius: u32, leaves: usize) -> Result<GluedTrees> {
    check_alpha(alpha)?;
    if radius == 0 {
        return Err(Error::invalid("tree radius must be at least 1"));
    }
    let tree = LayeredTree::from_sizes(&alpha_sphere_sizes(alpha, radius));
    let glued = spaced_leaves(&tree, radius as usize, leaves);
    if glued.len() < leaves {
        return Err(Error::Degenerate(format!(
            "only {} leaves satisfy the spacing rule, {leaves} requested",
            glued.len()
        )));
    }
    let n = tree.len();
    let from_t: Vec<VertexId> = (0..n).collect();
    let mut is_glued = vec![false; n];
    for &v in &glued {
        is_glued[v] = true;
    }
    let mut from_t_prime = vec![0; n];
    let mut next = n;
    for v in 0..n {
        if is_glued[v] {
            from_t_prime[v] = v;
        } else {
            from_t_prime[v] = next;
            next += 1;
        }
    }
    let rot = tree.rotation();
    let mut nbrs: Vec<Vec<VertexId>> = vec![Vec::new(); next];
    nbrs[..n].clone_from_slice(&rot[..n]);
    for v in 0..n {
        let mirrored: Vec<VertexId> = rot[v].iter().rev().map(|&w| from_t_prime[w]).collect();
        if is_glued[v] {
            nbrs[v].extend(mirrored);
        } else {
            nbrs[from_t_prime[v]] = mirrored;
        }
    }
    let g = Graph::from_rotation(nbrs)?;
    let centers = vec![0, from_t_prime[0]];
    let cert = whole_graph_radius(&g, &centers);
    let first = tree.children[0][0];
    let patch = PlanarPatch::new(g, Dart::new(0, first), centers, cert, false)?;
    Ok(GluedTrees {
        patch,
        tree,
        from_t,
        from_t_prime,
        glued,
    })
}

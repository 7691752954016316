//! Finite chains of growing pieces: subdivided grids joined by paths, and a
//! ray whose edges are replaced by longer and longer cycles.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::patch::PlanarPatch;

use super::{longest_face_dart, whole_graph_radius};

/// What a vertex of the grid chain is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexRole {
    /// Grid vertex `(x, y)` of `G_n`.
    Grid { n: usize, x: usize, y: usize },
    /// The `index`-th of the `n` vertices subdividing the grid edge `a b` of
    /// `G_n`, counted from `a`.
    Subdivision {
        n: usize,
        a: (usize, usize),
        b: (usize, usize),
        index: usize,
    },
    /// The `index`-th internal vertex of the path joining `G_n` to `G_{n+1}`.
    Connector { n: usize, index: usize },
}

impl VertexRole {
    pub fn piece(&self) -> usize {
        match *self {
            VertexRole::Grid { n, .. } | VertexRole::Subdivision { n, .. } | VertexRole::Connector { n, .. } => n,
        }
    }
}

fn new_vertex(role: VertexRole, roles: &mut Vec<VertexRole>, nbrs: &mut Vec<Vec<VertexId>>) -> VertexId {
    roles.push(role);
    nbrs.push(Vec::new());
    roles.len() - 1
}

type Point = (usize, usize);

#[derive(Clone, Debug)]
pub struct GridChain {
    pub patch: PlanarPatch,
    pub roles: Vec<VertexRole>,
    /// `grid_ids[n - 1][(x, y)]` is the vertex id of grid vertex `(x, y)` of `G_n`.
    pub grid_ids: Vec<HashMap<(usize, usize), VertexId>>,
}

/// `G_n` is the `(n+1) x (n+1)` grid `H_n` with `n` new vertices on every
/// edge; corner `(n, n)` of `G_n` is joined to corner `(0, 0)` of `G_{n+1}`
/// by a path of length `n`.
pub fn grid_chain(n_max: usize) -> Result<GridChain> {
    if n_max < 1 {
        return Err(Error::invalid("n_max must be at least 1"));
    }
    let mut roles: Vec<VertexRole> = Vec::new();
    let mut nbrs: Vec<Vec<VertexId>> = Vec::new();
    let mut grid_ids = Vec::new();

    let mut prev_corner: Option<VertexId> = None;
    for n in 1..=n_max {
        let mut ids = HashMap::new();
        for y in 0..=n {
            for x in 0..=n {
                ids.insert((x, y), new_vertex(VertexRole::Grid { n, x, y }, &mut roles, &mut nbrs));
            }
        }
        // subdivision paths keyed by (a, b) with a the left/lower endpoint
        let mut paths: HashMap<(Point, Point), Vec<VertexId>> = HashMap::new();
        for y in 0..=n {
            for x in 0..=n {
                for b in [(x + 1, y), (x, y + 1)] {
                    if b.0 > n || b.1 > n {
                        continue;
                    }
                    let a = (x, y);
                    let inner: Vec<VertexId> = (1..=n)
                        .map(|index| new_vertex(VertexRole::Subdivision { n, a, b, index }, &mut roles, &mut nbrs))
                        .collect();
                    let mut chain = vec![ids[&a]];
                    chain.extend(&inner);
                    chain.push(ids[&b]);
                    for w in chain.windows(3) {
                        nbrs[w[1]] = vec![w[0], w[2]];
                    }
                    paths.insert((a, b), inner);
                }
            }
        }
        // clockwise with y pointing up: east, south, west, north
        for y in 0..=n {
            for x in 0..=n {
                let v = ids[&(x, y)];
                let mut rot = Vec::new();
                if let Some(p) = paths.get(&((x, y), (x + 1, y))) {
                    rot.push(p[0]);
                }
                if y > 0 {
                    rot.push(*paths[&((x, y - 1), (x, y))].last().unwrap());
                }
                if x > 0 {
                    rot.push(*paths[&((x - 1, y), (x, y))].last().unwrap());
                }
                if let Some(p) = paths.get(&((x, y), (x, y + 1))) {
                    rot.push(p[0]);
                }
                nbrs[v] = rot;
            }
        }
        if let Some(c) = prev_corner {
            // path of length n - 1 from G_{n-1}
            let len = n - 1;
            let inner: Vec<VertexId> = (1..len)
                .map(|index| new_vertex(VertexRole::Connector { n: n - 1, index }, &mut roles, &mut nbrs))
                .collect();
            let start = ids[&(0, 0)];
            let mut chain = vec![c];
            chain.extend(&inner);
            chain.push(start);
            for w in chain.windows(3) {
                nbrs[w[1]] = vec![w[0], w[2]];
            }
            // corner (n-1, n-1) has [south, west]; corner (0, 0) has [east, north]
            nbrs[c].push(chain[1]);
            nbrs[start].insert(1, chain[chain.len() - 2]);
        }
        prev_corner = Some(ids[&(n, n)]);
        grid_ids.push(ids);
    }

    let g = Graph::from_rotation(nbrs)?;
    let outer = longest_face_dart(&g)?;
    let cert = whole_graph_radius(&g, &[0]);
    let patch = PlanarPatch::new(g, outer, vec![0], cert, false)?;
    Ok(GridChain {
        patch,
        roles,
        grid_ids,
    })
}

/// A ray `x_0 x_1 ...` whose `i`-th edge `x_{i-1} x_i` is replaced by a cycle
/// of length `i` (arcs of lengths `i/2` and `i - i/2`) when `i >= 3`.
pub fn long_cycle_chain(n_max: usize) -> Result<PlanarPatch> {
    if n_max < 1 {
        return Err(Error::invalid("n_max must be at least 1"));
    }
    let mut nbrs: Vec<Vec<VertexId>> = vec![Vec::new()];
    // per ray vertex: (upper, lower) first vertices toward the left / right
    let mut left: Vec<Option<(VertexId, VertexId)>> = vec![None];
    let mut right: Vec<Option<(VertexId, VertexId)>> = vec![None];
    let mut x_prev = 0;
    for i in 1..=n_max {
        let x = nbrs.len();
        nbrs.push(Vec::new());
        left.push(None);
        right.push(None);
        let arcs: Vec<usize> = if i < 3 { vec![1] } else { vec![i / 2, i - i / 2] };
        let mut ends = Vec::new();
        for len in arcs {
            let mut chain = vec![x_prev];
            for _ in 1..len {
                chain.push(nbrs.len());
                nbrs.push(Vec::new());
                left.push(None);
                right.push(None);
            }
            chain.push(x);
            for w in chain.windows(3) {
                nbrs[w[1]] = vec![w[0], w[2]];
            }
            ends.push((chain[1], chain[chain.len() - 2]));
        }
        let (upper, lower) = (ends[0], *ends.last().unwrap());
        right[x_prev] = Some((upper.0, lower.0));
        left[x] = Some((upper.1, lower.1));
        x_prev = x;
    }
    for v in 0..nbrs.len() {
        if left[v].is_none() && right[v].is_none() {
            continue;
        }
        // clockwise from the top: upper right, lower right, lower left, upper left
        let mut rot: Vec<VertexId> = Vec::new();
        if let Some((u, l)) = right[v] {
            rot.push(u);
            rot.push(l);
        }
        if let Some((u, l)) = left[v] {
            rot.push(l);
            rot.push(u);
        }
        rot.dedup();
        if rot.len() > 1 && rot.first() == rot.last() {
            rot.pop();
        }
        nbrs[v] = rot;
    }
    let g = Graph::from_rotation(nbrs)?;
    let outer = longest_face_dart(&g)?;
    let cert = whole_graph_radius(&g, &[0]);
    PlanarPatch::new(g, outer, vec![0], cert, false)
}

//! Paths inside the boundary of a subgraph: a direct search, and the
//! cycle-space construction that proves such paths exist in triangulations.

use std::collections::VecDeque;

use crate::cycle_space::{extract_cycle_containing_path, EdgeSetF2};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::metric::{multi_source_distances, shortest_path_within, SubgraphHandle};
use crate::patch::PlanarPatch;

/// Removes closed detours from a walk, keeping its endpoints.
pub fn loop_erase(walk: &[VertexId]) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = Vec::with_capacity(walk.len());
    for &v in walk {
        if let Some(i) = out.iter().position(|&w| w == v) {
            out.truncate(i + 1);
        } else {
            out.push(v);
        }
    }
    out
}

/// Checks that `path` runs from `x` to `y` and meets `H` only at its ends.
pub fn is_external_path(g: &Graph, h: &SubgraphHandle, x: VertexId, y: VertexId, path: &[VertexId]) -> bool {
    g.is_simple_path(path)
        && path.first() == Some(&x)
        && path.last() == Some(&y)
        && path[1..path.len() - 1].iter().all(|&v| !h.contains(v))
}

fn require_boundary(h: &SubgraphHandle, v: VertexId) -> Result<()> {
    if h.is_boundary(v) {
        Ok(())
    } else {
        Err(Error::invalid(format!("vertex {v} is not in the boundary of H")))
    }
}

/// Shortest `x`–`y` path using only vertices of `∂H`, or `None`.
pub fn boundary_path_bfs(g: &Graph, h: &SubgraphHandle, x: VertexId, y: VertexId) -> Result<Option<Vec<VertexId>>> {
    require_boundary(h, x)?;
    require_boundary(h, y)?;
    Ok(shortest_path_within(g, x, y, |v| h.is_boundary(v)))
}

/// Intermediate objects of the cycle-space construction, kept for
/// inspection and for error dumps.
#[derive(Clone, Debug)]
pub struct CycleSpaceTrace {
    /// The `x`–`y` path through `H`.
    pub q: Vec<VertexId>,
    /// The faces strictly inside the cycle `P ∪ Q`.
    pub inside_faces: Vec<usize>,
    /// Facial triangles inside the cycle with all vertices in `H`.
    pub triangles: Vec<[VertexId; 3]>,
    /// `E(C) + sum of E(T)`.
    pub k: EdgeSetF2,
    /// The cycle through `P` inside `K`, listed starting with `P`.
    pub cycle: Vec<VertexId>,
    /// `C' - P` as an `x`–`y` path.
    pub path: Vec<VertexId>,
}

/// Builds an `x`–`y` path in `∂H` from an external `x`–`y` path `p`:
/// close `p` with a path `Q` through `H` into a cycle `C`, add to `E(C)` every
/// facial triangle on the bounded side of `C` with all three vertices in `H`,
/// pull out the cycle through `p` and return its other half.
///
/// The result must lie in `∂H`; anything else is a consistency failure.
pub fn boundary_path_cyclespace(
    patch: &PlanarPatch,
    h: &SubgraphHandle,
    x: VertexId,
    y: VertexId,
    p: &[VertexId],
) -> Result<CycleSpaceTrace> {
    let g = patch.graph();
    if !patch.is_triangulation() {
        return Err(Error::invalid("the cycle-space construction needs a triangulation patch"));
    }
    if !h.is_connected() {
        return Err(Error::invalid("H must be connected"));
    }
    if x == y {
        return Err(Error::invalid("endpoints must differ"));
    }
    require_boundary(h, x)?;
    require_boundary(h, y)?;
    if p.len() < 3 || !is_external_path(g, h, x, y, p) {
        return Err(Error::invalid(
            "P must be a simple x-y path with at least one internal vertex, all outside H",
        ));
    }

    let q = shortest_path_within(g, x, y, |v| h.contains(v))
        .ok_or_else(|| Error::consistency("connected H has no x-y path"))?;
    // C = P followed by Q backwards (y -> x), closing at x.
    let mut c_vertices = p.to_vec();
    c_vertices.extend(q.iter().rev().skip(1).take(q.len() - 2));
    let c = EdgeSetF2::from_cycle(g, &c_vertices)?;

    let faces = patch.faces();
    let nf = faces.num_faces();
    let mut outside = vec![false; nf];
    let mut queue = VecDeque::from([patch.outer_face()]);
    outside[patch.outer_face()] = true;
    while let Some(f) = queue.pop_front() {
        for &v in faces.cycle(f) {
            for id in faces.dart_range(v) {
                if faces.dart_face(id) != f {
                    continue;
                }
                let slot = id - faces.dart_range(v).start;
                let e = g.incident_edges(v)[slot];
                if c.contains(e) {
                    continue;
                }
                let other = faces.opposite_face(id);
                if !outside[other] {
                    outside[other] = true;
                    queue.push_back(other);
                }
            }
        }
    }
    let inside_faces: Vec<usize> = (0..nf).filter(|&f| !outside[f]).collect();

    let mut triangles = Vec::new();
    let mut k = c.clone();
    for &f in &inside_faces {
        let cyc = faces.cycle(f);
        if cyc.len() != 3 {
            return Err(Error::consistency(format!(
                "face {f} inside the cycle is not a triangle: {cyc:?}"
            )));
        }
        if cyc.iter().all(|&v| h.contains(v)) {
            triangles.push([cyc[0], cyc[1], cyc[2]]);
            k = k.xor(&EdgeSetF2::from_cycle(g, cyc)?)?;
        }
    }

    let cycle = extract_cycle_containing_path(g, &k, p).map_err(|e| {
        Error::consistency(format!(
            "no cycle through P inside K ({e}); C = {c_vertices:?}, triangles = {triangles:?}, K = {:?}",
            k.edges()
        ))
    })?;
    let mut path: Vec<VertexId> = vec![x];
    path.extend(cycle[p.len()..].iter().rev());
    path.push(y);
    if let Some(&bad) = path.iter().find(|&&v| !h.is_boundary(v)) {
        return Err(Error::consistency(format!(
            "vertex {bad} of P' is not in the boundary of H; C = {c_vertices:?}, triangles = {triangles:?}, K = {:?}",
            k.edges()
        )));
    }
    Ok(CycleSpaceTrace {
        q,
        inside_faces,
        triangles,
        k,
        cycle,
        path,
    })
}

/// `x`–`y` path through vertices within `floor(k/2)` of `∂H`.
///
/// In a `k`-SC graph such a path exists whenever `x` and `y` are joined by a
/// path outside `H`; not finding one is a consistency failure.
pub fn timar_path(g: &Graph, k: usize, h: &SubgraphHandle, x: VertexId, y: VertexId) -> Result<Vec<VertexId>> {
    require_boundary(h, x)?;
    require_boundary(h, y)?;
    let near = multi_source_distances(g, h.boundary(), (k / 2) as u32);
    shortest_path_within(g, x, y, |v| near.get(v).is_some()).ok_or_else(|| {
        Error::consistency(format!(
            "no path from {x} to {y} within {} of the boundary",
            k / 2
        ))
    })
}

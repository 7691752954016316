//! Triangulated cones: concentric cycles around a root, consecutive cycles
//! joined by a triangulated annulus.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::patch::{Dart, PlanarPatch};

use super::trees::alpha_sphere_sizes;

/// Cone whose ring `r` (for `r = 1..sizes.len()`) has `sizes[r]` vertices.
/// `sizes[0]` is ignored (the root).
///
/// Ring vertices are numbered counterclockwise. The `j`-th of `b` outer
/// vertices is joined to the inner arc from `floor(j a / b)` to
/// `floor((j+1) a / b)`, so arcs are nested and evenly spread.
pub fn cone_from_sizes(sizes: &[usize]) -> Result<PlanarPatch> {
    let depth = sizes.len().saturating_sub(1);
    if depth == 0 {
        return Err(Error::invalid("cone needs at least one ring"));
    }
    if let Some(r) = (1..sizes.len()).find(|&r| sizes[r] < 3) {
        return Err(Error::invalid(format!("ring {r} has fewer than 3 vertices")));
    }
    let mut start = vec![0usize, 1];
    for &s in &sizes[1..] {
        start.push(start.last().unwrap() + s);
    }
    let n = start[depth + 1];
    let id = |r: usize, t: usize| start[r] + t % sizes[r];

    // inner[v]: inner neighbors in counterclockwise order; outer[v] likewise.
    let mut inner: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    let mut outer: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for t in 0..sizes[1] {
        inner[id(1, t)].push(0);
    }
    for r in 1..depth {
        let (a, b) = (sizes[r], sizes[r + 1]);
        let cut = |j: usize| j * a / b;
        for j in 0..b {
            for t in cut(j)..=cut(j + 1) {
                inner[id(r + 1, j)].push(id(r, t));
            }
        }
        let mut lists: Vec<Vec<usize>> = vec![Vec::new(); a];
        for j in 0..b {
            for t in cut(j)..=cut(j + 1) {
                lists[t % a].push(j);
            }
        }
        for (t, mut js) in lists.into_iter().enumerate() {
            js.sort_unstable();
            js.dedup();
            if js.len() >= b {
                return Err(Error::invalid(format!("ring {r} vertex {t} sees the whole next ring")));
            }
            // rotate the cyclic interval so it starts where it begins
            let begin = (0..js.len())
                .find(|&i| {
                    let prev = (js[i] + b - 1) % b;
                    js.binary_search(&prev).is_err()
                })
                .expect("a proper cyclic interval has a start");
            js.rotate_left(begin);
            outer[id(r, t)] = js.into_iter().map(|j| id(r + 1, j)).collect();
        }
    }

    let mut nbrs: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    nbrs[0] = (0..sizes[1]).rev().map(|t| id(1, t)).collect();
    for (r, &s) in sizes.iter().enumerate().skip(1) {
        for t in 0..s {
            let v = id(r, t);
            let mut rot: Vec<VertexId> = outer[v].iter().rev().copied().collect();
            rot.push(id(r, t + s - 1));
            rot.extend(inner[v].iter().copied());
            rot.push(id(r, t + 1));
            nbrs[v] = rot;
        }
    }
    let g = Graph::from_rotation(nbrs)?;
    let outer_dart = Dart::new(id(depth, 1), id(depth, 0));
    PlanarPatch::new(g, outer_dart, vec![0], depth as u32, true)
}

/// Cone with ring sizes `max(3, s(r))` from [`alpha_sphere_sizes`].
pub fn cone_triangulation(alpha: f64, radius: u32) -> Result<PlanarPatch> {
    if !(alpha > 1.0 && alpha < 3.0) {
        return Err(Error::invalid(format!("alpha {alpha} outside (1, 3)")));
    }
    if radius == 0 {
        return Err(Error::invalid("cone radius must be at least 1"));
    }
    let sizes: Vec<usize> = alpha_sphere_sizes(alpha, radius).into_iter().map(|s| s.max(3)).collect();
    cone_from_sizes(&sizes)
}

/// Ring sizes `max(3, round(sqrt(h)))`: a lattice-like cone whose
/// circumference at height `h` grows like `sqrt(h)`.
pub fn parabolic_ring_sizes(radius: u32) -> Vec<usize> {
    (0..=radius)
        .map(|h| ((h as f64).sqrt().round() as usize).max(3))
        .collect()
}

pub fn parabolic_cone(radius: u32) -> Result<PlanarPatch> {
    if radius == 0 {
        return Err(Error::invalid("cone radius must be at least 1"));
    }
    cone_from_sizes(&parabolic_ring_sizes(radius))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::graph_distances;

    #[test]
    fn rings_are_spheres() {
        let sizes = vec![1, 3, 5, 8, 8, 4, 6];
        let p = cone_from_sizes(&sizes).unwrap();
        let d = graph_distances(p.graph(), 0, 10);
        assert_eq!(d.sphere_sizes(), sizes);
        assert_eq!(p.face_cycles()[p.outer_face()].len(), 6);
    }

    #[test]
    fn every_bounded_face_is_a_triangle() {
        let p = cone_triangulation(1.5, 30).unwrap();
        let triangles = p.facial_triangles().len();
        assert_eq!(triangles + 1, p.faces().num_faces());
    }

    #[test]
    fn thin_rings_rejected() {
        assert!(cone_from_sizes(&[1, 3, 2]).is_err());
        assert!(cone_triangulation(3.0, 5).is_err());
    }
}

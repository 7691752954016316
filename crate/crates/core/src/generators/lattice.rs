//! The triangular and square lattices, cut to a hexagon resp. diamond around
//! the origin.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::patch::PlanarPatch;

use super::longest_face_dart;

/// Axial directions of the six lattice neighbors, clockwise.
const HEX_DIRS: [(i32, i32); 6] = [(1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1)];

/// Steps walking once around hexagonal ring `k` from its corner `(k, 0)`.
const RING_STEPS: [(i32, i32); 6] = [(-1, 1), (-1, 0), (0, -1), (1, -1), (1, 0), (0, 1)];

/// Axial coordinates of the hexagonal patch of radius `radius`, numbered ring
/// by ring: the center is 0 and ring `k` starts at its corner `(k, 0)`.
pub fn hex_coordinates(radius: u32) -> Vec<(i32, i32)> {
    let mut coords = vec![(0, 0)];
    for k in 1..=radius as i32 {
        let mut cur = (k, 0);
        for step in RING_STEPS {
            for _ in 0..k {
                coords.push(cur);
                cur = (cur.0 + step.0, cur.1 + step.1);
            }
        }
    }
    coords
}

pub fn hex_norm((q, r): (i32, i32)) -> i32 {
    q.abs().max(r.abs()).max((q + r).abs())
}

fn rotation_from_coords(coords: &[(i32, i32)], dirs: &[(i32, i32)]) -> Result<Graph> {
    let index: HashMap<(i32, i32), usize> = coords.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let nbrs = coords
        .iter()
        .map(|&(x, y)| {
            dirs.iter()
                .filter_map(|&(dx, dy)| index.get(&(x + dx, y + dy)).copied())
                .collect()
        })
        .collect();
    Graph::from_rotation(nbrs)
}

/// Triangular lattice patch: all vertices within distance `radius` of the
/// center (vertex 0). `|B(r)| = 3r^2 + 3r + 1` for `r <= radius`.
pub fn triangular_lattice(radius: u32) -> Result<PlanarPatch> {
    if radius == 0 {
        return Err(Error::invalid("lattice radius must be at least 1"));
    }
    let g = rotation_from_coords(&hex_coordinates(radius), &HEX_DIRS)?;
    let outer = longest_face_dart(&g)?;
    PlanarPatch::new(g, outer, vec![0], radius, true)
}

const SQUARE_DIRS: [(i32, i32); 4] = [(1, 0), (0, -1), (-1, 0), (0, 1)];

/// Square lattice patch `{|x| + |y| <= radius}` centered at vertex 0.
/// `|B(r)| = 2r^2 + 2r + 1` for `r <= radius`.
pub fn square_lattice(radius: u32) -> Result<PlanarPatch> {
    if radius == 0 {
        return Err(Error::invalid("lattice radius must be at least 1"));
    }
    let r = radius as i32;
    let mut coords = Vec::new();
    for x in -r..=r {
        for y in -r..=r {
            if x.abs() + y.abs() <= r {
                coords.push((x, y));
            }
        }
    }
    coords.sort_by_key(|&(x, y)| (x.abs() + y.abs(), x, y));
    let g = rotation_from_coords(&coords, &SQUARE_DIRS)?;
    let outer = longest_face_dart(&g)?;
    PlanarPatch::new(g, outer, vec![0], radius, false)
}

/// The `w x h` grid graph (vertex `(x, y)` has id `y * w + x`), embedded.
pub fn square_grid(w: usize, h: usize) -> Result<Graph> {
    let coords: Vec<(i32, i32)> = (0..h)
        .flat_map(|y| (0..w).map(move |x| (x as i32, y as i32)))
        .collect();
    rotation_from_coords(&coords, &SQUARE_DIRS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_lattice_counts() {
        assert_eq!(triangular_lattice(1).unwrap().num_vertices(), 7);
        assert_eq!(triangular_lattice(2).unwrap().num_vertices(), 19);
        assert!(triangular_lattice(0).is_err());
    }

    #[test]
    fn interior_degree_six_and_ids_ring_by_ring() {
        let p = triangular_lattice(4).unwrap();
        let coords = hex_coordinates(4);
        for (v, &c) in coords.iter().enumerate() {
            assert_eq!(p.depth(v) as i32, hex_norm(c));
            if hex_norm(c) < 4 {
                assert_eq!(p.graph().degree(v), 6);
            }
        }
        assert_eq!(p.face_cycles()[p.outer_face()].len(), 24);
    }

    #[test]
    fn square_lattice_faces_are_squares() {
        let p = square_lattice(3).unwrap();
        assert_eq!(p.num_vertices(), 25);
        for (i, c) in p.face_cycles().iter().enumerate() {
            if i != p.outer_face() {
                assert_eq!(c.len(), 4);
            }
        }
    }

    #[test]
    fn grid_is_planar() {
        let g = square_grid(5, 5).unwrap();
        assert_eq!(g.num_edges(), 40);
        let outer = longest_face_dart(&g).unwrap();
        PlanarPatch::new(g, outer, vec![0], 0, false).unwrap();
    }
}

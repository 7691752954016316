use quasitree_core::generators::{
    alpha_tree, cone_from_sizes, glued_trees, grid_chain, square_lattice, triangular_lattice, VertexRole,
};
use quasitree_core::metric::graph_distances;
use quasitree_core::{Graph, PlanarPatch};

/// Sorted degrees of each BFS layer around vertex 0.
fn layered_degrees(g: &Graph, depth: u32) -> Vec<Vec<usize>> {
    let d = graph_distances(g, 0, depth);
    let mut layers = vec![Vec::new(); depth as usize + 1];
    for &v in d.reached() {
        layers[d.get(v).unwrap() as usize].push(g.degree(v));
    }
    for l in &mut layers {
        l.sort_unstable();
    }
    layers
}

#[test]
fn six_r_cone_matches_lattice_invariants() {
    for radius in 1..=6u32 {
        let sizes: Vec<usize> = (0..=radius as usize).map(|r| 6 * r).collect();
        let cone = cone_from_sizes(&sizes).unwrap();
        let lat = triangular_lattice(radius).unwrap();
        assert_eq!(cone.num_vertices(), lat.num_vertices());
        assert_eq!(cone.graph().num_edges(), lat.graph().num_edges());
        assert_eq!(cone.faces().num_faces(), lat.faces().num_faces());
        assert_eq!(layered_degrees(cone.graph(), radius), layered_degrees(lat.graph(), radius));
    }
}

/// Edges among the first `n` ids.
fn prefix_edges(p: &PlanarPatch, n: usize) -> Vec<(usize, usize)> {
    let mut e: Vec<_> = p.graph().edges().iter().copied().filter(|&(a, b)| a < n && b < n).collect();
    e.sort_unstable();
    e
}

#[test]
fn larger_builds_extend_smaller_ones() {
    let pairs = [
        (triangular_lattice(8).unwrap(), triangular_lattice(15).unwrap()),
        (square_lattice(8).unwrap(), square_lattice(15).unwrap()),
        (alpha_tree(1.5, 12).unwrap(), alpha_tree(1.5, 24).unwrap()),
    ];
    for (small, big) in pairs {
        let r = small.cert_radius();
        let c = small.centers()[0];
        let ds = graph_distances(small.graph(), c, r);
        let db = graph_distances(big.graph(), c, r);
        assert_eq!(ds.sphere_sizes(), db.sphere_sizes());
        // ids are assigned layer by layer, so the certified ball is a prefix
        let n = ds.reached().len();
        assert!(ds.reached().iter().all(|&v| v < n));
        assert_eq!(prefix_edges(&small, n), prefix_edges(&big, n));
    }
}

#[test]
fn grid_piece_two_has_33_vertices() {
    let chain = grid_chain(3).unwrap();
    let in_g2 = chain
        .roles
        .iter()
        .filter(|r| matches!(r, VertexRole::Grid { n: 2, .. } | VertexRole::Subdivision { n: 2, .. }))
        .count();
    // 9 grid vertices plus 2 on each of the 12 grid edges
    assert_eq!(in_g2, 33);
    let connectors = chain.roles.iter().filter(|r| matches!(r, VertexRole::Connector { n: 2, .. })).count();
    assert_eq!(connectors, 1);
}

#[test]
fn glued_roots_are_twice_the_depth_apart() {
    let radius = 24;
    let gt = glued_trees(1.5, radius, 3).unwrap();
    let g = gt.patch.graph();
    let (r, r2) = (gt.from_t[0], gt.from_t_prime[0]);
    let d = graph_distances(g, r, u32::MAX);
    assert_eq!(d.get(r2), Some(2 * radius));
    let d2 = graph_distances(g, r2, u32::MAX);
    for &leaf in &gt.glued {
        let v = gt.from_t[leaf];
        assert_eq!(v, gt.from_t_prime[leaf]);
        assert_eq!(d.get(v), Some(radius));
        assert_eq!(d2.get(v), Some(radius));
    }
    // two glued leaves close a cycle through both roots
    assert!(g.num_edges() >= g.num_vertices());
}

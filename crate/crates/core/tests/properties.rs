use proptest::prelude::*;

use quasitree_core::coarse::{check_bp_pair, verify_violation, HalfInt};
use quasitree_core::cycle_space::{is_cycle_space_element, is_k_sc, CycleBasis, EdgeSetF2};
use quasitree_core::generators::triangular_lattice;
use quasitree_core::Graph;

/// A connected graph: a random tree plus a few chords.
fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        let parents = (1..n).map(|v| 0..v).collect::<Vec<_>>();
        let chords = proptest::collection::vec((0..n, 0..n), 0..n);
        (parents, chords).prop_map(move |(parents, chords)| {
            let mut edges: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
            for (a, b) in chords {
                let e = (a.min(b), a.max(b));
                if a != b && !edges.iter().any(|&(x, y)| (x.min(y), x.max(y)) == e) {
                    edges.push(e);
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn cycle_basis_has_circuit_rank(g in connected_graph(12)) {
        let b = CycleBasis::new(&g).unwrap();
        prop_assert_eq!(b.dim(), g.num_edges() + 1 - g.num_vertices());
    }

    #[test]
    fn short_cycle_property_is_monotone(g in connected_graph(8), k in 3usize..8) {
        if is_k_sc(&g, k).unwrap() {
            prop_assert!(is_k_sc(&g, k + 1).unwrap());
        }
        prop_assert!(is_k_sc(&g, g.num_vertices()).unwrap());
    }

    #[test]
    fn sums_of_cycles_stay_in_cycle_space(r in 1u32..5, a in 0usize..1000, b in 0usize..1000) {
        let p = triangular_lattice(r).unwrap();
        let faces = p.face_cycles();
        let x = EdgeSetF2::from_cycle(p.graph(), &faces[a % faces.len()]).unwrap();
        let y = EdgeSetF2::from_cycle(p.graph(), &faces[b % faces.len()]).unwrap();
        prop_assert!(is_cycle_space_element(p.graph(), &x.xor(&y).unwrap()).unwrap());
    }

    #[test]
    fn half_integers_round_trip(d in 0u32..10_000) {
        let h = HalfInt::from_doubled(d);
        prop_assert_eq!(h.to_string().parse::<HalfInt>().unwrap(), h);
    }

    #[test]
    fn reported_lattice_violations_verify(p in 0usize..331, q in 0usize..331, d in 2u32..8) {
        let lat = triangular_lattice(18).unwrap();
        if p != q {
            if let Ok(check) = check_bp_pair(&lat, p, q, HalfInt::from_doubled(d)) {
                if check.is_violation() {
                    prop_assert!(verify_violation(lat.graph(), &check));
                }
            }
        }
    }
}

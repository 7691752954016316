use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use quasitree_core::coarse::{bp_scan, check_bp_pair, HalfInt, PairSource};
use quasitree_core::cycle_space::is_k_sc;
use quasitree_core::generators::{alpha_tree, hex_coordinates, square_grid, triangular_lattice};
use quasitree_core::metric::graph_distances;
use quasitree_core::witness::{quadratic_growth_witness, Violation};

fn lattice_pair(radius: u32, t: i32) -> (usize, usize) {
    let coords = hex_coordinates(radius);
    let a = coords.iter().position(|&c| c == (t, 0)).unwrap();
    let b = coords.iter().position(|&c| c == (-t, 0)).unwrap();
    (a, b)
}

fn bfs(c: &mut Criterion) {
    let p = triangular_lattice(100).unwrap();
    c.bench_function("bfs lattice(100) full", |b| {
        b.iter(|| graph_distances(p.graph(), black_box(0), u32::MAX))
    });
}

fn ksc(c: &mut Criterion) {
    let g = square_grid(12, 12).unwrap();
    c.bench_function("is_k_sc 12x12 grid k=4", |b| b.iter(|| is_k_sc(black_box(&g), 4).unwrap()));
}

fn bp(c: &mut Criterion) {
    let lat = triangular_lattice(60).unwrap();
    let (a, b_) = lattice_pair(60, 25);
    c.bench_function("check_bp_pair lattice(60) dist 50", |b| {
        b.iter(|| check_bp_pair(&lat, a, b_, HalfInt::from_int(10)).unwrap())
    });
    let tree = alpha_tree(1.5, 40).unwrap();
    let pairs: Vec<_> = (1..200).map(|i| (0, i * 7 % tree.num_vertices())).collect();
    let src = PairSource::Explicit(pairs);
    c.bench_function("bp_scan alpha_tree 199 pairs", |b| {
        b.iter(|| bp_scan(&tree, HalfInt::from_int(2), &src).unwrap())
    });
}

fn witness(c: &mut Criterion) {
    let lat = triangular_lattice(60).unwrap();
    let (a, b_) = lattice_pair(60, 25);
    let check = check_bp_pair(&lat, a, b_, HalfInt::from_int(10)).unwrap();
    let v = Violation::from_check(&check).unwrap();
    c.bench_function("quadratic witness lattice r=10", |b| {
        b.iter(|| quadratic_growth_witness(&lat, &v, 10).unwrap())
    });
}

criterion_group!(benches, bfs, ksc, bp, witness);
criterion_main!(benches);

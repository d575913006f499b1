mod common;

use homolattice::arch::{gen_diamond_hole, gen_mixed_diamond_hole, gen_square_hole, gen_torus};
use homolattice::code::{
    logical_basis_boundary_strategy, logical_basis_generic, verify_logical_basis, LogicalBasis,
};
use homolattice::f2linalg::RowEchelon;
use homolattice::homology::boundary_maps;
use homolattice::{BinaryMatrix, Error, Surface};

/// Whether every operator of `a` lies in the span of `b` and the stabilizers.
fn spans_within(s: &Surface, a: &LogicalBasis, b: &LogicalBasis) -> bool {
    let cx = boundary_maps(s);
    let mut z_span = RowEchelon::from_matrix(&cx.d2.transpose());
    let mut x_span = RowEchelon::from_matrix(&cx.d1);
    for (x, z) in &b.pairs {
        z_span.insert(z);
        x_span.insert(x);
    }
    a.pairs
        .iter()
        .all(|(x, z)| z_span.contains(z) && x_span.contains(x))
}

fn check_both(s: &Surface, k: usize) {
    let generic = logical_basis_generic(s).unwrap();
    let boundary = logical_basis_boundary_strategy(s).unwrap();
    for b in [&generic, &boundary] {
        assert_eq!(b.k(), k, "{}", b.method);
        assert!(
            verify_logical_basis(s, b).is_empty(),
            "{:?}",
            verify_logical_basis(s, b)
        );
    }
    assert!(spans_within(s, &boundary, &generic));
    assert!(spans_within(s, &generic, &boundary));
}

#[test]
fn torus_generic_basis() {
    let s = gen_torus(3).unwrap();
    let b = logical_basis_generic(&s).unwrap();
    assert_eq!(b.k(), 2);
    assert!(verify_logical_basis(&s, &b).is_empty());
    let xs = BinaryMatrix::from_rows(18, &b.pairs.iter().map(|p| p.0.clone()).collect::<Vec<_>>());
    let zs = BinaryMatrix::from_rows(18, &b.pairs.iter().map(|p| p.1.clone()).collect::<Vec<_>>());
    assert_eq!(xs.mul(&zs.transpose()).unwrap(), BinaryMatrix::identity(2));
}

#[test]
fn torus_is_outside_the_boundary_strategy() {
    let s = gen_torus(3).unwrap();
    assert!(matches!(
        logical_basis_boundary_strategy(&s),
        Err(Error::UnsupportedTopology(_))
    ));
}

#[test]
fn closed_holes() {
    check_both(&gen_square_hole(2, 2, 1).unwrap(), 4);
    check_both(&gen_diamond_hole(2, 1, 1).unwrap(), 2);
}

#[test]
fn mixed_boundaries() {
    check_both(&gen_mixed_diamond_hole(2, 1, 2).unwrap(), 5);
    check_both(&common::single_mixed_hole(), 1);
    check_both(&common::alternating_hole(), h1(&common::alternating_hole()));
    check_both(&common::six_hole_sphere(), 4);
    check_both(&common::open_sides_rectangle(4, 3), 1);
}

#[test]
fn disk_has_an_empty_basis() {
    let s = homolattice::arch::gen_plain_square(3, 3).unwrap();
    assert_eq!(logical_basis_generic(&s).unwrap().k(), 0);
}

#[test]
fn basis_json_uses_surface_edges() {
    let s = gen_square_hole(1, 1, 1).unwrap();
    let b = logical_basis_generic(&s).unwrap();
    let v: serde_json::Value = serde_json::to_value(&b).unwrap();
    assert_eq!(v["k"], 1);
    let z: Vec<usize> = serde_json::from_value(v["pairs"][0]["z"].clone()).unwrap();
    assert_eq!(z.len(), b.pairs[0].1.weight());
    assert!(z.iter().all(|&e| e < s.edge_count() && !s.is_open_edge(e)));
}

fn h1(s: &Surface) -> usize {
    homolattice::homology::h1_dim(s).unwrap()
}

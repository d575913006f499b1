mod common;

use common::{cube, disjoint_union, open_terminated_path, random_cellulations};
use homolattice::arch::{gen_mixed_diamond_hole, gen_plain_square, gen_square_hole, gen_torus};
use homolattice::f2linalg::{kernel_basis, rank};
use homolattice::homology::{
    boundary_maps, cycle_space_dim, h1_dim, h1_dim_formula, h1_dim_oracle, homology_basis,
    is_relative_cycle, is_trivial_cycle,
};
use homolattice::{BitVector, Error};
use proptest::prelude::*;

#[test]
fn torus_chain_complex() {
    let s = gen_torus(3).unwrap();
    let cx = boundary_maps(&s);
    assert_eq!((cx.d1.rows(), cx.d1.cols()), (9, 18));
    assert_eq!((cx.d2.rows(), cx.d2.cols()), (18, 9));
    assert!(cx.d1.mul(&cx.d2).unwrap().is_zero());
    assert_eq!(cycle_space_dim(&s), 10);
    assert_eq!(h1_dim(&s).unwrap(), 2);
    assert_eq!(homology_basis(&cx).len(), 2);
}

#[test]
fn cycle_space_examples() {
    assert_eq!(cycle_space_dim(&open_terminated_path()), 1);
    let c = cube();
    assert_eq!(
        cycle_space_dim(&disjoint_union(&c, &c)),
        2 * cycle_space_dim(&c)
    );
}

#[test]
fn k_examples() {
    assert_eq!(h1_dim(&gen_plain_square(4, 3).unwrap()).unwrap(), 0);
    assert_eq!(h1_dim(&common::six_hole_sphere()).unwrap(), 4);
    assert_eq!(h1_dim(&gen_square_hole(2, 2, 1).unwrap()).unwrap(), 4);
    assert_eq!(
        h1_dim(&gen_mixed_diamond_hole(2, 1, 2).unwrap()).unwrap(),
        5
    );
    assert_eq!(h1_dim(&cube()).unwrap(), 0);
    // one closed and one open run on a single hole
    assert_eq!(h1_dim(&common::single_mixed_hole()).unwrap(), 1);
}

#[test]
fn cycle_predicates() {
    let s = gen_square_hole(1, 1, 1).unwrap();
    let cx = boundary_maps(&s);
    let n = cx.n_edges();
    assert!(is_relative_cycle(&s, &BitVector::zeros(n)).unwrap());
    let face = cx.d2.transpose().row(0);
    assert!(is_relative_cycle(&s, &face).unwrap());
    assert!(is_trivial_cycle(&s, &face).unwrap());
    let two = &face + &cx.d2.transpose().row(5);
    assert!(is_trivial_cycle(&s, &two).unwrap());
    let single = BitVector::from_support(n, [0]);
    assert!(!is_relative_cycle(&s, &single).unwrap());
    assert!(matches!(
        is_trivial_cycle(&s, &single),
        Err(Error::NotRelativeCycle)
    ));
    assert!(matches!(
        is_relative_cycle(&s, &BitVector::zeros(n + 1)),
        Err(Error::DimensionMismatch { .. })
    ));
    // the hole boundary is the only closed cycle of length 4 that is not a face
    let hole = s
        .boundary_cycles()
        .unwrap()
        .into_iter()
        .min_by_key(|c| c.edges.len())
        .unwrap();
    let loop_ = cx.from_surface_edges(&hole.edges);
    assert!(is_relative_cycle(&s, &loop_).unwrap());
    assert!(!is_trivial_cycle(&s, &loop_).unwrap());
}

#[test]
fn path_between_open_vertices_is_nontrivial() {
    let s = open_terminated_path();
    let cx = boundary_maps(&s);
    let z = BitVector::from_support(cx.n_edges(), 0..cx.n_edges());
    assert!(is_relative_cycle(&s, &z).unwrap());
    assert!(!is_trivial_cycle(&s, &z).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn formula_matches_rank_oracle(seed in any::<u64>()) {
        for s in random_cellulations(seed, 4) {
            prop_assert_eq!(h1_dim_formula(&s), h1_dim_oracle(&s) as i64);
        }
    }

    #[test]
    fn chain_complex_identities(seed in any::<u64>()) {
        for s in random_cellulations(seed, 4) {
            let cx = boundary_maps(&s);
            prop_assert!(cx.d1.mul(&cx.d2).unwrap().is_zero());
            prop_assert!(cx.d1.col_weights().iter().all(|&w| w <= 2));
            for (f, w) in cx.d2.col_weights().into_iter().enumerate() {
                let closed = s.face(f).iter().filter(|&&e| !s.is_open_edge(e)).count();
                prop_assert_eq!(w, closed);
            }
            prop_assert_eq!(kernel_basis(&cx.d1).len(), cycle_space_dim(&s));
            prop_assert_eq!(cycle_space_dim(&s), cx.n_edges() - rank(&cx.d1));
            for z in homology_basis(&cx) {
                prop_assert!(!is_trivial_cycle(&s, &z).unwrap());
            }
        }
    }

    #[test]
    fn disjoint_union_adds(seed in any::<u64>()) {
        let pair = random_cellulations(seed, 2);
        let u = disjoint_union(&pair[0], &pair[1]);
        prop_assert_eq!(h1_dim_oracle(&u), h1_dim_oracle(&pair[0]) + h1_dim_oracle(&pair[1]));
        prop_assert_eq!(h1_dim_formula(&u), h1_dim_formula(&pair[0]) + h1_dim_formula(&pair[1]));
    }
}

mod common;

use common::{all_fixtures, open_terminated_path, random_cellulations};
use homolattice::arch::{gen_plain_square, gen_square_hole, gen_torus};
use homolattice::code::{
    build_css, distance_bruteforce_oracle, distance_x, distance_z, BruteForceOutcome,
    DistanceResult, Method, Side,
};
use homolattice::homology::{h1_dim_oracle, is_relative_cycle, is_trivial_cycle};
use homolattice::{Error, Strictness, Surface};

const ORACLE_MAX_QUBITS: usize = 24;

fn certify(s: &Surface, r: &DistanceResult) {
    assert_eq!(r.witness.weight(), r.d);
    assert_eq!(r.witness_edges.len(), r.d);
    match r.side {
        Side::Z => {
            assert!(is_relative_cycle(s, &r.witness).unwrap());
            assert!(!is_trivial_cycle(s, &r.witness).unwrap());
        }
        Side::X => {
            // an X logical commutes with every face and is not a product of vertex stabilizers
            let code = build_css(s);
            assert!(code.z_stabilizers.iter().all(|z| !z.dot(&r.witness)));
            let xs = code.x_matrix();
            assert!(!homolattice::f2linalg::in_span(&xs, &r.witness).unwrap());
        }
    }
}

fn small_instances() -> Vec<(String, Surface)> {
    let mut out: Vec<(String, Surface)> = all_fixtures()
        .into_iter()
        .map(|f| (f.name, f.surface))
        .collect();
    out.extend(
        random_cellulations(7, 60)
            .into_iter()
            .enumerate()
            .map(|(i, s)| (format!("random #{i}"), s)),
    );
    out.into_iter()
        .filter(|(_, s)| build_css(s).n <= ORACLE_MAX_QUBITS && h1_dim_oracle(s) > 0)
        .collect()
}

#[test]
fn exact_search_matches_brute_force() {
    let instances = small_instances();
    assert!(instances.len() >= 10, "only {} instances", instances.len());
    for (name, s) in &instances {
        let exact = distance_z(s, Method::exact()).unwrap();
        certify(s, &exact);
        match distance_bruteforce_oracle(s, ORACLE_MAX_QUBITS) {
            BruteForceOutcome::Found(r) => assert_eq!(r.d, exact.d, "{name}"),
            BruteForceOutcome::Exhausted(_) => panic!("{name}: oracle found nothing"),
        }
        if s.validate(Strictness::ALL).is_empty() {
            let dx = match distance_x(s, Method::exact()) {
                Ok(r) => r,
                // a face meeting the open boundary at two separate corners
                // pinches the dual; strict validation does not exclude it
                Err(Error::DegenerateDual(_)) => continue,
                Err(e) => panic!("{name}: {e}"),
            };
            certify(s, &dx);
            let brute = distance_x(
                s,
                Method::BruteForce {
                    w_max: ORACLE_MAX_QUBITS,
                },
            )
            .unwrap();
            assert_eq!(brute.d, dx.d, "{name}");
        }
    }
}

#[test]
fn weight_capped_oracle_agrees_when_it_terminates() {
    let s = gen_torus(4).unwrap();
    assert_eq!(
        distance_bruteforce_oracle(&s, 3),
        BruteForceOutcome::Exhausted(3)
    );
    match distance_bruteforce_oracle(&s, 4) {
        BruteForceOutcome::Found(r) => {
            assert_eq!(r.d, 4);
            certify(&s, &r);
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        distance_z(&s, Method::BruteForce { w_max: 3 }),
        Err(Error::Exhausted { w_max: 3 })
    ));
}

#[test]
fn torus_and_square_hole_distances() {
    let t = gen_torus(3).unwrap();
    assert_eq!(distance_z(&t, Method::exact()).unwrap().d, 3);
    assert_eq!(distance_x(&t, Method::exact()).unwrap().d, 3);
    let sq = gen_square_hole(1, 1, 1).unwrap();
    for r in [
        distance_z(&sq, Method::exact()).unwrap(),
        distance_x(&sq, Method::exact()).unwrap(),
    ] {
        assert_eq!(r.d, 4);
        certify(&sq, &r);
    }
}

#[test]
fn open_terminated_path_has_distance_three() {
    let s = open_terminated_path();
    assert_eq!(distance_z(&s, Method::exact()).unwrap().d, 3);
}

#[test]
fn disk_has_no_logicals() {
    let s = gen_plain_square(3, 3).unwrap();
    assert_eq!(
        distance_bruteforce_oracle(&s, 6),
        BruteForceOutcome::Exhausted(6)
    );
    assert!(matches!(
        distance_z(&s, Method::exact()),
        Err(Error::NoLogicals)
    ));
}

#[test]
fn budget_caps_the_number_of_sheets() {
    let s = common::six_hole_sphere();
    assert!(matches!(
        distance_z(&s, Method::Exact { budget: 2 }),
        Err(Error::BudgetExceeded {
            needed: 4,
            budget: 2
        })
    ));
    assert!(distance_z(&s, Method::Exact { budget: 4 }).is_ok());
}

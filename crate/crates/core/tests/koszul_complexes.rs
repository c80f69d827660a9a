mod common;

use std::collections::BTreeSet;

use nquiver::koszul::*;
use nquiver::qdual::quadratic_dual;
use nquiver::translation::{hammock, Direction, TranslationStructure};
use nquiver::zq::{returning_arrow_quiver, zq_window, Twist};

fn check(name: &str, dualize: bool, slices: (i64, i64), exact: bool) {
    let mut base = common::load(name);
    if dualize {
        base = quadratic_dual(&base).unwrap();
    }
    let w = zq_window(&base, slices.0, slices.1).unwrap();
    let ks = KoszulSetting::new(&w.bound).unwrap();
    let ts = TranslationStructure::new(w.bound.clone()).unwrap();
    let all: Vec<usize> = (0..w.bound.quiver.num_vertices()).collect();
    for i in 0..w.bound.quiver.num_vertices() {
        if w.bound.translation.as_ref().unwrap().tau_inv(i).is_none() {
            continue;
        }
        let c = koszul_xi(&ks, i).unwrap();
        let h = hammock(&ts, i, Direction::Starting).unwrap();
        for t in 0..c.len() {
            for j in 0..w.bound.quiver.num_vertices() {
                assert_eq!(
                    c.multiplicity(t, j),
                    h.mu.get(&(j, t)).copied().unwrap_or(0)
                );
            }
        }
        if exact {
            let rep = verify_n_almost_split(&ks, &c, &all).unwrap();
            assert!(
                rep.passed(),
                "{name} vertex {}: {:?}",
                w.bound.quiver.vertex_name(i),
                rep
            );
        }
    }
}

fn check_window(name: &str, dualize: bool, slices: (i64, i64)) {
    check(name, dualize, slices, true)
}

fn check_shapes(name: &str, dualize: bool, slices: (i64, i64)) {
    check(name, dualize, slices, false)
}

#[test]
fn kronecker_mesh_complexes() {
    check_window("kronecker", false, (0, 3));
}

// The dual of the A4 window is only Koszul up to q = 3, so exactness fails precisely at the
// objects joined to the complex by a degree-3 path; every other object passes.
#[test]
fn a4_complexes_fail_exactly_at_obstructions() {
    let lambda = quadratic_dual(&common::load("a4_auslander")).unwrap();
    let q = koszul_type(
        &returning_arrow_quiver(&lambda, &Twist::Sign).unwrap().bound,
        6,
    )
    .unwrap()
    .q_hat
    .unwrap();
    assert_eq!(q, 3);
    let w = zq_window(&lambda, -1, 1).unwrap();
    let ks = KoszulSetting::new(&w.bound).unwrap();
    let nv = w.bound.quiver.num_vertices();
    let all: Vec<usize> = (0..nv).collect();
    let mut interior = 0;
    for i in 0..nv {
        if w.bound.translation.as_ref().unwrap().tau_inv(i).is_none() {
            continue;
        }
        interior += 1;
        let c = koszul_xi(&ks, i).unwrap();
        let rep = verify_n_almost_split(&ks, &c, &all).unwrap();
        assert_eq!(rep.composite, None);
        let failed: BTreeSet<(usize, HomSide)> =
            rep.failures.iter().map(|f| (f.object, f.side)).collect();
        let obstructed = obstructed_objects(&ks, i, q).unwrap();
        assert_eq!(
            failed,
            obstructed,
            "vertex {}",
            w.bound.quiver.vertex_name(i)
        );
        let mature: Vec<usize> = all
            .iter()
            .copied()
            .filter(|x| !obstructed.iter().any(|(y, _)| y == x))
            .collect();
        assert!(verify_n_almost_split(&ks, &c, &mature).unwrap().passed());
    }
    assert_eq!(interior, 20);
}

#[test]
fn a4_complex_shapes() {
    check_shapes("a4_auslander", true, (-1, 1));
}

fn delta(name: &str) -> nquiver::BoundQuiver {
    let lambda = common::load(name);
    returning_arrow_quiver(&lambda, &Twist::Sign).unwrap().bound
}

#[test]
fn koszul_type_a3() {
    // the dual of kA3 is the radical-square-zero algebra
    let r = koszul_type(&delta("a3_rad2"), 6).unwrap();
    eprintln!("{r:?}");
    assert_eq!(r.p, 2);
    assert_eq!(r.q_hat, Some(2));
}

#[test]
fn koszul_type_kronecker() {
    let r = koszul_type(&delta("kronecker"), 6).unwrap();
    eprintln!("{r:?}");
    assert_eq!(r.p, 2);
    assert!(r.pure_through() >= 6);
}

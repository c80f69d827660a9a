mod common;

use nquiver::graded::GradedAlgebra;
use nquiver::qdual::quadratic_dual;
use nquiver::translation::{is_stable_n_translation, TranslationStructure};
use nquiver::zq::*;

#[test]
fn a4_pipeline_counts() {
    let ar = common::load("a4_auslander");
    assert_eq!(ar.quiver.num_vertices(), 10);
    assert_eq!(ar.quiver.num_arrows(), 12);
    let q = quadratic_dual(&ar).unwrap();
    let alg = GradedAlgebra::new(&q);
    assert_eq!(alg.properly_graded_degree().unwrap(), 2);
    assert_eq!(alg.maximal_bound_paths().unwrap().len(), 6);
    let r = returning_arrow_quiver(&q, &Twist::None).unwrap();
    assert_eq!(r.bound.quiver.num_arrows(), 18);
    assert!(r.quadratic, "{:?}", r.warning);
    let w = window_from_returning(r, -1, 1).unwrap();
    assert_eq!(w.bound.quiver.num_vertices(), 30);
    assert!(w.bound.quiver.is_acyclic());
}

#[test]
fn a4_window_middle_slice_is_stable() {
    let q = quadratic_dual(&common::load("a4_auslander")).unwrap();
    let w = zq_window(&q, -1, 1).unwrap();
    let interior: Vec<usize> = (0..10).map(|u| w.vertex(u, 0).unwrap()).collect();
    let ts = TranslationStructure::new(w.bound.clone()).unwrap();
    let rep = is_stable_n_translation(&ts, &interior).unwrap();
    assert!(rep.passed(), "{:?}", rep.verdicts);
    assert_eq!(rep.checked(), 10);
}

#[test]
fn constant_slice_reconstructs() {
    let q = quadratic_dual(&common::load("a4_auslander")).unwrap();
    let w = zq_window(&q, -1, 1).unwrap();
    let slice: Vec<usize> = (0..10).map(|u| w.vertex(u, 0).unwrap()).collect();
    let s = extract_tau_slice(&w, &slice).unwrap();
    assert_eq!(s.quiver.num_arrows(), 12);
    assert!(verify_slice_reconstruction(&w, &slice).unwrap().passed());
}

use std::ffi::{CStr, CString};
use std::ptr;

use nquiver_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

#[test]
fn a4_dual_through_the_abi() {
    let src = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../core/data/a4_auslander.qv"
    ))
    .unwrap();
    let (src, field) = (c(&src), c("rat"));
    unsafe {
        let mut q = ptr::null_mut();
        assert_eq!(
            nq_quiver_parse(src.as_ptr(), field.as_ptr(), &mut q),
            NqStatus::Ok
        );
        let mut dual = ptr::null_mut();
        assert_eq!(nq_quadratic_dual(q, &mut dual), NqStatus::Ok);
        let (mut v, mut a, mut deg) = (0, 0, 0);
        assert_eq!(nq_quiver_num_vertices(dual, &mut v), NqStatus::Ok);
        assert_eq!(nq_quiver_num_arrows(dual, &mut a), NqStatus::Ok);
        assert_eq!(nq_properly_graded_degree(dual, &mut deg), NqStatus::Ok);
        assert_eq!((v, a, deg), (10, 12, 2));

        let mut text = ptr::null_mut();
        assert_eq!(nq_quiver_to_json(dual, &mut text), NqStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(nq_quiver_from_json(text, &mut back), NqStatus::Ok);
        let mut d2 = 0;
        assert_eq!(nq_properly_graded_degree(back, &mut d2), NqStatus::Ok);
        assert_eq!(d2, 2);
        nq_string_free(text);
        for h in [q, dual, back] {
            nq_quiver_free(h);
        }
    }
}

#[test]
fn errors_are_reported() {
    let (bad, field) = (c("quiver X\nvertices: 1\narrows:\n  a: 1 -> 9\n"), c("rat"));
    unsafe {
        let mut q = ptr::null_mut();
        assert_eq!(
            nq_quiver_parse(bad.as_ptr(), field.as_ptr(), &mut q),
            NqStatus::Parse
        );
        assert!(q.is_null());
        assert!(!CStr::from_ptr(nq_last_error()).to_bytes().is_empty());
        let mut n = 0;
        assert_eq!(
            nq_quiver_num_vertices(ptr::null(), &mut n),
            NqStatus::NullPointer
        );
    }
}

use std::ffi::CStr;
use std::ptr;

use sqg_disk_ffi::*;

fn space(max_m: usize, max_k: usize) -> *mut SqgSpace {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sqg_space_new(max_m, max_k, &mut s) }, SqgStatus::Ok);
    assert!(!s.is_null());
    s
}

fn field(s: *const SqgSpace) -> *mut SqgField {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { sqg_field_new(s, &mut f) }, SqgStatus::Ok);
    f
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sqg_last_error_message()) }.to_string_lossy().into_owned()
}

#[test]
fn bessel_values() {
    let mut v = 0.0;
    assert_eq!(unsafe { sqg_bessel_zero(0, 1, &mut v) }, SqgStatus::Ok);
    assert!((v - 2.404_825_557_695_773).abs() < 1e-13);
    let mut j = 1.0;
    assert_eq!(unsafe { sqg_bessel_j(0, v, &mut j) }, SqgStatus::Ok);
    assert!(j.abs() < 1e-13);
}

#[test]
fn errors_are_reported() {
    assert_eq!(unsafe { sqg_bessel_zero(0, 1, ptr::null_mut()) }, SqgStatus::NullPointer);
    assert!(last_error().contains("null"));
    let mut v = 0.0;
    assert_ne!(unsafe { sqg_bessel_zero(0, 0, &mut v) }, SqgStatus::Ok);
    assert!(!last_error().is_empty());

    let s = space(2, 2);
    let f = field(s);
    assert_eq!(unsafe { sqg_field_set(f, 3, 1, 1.0, 0.0) }, SqgStatus::InvalidArgument);
    assert_eq!(unsafe { sqg_field_set(f, 1, 1, f64::NAN, 0.0) }, SqgStatus::NonFinite);
    assert_eq!(unsafe { sqg_etd_step(s, f, -1.0, 0.0) }, SqgStatus::InvalidArgument);

    let other = space(3, 3);
    let mut n = 0.0;
    assert_eq!(
        unsafe { sqg_besov_norm(other, f, 0.0, 2.0, 2.0, SqgPartition::Dyadic, &mut n) },
        SqgStatus::SizeMismatch
    );
    unsafe {
        sqg_field_free(f);
        sqg_space_free(s);
        sqg_space_free(other);
        sqg_field_free(ptr::null_mut());
        sqg_space_free(ptr::null_mut());
    }
}

#[test]
fn synthesize_analyze_round_trip() {
    let s = space(4, 4);
    let f = field(s);
    let g = field(s);
    unsafe {
        assert_eq!(sqg_field_set(f, 0, 2, 0.5, 0.0), SqgStatus::Ok);
        assert_eq!(sqg_field_set(f, 3, 1, 0.25, -0.75), SqgStatus::Ok);
        let (mut nr, mut nt) = (0, 0);
        assert_eq!(sqg_space_grid_shape(s, &mut nr, &mut nt), SqgStatus::Ok);
        let mut values = vec![0.0; nr * nt];
        assert_eq!(sqg_synthesize(s, f, values.as_mut_ptr(), values.len()), SqgStatus::Ok);
        assert_eq!(sqg_synthesize(s, f, values.as_mut_ptr(), values.len() - 1), SqgStatus::SizeMismatch);
        assert_eq!(sqg_analyze(s, values.as_ptr(), values.len(), g), SqgStatus::Ok);
        for (m, k, want) in [(0, 2, (0.5, 0.0)), (3, 1, (0.25, -0.75)), (-3, 1, (0.25, 0.75)), (1, 1, (0.0, 0.0))] {
            let (mut re, mut im) = (0.0, 0.0);
            assert_eq!(sqg_field_get(g, m, k, &mut re, &mut im), SqgStatus::Ok);
            assert!((re - want.0).abs() < 1e-12 && (im - want.1).abs() < 1e-12, "({m},{k}): {re} {im}");
        }
        sqg_field_free(f);
        sqg_field_free(g);
        sqg_space_free(s);
    }
}

#[test]
fn single_mode_norms_and_dynamics() {
    let s = space(3, 3);
    let f = field(s);
    unsafe {
        let mut lambda = 0.0;
        assert_eq!(sqg_space_lambda(s, 0, 1, &mut lambda), SqgStatus::Ok);
        assert!((lambda - 2.404_825_557_695_773).abs() < 1e-12);
        sqg_field_set(f, 0, 1, 1.0, 0.0);

        // a radial mode is a steady state of the nonlinearity
        let out = field(s);
        assert_eq!(sqg_advect(s, f, f, out), SqgStatus::Ok);
        let mut n = 1.0;
        assert_eq!(sqg_besov_norm(s, out, 0.0, 2.0, 2.0, SqgPartition::Dyadic, &mut n), SqgStatus::Ok);
        assert!(n < 1e-10, "{n}");

        let mut l2 = 0.0;
        assert_eq!(sqg_besov_norm(s, f, 0.0, 2.0, 2.0, SqgPartition::Resolvent, &mut l2), SqgStatus::Ok);
        assert!(l2 > 0.0 && l2.is_finite());

        // pure decay at rate lambda
        let dt = 1e-2;
        assert_eq!(sqg_etd_step(s, f, dt, 0.0), SqgStatus::Ok);
        let (mut re, mut im) = (0.0, 0.0);
        sqg_field_get(f, 0, 1, &mut re, &mut im);
        assert!((re - (-lambda * dt).exp()).abs() < 1e-12, "{re}");

        sqg_field_free(out);
        sqg_field_free(f);
        sqg_space_free(s);
    }
}

#[test]
fn header_declares_interface() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../include/sqg_disk.h");
    let header = std::fs::read_to_string(path).expect("generated header");
    assert!(header.contains("#ifndef SQG_DISK_H"));
    for name in [
        "sqg_last_error_message",
        "sqg_bessel_j",
        "sqg_bessel_zero",
        "sqg_space_new",
        "sqg_space_free",
        "sqg_space_grid_shape",
        "sqg_space_lambda",
        "sqg_field_new",
        "sqg_field_free",
        "sqg_field_set",
        "sqg_field_get",
        "sqg_synthesize",
        "sqg_analyze",
        "sqg_besov_norm",
        "sqg_advect",
        "sqg_etd_step",
        "SQG_STATUS_OK",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

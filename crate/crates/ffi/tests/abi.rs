use std::ffi::CStr;
use std::path::Path;
use std::process::Command;
use std::ptr;

use reclab_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(reclab_last_error()).to_str().unwrap().to_owned() }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(reclab_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn counterexample_handle() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(reclab_counterexample_new(7, &mut h), ReclabStatus::Ok);
        let mut d = 0.0;
        assert_eq!(reclab_counterexample_distance_sq(h, 1, &mut d), ReclabStatus::Ok);
        let want: f64 = (2..=7).map(|k| 5.0 / 4f64.powi(k)).sum();
        assert!((d - want).abs() <= 1e-12);
        assert_eq!(reclab_counterexample_distance_sq(h, 7, &mut d), ReclabStatus::Truncation);
        assert!(last_error().contains("k_max >= 8"));
        assert_eq!(reclab_counterexample_orbit_distance(h, 3, &mut d), ReclabStatus::Ok);
        assert!(d >= 0.5);
        reclab_counterexample_free(h);
        reclab_counterexample_free(ptr::null_mut());
        assert_eq!(reclab_counterexample_new(1, &mut h), ReclabStatus::InvalidArgument);
    }
}

#[test]
fn null_pointers_are_reported() {
    unsafe {
        assert_eq!(reclab_counterexample_new(3, ptr::null_mut()), ReclabStatus::NullPointer);
        let mut d = 0.0;
        assert_eq!(reclab_counterexample_distance_sq(ptr::null(), 1, &mut d), ReclabStatus::NullPointer);
        assert!(last_error().contains("handle"));
    }
}

#[test]
fn lemma3_and_zeta() {
    unsafe {
        let (mut m, mut b, mut p) = (0.0, 0.0, false);
        assert_eq!(reclab_lemma3_check(5, &mut m, &mut b, &mut p), ReclabStatus::Ok);
        assert!(p && m <= b && b == 45.0);
        assert_eq!(reclab_lemma3_check(9, &mut m, &mut b, &mut p), ReclabStatus::InvalidArgument);

        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(reclab_zeta_star(2.0, 0.0, 1e-12, &mut re, &mut im), ReclabStatus::Ok);
        assert!((re + std::f64::consts::PI.powi(2) / 12.0).abs() < 1e-12);
        assert_eq!(reclab_zeta_star(-1.0, 0.0, 1e-12, &mut re, &mut im), ReclabStatus::Domain);
        assert_eq!(reclab_zeta_star(0.7, 0.0, 1e-15, &mut re, &mut im), ReclabStatus::Accuracy);
        assert_eq!(reclab_zeta(4.0, 0.0, 1e-12, &mut re, &mut im), ReclabStatus::Ok);
        assert!((re - std::f64::consts::PI.powi(4) / 90.0).abs() < 1e-12);
        assert_eq!(reclab_zeta(1.0, 0.0, 1e-12, &mut re, &mut im), ReclabStatus::Domain);
    }
}

#[test]
fn eigensum_handles() {
    unsafe {
        let (num, den) = ([1u64], [5u64]);
        let mut h = ptr::null_mut();
        assert_eq!(reclab_eigensum_new_rational(num.as_ptr(), den.as_ptr(), ptr::null(), 1, &mut h), ReclabStatus::Ok);
        let mut gap = 0;
        assert_eq!(reclab_eigensum_uniform_gap(h, 0.5, 1000, &mut gap), ReclabStatus::Ok);
        assert_eq!(gap, 5);
        let mut d = 1.0;
        assert_eq!(reclab_eigensum_distance(h, 10, &mut d), ReclabStatus::Ok);
        assert!(d < 1e-15);
        assert_eq!(reclab_eigensum_uniform_gap(h, 0.0, 1000, &mut gap), ReclabStatus::InvalidArgument);
        reclab_eigensum_free(h);

        let angles = [0.25, 0.6180339887498949];
        let weights = [1.0, 2.0];
        assert_eq!(reclab_eigensum_new(angles.as_ptr(), weights.as_ptr(), 2, &mut h), ReclabStatus::Ok);
        assert_eq!(reclab_eigensum_conjugacy_residual(h, 100_000, &mut d), ReclabStatus::Ok);
        assert!(d <= 1e-9);
        reclab_eigensum_free(h);

        let dup = [0.25, 0.25];
        assert_eq!(reclab_eigensum_new(dup.as_ptr(), ptr::null(), 2, &mut h), ReclabStatus::InvalidArgument);
        assert!(!last_error().is_empty());
    }
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/reclab.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["reclab_counterexample_new", "reclab_zeta_star", "reclab_eigensum_uniform_gap", "RECLAB_STATUS_PANIC"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    // only checked where a C compiler is installed
    if let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"]).arg(&header).output() {
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}

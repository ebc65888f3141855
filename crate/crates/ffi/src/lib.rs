//! C ABI over `reclab`.
//!
//! Every entry point returns a [`ReclabStatus`] and writes results through
//! out-pointers. Objects are opaque handles created by `*_new` and released
//! by the matching `*_free`. On failure a message is kept per thread and can
//! be read with [`reclab_last_error`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use reclab::counterexample::CounterexampleInstance;
use reclab::eigen::lemma3_bound_check;
use reclab::recurrence::{self, Angle, FiniteEigenSum};
use reclab::zeta_orbit;
use reclab::{Complex64, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReclabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    Domain = 4,
    Overflow = 5,
    Truncation = 6,
    Accuracy = 7,
    Panic = 8,
}

/// A truncated counterexample vector together with its operator.
pub struct ReclabCounterexample(CounterexampleInstance);

/// A finite sum of unimodular eigenvectors with orthogonal components.
pub struct ReclabEigenSum(FiniteEigenSum);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> ReclabStatus {
    match err {
        Error::Config(_) | Error::Layout(_) => ReclabStatus::InvalidArgument,
        Error::OutOfRange(_) => ReclabStatus::OutOfRange,
        Error::Domain(_) => ReclabStatus::Domain,
        Error::Overflow { .. } => ReclabStatus::Overflow,
        Error::Truncation { .. } => ReclabStatus::Truncation,
        Error::Accuracy { .. } | Error::Scan { .. } => ReclabStatus::Accuracy,
    }
}

fn guard(f: impl FnOnce() -> Result<(), ReclabStatus>) -> ReclabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ReclabStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic".into());
            ReclabStatus::Panic
        }
    }
}

fn lib<T>(r: reclab::Result<T>) -> Result<T, ReclabStatus> {
    r.map_err(|e| {
        let status = status_of(&e);
        set_error(e.to_string());
        status
    })
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), ReclabStatus> {
    if p.is_null() {
        set_error(format!("{name} is null"));
        return Err(ReclabStatus::NullPointer);
    }
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn reclab_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => c"",
    };
    VERSION.as_ptr()
}

/// Message of the last failure on this thread. The pointer stays valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn reclab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds `y` truncated to blocks `1..=k_max`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reclab_counterexample_new(k_max: usize, out: *mut *mut ReclabCounterexample) -> ReclabStatus {
    guard(|| {
        non_null(out, "out")?;
        let inst = lib(CounterexampleInstance::new(k_max))?;
        *out = Box::into_raw(Box::new(ReclabCounterexample(inst)));
        Ok(())
    })
}

/// # Safety
/// `handle` must come from [`reclab_counterexample_new`] and not be used
/// afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn reclab_counterexample_free(handle: *mut ReclabCounterexample) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// `||u^l y - y||^2` on the truncation; requires `1 <= power < k_max`.
///
/// # Safety
/// `handle` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reclab_counterexample_distance_sq(handle: *const ReclabCounterexample, power: u64, out: *mut f64) -> ReclabStatus {
    guard(|| {
        non_null(handle, "handle")?;
        non_null(out, "out")?;
        *out = lib((*handle).0.non_recurrence_distance(power))?;
        Ok(())
    })
}

/// `||u^n y - y||` on the truncation, uncertified; fails with
/// `RECLAB_STATUS_OVERFLOW` when a weight leaves the double range.
///
/// # Safety
/// `handle` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reclab_counterexample_orbit_distance(handle: *const ReclabCounterexample, n: u64, out: *mut f64) -> ReclabStatus {
    guard(|| {
        non_null(handle, "handle")?;
        non_null(out, "out")?;
        *out = lib((*handle).0.orbit_distance(n))?;
        Ok(())
    })
}

/// Exhaustive scaled partial-sum scan for block `k` (2..=8).
///
/// # Safety
/// Out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reclab_lemma3_check(k: usize, max_norm: *mut f64, bound: *mut f64, pass: *mut bool) -> ReclabStatus {
    guard(|| {
        non_null(max_norm, "max_norm")?;
        non_null(bound, "bound")?;
        non_null(pass, "pass")?;
        let row = lib(lemma3_bound_check(k))?;
        *max_norm = row.max_norm;
        *bound = row.bound;
        *pass = row.pass;
        Ok(())
    })
}

/// Alternating zeta `sum (-1)^n n^-s` to `tol`.
///
/// # Safety
/// Out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reclab_zeta_star(re: f64, im: f64, tol: f64, out_re: *mut f64, out_im: *mut f64) -> ReclabStatus {
    guard(|| {
        non_null(out_re, "out_re")?;
        non_null(out_im, "out_im")?;
        let v = lib(zeta_orbit::zeta_star(Complex64::new(re, im), tol))?;
        *out_re = v.re;
        *out_im = v.im;
        Ok(())
    })
}

/// Riemann zeta by Euler-Maclaurin summation to `tol`.
///
/// # Safety
/// Out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reclab_zeta(re: f64, im: f64, tol: f64, out_re: *mut f64, out_im: *mut f64) -> ReclabStatus {
    guard(|| {
        non_null(out_re, "out_re")?;
        non_null(out_im, "out_im")?;
        let v = lib(zeta_orbit::zeta_em(Complex64::new(re, im), tol))?;
        *out_re = v.re;
        *out_im = v.im;
        Ok(())
    })
}

/// Builds a sum from `d` angles in `[0, 1)` (as doubles) and positive weights.
/// `weights` may be null for unit weights.
///
/// # Safety
/// `angles` must point to `d` doubles, `weights` to `d` doubles or be null,
/// and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reclab_eigensum_new(
    angles: *const f64,
    weights: *const f64,
    d: usize,
    out: *mut *mut ReclabEigenSum,
) -> ReclabStatus {
    guard(|| {
        non_null(angles, "angles")?;
        non_null(out, "out")?;
        let angles = std::slice::from_raw_parts(angles, d).iter().map(|&t| lib(Angle::real(t))).collect::<Result<Vec<_>, _>>()?;
        build_sum(angles, weights, d, out)
    })
}

/// Same as [`reclab_eigensum_new`] with exact angles `num[j] / den[j]`.
///
/// # Safety
/// `num` and `den` must point to `d` integers each; see [`reclab_eigensum_new`].
#[no_mangle]
pub unsafe extern "C" fn reclab_eigensum_new_rational(
    num: *const u64,
    den: *const u64,
    weights: *const f64,
    d: usize,
    out: *mut *mut ReclabEigenSum,
) -> ReclabStatus {
    guard(|| {
        non_null(num, "num")?;
        non_null(den, "den")?;
        non_null(out, "out")?;
        let num = std::slice::from_raw_parts(num, d);
        let den = std::slice::from_raw_parts(den, d);
        let angles = num.iter().zip(den).map(|(&p, &q)| lib(Angle::rational(p, q))).collect::<Result<Vec<_>, _>>()?;
        build_sum(angles, weights, d, out)
    })
}

unsafe fn build_sum(angles: Vec<Angle>, weights: *const f64, d: usize, out: *mut *mut ReclabEigenSum) -> Result<(), ReclabStatus> {
    let weights = if weights.is_null() { vec![1.0; d] } else { std::slice::from_raw_parts(weights, d).to_vec() };
    let sum = lib(FiniteEigenSum::new(angles, weights))?;
    *out = Box::into_raw(Box::new(ReclabEigenSum(sum)));
    Ok(())
}

/// # Safety
/// `handle` must come from one of the `reclab_eigensum_new*` functions and not
/// be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn reclab_eigensum_free(handle: *mut ReclabEigenSum) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// `||u^n x - x||`.
///
/// # Safety
/// `handle` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reclab_eigensum_distance(handle: *const ReclabEigenSum, n: u64, out: *mut f64) -> ReclabStatus {
    guard(|| {
        non_null(handle, "handle")?;
        non_null(out, "out")?;
        *out = recurrence::eigensum_distance(&(*handle).0, n);
        Ok(())
    })
}

/// Smallest window length that always contains a return time up to
/// `horizon`; equals `horizon` when there is none.
///
/// # Safety
/// `handle` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reclab_eigensum_uniform_gap(
    handle: *const ReclabEigenSum,
    epsilon: f64,
    horizon: u64,
    out: *mut u64,
) -> ReclabStatus {
    guard(|| {
        non_null(handle, "handle")?;
        non_null(out, "out")?;
        *out = lib(recurrence::uniform_gap_scan(&(*handle).0, epsilon, horizon))?;
        Ok(())
    })
}

/// Distance between iterated and directly reduced rotations at step `n`.
///
/// # Safety
/// `handle` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reclab_eigensum_conjugacy_residual(handle: *const ReclabEigenSum, n: u64, out: *mut f64) -> ReclabStatus {
    guard(|| {
        non_null(handle, "handle")?;
        non_null(out, "out")?;
        *out = recurrence::torus_conjugacy_residual(&(*handle).0, n);
        Ok(())
    })
}

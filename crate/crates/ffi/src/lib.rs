//! C ABI over `stieltjes-core`.
//!
//! Requests and results are opaque heap handles created and released by
//! this library. Every fallible call returns a [`StjStatus`]; the message of
//! the last failure on the calling thread is available from
//! [`stj_last_error`]. Strings are copied into caller buffers: the functions
//! return the full length (without the terminating NUL) and write at most
//! `len − 1` bytes plus a NUL.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use stieltjes_core::cli::{run_suite, Suite};
use stieltjes_core::real::shortest_decimal;
use stieltjes_core::stieltjes::{compute, Acceleration, Shift, StieltjesRequest};
use stieltjes_core::trigintegrals::J_MAX;
use stieltjes_core::{Error, Precision};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StjStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DepthExceeded = 3,
    ToleranceNotMet = 4,
    DomainError = 5,
    NonConvergence = 6,
    VerificationFailed = 7,
    Internal = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StjAcceleration {
    None = 0,
    /// Subtract the leading n⁻⁴ term of each summand and add back its ζ(4) sum.
    SubtractLeading = 1,
    AsymptoticTail = 2,
}

/// Opaque computation request.
pub struct StjRequest {
    inner: StieltjesRequest,
}

/// Opaque computation result.
pub struct StjResult {
    value: String,
    error_estimate: String,
    value_f64: f64,
    error_f64: f64,
    terms_used: u64,
    precision_bits: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_of(e: &Error) -> StjStatus {
    set_error(e.to_string());
    match e {
        Error::RecursionDepthExceeded { .. } => StjStatus::DepthExceeded,
        Error::ToleranceNotMet { .. } => StjStatus::ToleranceNotMet,
        Error::DomainError(_) => StjStatus::DomainError,
        Error::NonConvergence(_) | Error::ConstantDeterminationFailure(_) | Error::IllConditionedFit(_) => {
            StjStatus::NonConvergence
        }
        _ => StjStatus::InvalidArgument,
    }
}

fn guarded(f: impl FnOnce() -> StjStatus) -> StjStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            StjStatus::Internal
        }
    }
}

fn copy_out(s: &str, buf: *mut c_char, len: usize) -> usize {
    if !buf.is_null() && len > 0 {
        let n = s.len().min(len - 1);
        // SAFETY: the caller promises `buf` holds `len` bytes
        unsafe {
            std::ptr::copy_nonoverlapping(s.as_ptr(), buf as *mut u8, n);
            *buf.add(n) = 0;
        }
    }
    s.len()
}

/// New request for γ_k(1) with the library defaults (10⁴ terms, asymptotic
/// tail, 256 bits). Never returns null.
#[no_mangle]
pub extern "C" fn stj_request_new(k: u32) -> *mut StjRequest {
    Box::into_raw(Box::new(StjRequest {
        inner: StieltjesRequest::new(k as usize),
    }))
}

/// Release a request. Null is ignored.
///
/// # Safety
/// `req` must come from [`stj_request_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn stj_request_free(req: *mut StjRequest) {
    if !req.is_null() {
        drop(Box::from_raw(req));
    }
}

/// Select a = ½ (`half` true) or a = 1.
///
/// # Safety
/// `req` must be a live request or null.
#[no_mangle]
pub unsafe extern "C" fn stj_request_set_half(req: *mut StjRequest, half: bool) -> StjStatus {
    let Some(r) = req.as_mut() else {
        set_error("null request");
        return StjStatus::NullPointer;
    };
    r.inner.a = if half { Shift::Half } else { Shift::One };
    StjStatus::Ok
}

/// # Safety
/// `req` must be a live request or null.
#[no_mangle]
pub unsafe extern "C" fn stj_request_set_terms(req: *mut StjRequest, terms: u64) -> StjStatus {
    let Some(r) = req.as_mut() else {
        set_error("null request");
        return StjStatus::NullPointer;
    };
    if terms == 0 {
        set_error("the term budget must be positive");
        return StjStatus::InvalidArgument;
    }
    r.inner.n_terms = terms;
    StjStatus::Ok
}

/// # Safety
/// `req` must be a live request or null.
#[no_mangle]
pub unsafe extern "C" fn stj_request_set_acceleration(req: *mut StjRequest, acc: StjAcceleration) -> StjStatus {
    let Some(r) = req.as_mut() else {
        set_error("null request");
        return StjStatus::NullPointer;
    };
    r.inner.acceleration = match acc {
        StjAcceleration::None => Acceleration::None,
        StjAcceleration::SubtractLeading => Acceleration::Paper14,
        StjAcceleration::AsymptoticTail => Acceleration::AsymptoticTail,
    };
    StjStatus::Ok
}

/// Working precision in bits, at least 64.
///
/// # Safety
/// `req` must be a live request or null.
#[no_mangle]
pub unsafe extern "C" fn stj_request_set_bits(req: *mut StjRequest, bits: u32) -> StjStatus {
    let Some(r) = req.as_mut() else {
        set_error("null request");
        return StjStatus::NullPointer;
    };
    match Precision::new(bits) {
        Ok(p) => {
            r.inner.precision = p;
            StjStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Compute the requested constant. On success `*out` receives a result
/// handle to be released with [`stj_result_free`]; on failure it is set to
/// null.
///
/// # Safety
/// `req` must be a live request, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stj_compute(req: *const StjRequest, out: *mut *mut StjResult) -> StjStatus {
    if out.is_null() {
        set_error("null output pointer");
        return StjStatus::NullPointer;
    }
    *out = std::ptr::null_mut();
    let Some(r) = req.as_ref() else {
        set_error("null request");
        return StjStatus::NullPointer;
    };
    let inner = r.inner;
    guarded(|| match compute(&inner) {
        Ok(res) => {
            let boxed = Box::new(StjResult {
                value: shortest_decimal(&res.value),
                error_estimate: res.error_estimate.to_string_radix(10, Some(6)),
                value_f64: res.value.to_f64(),
                error_f64: res.error_f64(),
                terms_used: res.terms_used,
                precision_bits: inner.precision.bits(),
            });
            *out = Box::into_raw(boxed);
            StjStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Release a result. Null is ignored.
///
/// # Safety
/// `res` must come from [`stj_compute`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn stj_result_free(res: *mut StjResult) {
    if !res.is_null() {
        drop(Box::from_raw(res));
    }
}

/// Full-precision decimal value; returns its length.
///
/// # Safety
/// `res` must be a live result; `buf` null or `len` bytes long.
#[no_mangle]
pub unsafe extern "C" fn stj_result_value(res: *const StjResult, buf: *mut c_char, len: usize) -> usize {
    res.as_ref().map_or(0, |r| copy_out(&r.value, buf, len))
}

/// Decimal error estimate; returns its length.
///
/// # Safety
/// `res` must be a live result; `buf` null or `len` bytes long.
#[no_mangle]
pub unsafe extern "C" fn stj_result_error_estimate(res: *const StjResult, buf: *mut c_char, len: usize) -> usize {
    res.as_ref().map_or(0, |r| copy_out(&r.error_estimate, buf, len))
}

/// # Safety
/// `res` must be a live result or null (giving NaN).
#[no_mangle]
pub unsafe extern "C" fn stj_result_value_f64(res: *const StjResult) -> f64 {
    res.as_ref().map_or(f64::NAN, |r| r.value_f64)
}

/// # Safety
/// `res` must be a live result or null (giving NaN).
#[no_mangle]
pub unsafe extern "C" fn stj_result_error_f64(res: *const StjResult) -> f64 {
    res.as_ref().map_or(f64::NAN, |r| r.error_f64)
}

/// # Safety
/// `res` must be a live result or null (giving 0).
#[no_mangle]
pub unsafe extern "C" fn stj_result_terms(res: *const StjResult) -> u64 {
    res.as_ref().map_or(0, |r| r.terms_used)
}

/// # Safety
/// `res` must be a live result or null (giving 0).
#[no_mangle]
pub unsafe extern "C" fn stj_result_bits(res: *const StjResult) -> u32 {
    res.as_ref().map_or(0, |r| r.precision_bits)
}

/// Run a verification suite ("lemma1" … "fourier" or "all"). `failed` and
/// `total` (either may be null) receive the check counts. Returns
/// `VerificationFailed` when any check fails.
///
/// # Safety
/// `suite` must be a NUL-terminated string; `failed`/`total` null or valid.
#[no_mangle]
pub unsafe extern "C" fn stj_verify(
    suite: *const c_char,
    tol: f64,
    bits: u32,
    failed: *mut u32,
    total: *mut u32,
) -> StjStatus {
    if suite.is_null() {
        set_error("null suite name");
        return StjStatus::NullPointer;
    }
    let name = match CStr::from_ptr(suite).to_str() {
        Ok(s) => s.to_owned(),
        Err(_) => {
            set_error("suite name is not UTF-8");
            return StjStatus::InvalidArgument;
        }
    };
    guarded(|| {
        let suite = match name.parse::<Suite>() {
            Ok(s) => s,
            Err(e) => return status_of(&e),
        };
        if !(tol > 0.0) {
            set_error("tolerance must be positive");
            return StjStatus::InvalidArgument;
        }
        let p = match Precision::new(bits) {
            Ok(p) => p,
            Err(e) => return status_of(&e),
        };
        let checks = run_suite(suite, tol, p);
        let bad: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
        if !failed.is_null() {
            *failed = bad.len() as u32;
        }
        if !total.is_null() {
            *total = checks.len() as u32;
        }
        if bad.is_empty() {
            StjStatus::Ok
        } else {
            let names: Vec<&str> = bad.iter().map(|c| c.name.as_str()).collect();
            set_error(format!("{} checks failed: {}", bad.len(), names.join("; ")));
            StjStatus::VerificationFailed
        }
    })
}

/// Message of the last failure on this thread; returns its length.
///
/// # Safety
/// `buf` must be null or `len` bytes long.
#[no_mangle]
pub unsafe extern "C" fn stj_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| copy_out(&e.borrow(), buf, len))
}

/// Largest supported k.
#[no_mangle]
pub extern "C" fn stj_j_max() -> u32 {
    J_MAX as u32
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn stj_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

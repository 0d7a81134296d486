use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use stieltjes_ffi::*;

fn text(f: impl Fn(*mut c_char, usize) -> usize) -> String {
    let n = f(ptr::null_mut(), 0);
    let mut buf = vec![0u8; n + 1];
    assert_eq!(f(buf.as_mut_ptr() as *mut c_char, buf.len()), n);
    CStr::from_bytes_until_nul(&buf).unwrap().to_str().unwrap().to_owned()
}

fn last_error() -> String {
    text(|b, l| unsafe { stj_last_error(b, l) })
}

#[test]
fn computes_first_constant() {
    unsafe {
        let req = stj_request_new(1);
        assert_eq!(stj_request_set_terms(req, 500), StjStatus::Ok);
        assert_eq!(stj_request_set_bits(req, 128), StjStatus::Ok);
        assert_eq!(stj_request_set_acceleration(req, StjAcceleration::SubtractLeading), StjStatus::Ok);
        let mut res = ptr::null_mut();
        assert_eq!(stj_compute(req, &mut res), StjStatus::Ok);
        assert!(!res.is_null());
        assert!((stj_result_value_f64(res) + 0.0728158454836767).abs() < 1e-12);
        assert!(stj_result_error_f64(res) < 1e-12);
        assert_eq!(stj_result_terms(res), 500);
        assert_eq!(stj_result_bits(res), 128);
        let v = text(|b, l| stj_result_value(res, b, l));
        assert!(v.starts_with("-7.2815845483676"), "{v}");
        let e = text(|b, l| stj_result_error_estimate(res, b, l));
        assert!(e.parse::<f64>().unwrap() > 0.0);
        stj_result_free(res);
        stj_request_free(req);
    }
}

#[test]
fn half_shift() {
    unsafe {
        let req = stj_request_new(1);
        stj_request_set_half(req, true);
        stj_request_set_terms(req, 400);
        stj_request_set_bits(req, 128);
        let mut res = ptr::null_mut();
        assert_eq!(stj_compute(req, &mut res), StjStatus::Ok);
        assert!((stj_result_value_f64(res) + 1.353459680804942).abs() < 1e-10);
        stj_result_free(res);
        stj_request_free(req);
    }
}

#[test]
fn status_codes_and_messages() {
    unsafe {
        let req = stj_request_new(stj_j_max() + 1);
        let mut res = ptr::null_mut();
        assert_eq!(stj_compute(req, &mut res), StjStatus::DepthExceeded);
        assert!(res.is_null());
        assert!(last_error().contains("J_MAX"));
        stj_request_free(req);

        let req = stj_request_new(2);
        stj_request_set_half(req, true);
        assert_eq!(stj_compute(req, &mut res), StjStatus::InvalidArgument);
        assert_eq!(stj_request_set_bits(req, 8), StjStatus::InvalidArgument);
        assert_eq!(stj_request_set_terms(req, 0), StjStatus::InvalidArgument);
        stj_request_free(req);

        assert_eq!(stj_compute(ptr::null(), &mut res), StjStatus::NullPointer);
        assert_eq!(stj_compute(ptr::null(), ptr::null_mut()), StjStatus::NullPointer);
        assert_eq!(stj_request_set_terms(ptr::null_mut(), 5), StjStatus::NullPointer);
        assert!(stj_result_value_f64(ptr::null()).is_nan());
        assert_eq!(stj_result_value(ptr::null(), ptr::null_mut(), 0), 0);
        stj_request_free(ptr::null_mut());
        stj_result_free(ptr::null_mut());
    }
}

#[test]
fn truncating_copy_is_nul_terminated() {
    unsafe {
        let req = stj_request_new(0);
        stj_request_set_terms(req, 50);
        stj_request_set_bits(req, 64);
        let mut res = ptr::null_mut();
        assert_eq!(stj_compute(req, &mut res), StjStatus::Ok);
        let mut small = [0x7fu8; 6];
        let full = stj_result_value(res, small.as_mut_ptr() as *mut c_char, small.len());
        assert!(full > 5);
        assert_eq!(small[5], 0);
        assert_eq!(&small[..5], b"5.772");
        stj_result_free(res);
        stj_request_free(req);
    }
}

#[test]
fn verify_suite_through_the_abi() {
    unsafe {
        let suite = CString::new("lemma1").unwrap();
        let (mut failed, mut total) = (99u32, 0u32);
        assert_eq!(stj_verify(suite.as_ptr(), 1e-20, 128, &mut failed, &mut total), StjStatus::Ok);
        assert_eq!((failed, total), (0, 4));
        assert_eq!(
            stj_verify(suite.as_ptr(), 1e-300, 128, &mut failed, &mut total),
            StjStatus::VerificationFailed
        );
        assert_eq!(failed, 4);
        assert!(last_error().contains("4 checks failed"));
        let bad = CString::new("lemma6").unwrap();
        assert_eq!(stj_verify(bad.as_ptr(), 1e-10, 128, ptr::null_mut(), ptr::null_mut()), StjStatus::InvalidArgument);
        assert_eq!(stj_verify(ptr::null(), 1e-10, 128, ptr::null_mut(), ptr::null_mut()), StjStatus::NullPointer);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(stj_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
    assert_eq!(stj_j_max(), 6);
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_every_export() {
    let h = std::fs::read_to_string(manifest_dir().join("include/stieltjes.h")).unwrap();
    for sym in [
        "stj_request_new",
        "stj_request_free",
        "stj_request_set_half",
        "stj_request_set_terms",
        "stj_request_set_acceleration",
        "stj_request_set_bits",
        "stj_compute",
        "stj_result_free",
        "stj_result_value",
        "stj_result_error_estimate",
        "stj_result_value_f64",
        "stj_result_error_f64",
        "stj_result_terms",
        "stj_result_bits",
        "stj_verify",
        "stj_last_error",
        "stj_j_max",
        "stj_version",
        "typedef struct StjRequest StjRequest",
        "typedef struct StjResult StjResult",
        "STJ_STATUS_TOLERANCE_NOT_MET = 4",
    ] {
        assert!(h.contains(sym), "{sym} missing from header");
    }
}

fn have_cc() -> bool {
    Command::new("cc").arg("--version").output().is_ok()
}

#[test]
fn header_compiles_as_c_and_cpp() {
    if !have_cc() {
        eprintln!("no C compiler; skipped");
        return;
    }
    let inc = manifest_dir().join("include");
    let demo = manifest_dir().join("examples/demo.c");
    for lang in ["c", "c++"] {
        let out = Command::new("cc")
            .args(["-fsyntax-only", "-Wall", "-Wextra", "-Werror", "-x", lang])
            .arg("-I")
            .arg(&inc)
            .arg(&demo)
            .output()
            .unwrap();
        assert!(out.status.success(), "{lang}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

/// Build the static library, link the C demo against it and run it.
#[test]
fn c_demo_links_and_runs() {
    if !have_cc() {
        eprintln!("no C compiler; skipped");
        return;
    }
    let root = manifest_dir().join("../..");
    let target = std::env::var_os("CARGO_TARGET_DIR").map(PathBuf::from).unwrap_or(root.join("target"));
    let build = Command::new(env!("CARGO"))
        .args(["build", "-p", "stieltjes-ffi", "--lib"])
        .current_dir(&root)
        .env("CARGO_TARGET_DIR", &target)
        .output()
        .unwrap();
    assert!(build.status.success(), "{}", String::from_utf8_lossy(&build.stderr));
    let lib = target.join("debug/libstieltjes_ffi.a");
    let exe = std::env::temp_dir().join(format!("stj_demo_{}", std::process::id()));
    let cc = Command::new("cc")
        .arg("-I")
        .arg(manifest_dir().join("include"))
        .arg(manifest_dir().join("examples/demo.c"))
        .arg(&lib)
        .args(["-lmpfr", "-lgmp", "-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(cc.status.success(), "{}", String::from_utf8_lossy(&cc.stderr));
    let run = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    let stdout = String::from_utf8_lossy(&run.stdout);
    let stderr = String::from_utf8_lossy(&run.stderr);
    assert!(run.status.success(), "{stdout}{stderr}");
    assert!(stdout.contains("gamma_1 = -7.28158454836767"), "{stdout}");
    assert!(stdout.contains("gamma_1(1/2) = -1.353459680804"), "{stdout}");
    assert!(stderr.contains("J_MAX"), "{stderr}");
}

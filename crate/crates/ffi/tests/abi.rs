use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use lattangle_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    la_string_free(s);
    out
}

const DODECAGONAL: &str = r#"{"caseId":"C4","params":["1","-1"],"roots":["3/12","1/12","10/12"]}"#;

#[test]
fn config_tau_and_angle() {
    unsafe {
        let mut cfg = ptr::null_mut();
        assert_eq!(la_config_from_json(cs(DODECAGONAL).as_ptr(), &mut cfg), LaStatus::Ok);
        let mut e = ptr::null_mut();
        assert_eq!(la_config_eliminant(cfg, &mut e), LaStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(la_cyclo_to_json(e, &mut s), LaStatus::Ok);
        assert!(take(s).contains("\"coords\""));
        let mut tau = ptr::null_mut();
        assert_eq!(la_config_tau(cfg, &mut tau), LaStatus::Ok);
        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(la_cyclo_approx(tau, &mut re, &mut im), LaStatus::Ok);
        assert!(im > 0.0);
        let mut holds = -1;
        let (inf, zero) = (cs("inf"), cs("0"));
        assert_eq!(la_verify_angle(tau, inf.as_ptr(), zero.as_ptr(), 3, 12, &mut holds), LaStatus::Ok);
        assert_eq!(holds, 1);
        assert_eq!(la_verify_angle(tau, inf.as_ptr(), zero.as_ptr(), 1, 12, &mut holds), LaStatus::Ok);
        assert_eq!(holds, 0);
        la_cyclo_free(e);
        la_cyclo_free(tau);
        la_config_free(cfg);
    }
}

#[test]
fn roots_multiply() {
    unsafe {
        let (mut a, mut b, mut p, mut want) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(la_cyclo_root(1, 12, &mut a), LaStatus::Ok);
        assert_eq!(la_cyclo_root(3, 4, &mut b), LaStatus::Ok);
        assert_eq!(la_cyclo_mul(a, b, &mut p), LaStatus::Ok);
        assert_eq!(la_cyclo_root(10, 12, &mut want), LaStatus::Ok);
        let mut eq = -1;
        assert_eq!(la_cyclo_equal(p, want, &mut eq), LaStatus::Ok);
        assert_eq!(eq, 1);
        for h in [a, b, p, want] {
            la_cyclo_free(h);
        }
    }
}

#[test]
fn errors_set_last_error() {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(la_cyclo_from_json(cs("{").as_ptr(), &mut c), LaStatus::Parse);
        assert!(!la_last_error().is_null());
        assert_eq!(la_cyclo_from_json(ptr::null(), &mut c), LaStatus::NullPointer);
        assert_eq!(la_cyclo_root(1, 0, &mut c), LaStatus::Invalid);
        let bad = r#"{"caseId":"C4","params":["2","1"],"roots":["1/5","2/5","3/5"]}"#;
        let mut cfg = ptr::null_mut();
        assert_eq!(la_config_from_json(cs(bad).as_ptr(), &mut cfg), LaStatus::Ok);
        assert_eq!(la_config_tau(cfg, &mut c), LaStatus::NotASolution);
        la_config_free(cfg);
        // a successful call clears the message
        let (mut n0, mut bound) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(la_constants(&mut n0, &mut bound), LaStatus::Ok);
        assert!(la_last_error().is_null());
        assert_eq!(take(n0), "39648495215104846368289992000");
        assert_eq!(take(bound), "79296990430209692736579984000");
        la_string_free(ptr::null_mut());
        la_cyclo_free(ptr::null_mut());
    }
}

#[test]
fn run_command() {
    unsafe {
        let mut out = ptr::null_mut();
        let mut code = -1;
        let args = cs(r#"["search","case4","--orders","div:12","--expect","paper"]"#);
        assert_eq!(la_run(args.as_ptr(), &mut out, &mut code), LaStatus::Ok);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["results"]["summary"]["orders"], serde_json::json!([1, 2, 3, 4, 6, 12]));
        assert_eq!(la_run(cs(r#"["frobnicate"]"#).as_ptr(), &mut out, &mut code), LaStatus::Usage);
        assert!(CStr::from_ptr(la_version()).to_str().unwrap().starts_with("0."));
    }
}

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_exports() {
    let h = std::fs::read_to_string(manifest().join("include/lattangle.h")).unwrap();
    for f in [
        "la_last_error", "la_version", "la_string_free", "la_cyclo_from_json", "la_cyclo_root", "la_cyclo_to_json",
        "la_cyclo_approx", "la_cyclo_mul", "la_cyclo_equal", "la_cyclo_free", "la_config_from_json",
        "la_config_eliminant", "la_config_tau", "la_config_free", "la_verify_angle", "la_constants", "la_run",
    ] {
        assert!(h.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(h.contains("typedef struct LaCyclo LaCyclo;"));
}

/// Compiles the C smoke test against the header and, when the static library of this
/// profile is present, links and runs it.
#[test]
fn c_smoke() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler, skipped");
        return;
    }
    let dir = manifest();
    let src = dir.join("tests/c/smoke.c");
    let inc = dir.join("include");
    let ok = Command::new(&cc).args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"]).arg(&inc).arg(&src).status().unwrap();
    assert!(ok.success(), "header does not compile as C99");

    let tmp = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let lib = tmp.parent().unwrap().join(if cfg!(debug_assertions) { "debug" } else { "release" }).join("liblattangle_ffi.a");
    if !lib.exists() || !cfg!(target_os = "linux") {
        eprintln!("{} not built, link step skipped", lib.display());
        return;
    }
    let exe = tmp.join("lattangle_smoke");
    let ok = Command::new(&cc)
        .arg("-I")
        .arg(&inc)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(ok.success(), "link failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

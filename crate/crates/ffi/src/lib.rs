//! C ABI over `lattangle`.
//!
//! Conventions: every fallible call returns an [`LaStatus`]; on failure the message is
//! available from [`la_last_error`] on the same thread. Handles are opaque and owned by
//! the caller, released with the matching `*_free`. Strings returned through `char **`
//! are owned by the caller and released with [`la_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lattangle::algebra::{Cyclo, RootOfUnity};
use lattangle::angles::{eliminant, tau_recover, verify_angle, AngleConfig, Slot, TauValue};
use lattangle::cli::{parse_args, run};
use lattangle::coset::constants;
use lattangle::Error;

/// Status codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    Precondition = 5,
    NotASolution = 6,
    Degenerate = 7,
    Arithmetic = 8,
    OrderCap = 9,
    Usage = 10,
    Panic = 11,
}

/// An element of a cyclotomic field.
pub struct LaCyclo(Cyclo);

/// A configuration (case, rational parameters, three roots of unity).
pub struct LaConfig(AngleConfig);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> LaStatus {
    match e {
        Error::DivisionByZero => LaStatus::Arithmetic,
        Error::OrderCap { .. } => LaStatus::OrderCap,
        Error::UnboundVariable(_) | Error::Invalid(_) => LaStatus::Invalid,
        Error::Precondition(_) | Error::ProportionalBranch => LaStatus::Precondition,
        Error::Parse(_) => LaStatus::Parse,
        Error::Degenerate(_) => LaStatus::Degenerate,
        Error::NotASolution => LaStatus::NotASolution,
    }
}

struct Fail(LaStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, converting errors and panics into a status and the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> LaStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LaStatus::Ok,
        Ok(Err(Fail(s, m))) => {
            set_error(m);
            s
        }
        Err(p) => {
            let m = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(m);
            LaStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(LaStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(LaStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn json_arg(p: *const c_char, name: &str) -> Result<serde_json::Value, Fail> {
    serde_json::from_str(str_arg(p, name)?).map_err(|e| Fail(LaStatus::Parse, format!("{name}: {e}")))
}

unsafe fn ref_arg<'a, T>(p: *const T, name: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(LaStatus::NullPointer, format!("{name} is null")))
}

unsafe fn out_arg<T>(out: *mut T, value: T, name: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(LaStatus::NullPointer, format!("{name} is null")));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior NUL").into_raw()
}

/// The last error message on this thread, or null. Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn la_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn la_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn la_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{"order": n, "coords": ["p/q", ...]}` into a cyclotomic handle.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn la_cyclo_from_json(json: *const c_char, out: *mut *mut LaCyclo) -> LaStatus {
    guard(|| {
        let v = json_arg(json, "json")?;
        let c: Cyclo = serde_json::from_value(v).map_err(|e| Fail(LaStatus::Parse, format!("cyclo: {e}")))?;
        out_arg(out, Box::into_raw(Box::new(LaCyclo(c))), "out")
    })
}

/// The root of unity `e^(2πi k/n)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn la_cyclo_root(k: i64, n: u64, out: *mut *mut LaCyclo) -> LaStatus {
    guard(|| {
        let r = RootOfUnity::new(k, n)?;
        out_arg(out, Box::into_raw(Box::new(LaCyclo(r.to_cyclo()))), "out")
    })
}

/// Serializes a cyclotomic handle to JSON.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn la_cyclo_to_json(c: *const LaCyclo, out: *mut *mut c_char) -> LaStatus {
    guard(|| {
        let c = ref_arg(c, "c")?;
        let s = serde_json::to_string(&c.0).expect("cyclo serializes");
        out_arg(out, c_string(s), "out")
    })
}

/// Approximate real and imaginary parts.
///
/// # Safety
/// `c` must be a live handle; `re`, `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn la_cyclo_approx(c: *const LaCyclo, re: *mut f64, im: *mut f64) -> LaStatus {
    guard(|| {
        let z = ref_arg(c, "c")?.0.embed(64);
        out_arg(re, z.re(), "re")?;
        out_arg(im, z.im(), "im")
    })
}

/// `a * b` in a common field.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn la_cyclo_mul(a: *const LaCyclo, b: *const LaCyclo, out: *mut *mut LaCyclo) -> LaStatus {
    guard(|| {
        let p = ref_arg(a, "a")?.0.try_mul(&ref_arg(b, "b")?.0)?;
        out_arg(out, Box::into_raw(Box::new(LaCyclo(p))), "out")
    })
}

/// Exact equality; writes 1 or 0.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn la_cyclo_equal(a: *const LaCyclo, b: *const LaCyclo, out: *mut i32) -> LaStatus {
    guard(|| {
        let d = ref_arg(a, "a")?.0.try_add(&ref_arg(b, "b")?.0.scale_int(-1))?;
        out_arg(out, d.is_zero() as i32, "out")
    })
}

/// # Safety
/// `c` must be null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn la_cyclo_free(c: *mut LaCyclo) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Parses `{"caseId": "C4"|"C32"|"C222", "params": [...], "roots": ["k/n", ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn la_config_from_json(json: *const c_char, out: *mut *mut LaConfig) -> LaStatus {
    guard(|| {
        let cfg = AngleConfig::from_json(&json_arg(json, "json")?)?;
        out_arg(out, Box::into_raw(Box::new(LaConfig(cfg))), "out")
    })
}

/// The eliminant of the configuration.
///
/// # Safety
/// `cfg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn la_config_eliminant(cfg: *const LaConfig, out: *mut *mut LaCyclo) -> LaStatus {
    guard(|| {
        let e = eliminant(&ref_arg(cfg, "cfg")?.0)?;
        out_arg(out, Box::into_raw(Box::new(LaCyclo(e))), "out")
    })
}

/// τ in the upper half plane for a configuration whose eliminant vanishes.
/// Fails with `LA_STATUS_NOT_A_SOLUTION` otherwise.
///
/// # Safety
/// `cfg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn la_config_tau(cfg: *const LaConfig, out: *mut *mut LaCyclo) -> LaStatus {
    guard(|| {
        let r = tau_recover(&ref_arg(cfg, "cfg")?.0)?;
        out_arg(out, Box::into_raw(Box::new(LaCyclo(r.tau))), "out")
    })
}

/// # Safety
/// `cfg` must be null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn la_config_free(cfg: *mut LaConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Does the angle from `τ + b0` to `τ + b1` have squared argument `e^(2πi k/n)`?
/// `b0`, `b1` are rationals such as `"-1/2"`, or `"inf"` for the vector 1. Writes 1 or 0.
///
/// # Safety
/// `tau` must be a live handle, `b0`, `b1` NUL-terminated strings, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn la_verify_angle(
    tau: *const LaCyclo,
    b0: *const c_char,
    b1: *const c_char,
    k: i64,
    n: u64,
    out: *mut i32,
) -> LaStatus {
    guard(|| {
        let t = TauValue::Explicit(ref_arg(tau, "tau")?.0.clone());
        let s0: Slot = str_arg(b0, "b0")?.parse()?;
        let s1: Slot = str_arg(b1, "b1")?.parse()?;
        let holds = verify_angle(&t, &s0, &s1, &RootOfUnity::new(k, n)?)?;
        out_arg(out, holds as i32, "out")
    })
}

/// The order constant and the angle-denominator bound as decimal strings.
///
/// # Safety
/// `n0`, `bound` must be writable.
#[no_mangle]
pub unsafe extern "C" fn la_constants(n0: *mut *mut c_char, bound: *mut *mut c_char) -> LaStatus {
    guard(|| {
        if n0.is_null() || bound.is_null() {
            return Err(Fail(LaStatus::NullPointer, "output is null".into()));
        }
        let c = constants();
        n0.write(c_string(c.n0.to_string()));
        bound.write(c_string(c.thm_bound.to_string()));
        Ok(())
    })
}

/// Runs a command-line invocation given as a JSON array of arguments (without the program
/// name), e.g. `["search","case4","--orders","div:30","--expect","paper"]`, and returns the
/// JSON report. `exit_code` receives what the executable would exit with (0 or 1); usage
/// errors return `LA_STATUS_USAGE`.
///
/// # Safety
/// `args_json` must be a NUL-terminated string; `out`, `exit_code` must be writable.
#[no_mangle]
pub unsafe extern "C" fn la_run(args_json: *const c_char, out: *mut *mut c_char, exit_code: *mut i32) -> LaStatus {
    guard(|| {
        let args: Vec<String> = serde_json::from_value(json_arg(args_json, "args_json")?)
            .map_err(|e| Fail(LaStatus::Parse, format!("args_json: {e}")))?;
        let cfg = parse_args(args).map_err(|m| Fail(LaStatus::Usage, m))?;
        let report = run(&cfg)?;
        let s = serde_json::to_string(&report).expect("report serializes");
        out_arg(exit_code, report.exit_code(), "exit_code")?;
        out_arg(out, c_string(s), "out")
    })
}

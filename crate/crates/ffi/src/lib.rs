//! C ABI over the containment lab.
//!
//! Configurations are opaque handles created by [`cl_config_parse`] and released with
//! [`cl_config_free`]. Every function returns a [`ClStatus`]; on failure a message is
//! available from [`cl_last_error`] on the same thread. Strings returned through out
//! parameters are owned by the caller and released with [`cl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use containlab::configurations::{parse_spec, FatPointConfiguration};
use containlab::containment::{ContainmentError, Lab, VerdictStatus};
use containlab::groebner::Budget;

#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Internal = 5,
    Panic = 6,
}

/// Outcome of a containment check; the values match the command-line exit codes.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClVerdict {
    Holds = 0,
    Fails = 10,
    BudgetExceeded = 20,
}

/// A parsed configuration with memoized ideals.
pub struct ClConfig {
    config: FatPointConfiguration,
    lab: Lab,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn fail(status: ClStatus, msg: impl Into<String>) -> ClStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> ClStatus) -> ClStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(ClStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, ClStatus> {
    if s.is_null() {
        return Err(fail(ClStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(ClStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior nuls removed").into_raw()
}

/// Parses a registry name such as `dual-hesse` or `fermat:3:Fp(7)`. Checks use the
/// default budgets until [`cl_config_set_budget`] is called.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cl_config_parse(spec: *const c_char, out: *mut *mut ClConfig) -> ClStatus {
    guard(|| {
        if out.is_null() {
            return fail(ClStatus::NullArgument, "null output pointer");
        }
        *out = ptr::null_mut();
        let spec = match read_str(spec) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match parse_spec(spec) {
            Ok(b) => {
                let lab = Lab::new(b.config.clone(), Budget::from_env());
                *out = Box::into_raw(Box::new(ClConfig { config: b.config, lab }));
                ClStatus::Ok
            }
            Err(e) => fail(ClStatus::Parse, e.to_string()),
        }
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `config` must come from [`cl_config_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cl_config_free(config: *mut ClConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// Number of points of the configuration.
///
/// # Safety
/// `config` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cl_config_num_points(config: *const ClConfig, out: *mut usize) -> ClStatus {
    guard(|| match (config.as_ref(), out.is_null()) {
        (Some(c), false) => {
            *out = c.config.len();
            ClStatus::Ok
        }
        _ => fail(ClStatus::NullArgument, "null argument"),
    })
}

/// The point list, one `(c0 : ... : cN) ^ m` per line.
///
/// # Safety
/// `config` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cl_config_export(config: *const ClConfig, out: *mut *mut c_char) -> ClStatus {
    guard(|| match (config.as_ref(), out.is_null()) {
        (Some(c), false) => {
            *out = to_c(c.config.export());
            ClStatus::Ok
        }
        _ => fail(ClStatus::NullArgument, "null argument"),
    })
}

/// Sets the per-invocation budgets; 0 means unlimited. Memoized ideals are discarded.
///
/// # Safety
/// `config` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cl_config_set_budget(config: *mut ClConfig, timeout_secs: u64, max_pairs: u64) -> ClStatus {
    guard(|| match config.as_mut() {
        Some(c) => {
            let budget = Budget::new(
                (timeout_secs > 0).then(|| Duration::from_secs(timeout_secs)),
                (max_pairs > 0).then_some(max_pairs),
            );
            c.lab = Lab::new(c.config.clone(), budget);
            ClStatus::Ok
        }
        None => fail(ClStatus::NullArgument, "null handle"),
    })
}

/// Decides `I^(m) ⊆ M^j·I^r`. On success `verdict` holds the outcome and, when
/// `json_out` is not null, it receives the verdict record as one JSON object.
///
/// # Safety
/// `config` must be a live handle, `verdict` a valid pointer, and `json_out` null or valid.
#[no_mangle]
pub unsafe extern "C" fn cl_check(
    config: *const ClConfig,
    m: u32,
    r: u32,
    j: u32,
    verdict: *mut ClVerdict,
    json_out: *mut *mut c_char,
) -> ClStatus {
    guard(|| {
        let Some(c) = config.as_ref() else { return fail(ClStatus::NullArgument, "null handle") };
        if verdict.is_null() {
            return fail(ClStatus::NullArgument, "null verdict pointer");
        }
        if !json_out.is_null() {
            *json_out = ptr::null_mut();
        }
        match c.lab.check(m, r, j) {
            Ok(v) => {
                *verdict = match v.status {
                    VerdictStatus::Holds => ClVerdict::Holds,
                    VerdictStatus::Fails => ClVerdict::Fails,
                    VerdictStatus::BudgetExceeded => ClVerdict::BudgetExceeded,
                };
                if !json_out.is_null() {
                    *json_out = to_c(serde_json::to_string(&v).expect("verdict serializes"));
                }
                ClStatus::Ok
            }
            Err(ContainmentError::Arguments(msg)) => fail(ClStatus::InvalidArgument, msg),
            Err(e) => fail(ClStatus::Internal, e.to_string()),
        }
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message of the last failed call on this thread, or null. Valid until the next
/// call into the library on this thread.
#[no_mangle]
pub extern "C" fn cl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// The library version as a static string.
#[no_mangle]
pub extern "C" fn cl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

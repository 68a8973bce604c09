//! C ABI for `relcyl`. Algebras live behind an opaque handle; everything else
//! crosses the boundary as JSON text. Strings returned through `char **` out
//! parameters belong to the caller and must be released with
//! [`relcyl_string_free`]. On failure the message is kept per thread and can be
//! read with [`relcyl_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use relcyl::axioms::{check_class, AxiomSystem, CheckOptions};
use relcyl::game::{play, GameConfig};
use relcyl::networks::NetMode;
use relcyl::represent::{check_complete, extract, verify};
use relcyl::{Error, FiniteBao, Limits};

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelcylStatus {
    Ok = 0,
    /// The check ran and found violations (or a play ran out of budget).
    Failed = 1,
    NullPointer = 2,
    InvalidUtf8 = 3,
    /// Malformed input: JSON, shapes, unknown names, dimensions.
    Format = 4,
    /// The input is well formed but outside what the call accepts.
    Precondition = 5,
    Budget = 6,
    /// An internal invariant broke; please report with the input.
    Internal = 7,
}

/// Opaque algebra handle.
pub struct RelcylAlgebra(FiniteBao);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn fail(e: &Error) -> RelcylStatus {
    set_error(e.to_string());
    match e {
        Error::Budget(_) => RelcylStatus::Budget,
        Error::Invariant(_) => RelcylStatus::Internal,
        Error::Closure(_) | Error::Precondition(_) | Error::IllegalMove(_) | Error::Zigzag { .. } => {
            RelcylStatus::Precondition
        }
        _ => RelcylStatus::Format,
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, RelcylStatus> {
    if p.is_null() {
        set_error("null pointer argument");
        return Err(RelcylStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        RelcylStatus::InvalidUtf8
    })
}

unsafe fn hand_out(s: String, out: *mut *mut c_char) {
    *out = CString::new(s).expect("JSON has no nul").into_raw();
}

/// The message of the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn relcyl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses an algebra in the JSON atom-table format.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn relcyl_algebra_from_json(json: *const c_char, out: *mut *mut RelcylAlgebra) -> RelcylStatus {
    if out.is_null() {
        set_error("null out pointer");
        return RelcylStatus::NullPointer;
    }
    let json = match text(json) {
        Ok(s) => s,
        Err(code) => return code,
    };
    match FiniteBao::from_json(json, &Limits::from_env()) {
        Ok(a) => {
            *out = Box::into_raw(Box::new(RelcylAlgebra(a)));
            RelcylStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Releases an algebra; null is ignored.
///
/// # Safety
/// `a` must come from [`relcyl_algebra_from_json`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn relcyl_algebra_free(a: *mut RelcylAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Number of atoms, or 0 for null.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn relcyl_algebra_num_atoms(a: *const RelcylAlgebra) -> usize {
    a.as_ref().map_or(0, |a| a.0.num_atoms())
}

/// Dimension, or 0 for null.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn relcyl_algebra_dimension(a: *const RelcylAlgebra) -> usize {
    a.as_ref().map_or(0, |a| a.0.n())
}

/// Checks the algebra against `"PTA"`, `"TA"`, `"SA"` or `"TEA"` and writes
/// the violation report (a JSON array) to `report`. Returns `Ok` when the
/// report is empty and `Failed` otherwise.
///
/// # Safety
/// `a` must be a live handle, `class` a nul-terminated string and `report` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn relcyl_check_class(
    a: *const RelcylAlgebra,
    class: *const c_char,
    report: *mut *mut c_char,
) -> RelcylStatus {
    let (Some(a), false) = (a.as_ref(), report.is_null()) else {
        set_error("null pointer argument");
        return RelcylStatus::NullPointer;
    };
    let class = match text(class) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let sys: AxiomSystem = match class.parse() {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let limits = Limits::from_env();
    match check_class(&a.0, sys, CheckOptions::default(), &limits) {
        Ok(r) => {
            let empty = r.is_empty();
            hand_out(r.to_json(), report);
            if empty {
                RelcylStatus::Ok
            } else {
                RelcylStatus::Failed
            }
        }
        Err(e) => fail(&e),
    }
}

/// Plays the representation game in `mode` (`"PTA"` or `"TEA"`) with the
/// given budgets (0 picks the default) and writes
/// `{"representation": …, "verify": …, "complete": …}` to `result`. Returns
/// `Ok` iff the play saturated and every check passed.
///
/// # Safety
/// `a` must be a live handle, `mode` a nul-terminated string and `result` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn relcyl_represent(
    a: *const RelcylAlgebra,
    mode: *const c_char,
    max_rounds: usize,
    max_nodes: usize,
    result: *mut *mut c_char,
) -> RelcylStatus {
    let (Some(a), false) = (a.as_ref(), result.is_null()) else {
        set_error("null pointer argument");
        return RelcylStatus::NullPointer;
    };
    let mode: NetMode = match text(mode).map(str::parse) {
        Ok(Ok(m)) => m,
        Ok(Err(e)) => return fail(&e),
        Err(code) => return code,
    };
    let defaults = GameConfig::default();
    let cfg = GameConfig {
        mode,
        max_rounds: if max_rounds == 0 { defaults.max_rounds } else { max_rounds },
        max_nodes: if max_nodes == 0 { defaults.max_nodes } else { max_nodes },
        ..defaults
    };
    let p = match play(&a.0, cfg) {
        Ok(p) => p,
        Err(e) => return fail(&e),
    };
    let rep = extract(&a.0, &p);
    let report = verify(&a.0, &rep, mode);
    let complete = check_complete(&rep);
    let ok = rep.saturated && report.passed() && complete;
    let json = serde_json::json!({ "representation": rep, "verify": report, "complete": complete });
    hand_out(json.to_string(), result);
    if ok {
        RelcylStatus::Ok
    } else {
        RelcylStatus::Failed
    }
}

/// Releases a string handed out by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn relcyl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

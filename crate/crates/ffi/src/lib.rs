//! C ABI over `tricover`.
//!
//! Conventions:
//! - every fallible call returns a [`TcStatus`]; on anything but `TC_OK`,
//!   [`tc_last_error`] describes the failure on the calling thread;
//! - coverings live behind the opaque [`TcCovering`] handle, released with
//!   [`tc_covering_free`];
//! - returned strings are NUL-terminated UTF-8 owned by the caller and
//!   released with [`tc_string_free`];
//! - rationals cross the boundary as `"p/q"` strings.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tricover::constructions::{generate, ConstructionParams, Variant};
use tricover::document::CoveringDocument;
use tricover::error::Error;
use tricover::geom::Covering;
use tricover::projection::{bound_decision, projection_check, BoundVerdict};
use tricover::rat::Rat;
use tricover::verify::verify;

/// Result code of every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    Inadmissible = 5,
    Internal = 6,
    Panic = 7,
}

/// Outcome of [`tc_bound`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcBoundVerdict {
    Impossible = 0,
    WithinBound = 1,
}

/// Opaque covering handle.
pub struct TcCovering {
    doc: CoveringDocument,
    covering: Covering,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> TcStatus {
    match e {
        Error::ParseRat(_) | Error::Json(_) | Error::SchemaVersion(_) => TcStatus::Parse,
        Error::InadmissibleEps { .. } => TcStatus::Inadmissible,
        Error::Inconsistent(_) | Error::Io(_) => TcStatus::Internal,
        _ => TcStatus::InvalidInput,
    }
}

/// Runs `f`, translating errors and panics into a status plus last-error text.
fn guard(f: impl FnOnce() -> Result<(), (TcStatus, String)>) -> TcStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside tricover");
            TcStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (TcStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_arg(name: &str) -> (TcStatus, String) {
    (TcStatus::NullArgument, format!("`{name}` is null"))
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, (TcStatus, String)> {
    if p.is_null() {
        return Err(null_arg(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (TcStatus::InvalidUtf8, format!("`{name}` is not valid UTF-8")))
}

fn parse_rat(s: &str) -> Result<Rat, (TcStatus, String)> {
    s.parse::<Rat>().map_err(|e| (TcStatus::Parse, e.to_string()))
}

fn into_c_string(s: String) -> Result<*mut c_char, (TcStatus, String)> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| (TcStatus::Internal, "output contains a NUL byte".to_string()))
}

unsafe fn handle<'a>(h: *const TcCovering) -> Result<&'a TcCovering, (TcStatus, String)> {
    h.as_ref().ok_or_else(|| null_arg("covering"))
}

fn boxed(doc: CoveringDocument) -> Result<*mut TcCovering, (TcStatus, String)> {
    let covering = doc.to_covering().map_err(lib_err)?;
    Ok(Box::into_raw(Box::new(TcCovering { doc, covering })))
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next `tc_*` call on the same thread.
#[no_mangle]
pub extern "C" fn tc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a construction (`"grid"`, `"cs1"`, `"cs2"` or `"plus3"`) with the
/// rational `eps`. Unless `force` is set, an eps beyond the admissible bound
/// yields `Inadmissible`.
///
/// # Safety
/// `construction` and `eps` must be NUL-terminated strings; `out` must be a
/// valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn tc_generate(
    construction: *const c_char,
    n: u32,
    eps: *const c_char,
    force: bool,
    out: *mut *mut TcCovering,
) -> TcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let variant: Variant = read_str(construction, "construction")?
            .parse()
            .map_err(|e: Error| (TcStatus::InvalidInput, e.to_string()))?;
        let eps = parse_rat(read_str(eps, "eps")?)?;
        let built = generate(&ConstructionParams::new(variant, n, eps), force).map_err(lib_err)?;
        *out = boxed(CoveringDocument::from_construction(&built))?;
        Ok(())
    })
}

/// Parses a covering document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_covering_from_json(json: *const c_char, out: *mut *mut TcCovering) -> TcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let doc = CoveringDocument::parse(read_str(json, "json")?).map_err(lib_err)?;
        *out = boxed(doc)?;
        Ok(())
    })
}

/// Serializes the covering document; free the result with [`tc_string_free`].
///
/// # Safety
/// `covering` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_covering_to_json(covering: *const TcCovering, out: *mut *mut c_char) -> TcStatus {
    guard(|| {
        let h = handle(covering)?;
        if out.is_null() {
            return Err(null_arg("out"));
        }
        *out = into_c_string(h.doc.to_json())?;
        Ok(())
    })
}

/// Number of pieces, or 0 for a null handle.
///
/// # Safety
/// `covering` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tc_covering_piece_count(covering: *const TcCovering) -> usize {
    covering.as_ref().map_or(0, |h| h.covering.pieces().len())
}

/// Exact coverage decision. When not covered and `witness_json` is non-null,
/// it receives `{"y", "x_lo", "x_hi"}` describing an uncovered open segment;
/// otherwise it receives NULL.
///
/// # Safety
/// `covering` must be a live handle; `covered` must be writable;
/// `witness_json` may be null.
#[no_mangle]
pub unsafe extern "C" fn tc_verify(
    covering: *const TcCovering,
    covered: *mut bool,
    witness_json: *mut *mut c_char,
) -> TcStatus {
    guard(|| {
        let h = handle(covering)?;
        if covered.is_null() {
            return Err(null_arg("covered"));
        }
        let report = verify(&h.covering);
        *covered = report.covered;
        if !witness_json.is_null() {
            *witness_json = match &report.witness {
                Some(w) => into_c_string(serde_json::to_string(w).map_err(|e| lib_err(e.into()))?)?,
                None => ptr::null_mut(),
            };
        }
        Ok(())
    })
}

/// Projection report as JSON; free with [`tc_string_free`].
///
/// # Safety
/// `covering` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_project_json(covering: *const TcCovering, out: *mut *mut c_char) -> TcStatus {
    guard(|| {
        let h = handle(covering)?;
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let report = projection_check(&h.covering).map_err(lib_err)?;
        *out = into_c_string(serde_json::to_string(&report).map_err(|e| lib_err(e.into()))?)?;
        Ok(())
    })
}

/// SVG drawing of the covering; free with [`tc_string_free`].
///
/// # Safety
/// `covering` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_render_svg(covering: *const TcCovering, out: *mut *mut c_char) -> TcStatus {
    guard(|| {
        let h = handle(covering)?;
        if out.is_null() {
            return Err(null_arg("out"));
        }
        *out = into_c_string(tricover::svg::render(&h.covering, h.doc.metadata.roles.as_deref()))?;
        Ok(())
    })
}

/// Decides whether the side `n + eps` triangle is coverable by
/// `n^2 + extra` unit triangles (`extra` 2 or 3). `trace_json` may be null;
/// otherwise it receives the full report as JSON.
///
/// # Safety
/// `eps` must be a NUL-terminated string; `verdict` must be writable;
/// `trace_json` may be null.
#[no_mangle]
pub unsafe extern "C" fn tc_bound(
    n: u32,
    extra: u32,
    eps: *const c_char,
    verdict: *mut TcBoundVerdict,
    trace_json: *mut *mut c_char,
) -> TcStatus {
    guard(|| {
        if verdict.is_null() {
            return Err(null_arg("verdict"));
        }
        let eps = parse_rat(read_str(eps, "eps")?)?;
        let report = bound_decision(n, extra, &eps).map_err(lib_err)?;
        *verdict = match report.verdict {
            BoundVerdict::Impossible => TcBoundVerdict::Impossible,
            BoundVerdict::WithinBound => TcBoundVerdict::WithinBound,
        };
        if !trace_json.is_null() {
            *trace_json = into_c_string(serde_json::to_string(&report).map_err(|e| lib_err(e.into()))?)?;
        }
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `covering` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tc_covering_free(covering: *mut TcCovering) {
    if !covering.is_null() {
        drop(Box::from_raw(covering));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

//! C ABI for qhf-core.
//!
//! Objects cross the boundary as opaque handles or as JSON strings. Every
//! function returns a [`QhfStatus`]; on failure a message is available from
//! [`qhf_last_error`] until the next call on the same thread. Strings handed
//! out by this library must be released with [`qhf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qhf_core::builders::{build_function_algebra, build_group_algebra};
use qhf_core::group::CatalogName;
use qhf_core::report::{cmd_construct, cmd_verify, to_json, Command, RunReport};
use qhf_core::scene::{max_dim_from_env, Scene, SceneConfig};
use qhf_core::structure::{verify_structure, StructureTensors};
use qhf_core::sweep::{run_sweep, SweepOptions};
use qhf_core::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QhfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    VerificationFailed = 5,
    ExceptionalIdempotent = 6,
    Internal = 7,
}

/// Which scene command to run.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QhfCommand {
    Verify = 0,
    Construct = 1,
}

/// Opaque handle to structure tensors.
pub struct QhfStructure {
    inner: StructureTensors,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> QhfStatus {
    match err {
        Error::Parse(_) | Error::Json(_) => QhfStatus::ParseError,
        Error::ExceptionalIdempotent => QhfStatus::ExceptionalIdempotent,
        Error::VerificationFailed { .. } | Error::NotGroupLike(_) => QhfStatus::VerificationFailed,
        _ => QhfStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), QhfStatus>) -> QhfStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QhfStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            QhfStatus::Internal
        }
    }
}

fn fail(err: Error) -> QhfStatus {
    let s = status_of(&err);
    set_error(err.to_string());
    s
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, QhfStatus> {
    if p.is_null() {
        set_error("null pointer argument");
        return Err(QhfStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        QhfStatus::InvalidUtf8
    })
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), QhfStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(QhfStatus::NullPointer);
    }
    let c = CString::new(s).map_err(|_| {
        set_error("output contains a NUL byte");
        QhfStatus::Internal
    })?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_handle(out: *mut *mut QhfStructure, t: StructureTensors) -> Result<(), QhfStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(QhfStatus::NullPointer);
    }
    *out = Box::into_raw(Box::new(QhfStructure { inner: t }));
    Ok(())
}

unsafe fn handle<'a>(h: *const QhfStructure) -> Result<&'a StructureTensors, QhfStatus> {
    if h.is_null() {
        set_error("null handle");
        return Err(QhfStatus::NullPointer);
    }
    Ok(&(*h).inner)
}

/// Message for the last failed call on this thread, or NULL. Owned by the
/// library; valid until the next call.
#[no_mangle]
pub extern "C" fn qhf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn qhf_status_name(status: QhfStatus) -> *const c_char {
    let s: &'static CStr = match status {
        QhfStatus::Ok => c"ok",
        QhfStatus::NullPointer => c"null pointer",
        QhfStatus::InvalidUtf8 => c"invalid utf-8",
        QhfStatus::ParseError => c"parse error",
        QhfStatus::InvalidInput => c"invalid input",
        QhfStatus::VerificationFailed => c"verification failed",
        QhfStatus::ExceptionalIdempotent => c"exceptional idempotent",
        QhfStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qhf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses structure tensors from JSON (the format written by
/// `qhf_structure_to_json`).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qhf_structure_from_json(json: *const c_char, out: *mut *mut QhfStructure) -> QhfStatus {
    guard(|| {
        let text = read_str(json)?;
        let t: StructureTensors = serde_json::from_str(text).map_err(|e| fail(Error::Parse(e.to_string())))?;
        write_handle(out, t)
    })
}

fn catalog_build(name: &str, group_algebra: bool) -> Result<StructureTensors, QhfStatus> {
    let g = name.parse::<CatalogName>().and_then(|c| c.build()).map_err(fail)?;
    let t = if group_algebra { build_group_algebra(&g) } else { build_function_algebra(&g) };
    t.map_err(fail)
}

/// `K(G)` for a catalog group such as `"symmetric 3"`.
///
/// # Safety
/// `catalog` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qhf_function_algebra(catalog: *const c_char, out: *mut *mut QhfStructure) -> QhfStatus {
    guard(|| write_handle(out, catalog_build(read_str(catalog)?, false)?))
}

/// `ℂ[G]` for a catalog group.
///
/// # Safety
/// `catalog` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qhf_group_algebra(catalog: *const c_char, out: *mut *mut QhfStructure) -> QhfStatus {
    guard(|| write_handle(out, catalog_build(read_str(catalog)?, true)?))
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `h` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qhf_structure_free(h: *mut QhfStructure) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Dimension of the algebra.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qhf_structure_dim(h: *const QhfStructure, out: *mut usize) -> QhfStatus {
    guard(|| {
        let t = handle(h)?;
        if out.is_null() {
            set_error("null output pointer");
            return Err(QhfStatus::NullPointer);
        }
        *out = t.dim();
        Ok(())
    })
}

/// Runs the axiom verifier. `all_pass` receives 1 or 0; `ledger_json`, if
/// not NULL, receives the ledger as JSON with witnesses.
///
/// # Safety
/// `h` must be a live handle; `all_pass` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qhf_structure_verify(
    h: *const QhfStructure,
    all_pass: *mut c_int,
    ledger_json: *mut *mut c_char,
) -> QhfStatus {
    guard(|| {
        let t = handle(h)?;
        if all_pass.is_null() {
            set_error("null output pointer");
            return Err(QhfStatus::NullPointer);
        }
        let ledger = verify_structure(t);
        *all_pass = c_int::from(ledger.all_pass());
        if !ledger_json.is_null() {
            write_string(ledger_json, to_json(&ledger, true).map_err(fail)?)?;
        }
        Ok(())
    })
}

/// Serializes a handle to JSON.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qhf_structure_to_json(h: *const QhfStructure, out: *mut *mut c_char) -> QhfStatus {
    guard(|| {
        let t = handle(h)?;
        let s = serde_json::to_string(t).map_err(|e| fail(e.into()))?;
        write_string(out, s)
    })
}

fn finish_report(report: &RunReport, witnesses: bool, out: *mut *mut c_char, exit_code: *mut c_int) -> Result<(), QhfStatus> {
    let json = report.to_json(witnesses).map_err(fail)?;
    unsafe {
        write_string(out, json)?;
        if !exit_code.is_null() {
            *exit_code = report.exit_code();
        }
    }
    Ok(())
}

/// Runs a scene given as JSON text and returns the report as JSON.
/// `exit_code` (optional) receives the CLI exit code for the report.
///
/// # Safety
/// `scene_json` must be a NUL-terminated string; `report_json` must be
/// writable; `exit_code` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn qhf_run_scene(
    scene_json: *const c_char,
    command: QhfCommand,
    witnesses: c_int,
    report_json: *mut *mut c_char,
    exit_code: *mut c_int,
) -> QhfStatus {
    guard(|| {
        let text = read_str(scene_json)?;
        let config = SceneConfig::from_json(text).map_err(fail)?;
        let max_dim = max_dim_from_env().map_err(fail)?;
        let scene = Scene::resolve(config, max_dim).map_err(fail)?;
        let w = witnesses != 0 || scene.config.options.emit_witnesses;
        let report = match command {
            QhfCommand::Verify => cmd_verify(&scene),
            QhfCommand::Construct => cmd_construct(&scene).map_err(fail)?,
        };
        finish_report(&report, w, report_json, exit_code)
    })
}

/// Runs the catalog sweep up to `max_order`.
///
/// # Safety
/// `report_json` must be writable; `exit_code` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn qhf_sweep(
    max_order: usize,
    search_exceptional: c_int,
    report_json: *mut *mut c_char,
    exit_code: *mut c_int,
) -> QhfStatus {
    guard(|| {
        let opts = SweepOptions { max_order, search_exceptional: search_exceptional != 0, ..SweepOptions::default() };
        let sweep = run_sweep(&opts).map_err(fail)?;
        let mut report = RunReport::new(Command::Sweep);
        report.sweep = Some(sweep);
        report.recompute_summary();
        finish_report(&report, false, report_json, exit_code)
    })
}

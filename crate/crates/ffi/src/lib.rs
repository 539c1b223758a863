//! C ABI over the transformation engine.
//!
//! Every function returns a [`DarbouxStatus`]; results come back through out
//! pointers. On failure, [`darboux_last_error`] describes what went wrong on
//! the calling thread. Transforms are opaque handles released with
//! [`darboux_transform_free`]; strings returned by the library are released
//! with [`darboux_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use darboux::cli::{model_by_name, run_checks, ClassificationDocument, TransformDocument};
use darboux::darboux::{build_transform, krein_violation, partner_eigenfunction, LevelSelection, TransformResult};
use darboux::spectral::{numeric_spectrum, Grid};
use darboux::susy::classify_transform;
use darboux::{Error, SolvableModel};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DarbouxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// The selection fails the Krein condition or has a noded Wronskian.
    Inadmissible = 3,
    /// Grid pole, non-convergence or a failed internal consistency check.
    Numeric = 4,
    Internal = 5,
    Panic = 6,
}

/// A built transformation together with its base model.
pub struct DarbouxTransform {
    model: Box<dyn SolvableModel>,
    tr: TransformResult,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(DarbouxStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InadmissibleSelection { .. } | Error::NodefulWronskian { .. } => DarbouxStatus::Inadmissible,
            Error::InvalidSelection(_)
            | Error::InvalidGrid(_)
            | Error::UnknownModel(_)
            | Error::EmptyInput(_)
            | Error::ForbiddenLevel { .. }
            | Error::DegenerateTransformationFunctions => DarbouxStatus::InvalidArgument,
            Error::PoleOnGrid { .. }
            | Error::NonConvergence { .. }
            | Error::ExponentialMismatch(_)
            | Error::ClassificationMismatch(_) => DarbouxStatus::Numeric,
            _ => DarbouxStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(DarbouxStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> DarbouxStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => DarbouxStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside the darboux library".into());
            DarbouxStatus::Panic
        }
    }
}

/// # Safety
/// `ptr` must be null or point to `len` readable `u32` values.
unsafe fn levels_from(ptr: *const u32, len: usize) -> Result<Vec<u32>, Failure> {
    if len == 0 {
        return Err(Failure(DarbouxStatus::InvalidArgument, "selection is empty".into()));
    }
    if ptr.is_null() {
        return Err(null("levels"));
    }
    Ok(unsafe { std::slice::from_raw_parts(ptr, len) }.to_vec())
}

/// # Safety
/// `out` must be null or valid for a write of `T`.
unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    unsafe { out.write(value) };
    Ok(())
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(DarbouxStatus::Internal, "string contains a NUL byte".into()))
}

/// # Safety
/// `handle` must be null or a live handle from [`darboux_transform_new`].
unsafe fn handle_ref<'a>(handle: *const DarbouxTransform) -> Result<&'a DarbouxTransform, Failure> {
    unsafe { handle.as_ref() }.ok_or_else(|| null("transform handle"))
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn darboux_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Integer Krein scan. Writes whether the selection is admissible and, if
/// not, the first failing `k` (otherwise `u32::MAX`).
///
/// # Safety
/// `levels` must point to `len` values; out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn darboux_krein_check(
    levels: *const u32,
    len: usize,
    out_admissible: *mut bool,
    out_failing_k: *mut u32,
) -> DarbouxStatus {
    guard(|| {
        let levels = unsafe { levels_from(levels, len) }?;
        let violation = krein_violation(&levels);
        unsafe {
            write_out(out_admissible, violation.is_none(), "out_admissible")?;
            write_out(out_failing_k, violation.unwrap_or(u32::MAX), "out_failing_k")
        }
    })
}

/// Builds the transformation deleting `levels` from `model` (null means
/// `"oscillator"`).
///
/// # Safety
/// `model` must be null or a NUL-terminated string; `levels` must point to
/// `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn darboux_transform_new(
    model: *const c_char,
    levels: *const u32,
    len: usize,
    out: *mut *mut DarbouxTransform,
) -> DarbouxStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let name = if model.is_null() {
            "oscillator".to_string()
        } else {
            unsafe { CStr::from_ptr(model) }.to_string_lossy().into_owned()
        };
        let levels = unsafe { levels_from(levels, len) }?;
        let model = model_by_name(&name)?;
        let sel = LevelSelection::new(model.as_ref(), levels)?;
        let tr = build_transform(model.as_ref(), &sel)?;
        let handle = Box::into_raw(Box::new(DarbouxTransform { model, tr }));
        unsafe { write_out(out, handle, "out") }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `handle` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn darboux_transform_free(handle: *mut DarbouxTransform) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// # Safety
/// `handle` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn darboux_transform_order(handle: *const DarbouxTransform, out: *mut usize) -> DarbouxStatus {
    guard(|| {
        let t = unsafe { handle_ref(handle) }?;
        unsafe { write_out(out, t.tr.order(), "out") }
    })
}

/// Original and transformed potentials at `x`.
///
/// # Safety
/// `handle` must be live; out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn darboux_transform_potential(
    handle: *const DarbouxTransform,
    x: f64,
    out_v0: *mut f64,
    out_vn: *mut f64,
) -> DarbouxStatus {
    guard(|| {
        let t = unsafe { handle_ref(handle) }?;
        unsafe {
            write_out(out_v0, t.tr.v0.eval_f64(x), "out_v0")?;
            write_out(out_vn, t.tr.vn.eval_f64(x), "out_vn")
        }
    })
}

/// Unit-normalized partner eigenfunction `psi_n(x)` of the transformed
/// Hamiltonian. Deleted levels are an invalid argument.
///
/// # Safety
/// `handle` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn darboux_transform_eigenfunction(
    handle: *const DarbouxTransform,
    level: u32,
    x: f64,
    out: *mut f64,
) -> DarbouxStatus {
    guard(|| {
        let t = unsafe { handle_ref(handle) }?;
        let (psi, norm) = partner_eigenfunction(t.model.as_ref(), &t.tr, level)?;
        let c = norm
            .inv_sqrt_f64()
            .ok_or_else(|| Failure(DarbouxStatus::Numeric, format!("level {level} has nonpositive norm")))?;
        unsafe { write_out(out, c * psi.eval_f64(x), "out") }
    })
}

/// Lowest `count` eigenvalues of the finite-difference transformed
/// Hamiltonian on `[x_min, x_max]` with `points` grid points.
///
/// # Safety
/// `handle` must be live; `out` must have room for `count` values.
#[no_mangle]
pub unsafe extern "C" fn darboux_transform_spectrum(
    handle: *const DarbouxTransform,
    x_min: f64,
    x_max: f64,
    points: usize,
    count: usize,
    out: *mut f64,
) -> DarbouxStatus {
    guard(|| {
        let t = unsafe { handle_ref(handle) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let grid = Grid::new(x_min, x_max, points)?;
        if count > points.saturating_sub(2) {
            return Err(Failure(
                DarbouxStatus::InvalidArgument,
                format!("grid has only {} interior points", points.saturating_sub(2)),
            ));
        }
        let values = numeric_spectrum(&t.tr.vn, &grid, count)?;
        unsafe { std::slice::from_raw_parts_mut(out, count) }.copy_from_slice(&values);
        Ok(())
    })
}

/// Exact coefficients as JSON. Free the string with [`darboux_string_free`].
///
/// # Safety
/// `handle` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn darboux_transform_to_json(
    handle: *const DarbouxTransform,
    out: *mut *mut c_char,
) -> DarbouxStatus {
    guard(|| {
        let t = unsafe { handle_ref(handle) }?;
        let doc = TransformDocument::from_transform(t.model.name(), &t.tr);
        let json = serde_json::to_string(&doc).map_err(Error::from)?;
        unsafe { write_out(out, into_c_string(json)?, "out") }
    })
}

/// Runs the verification suite on the reference grid. `out_json` may be
/// null; otherwise it receives the report.
///
/// # Safety
/// `handle` must be live; `out_passed` writable; `out_json` null or writable.
#[no_mangle]
pub unsafe extern "C" fn darboux_transform_verify(
    handle: *const DarbouxTransform,
    n_max: u32,
    parallel: bool,
    out_passed: *mut bool,
    out_json: *mut *mut c_char,
) -> DarbouxStatus {
    guard(|| {
        let t = unsafe { handle_ref(handle) }?;
        let report = run_checks(t.model.as_ref(), &t.tr, n_max, &Grid::reference(), parallel);
        unsafe { write_out(out_passed, report.passed, "out_passed")? };
        if !out_json.is_null() {
            let json = serde_json::to_string(&report).map_err(Error::from)?;
            unsafe { out_json.write(into_c_string(json)?) };
        }
        Ok(())
    })
}

/// SUSY doublet/singlet classification of levels `0..=n_max` as JSON.
///
/// # Safety
/// `handle` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn darboux_transform_classify_json(
    handle: *const DarbouxTransform,
    n_max: u32,
    out: *mut *mut c_char,
) -> DarbouxStatus {
    guard(|| {
        let t = unsafe { handle_ref(handle) }?;
        let cls = classify_transform(t.model.as_ref(), &t.tr, n_max)?;
        let doc = ClassificationDocument::new(t.model.as_ref(), t.tr.selection.levels(), &cls);
        let json = serde_json::to_string(&doc).map_err(Error::from)?;
        unsafe { write_out(out, into_c_string(json)?, "out") }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn darboux_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

//! C interface. Quivers are opaque handles; every call returns an [`NqStatus`] and the
//! message of the last failure on the calling thread is available from
//! [`nq_last_error`]. Strings returned by the library must be released with
//! [`nq_string_free`], handles with [`nq_quiver_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use nquiver::graded::GradedAlgebra;
use nquiver::{dsl, json, BoundQuiver, Error, Field};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Computation = 5,
    Panic = 6,
}

/// Opaque bound quiver.
pub struct NqQuiver {
    inner: BoundQuiver,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn status_of(e: &Error) -> NqStatus {
    match e {
        Error::Parse(_) => NqStatus::Parse,
        Error::InvalidField(_)
        | Error::UnknownVertex(_)
        | Error::UnknownArrow(_)
        | Error::InvalidArgument(_) => NqStatus::InvalidArgument,
        _ => NqStatus::Computation,
    }
}

fn guard(f: impl FnOnce() -> Result<(), NqStatus>) -> NqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NqStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            NqStatus::Panic
        }
    }
}

fn fail(e: Error) -> NqStatus {
    set_error(e.to_string());
    status_of(&e)
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, NqStatus> {
    if p.is_null() {
        set_error("null pointer");
        return Err(NqStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string is not UTF-8");
        NqStatus::InvalidUtf8
    })
}

unsafe fn quiver<'a>(q: *const NqQuiver) -> Result<&'a BoundQuiver, NqStatus> {
    q.as_ref().map(|q| &q.inner).ok_or_else(|| {
        set_error("null quiver handle");
        NqStatus::NullPointer
    })
}

fn export(s: String, out: *mut *mut c_char) -> Result<(), NqStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(NqStatus::NullPointer);
    }
    let c = CString::new(s).map_err(|_| {
        set_error("output contains a NUL byte");
        NqStatus::Computation
    })?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn store(q: BoundQuiver, out: *mut *mut NqQuiver) -> Result<(), NqStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(NqStatus::NullPointer);
    }
    unsafe { *out = Box::into_raw(Box::new(NqQuiver { inner: q })) };
    Ok(())
}

/// Message of the last failure on this thread; valid until the next failing call.
#[no_mangle]
pub extern "C" fn nq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses the text format. `field` is `rat` or `fp:<p>`.
///
/// # Safety
/// `src` and `field` must be NUL-terminated strings, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nq_quiver_parse(
    src: *const c_char,
    field: *const c_char,
    out: *mut *mut NqQuiver,
) -> NqStatus {
    guard(|| {
        let src = read_str(src)?;
        let field = Field::parse(read_str(field)?).map_err(fail)?;
        store(dsl::parse(src, field).map_err(fail)?, out)
    })
}

/// Reads the JSON interchange format.
///
/// # Safety
/// `src` must be a NUL-terminated string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nq_quiver_from_json(
    src: *const c_char,
    out: *mut *mut NqQuiver,
) -> NqStatus {
    guard(|| store(json::from_json_str(read_str(src)?).map_err(fail)?, out))
}

/// # Safety
/// `q` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nq_quiver_free(q: *mut NqQuiver) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `q` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nq_quiver_num_vertices(q: *const NqQuiver, out: *mut usize) -> NqStatus {
    guard(|| {
        let n = quiver(q)?.quiver.num_vertices();
        out.as_mut().map(|o| *o = n).ok_or(NqStatus::NullPointer)
    })
}

/// # Safety
/// `q` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nq_quiver_num_arrows(q: *const NqQuiver, out: *mut usize) -> NqStatus {
    guard(|| {
        let n = quiver(q)?.quiver.num_arrows();
        out.as_mut().map(|o| *o = n).ok_or(NqStatus::NullPointer)
    })
}

/// Canonical text form.
///
/// # Safety
/// `q` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nq_quiver_serialize(
    q: *const NqQuiver,
    out: *mut *mut c_char,
) -> NqStatus {
    guard(|| export(dsl::serialize(quiver(q)?), out))
}

/// # Safety
/// `q` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nq_quiver_to_json(q: *const NqQuiver, out: *mut *mut c_char) -> NqStatus {
    guard(|| export(json::to_json_string(quiver(q)?), out))
}

/// # Safety
/// `q` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nq_quadratic_dual(
    q: *const NqQuiver,
    out: *mut *mut NqQuiver,
) -> NqStatus {
    guard(|| {
        store(
            nquiver::qdual::quadratic_dual(quiver(q)?).map_err(fail)?,
            out,
        )
    })
}

/// Dimension of the degree-`t` component of paths from vertex `i` to vertex `j`.
///
/// # Safety
/// `q` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nq_component_dim(
    q: *const NqQuiver,
    t: usize,
    i: usize,
    j: usize,
    out: *mut usize,
) -> NqStatus {
    guard(|| {
        let bq = quiver(q)?;
        let n = bq.quiver.num_vertices();
        if i >= n || j >= n {
            set_error(format!("vertex index out of range (have {n})"));
            return Err(NqStatus::InvalidArgument);
        }
        let d = GradedAlgebra::new(bq).dim(t, i, j).map_err(fail)?;
        out.as_mut().map(|o| *o = d).ok_or(NqStatus::NullPointer)
    })
}

/// Common degree of all maximal bound paths.
///
/// # Safety
/// `q` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nq_properly_graded_degree(
    q: *const NqQuiver,
    out: *mut usize,
) -> NqStatus {
    guard(|| {
        let d = GradedAlgebra::new(quiver(q)?)
            .properly_graded_degree()
            .map_err(fail)?;
        out.as_mut().map(|o| *o = d).ok_or(NqStatus::NullPointer)
    })
}

/// Shorthand so C callers can test a status without the enum.
#[no_mangle]
pub extern "C" fn nq_status_ok(s: NqStatus) -> bool {
    s == NqStatus::Ok
}

//! C ABI over the qchar library.
//!
//! Values cross the boundary as opaque handles (`QcharGw`, `QcharBundle`) or
//! as JSON strings owned by the library. Every entry point returns a
//! `QcharStatus`; on failure `qchar_last_error_message` describes the error
//! for the calling thread. Strings returned through `out` pointers must be
//! released with `qchar_string_free`, handles with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde_json::Value;

use qchar::borel::{borel_classes, Channel};
use qchar::bundles::VirtualBundle;
use qchar::character::bo;
use qchar::gw::{gw_equal, witt_equal, Backend, GWElement};
use qchar::operations::{omega_s2, psi};
use qchar::parse::{parse_bundle, parse_form};
use qchar::poly::AmbientSpec;
use qchar::Error;

/// Opaque Grothendieck–Witt element.
pub struct QcharGw(GWElement);

/// Opaque virtual bundle.
pub struct QcharBundle(VirtualBundle);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QcharStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    InvalidArgument = 4,
    Unsupported = 5,
    Computation = 6,
    Panic = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QcharStatus {
    match e {
        Error::Syntax { .. } | Error::UnknownSymbol { .. } | Error::Json(_) => QcharStatus::Syntax,
        Error::InvalidUnit(_)
        | Error::BackendMismatch(..)
        | Error::InvalidPrime(_)
        | Error::InvalidBackend(_)
        | Error::AmbientMismatch(_)
        | Error::UnknownVariable(_)
        | Error::TruncationOverflow { .. }
        | Error::InvalidIndex(_)
        | Error::UnknownSuite(_) => QcharStatus::InvalidArgument,
        Error::UnsupportedBundle(_) | Error::NoOrderings | Error::NotInvertible(_) => {
            QcharStatus::Unsupported
        }
        Error::DerivationInconsistent(_)
        | Error::ParityMismatch { .. }
        | Error::ProportionalityFailure(_)
        | Error::RouteMismatch(_) => QcharStatus::Computation,
    }
}

struct Fail(QcharStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QcharStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QcharStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QcharStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(QcharStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(QcharStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn opt_text<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Fail> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, what).map(Some)
    }
}

unsafe fn backend(p: *const c_char) -> Result<Backend, Fail> {
    Ok(opt_text(p, "backend")?.unwrap_or("q").parse()?)
}

unsafe fn channel(p: *const c_char) -> Result<Channel, Fail> {
    Ok(opt_text(p, "channel")?.unwrap_or("gw").parse()?)
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_json(out: *mut *mut c_char, v: &Value) -> Result<(), Fail> {
    let s = CString::new(v.to_string()).expect("JSON has no NUL");
    put(out, s.into_raw())
}

fn ambient_for(
    v: &VirtualBundle,
    given: Option<&str>,
    degree: usize,
) -> Result<Arc<AmbientSpec>, Fail> {
    let a = match given {
        Some(t) => AmbientSpec::parse(t)?,
        None => {
            let d =
                u32::try_from(degree + 1).map_err(|_| Error::InvalidIndex(degree.to_string()))?;
            AmbientSpec::hp_power(Some(d), v.max_index().max(1))?
        }
    };
    Ok(Arc::new(a))
}

/// Message for the last failed call on this thread, or NULL. Owned by the
/// library and valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qchar_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn qchar_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a form such as `24*<-1> + 168*h`. `backend` is `q` or `fp:<p>`;
/// NULL means `q`.
///
/// # Safety
/// Pointers must be NULL or valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qchar_gw_parse(
    expr: *const c_char,
    backend_name: *const c_char,
    out: *mut *mut QcharGw,
) -> QcharStatus {
    guard(|| {
        let x = parse_form(text(expr, "expression")?, backend(backend_name)?)?;
        put(out, Box::into_raw(Box::new(QcharGw(x))))
    })
}

/// # Safety
/// `x` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn qchar_gw_free(x: *mut QcharGw) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qchar_gw_add(
    a: *const QcharGw,
    b: *const QcharGw,
    out: *mut *mut QcharGw,
) -> QcharStatus {
    guard(|| {
        let s = deref(a, "a")?.0.checked_add(&deref(b, "b")?.0)?;
        put(out, Box::into_raw(Box::new(QcharGw(s))))
    })
}

/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qchar_gw_mul(
    a: *const QcharGw,
    b: *const QcharGw,
    out: *mut *mut QcharGw,
) -> QcharStatus {
    guard(|| {
        let s = deref(a, "a")?.0.checked_mul(&deref(b, "b")?.0)?;
        put(out, Box::into_raw(Box::new(QcharGw(s))))
    })
}

/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qchar_gw_equal(
    a: *const QcharGw,
    b: *const QcharGw,
    out: *mut bool,
) -> QcharStatus {
    guard(|| put(out, gw_equal(&deref(a, "a")?.0, &deref(b, "b")?.0)?))
}

/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qchar_gw_witt_equal(
    a: *const QcharGw,
    b: *const QcharGw,
    out: *mut bool,
) -> QcharStatus {
    guard(|| put(out, witt_equal(&deref(a, "a")?.0, &deref(b, "b")?.0)?))
}

/// `{"backend":...,"terms":[{"d":...,"n":...}]}`.
///
/// # Safety
/// `x` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qchar_gw_to_json(x: *const QcharGw, out: *mut *mut c_char) -> QcharStatus {
    guard(|| put_json(out, &deref(x, "element")?.0.to_json()))
}

/// # Safety
/// Pointers must be NULL or valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qchar_bundle_parse(
    expr: *const c_char,
    out: *mut *mut QcharBundle,
) -> QcharStatus {
    guard(|| {
        let v = parse_bundle(text(expr, "expression")?)?;
        put(out, Box::into_raw(Box::new(QcharBundle(v))))
    })
}

/// # Safety
/// `v` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn qchar_bundle_free(v: *mut QcharBundle) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// # Safety
/// `v` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qchar_bundle_rank(v: *const QcharBundle, out: *mut i64) -> QcharStatus {
    guard(|| {
        let r = deref(v, "bundle")?.0.rank();
        let r = r.to_i64().ok_or_else(|| {
            Fail(
                QcharStatus::InvalidArgument,
                format!("rank {r} overflows int64"),
            )
        })?;
        put(out, r)
    })
}

/// Borel classes b_1..b_max_degree as JSON. NULL `ambient` means
/// HP(max_degree+1)^k; NULL `channel` means `gw`.
///
/// # Safety
/// Pointers must be NULL or valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qchar_borel_json(
    v: *const QcharBundle,
    ambient: *const c_char,
    channel_name: *const c_char,
    backend_name: *const c_char,
    max_degree: u32,
    out: *mut *mut c_char,
) -> QcharStatus {
    guard(|| {
        let v = &deref(v, "bundle")?.0;
        let d = max_degree as usize;
        let a = ambient_for(v, opt_text(ambient, "ambient")?, d)?;
        let b = borel_classes(v, &a, channel(channel_name)?, backend(backend_name)?, d)?;
        put_json(out, &b.to_json())
    })
}

/// Stable coefficient of the desuspended chi~_{2n+4}.
///
/// # Safety
/// Pointers must be NULL or valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qchar_omega_json(
    n: u32,
    channel_name: *const c_char,
    backend_name: *const c_char,
    out: *mut *mut c_char,
) -> QcharStatus {
    guard(|| {
        put_json(
            out,
            &omega_s2(n as usize, channel(channel_name)?, backend(backend_name)?)?.to_json(),
        )
    })
}

/// psi_{2n+4} for odd n.
///
/// # Safety
/// Pointers must be NULL or valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qchar_psi_json(
    n: u32,
    backend_name: *const c_char,
    out: *mut *mut c_char,
) -> QcharStatus {
    guard(|| put_json(out, &psi(n as usize, backend(backend_name)?)?.to_json()))
}

/// Borel character components through `max_degree`.
///
/// # Safety
/// Pointers must be NULL or valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qchar_bo_json(
    v: *const QcharBundle,
    ambient: *const c_char,
    backend_name: *const c_char,
    max_degree: u32,
    out: *mut *mut c_char,
) -> QcharStatus {
    guard(|| {
        let v = &deref(v, "bundle")?.0;
        let d = max_degree as usize;
        let a = ambient_for(v, opt_text(ambient, "ambient")?, d)?;
        put_json(out, &bo(v, &a, backend(backend_name)?, d)?.to_json())
    })
}

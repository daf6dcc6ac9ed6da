//! C ABI over the exact Clifford/Lie engine.
//!
//! Multivectors cross the boundary as opaque handles. Every fallible call
//! returns a [`SpinholStatus`]; on failure the message is available from
//! [`spinhol_last_error`] until the next failing call on the same thread.
//! Strings handed out by this library must be released with
//! [`spinhol_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use spinhol::spin::SpinRep;
use spinhol::torsion::{analyze_fix_algebra, fixed_spinors};
use spinhol::{CliffordError, LieError, MultiVector, SpinError, TorsionError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinholStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Clifford = 4,
    Spin = 5,
    Torsion = 6,
    Lie = 7,
    Panic = 8,
}

/// Opaque multivector handle.
pub struct SpinholMultivector(MultiVector);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(SpinholStatus, String);

impl From<CliffordError> for Failure {
    fn from(e: CliffordError) -> Self {
        Failure(SpinholStatus::Clifford, e.to_string())
    }
}

impl From<SpinError> for Failure {
    fn from(e: SpinError) -> Self {
        Failure(SpinholStatus::Spin, e.to_string())
    }
}

impl From<TorsionError> for Failure {
    fn from(e: TorsionError) -> Self {
        Failure(SpinholStatus::Torsion, e.to_string())
    }
}

impl From<LieError> for Failure {
    fn from(e: LieError) -> Self {
        Failure(SpinholStatus::Lie, e.to_string())
    }
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SpinholStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SpinholStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SpinholStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(SpinholStatus::NullPointer, "null pointer argument".into())
}

unsafe fn handle<'a>(p: *const SpinholMultivector) -> Result<&'a MultiVector, Failure> {
    p.as_ref().map(|h| &h.0).ok_or_else(null)
}

unsafe fn put_handle(out: *mut *mut SpinholMultivector, mv: MultiVector) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(SpinholMultivector(mv)));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = CString::new(s).map_err(|e| Failure(SpinholStatus::Parse, e.to_string()))?.into_raw();
    Ok(())
}

/// Copy of the last error message on this thread, or null if none.
/// Release with `spinhol_string_free`.
#[no_mangle]
pub extern "C" fn spinhol_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must be null or a string returned by this library, released once.
#[no_mangle]
pub unsafe extern "C" fn spinhol_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `mv` must be null or a handle returned by this library, released once.
#[no_mangle]
pub unsafe extern "C" fn spinhol_multivector_free(mv: *mut SpinholMultivector) {
    if !mv.is_null() {
        drop(Box::from_raw(mv));
    }
}

/// Parses a multivector record such as
/// `{"n":8,"terms":[{"blade":[1,2,3,4],"num":1,"den":1}]}`.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spinhol_multivector_from_json(json: *const c_char, out: *mut *mut SpinholMultivector) -> SpinholStatus {
    guard(|| {
        if json.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(json).to_str().map_err(|e| Failure(SpinholStatus::InvalidUtf8, e.to_string()))?;
        put_handle(out, MultiVector::from_json(text)?)
    })
}

/// # Safety
/// `mv` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spinhol_multivector_to_json(mv: *const SpinholMultivector, out: *mut *mut c_char) -> SpinholStatus {
    guard(|| put_string(out, handle(mv)?.to_json()))
}

/// Volume element `e_1 ... e_n` of `Cl_n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spinhol_volume(n: usize, out: *mut *mut SpinholMultivector) -> SpinholStatus {
    guard(|| {
        if !(1..=spinhol::clifford::MAX_DIM).contains(&n) {
            return Err(CliffordError::UnsupportedDimension { n }.into());
        }
        put_handle(out, MultiVector::volume(n))
    })
}

/// Clifford product `a b`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spinhol_multivector_product(
    a: *const SpinholMultivector,
    b: *const SpinholMultivector,
    out: *mut *mut SpinholMultivector,
) -> SpinholStatus {
    guard(|| {
        let (a, b) = (handle(a)?, handle(b)?);
        if a.dim() != b.dim() {
            return Err(CliffordError::DimensionMismatch { left: a.dim(), right: b.dim() }.into());
        }
        put_handle(out, a * b)
    })
}

/// Dimension `n` of the ambient Clifford algebra.
///
/// # Safety
/// `mv` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spinhol_multivector_dim(mv: *const SpinholMultivector, out: *mut usize) -> SpinholStatus {
    guard(|| {
        let n = handle(mv)?.dim();
        out.as_mut().map(|o| *o = n).ok_or_else(null)
    })
}

/// Descriptor of the Lie algebra generated by `X _| T`, `X` a vector, as JSON.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spinhol_classify(t: *const SpinholMultivector, out: *mut *mut c_char) -> SpinholStatus {
    guard(|| {
        let a = analyze_fix_algebra(handle(t)?)?;
        put_string(out, serde_json::to_string(&a.descriptor).expect("descriptor serializes"))
    })
}

/// Dimension of the space of spinors fixed by `T` (n = 6, 7, 8).
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spinhol_fixed_spinor_dim(t: *const SpinholMultivector, out: *mut usize) -> SpinholStatus {
    guard(|| {
        let t = handle(t)?;
        let rep = SpinRep::shared(t.dim())?;
        let d = fixed_spinors(t, rep)?.dim();
        out.as_mut().map(|o| *o = d).ok_or_else(null)
    })
}

//! C interface to `rldual`.
//!
//! Every function returns an [`RldStatus`]. Results are written through out
//! pointers. On failure a message is kept per thread and can be read with
//! [`rld_last_error`]. Strings handed out by this library are released with
//! [`rld_string_free`], algebras with [`rld_algebra_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rldual::algebra::{
    classify, enumerate_mtl_chains, parse_algebra, Algebra, DEFAULT_CHAIN_BOUND,
};
use rldual::filters::Spectrum;
use rldual::fixtures;
use rldual::verify::{run_suite, VerifyError};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RldStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidAlgebra = 4,
    UnknownName = 5,
    NotApplicable = 6,
    BoundExceeded = 7,
    Internal = 8,
}

/// Opaque handle to a validated algebra.
pub struct RldAlgebra(Algebra);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

struct Fail(RldStatus, String);

impl Fail {
    fn new(status: RldStatus, msg: impl ToString) -> Self {
        Fail(status, msg.to_string())
    }
}

/// Runs `f`, records its error message and turns panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> RldStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RldStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            RldStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::new(RldStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail::new(RldStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn alg_arg<'a>(p: *const RldAlgebra) -> Result<&'a Algebra, Fail> {
    p.as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| Fail::new(RldStatus::NullPointer, "algebra is null"))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::new(RldStatus::NullPointer, "output pointer is null"));
    }
    out.write(v);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|e| Fail::new(RldStatus::Internal, e))?;
    write(out, c.into_raw())
}

fn boxed(a: Algebra) -> *mut RldAlgebra {
    Box::into_raw(Box::new(RldAlgebra(a)))
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn rld_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` is null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rld_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates an algebra in the text format.
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rld_algebra_parse(
    text: *const c_char,
    out: *mut *mut RldAlgebra,
) -> RldStatus {
    guard(|| {
        let spec =
            parse_algebra(str_arg(text, "text")?).map_err(|e| Fail::new(RldStatus::Parse, e))?;
        let a = Algebra::new(spec).map_err(|e| Fail::new(RldStatus::InvalidAlgebra, e))?;
        write(out, boxed(a))
    })
}

/// Looks up a built-in fixture such as `"g3"` or `"nm4"`.
///
/// # Safety
/// `name` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rld_algebra_fixture(
    name: *const c_char,
    out: *mut *mut RldAlgebra,
) -> RldStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        let a = fixtures::by_name(name)
            .ok_or_else(|| Fail::new(RldStatus::UnknownName, format!("no fixture `{name}`")))?;
        write(out, boxed(a))
    })
}

/// # Safety
/// `alg` is null or a handle returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rld_algebra_free(alg: *mut RldAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// # Safety
/// `alg` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rld_algebra_size(alg: *const RldAlgebra, out: *mut usize) -> RldStatus {
    guard(|| write(out, alg_arg(alg)?.size()))
}

/// Writes 1 or 0 for a classification property, or -1 when the property
/// does not apply (zero divisors in GMTL mode). Names are those printed by
/// `rldual classify`, e.g. `"mtl"`, `"sbp"`, `"zero_divisors"`.
///
/// # Safety
/// `alg` is a live handle; `name` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rld_algebra_property(
    alg: *const RldAlgebra,
    name: *const c_char,
    out: *mut i32,
) -> RldStatus {
    guard(|| {
        let a = alg_arg(alg)?;
        let name = str_arg(name, "name")?;
        let report = classify(a);
        let (_, flag) = report
            .rows()
            .into_iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| Fail::new(RldStatus::UnknownName, format!("no property `{name}`")))?;
        write(out, flag.map_or(-1, |f| i32::from(f.holds)))
    })
}

/// Number of points of the prime spectrum.
///
/// # Safety
/// `alg` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rld_spectrum_size(alg: *const RldAlgebra, out: *mut usize) -> RldStatus {
    guard(|| {
        let sp =
            Spectrum::new(alg_arg(alg)?).map_err(|e| Fail::new(RldStatus::NotApplicable, e))?;
        write(out, sp.len())
    })
}

/// The prime spectrum as JSON, freed with [`rld_string_free`].
///
/// # Safety
/// `alg` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rld_spectrum_json(
    alg: *const RldAlgebra,
    out: *mut *mut c_char,
) -> RldStatus {
    guard(|| {
        let sp =
            Spectrum::new(alg_arg(alg)?).map_err(|e| Fail::new(RldStatus::NotApplicable, e))?;
        let json = sp
            .to_json()
            .map_err(|e| Fail::new(RldStatus::Internal, e))?;
        write_string(
            out,
            serde_json::to_string(&json).map_err(|e| Fail::new(RldStatus::Internal, e))?,
        )
    })
}

/// Runs a named verification suite. `passed` receives whether every check
/// held; the status is `NOT_APPLICABLE` when the suite needs an sbp-algebra.
///
/// # Safety
/// `alg` is a live handle; `suite` is a NUL-terminated string; `passed` is
/// writable.
#[no_mangle]
pub unsafe extern "C" fn rld_verify(
    alg: *const RldAlgebra,
    suite: *const c_char,
    passed: *mut bool,
) -> RldStatus {
    guard(|| {
        let run = run_suite(str_arg(suite, "suite")?, alg_arg(alg)?).map_err(|e| match e {
            VerifyError::UnknownSuite(_) => Fail::new(RldStatus::UnknownName, e),
            VerifyError::NotApplicable { .. } => Fail::new(RldStatus::NotApplicable, e),
        })?;
        if !run.passed() {
            set_error(run.to_string());
        }
        write(passed, run.passed())
    })
}

/// Number of MTL-chains with `n` elements up to isomorphism.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rld_mtl_chain_count(n: usize, out: *mut usize) -> RldStatus {
    guard(|| {
        let chains = enumerate_mtl_chains(n, DEFAULT_CHAIN_BOUND)
            .map_err(|e| Fail::new(RldStatus::BoundExceeded, e))?;
        write(out, chains.len())
    })
}

//! C ABI for ratdec.
//!
//! Objects are opaque handles created by `ratdec_*_parse` / `ratdec_decompose`
//! and released with the matching `_free`. Strings returned by the library are
//! owned by the caller and released with [`ratdec_string_free`]. Every fallible
//! call returns a [`RatdecStatus`]; the message of the last failure on the
//! calling thread is available from [`ratdec_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ratdec::decompose::{decompose_with, DecomposeOptions, Decomposition, Status};
use ratdec::expr::{format_polynomial, format_univariate, parse_polynomial, parse_var_list};
use ratdec::poly::{compose_uni, format_rational};
use ratdec::{Error, RationalFunction};

/// Result code of a fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum RatdecStatus {
    RATDEC_OK = 0,
    /// A required pointer was NULL or a string was not UTF-8.
    RATDEC_INVALID_ARGUMENT = 1,
    /// Malformed expression, unknown variable, zero denominator.
    RATDEC_INPUT_ERROR = 2,
    /// The genericity hypothesis could not be established.
    RATDEC_HYPOTHESIS_FAILURE = 3,
    /// Internal consistency check failed.
    RATDEC_INTERNAL_ERROR = 4,
    /// A panic was caught at the boundary.
    RATDEC_PANIC = 5,
}

/// A reduced rational function together with its variable names.
pub struct RatdecFunction {
    vars: Vec<String>,
    f: RationalFunction,
}

/// Result of [`ratdec_decompose`].
pub struct RatdecDecomposition {
    vars: Vec<String>,
    d: Decomposition,
    verified: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> RatdecStatus {
    match ratdec::cli::exit_code(e) {
        2 => RatdecStatus::RATDEC_HYPOTHESIS_FAILURE,
        3 => RatdecStatus::RATDEC_INTERNAL_ERROR,
        _ => RatdecStatus::RATDEC_INPUT_ERROR,
    }
}

fn fail(e: Error) -> RatdecStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

fn guard(body: impl FnOnce() -> RatdecStatus) -> RatdecStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(s) => s,
        Err(_) => {
            set_error("panic inside ratdec".into());
            RatdecStatus::RATDEC_PANIC
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Option<&'a str> {
    if p.is_null() {
        return None;
    }
    CStr::from_ptr(p).to_str().ok()
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn invalid(what: &str) -> RatdecStatus {
    set_error(format!("invalid argument: {what}"));
    RatdecStatus::RATDEC_INVALID_ARGUMENT
}

/// Parses `num / den` over the comma separated variable list `vars`.
///
/// # Safety
/// `vars`, `num` and `den` must be NUL-terminated strings; `out` must be a
/// valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn ratdec_function_parse(
    vars: *const c_char,
    num: *const c_char,
    den: *const c_char,
    out: *mut *mut RatdecFunction,
) -> RatdecStatus {
    guard(|| {
        if out.is_null() {
            return invalid("out is NULL");
        }
        *out = ptr::null_mut();
        let (Some(vars), Some(num), Some(den)) = (read_str(vars), read_str(num), read_str(den))
        else {
            return invalid("NULL or non UTF-8 string");
        };
        let parsed = parse_var_list(vars).and_then(|vars| {
            let n = parse_polynomial(num, &vars)?;
            let d = parse_polynomial(den, &vars)?;
            Ok(RatdecFunction {
                f: RationalFunction::new(n, d)?,
                vars,
            })
        });
        match parsed {
            Ok(h) => {
                *out = Box::into_raw(Box::new(h));
                RatdecStatus::RATDEC_OK
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `f` must be NULL or a handle from [`ratdec_function_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ratdec_function_free(f: *mut RatdecFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Degree `max(deg num, deg den)`, or 0 for NULL.
///
/// # Safety
/// `f` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ratdec_function_degree(f: *const RatdecFunction) -> u32 {
    f.as_ref().map_or(0, |f| f.f.degree())
}

/// Decomposes `f = u(h)`. `seed` fixes the variable shifts tried when the
/// last variable is not generic.
///
/// # Safety
/// `f` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn ratdec_decompose(
    f: *const RatdecFunction,
    max_shift_retries: u32,
    seed: u64,
    out: *mut *mut RatdecDecomposition,
) -> RatdecStatus {
    guard(|| {
        if out.is_null() {
            return invalid("out is NULL");
        }
        *out = ptr::null_mut();
        let Some(f) = f.as_ref() else {
            return invalid("f is NULL");
        };
        let opts = DecomposeOptions {
            max_shift_retries: max_shift_retries as usize,
            seed,
            oracle: None,
        };
        let result = decompose_with(&f.f, &opts).and_then(|d| {
            let verified = compose_uni(&d.u, &d.h)? == f.f;
            Ok(RatdecDecomposition {
                vars: f.vars.clone(),
                d,
                verified,
            })
        });
        match result {
            Ok(d) => {
                *out = Box::into_raw(Box::new(d));
                RatdecStatus::RATDEC_OK
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `d` must be NULL or a handle from [`ratdec_decompose`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ratdec_decomposition_free(d: *mut RatdecDecomposition) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ratdec_decomposition_is_composite(d: *const RatdecDecomposition) -> bool {
    d.as_ref().is_some_and(|d| d.d.status == Status::Composite)
}

/// Whether `u(h)` was recomputed and found equal to the input.
///
/// # Safety
/// `d` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ratdec_decomposition_verified(d: *const RatdecDecomposition) -> bool {
    d.as_ref().is_some_and(|d| d.verified)
}

/// # Safety
/// `d` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ratdec_decomposition_outer_degree(d: *const RatdecDecomposition) -> u32 {
    d.as_ref().map_or(0, |d| d.d.u.degree() as u32)
}

/// # Safety
/// `d` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ratdec_decomposition_inner_degree(d: *const RatdecDecomposition) -> u32 {
    d.as_ref().map_or(0, |d| d.d.h.degree())
}

/// Which part of a decomposition to print.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum RatdecPart {
    RATDEC_OUTER_NUM = 0,
    RATDEC_OUTER_DEN = 1,
    RATDEC_INNER_NUM = 2,
    RATDEC_INNER_DEN = 3,
    /// `lambda_a,lambda_b`, empty when no certificate exists.
    RATDEC_LAMBDAS = 4,
}

/// Prints one part of `d` as a newly allocated string (outer parts in `T`),
/// or NULL for a NULL handle.
///
/// # Safety
/// `d` must be NULL or a live handle. The result must be released with
/// [`ratdec_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ratdec_decomposition_part(
    d: *const RatdecDecomposition,
    part: RatdecPart,
) -> *mut c_char {
    let Some(d) = d.as_ref() else {
        return ptr::null_mut();
    };
    let s = match part {
        RatdecPart::RATDEC_OUTER_NUM => format_univariate(d.d.u.num(), "T"),
        RatdecPart::RATDEC_OUTER_DEN => format_univariate(d.d.u.den(), "T"),
        RatdecPart::RATDEC_INNER_NUM => format_polynomial(d.d.h.num(), &d.vars),
        RatdecPart::RATDEC_INNER_DEN => format_polynomial(d.d.h.den(), &d.vars),
        RatdecPart::RATDEC_LAMBDAS => d.d.certificate.as_ref().map_or(String::new(), |c| {
            format!(
                "{},{}",
                format_rational(&c.lambda_a),
                format_rational(&c.lambda_b)
            )
        }),
    };
    into_c(s)
}

/// Message of the last failure on this thread, or NULL. Owned by the caller.
#[no_mangle]
pub extern "C" fn ratdec_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |c| c.clone().into_raw())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ratdec_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn ratdec_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

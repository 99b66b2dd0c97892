//! C interface to `possing`.
//!
//! Objects cross the boundary as opaque handles that the caller releases with the
//! matching `_free` function. Every fallible call returns a [`PossingStatus`]; the
//! message of the last failure on the calling thread is available from
//! [`possing_last_error_message`]. Invariants that may be infinite are reported as `-1`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use possing::equiv::Equivalence;
use possing::grading::{self, Condition};
use possing::newton::{CPolytope, Extension};
use possing::parse::{parse_poly, parse_vars, parse_weights};
use possing::{localalg, normalform, Error, ExtNat, Field, Poly};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PossingStatus {
    Ok = 0,
    InvalidCharacteristic = 1,
    Parse = 2,
    InvalidWeights = 3,
    InvalidArgument = 4,
    RingMismatch = 5,
    ConstantTerm = 6,
    ZeroPolynomial = 7,
    NotAUnit = 8,
    Infinite = 9,
    ConditionFails = 10,
    Unsupported = 11,
    NullPointer = 12,
    InvalidUtf8 = 13,
    Panic = 14,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PossingCondition {
    A = 0,
    Aa = 1,
    Ac = 2,
    Aac = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PossingMode {
    Right = 0,
    Contact = 1,
}

/// Polynomial together with its variable names.
pub struct PossingPoly {
    f: Poly,
    vars: Vec<String>,
}

pub struct PossingPolytope {
    p: CPolytope,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PossingStatus {
    match e {
        Error::InvalidCharacteristic(_) => PossingStatus::InvalidCharacteristic,
        Error::Parse { .. } => PossingStatus::Parse,
        Error::InvalidWeights(_) => PossingStatus::InvalidWeights,
        Error::InvalidArgument(_) => PossingStatus::InvalidArgument,
        Error::RingMismatch(_) => PossingStatus::RingMismatch,
        Error::ConstantTerm => PossingStatus::ConstantTerm,
        Error::ZeroPolynomial => PossingStatus::ZeroPolynomial,
        Error::NotAUnit => PossingStatus::NotAUnit,
        Error::Infinite(_) => PossingStatus::Infinite,
        Error::ConditionFails { .. } => PossingStatus::ConditionFails,
        Error::Unsupported(_) => PossingStatus::Unsupported,
    }
}

struct Fail(PossingStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> PossingStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PossingStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            PossingStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(PossingStatus::NullPointer, "null pointer argument".into())
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail(PossingStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn get<'a, T>(h: *const T) -> Result<&'a T, Fail> {
    h.as_ref().ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

fn ext(v: ExtNat) -> i64 {
    v.finite().map_or(-1, |n| n as i64)
}

fn mode(m: PossingMode) -> Equivalence {
    match m {
        PossingMode::Right => Equivalence::Right,
        PossingMode::Contact => Equivalence::Contact,
    }
}

/// Message for the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn possing_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses `text` over F_p (or Q when `characteristic` is 0). `vars` is a comma separated
/// list; null infers the variables from the text.
///
/// # Safety
/// String arguments must be null or nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn possing_poly_parse(
    text_: *const c_char,
    characteristic: u64,
    vars: *const c_char,
    out: *mut *mut PossingPoly,
) -> PossingStatus {
    guard(|| {
        let s = text(text_)?;
        let field = Field::new(characteristic)?;
        let vars = if vars.is_null() { possing::cli::infer_vars(s) } else { parse_vars(text(vars)?)? };
        let f = parse_poly(s, &vars, field)?;
        write(out, Box::into_raw(Box::new(PossingPoly { f, vars })))
    })
}

/// # Safety
/// `h` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn possing_poly_free(h: *mut PossingPoly) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Renders the polynomial; release the string with [`possing_string_free`].
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn possing_poly_to_string(h: *const PossingPoly, out: *mut *mut c_char) -> PossingStatus {
    guard(|| {
        let h = get(h)?;
        let s = possing::poly::with_variable_names(&h.vars, || h.f.to_string());
        write(out, CString::new(s).expect("no nul").into_raw())
    })
}

/// # Safety
/// `s` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn possing_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn possing_milnor(h: *const PossingPoly, out: *mut i64) -> PossingStatus {
    guard(|| write(out, ext(localalg::milnor(&get(h)?.f)?)))
}

/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn possing_tjurina(h: *const PossingPoly, out: *mut i64) -> PossingStatus {
    guard(|| write(out, ext(localalg::tjurina(&get(h)?.f)?)))
}

/// C-polytope spanned by the Newton diagram of `f`.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn possing_polytope_newton(f: *const PossingPoly, out: *mut *mut PossingPolytope) -> PossingStatus {
    guard(|| {
        let p = CPolytope::from_poly(&get(f)?.f, Extension::default())?;
        write(out, Box::into_raw(Box::new(PossingPolytope { p })))
    })
}

/// C-polytope from facet weights such as `"4,6;5,5"`.
///
/// # Safety
/// `weights` must be nul-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn possing_polytope_weights(
    weights: *const c_char,
    nvars: usize,
    out: *mut *mut PossingPolytope,
) -> PossingStatus {
    guard(|| {
        let p = CPolytope::from_weights(&parse_weights(text(weights)?, nvars)?)?;
        write(out, Box::into_raw(Box::new(PossingPolytope { p })))
    })
}

/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn possing_polytope_free(h: *mut PossingPolytope) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

fn same_dim(p: &PossingPolytope, f: &PossingPoly) -> Result<(), Fail> {
    if p.p.nvars() != f.f.nvars() {
        return Err(Error::RingMismatch(format!("polytope in {} variables, polynomial in {}", p.p.nvars(), f.f.nvars())).into());
    }
    Ok(())
}

/// Valuation of `f`; the zero polynomial is an `Infinite` error.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn possing_valuation(p: *const PossingPolytope, f: *const PossingPoly, out: *mut i64) -> PossingStatus {
    guard(|| {
        let (p, f) = (get(p)?, get(f)?);
        same_dim(p, f)?;
        let v = p.p.val(&f.f).ok_or_else(|| Error::Infinite("valuation of zero".into()))?;
        write(out, v)
    })
}

/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn possing_check_condition(
    p: *const PossingPolytope,
    f: *const PossingPoly,
    which: PossingCondition,
    out: *mut bool,
) -> PossingStatus {
    guard(|| {
        let (p, f) = (get(p)?, get(f)?);
        same_dim(p, f)?;
        let c = match which {
            PossingCondition::A => Condition::A,
            PossingCondition::Aa => Condition::AA,
            PossingCondition::Ac => Condition::AC,
            PossingCondition::Aac => Condition::AAC,
        };
        write(out, grading::check_condition(&p.p, &f.f, c)?.holds)
    })
}

/// Filtered determinacy bound.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn possing_determinacy(
    p: *const PossingPolytope,
    f: *const PossingPoly,
    m: PossingMode,
    out: *mut u64,
) -> PossingStatus {
    guard(|| {
        let (p, f) = (get(p)?, get(f)?);
        same_dim(p, f)?;
        let r = normalform::determinacy(&p.p, &f.f, mode(m))?;
        let k = r.filtered.ok_or_else(|| Error::Infinite("determinacy".into()))?;
        write(out, k)
    })
}

/// Normal form of `f`; the result is a new handle in the same variables.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn possing_normal_form(
    p: *const PossingPolytope,
    f: *const PossingPoly,
    m: PossingMode,
    out: *mut *mut PossingPoly,
) -> PossingStatus {
    guard(|| {
        let (p, f) = (get(p)?, get(f)?);
        same_dim(p, f)?;
        let nf = normalform::normal_form(&p.p, &f.f, mode(m))?;
        write(out, Box::into_raw(Box::new(PossingPoly { f: nf.normal_form, vars: f.vars.clone() })))
    })
}

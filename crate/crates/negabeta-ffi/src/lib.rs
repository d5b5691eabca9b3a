//! C ABI for the negabeta library.
//!
//! Bases are opaque handles created from the textual polynomial form and
//! freed explicitly. Results cross the boundary as status codes plus
//! out-parameters; structured results are JSON strings released through
//! `nb_string_free`.
//!
//! Pointer contracts are stated on each function: null arguments are
//! rejected with a status code, strings must be valid UTF-8 C strings, and
//! handles must come from this library and be freed exactly once.
#![allow(clippy::missing_safety_doc)]

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use negabeta::base::{isolate_pisot_base, PisotBase};
use negabeta::error::Error;
use negabeta::field::FieldElement;
use negabeta::finiteness::decide_minus_f;
use negabeta::negabase::{expansion, fr_length, FrLength, DEFAULT_STEP_BUDGET};
use negabeta::negarith;
use negabeta::poly::IntPolynomial;

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NbStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    NoRootAboveOne = 4,
    OutOfDomain = 5,
    BudgetExceeded = 6,
    CapExceeded = 7,
    InvalidArgument = 8,
    InternalError = 9,
}

/// Operation selector for the fractional-length queries.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NbOp {
    Sub = 0,
    Add = 1,
}

/// Opaque handle to an isolated base.
pub struct NbBase {
    inner: Arc<PisotBase>,
}

fn status_of(e: &Error) -> NbStatus {
    match e {
        Error::NoRootAboveOne => NbStatus::NoRootAboveOne,
        Error::OutOfDomain => NbStatus::OutOfDomain,
        Error::StepBudgetExceeded(_) => NbStatus::BudgetExceeded,
        Error::CapExceeded(_) => NbStatus::CapExceeded,
        Error::Parse(_) | Error::InvalidPolynomial(_) => NbStatus::ParseError,
        _ => NbStatus::InvalidArgument,
    }
}

unsafe fn read_utf8<'a>(s: *const c_char) -> Result<&'a str, NbStatus> {
    if s.is_null() {
        return Err(NbStatus::NullArgument);
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| NbStatus::InvalidUtf8)
}

fn write_string(out: *mut *mut c_char, s: String) -> NbStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            NbStatus::Ok
        }
        Err(_) => NbStatus::InternalError,
    }
}

fn guarded<F: FnOnce() -> NbStatus>(f: F) -> NbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => NbStatus::InternalError,
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn nb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Short human-readable message for a status code; static, do not free.
#[no_mangle]
pub extern "C" fn nb_status_message(status: NbStatus) -> *const c_char {
    let s: &'static str = match status {
        NbStatus::Ok => "ok\0",
        NbStatus::NullArgument => "null argument\0",
        NbStatus::InvalidUtf8 => "invalid utf-8\0",
        NbStatus::ParseError => "parse error\0",
        NbStatus::NoRootAboveOne => "no real root above 1\0",
        NbStatus::OutOfDomain => "value outside the transformation domain\0",
        NbStatus::BudgetExceeded => "step budget exceeded\0",
        NbStatus::CapExceeded => "state cap exceeded\0",
        NbStatus::InvalidArgument => "invalid argument\0",
        NbStatus::InternalError => "internal error\0",
    };
    s.as_ptr() as *const c_char
}

/// Creates a base from "1,-1,-1,-1" style coefficients (highest degree
/// first). On success writes a handle that must be released with
/// `nb_base_free`.
#[no_mangle]
pub unsafe extern "C" fn nb_base_new(
    poly: *const c_char,
    pisot_check: bool,
    out: *mut *mut NbBase,
) -> NbStatus {
    if out.is_null() {
        return NbStatus::NullArgument;
    }
    let text = match read_utf8(poly) {
        Ok(t) => t,
        Err(s) => return s,
    };
    guarded(|| {
        let p = match IntPolynomial::parse(text) {
            Ok(p) => p,
            Err(e) => return status_of(&e),
        };
        match isolate_pisot_base(&p, pisot_check) {
            Ok(base) => {
                let handle = Box::new(NbBase { inner: base });
                *out = Box::into_raw(handle);
                NbStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a base handle; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn nb_base_free(base: *mut NbBase) {
    if !base.is_null() {
        drop(Box::from_raw(base));
    }
}

/// Degree of the defining polynomial; 0 on null.
#[no_mangle]
pub unsafe extern "C" fn nb_base_degree(base: *const NbBase) -> usize {
    if base.is_null() {
        return 0;
    }
    (*base).inner.degree()
}

/// Whether the Pisot check was requested and succeeded.
#[no_mangle]
pub unsafe extern "C" fn nb_base_is_pisot(base: *const NbBase) -> bool {
    if base.is_null() {
        return false;
    }
    (*base).inner.pisot_certified()
}

/// Decides the negative finiteness property. Writes a JSON object
/// {"verdict": ..., "certificate": ..., "pisot_certified": ...}; release
/// the string with `nb_string_free`.
#[no_mangle]
pub unsafe extern "C" fn nb_finiteness_json(
    base: *const NbBase,
    cap: usize,
    out_json: *mut *mut c_char,
) -> NbStatus {
    if base.is_null() || out_json.is_null() {
        return NbStatus::NullArgument;
    }
    let inner = (*base).inner.clone();
    guarded(|| {
        let v = decide_minus_f(&inner, cap, DEFAULT_STEP_BUDGET);
        let json = serde_json::json!({
            "verdict": v.verdict.as_str(),
            "certificate": v.certificate.to_json(),
            "pisot_certified": v.pisot_certified,
        });
        write_string(out_json, json.to_string())
    })
}

/// Expansion of an element given in "c0 + c1*b + c2*b^2" form. Writes a
/// JSON object {"expansion": {...}, "text": ..., "fr": n|null}.
#[no_mangle]
pub unsafe extern "C" fn nb_expand_json(
    base: *const NbBase,
    expr: *const c_char,
    out_json: *mut *mut c_char,
) -> NbStatus {
    if base.is_null() || out_json.is_null() {
        return NbStatus::NullArgument;
    }
    let text = match read_utf8(expr) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let inner = (*base).inner.clone();
    guarded(|| {
        let x = match FieldElement::parse(&inner, text) {
            Ok(x) => x,
            Err(e) => return status_of(&e),
        };
        let word = match expansion(&x, DEFAULT_STEP_BUDGET) {
            Ok(w) => w,
            Err(e) => return status_of(&e),
        };
        let fr = match fr_length(&x, DEFAULT_STEP_BUDGET) {
            Ok(FrLength::Finite(n)) => serde_json::json!(n),
            Ok(FrLength::NotFinite { .. }) => serde_json::Value::Null,
            Err(e) => return status_of(&e),
        };
        let json = serde_json::json!({
            "expansion": word.to_json(),
            "text": word.text(),
            "fr": fr,
        });
        write_string(out_json, json.to_string())
    })
}

/// Fractional length of an element's expansion; writes -1 when the
/// expansion is not eventually zero.
#[no_mangle]
pub unsafe extern "C" fn nb_fr_length(
    base: *const NbBase,
    expr: *const c_char,
    out_fr: *mut i64,
) -> NbStatus {
    if base.is_null() || out_fr.is_null() {
        return NbStatus::NullArgument;
    }
    let text = match read_utf8(expr) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let inner = (*base).inner.clone();
    guarded(|| {
        let x = match FieldElement::parse(&inner, text) {
            Ok(x) => x,
            Err(e) => return status_of(&e),
        };
        match fr_length(&x, DEFAULT_STEP_BUDGET) {
            Ok(FrLength::Finite(n)) => {
                *out_fr = n as i64;
                NbStatus::Ok
            }
            Ok(FrLength::NotFinite { .. }) => {
                *out_fr = -1;
                NbStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Certified maximal fractional length of x op y over the
/// (-beta)-integers of x^3 - m x^2 - m x - m.
#[no_mangle]
pub unsafe extern "C" fn nb_frmax(m: i64, op: NbOp, out: *mut u64) -> NbStatus {
    if out.is_null() {
        return NbStatus::NullArgument;
    }
    guarded(|| {
        let r = match op {
            NbOp::Sub => negarith::frmax_sub(m),
            NbOp::Add => negarith::frmax_add(m),
        };
        match r {
            Ok(n) => {
                *out = n as u64;
                NbStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Brute-force search over (-beta)-integers of length at most `depth`;
/// a lower bound for the certified value.
#[no_mangle]
pub unsafe extern "C" fn nb_frmax_oracle(
    m: i64,
    depth: usize,
    op: NbOp,
    out: *mut u64,
) -> NbStatus {
    if out.is_null() {
        return NbStatus::NullArgument;
    }
    guarded(|| {
        let fr_op = match op {
            NbOp::Sub => negarith::FrOp::Sub,
            NbOp::Add => negarith::FrOp::Add,
        };
        match negarith::frmax_oracle(m, depth, fr_op) {
            Ok(n) => {
                *out = n as u64;
                NbStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a string returned by this library; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn nb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

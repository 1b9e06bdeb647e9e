//! C ABI over `hyperexact`.
//!
//! Conventions:
//! - Fallible calls return an [`HxStatus`]; results go through out-pointers.
//! - On failure the message is kept per thread; read it with
//!   [`hx_last_error_message`].
//! - Handles are opaque and owned by the caller until passed to their
//!   `_free` function. Strings returned as `*mut c_char` are released with
//!   [`hx_string_free`].
//! - Rationals cross the boundary as text, `p/q` or `p`.
//!
//! # Safety
//!
//! Every pointer argument must be null or valid for the access the function
//! documents. String arguments must be NUL-terminated. Handles must come from
//! this library and must not be used after being freed.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hyperexact::gosper::{definite_sum_via_certificate, gosper_summable, GosperVerdict, HyperTerm};
use hyperexact::hyper::{evaluate, Classification, EvalResult, HGParams};
use hyperexact::identities::{resolve_selector, verify_all, IdentityReport, SuiteConfig, Summary};
use hyperexact::rational::parse_rational;
use hyperexact::{Error, Polynomial, Rational, RationalFunction};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Pole = 5,
    IllDefined = 6,
    Classification = 7,
    NotSummable = 8,
    Invariant = 9,
    IndexOutOfRange = 10,
    Panic = 11,
}

/// Value of a `2F1` evaluation.
pub struct HxEvalResult {
    classification: Classification,
    value: EvalResult,
}

/// Outcome of Gosper's algorithm on a term.
pub struct HxGosper {
    term: HyperTerm,
    verdict: GosperVerdict,
}

/// Reports from a verification run.
pub struct HxReportList {
    reports: Vec<IdentityReport>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn fail(status: HxStatus, msg: impl Into<String>) -> HxStatus {
    set_error(msg);
    status
}

fn status_of(err: &Error) -> HxStatus {
    match err {
        Error::Parse(_) => HxStatus::Parse,
        Error::Domain(_) => HxStatus::Domain,
        Error::Pole(_) => HxStatus::Pole,
        Error::IllDefined(_) => HxStatus::IllDefined,
        Error::Classification { .. } => HxStatus::Classification,
        Error::NotSummable => HxStatus::NotSummable,
        Error::Invariant(_) => HxStatus::Invariant,
    }
}

impl From<Error> for HxStatus {
    fn from(err: Error) -> Self {
        fail(status_of(&err), err.to_string())
    }
}

/// Runs `body` with panics mapped to [`HxStatus::Panic`].
fn guard(body: impl FnOnce() -> Result<(), HxStatus>) -> HxStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => HxStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(HxStatus::Panic, "internal panic"),
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, HxStatus> {
    if p.is_null() {
        return Err(fail(HxStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(HxStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn rational(p: *const c_char) -> Result<Rational, HxStatus> {
    Ok(parse_rational(text(p)?)?)
}

fn owned_string(s: impl Into<String>) -> *mut c_char {
    CString::new(s.into()).map_or(ptr::null_mut(), CString::into_raw)
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), HxStatus> {
    if out.is_null() {
        return Err(fail(HxStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, HxStatus> {
    p.as_ref().ok_or_else(|| fail(HxStatus::NullPointer, "null handle"))
}

/// Last error message on this thread, or null. Free with [`hx_string_free`].
#[no_mangle]
pub extern "C" fn hx_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |m| m.clone().into_raw()))
}

#[no_mangle]
pub unsafe extern "C" fn hx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn hx_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Evaluates `2F1(a, b; c; x)`; non-terminating series are enclosed to
/// width at most `eps`.
#[no_mangle]
pub unsafe extern "C" fn hx_eval(
    a: *const c_char,
    b: *const c_char,
    c: *const c_char,
    x: *const c_char,
    eps: *const c_char,
    out: *mut *mut HxEvalResult,
) -> HxStatus {
    guard(|| {
        let params = HGParams::new(rational(a)?, rational(b)?, rational(c)?, rational(x)?);
        let value = evaluate(&params, &rational(eps)?)?;
        let result = HxEvalResult {
            classification: params.classify(),
            value,
        };
        put(out, Box::into_raw(Box::new(result)))
    })
}

/// 1 for an exact value, 0 for an enclosure or a null handle.
#[no_mangle]
pub unsafe extern "C" fn hx_eval_result_is_exact(r: *const HxEvalResult) -> i32 {
    r.as_ref().map_or(0, |r| matches!(r.value, EvalResult::Exact(_)) as i32)
}

/// Classification name, e.g. `extended-terminating`.
#[no_mangle]
pub unsafe extern "C" fn hx_eval_result_classification(r: *const HxEvalResult) -> *mut c_char {
    r.as_ref()
        .map_or(ptr::null_mut(), |r| owned_string(r.classification.name()))
}

/// Lower end of the value: the exact value itself, or the enclosure's `lo`.
#[no_mangle]
pub unsafe extern "C" fn hx_eval_result_lower(r: *const HxEvalResult) -> *mut c_char {
    r.as_ref().map_or(ptr::null_mut(), |r| match &r.value {
        EvalResult::Exact(v) | EvalResult::Enclosure { lo: v, .. } => owned_string(v.to_string()),
    })
}

/// Upper end of the value: the exact value itself, or the enclosure's `hi`.
#[no_mangle]
pub unsafe extern "C" fn hx_eval_result_upper(r: *const HxEvalResult) -> *mut c_char {
    r.as_ref().map_or(ptr::null_mut(), |r| match &r.value {
        EvalResult::Exact(v) | EvalResult::Enclosure { hi: v, .. } => owned_string(v.to_string()),
    })
}

#[no_mangle]
pub unsafe extern "C" fn hx_eval_result_free(r: *mut HxEvalResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Runs Gosper's algorithm on the term with ratio `num(n)/den(n)` and
/// `t(0) = t0`. Polynomials are comma-separated coefficients, constant first.
/// A term without a hypergeometric anti-difference still succeeds; query it
/// with [`hx_gosper_is_summable`].
#[no_mangle]
pub unsafe extern "C" fn hx_gosper(
    num: *const c_char,
    den: *const c_char,
    t0: *const c_char,
    out: *mut *mut HxGosper,
) -> HxStatus {
    guard(|| {
        let ratio = RationalFunction::new(Polynomial::parse(text(num)?)?, Polynomial::parse(text(den)?)?)?;
        let term = HyperTerm::new(ratio, rational(t0)?);
        let verdict = gosper_summable(&term)?;
        put(out, Box::into_raw(Box::new(HxGosper { term, verdict })))
    })
}

#[no_mangle]
pub unsafe extern "C" fn hx_gosper_is_summable(g: *const HxGosper) -> i32 {
    g.as_ref()
        .map_or(0, |g| matches!(g.verdict, GosperVerdict::Summable(_)) as i32)
}

/// Multi-line text of the normal form, `x(n)` and `R(n)`; null when not summable.
#[no_mangle]
pub unsafe extern "C" fn hx_gosper_certificate(g: *const HxGosper) -> *mut c_char {
    g.as_ref()
        .and_then(|g| g.verdict.certificate())
        .map_or(ptr::null_mut(), |c| owned_string(c.to_string()))
}

/// `sum_{n=n0}^{n1} t(n)` through the certificate.
#[no_mangle]
pub unsafe extern "C" fn hx_gosper_definite_sum(
    g: *const HxGosper,
    n0: u64,
    n1: u64,
    out: *mut *mut c_char,
) -> HxStatus {
    guard(|| {
        let g = handle(g)?;
        let sum = definite_sum_via_certificate(&g.term, n0, n1)?;
        put(out, owned_string(sum.to_string()))
    })
}

#[no_mangle]
pub unsafe extern "C" fn hx_gosper_free(g: *mut HxGosper) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Runs the verification suite for `selector` (an identity id or `all`)
/// with default grids and the given seed.
#[no_mangle]
pub unsafe extern "C" fn hx_verify(selector: *const c_char, seed: u64, out: *mut *mut HxReportList) -> HxStatus {
    guard(|| {
        let sel = text(selector)?;
        let identities =
            resolve_selector(sel).ok_or_else(|| fail(HxStatus::Parse, format!("unknown identity `{sel}`")))?;
        let cfg = SuiteConfig {
            identities,
            seed,
            ..SuiteConfig::default()
        };
        put(
            out,
            Box::into_raw(Box::new(HxReportList {
                reports: verify_all(&cfg),
            })),
        )
    })
}

#[no_mangle]
pub unsafe extern "C" fn hx_report_list_len(l: *const HxReportList) -> usize {
    l.as_ref().map_or(0, |l| l.reports.len())
}

#[no_mangle]
pub unsafe extern "C" fn hx_report_list_passed(l: *const HxReportList) -> usize {
    l.as_ref().map_or(0, |l| Summary::of(&l.reports).passed)
}

/// Report `index` as one line of JSON.
#[no_mangle]
pub unsafe extern "C" fn hx_report_list_json(l: *const HxReportList, index: usize, out: *mut *mut c_char) -> HxStatus {
    guard(|| {
        let report = handle(l)?
            .reports
            .get(index)
            .ok_or_else(|| fail(HxStatus::IndexOutOfRange, format!("no report at index {index}")))?;
        put(out, owned_string(report.to_json_line()))
    })
}

#[no_mangle]
pub unsafe extern "C" fn hx_report_list_free(l: *mut HxReportList) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

//! C ABI for `qmock`.
//!
//! Series are returned as opaque `QmSeries` handles that the caller releases
//! with `qm_series_free`. Every fallible function returns a `QmStatus`; on
//! failure `qm_last_error_message` describes the error for the calling
//! thread. Strings returned by the library are released with `qm_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qmock::mocktheta::{closed_b, closed_c, f_recurrence, g2_series, g3_series};
use qmock::partitions::{count, Family, FamilyParams};
use qmock::probability::{exact_report, g2_real, mc_estimate, ProbReport, ProbabilityParams};
use qmock::qseries::{Monomial, TruncatedSeries};
use qmock::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QmStatus {
    Ok = 0,
    InvalidParams = 1,
    BadSpecialization = 2,
    ToleranceNotReached = 3,
    NullPointer = 4,
    OutOfRange = 5,
    Overflow = 6,
    InvalidUtf8 = 7,
    Internal = 8,
}

/// Opaque truncated power series.
pub struct QmSeries(TruncatedSeries);

/// Probability report; fields that do not apply are NaN.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QmProbResult {
    pub prob_w: f64,
    pub prob_x: f64,
    pub cond_w_given_x: f64,
    pub cond_part2: f64,
    pub g2: f64,
    pub abs_err_part1: f64,
    pub abs_err_part2: f64,
    pub mc_stderr: f64,
    pub tail_bound: f64,
    pub pipeline_gap: f64,
}

impl From<&ProbReport> for QmProbResult {
    fn from(r: &ProbReport) -> Self {
        QmProbResult {
            prob_w: r.prob_w,
            prob_x: r.prob_x,
            cond_w_given_x: r.cond_w_given_x,
            cond_part2: r.cond_part2,
            g2: r.g2,
            abs_err_part1: r.abs_err_part1,
            abs_err_part2: r.abs_err_part2,
            mc_stderr: r.mc_stderr.unwrap_or(f64::NAN),
            tail_bound: r.tail_bound.unwrap_or(f64::NAN),
            pipeline_gap: r.exact.as_ref().map_or(f64::NAN, |e| e.pipeline_gap),
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: QmStatus, msg: impl Into<String>) -> QmStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> QmStatus {
    let status = match e {
        Error::BadSpecialization(_) => QmStatus::BadSpecialization,
        Error::ToleranceNotReached { .. } | Error::ZeroConditioningEvent => {
            QmStatus::ToleranceNotReached
        }
        _ => QmStatus::InvalidParams,
    };
    fail(status, e.to_string())
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), QmStatus>) -> QmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QmStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(QmStatus::Internal, "internal panic"),
    }
}

fn monomial(sign: i32, exponent: u32) -> Result<Monomial, QmStatus> {
    Monomial::new(i64::from(sign), exponent as usize).map_err(from_error)
}

fn params(d: u32, r: u32) -> Result<FamilyParams, QmStatus> {
    FamilyParams::new(d, r).map_err(from_error)
}

unsafe fn put_series(out: *mut *mut QmSeries, s: TruncatedSeries) -> Result<(), QmStatus> {
    *out = Box::into_raw(Box::new(QmSeries(s)));
    Ok(())
}

fn check_out<T>(out: *mut T) -> Result<(), QmStatus> {
    if out.is_null() {
        Err(fail(QmStatus::NullPointer, "output pointer is null"))
    } else {
        Ok(())
    }
}

unsafe fn series_ref<'a>(s: *const QmSeries) -> Result<&'a TruncatedSeries, QmStatus> {
    s.as_ref()
        .map(|s| &s.0)
        .ok_or_else(|| fail(QmStatus::NullPointer, "series handle is null"))
}

/// Message for the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}

/// Generating function of the overpartitions counted by `B`, to order `order`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn qm_series_closed_b(
    d: u32,
    r: u32,
    order: usize,
    out: *mut *mut QmSeries,
) -> QmStatus {
    guard(|| {
        check_out(out)?;
        let p = params(d, r)?;
        put_series(out, closed_b(p, order))
    })
}

/// Generating function of the overpartitions counted by `C`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn qm_series_closed_c(
    d: u32,
    r: u32,
    order: usize,
    out: *mut *mut QmSeries,
) -> QmStatus {
    guard(|| {
        check_out(out)?;
        let p = params(d, r)?;
        put_series(out, closed_c(p, order))
    })
}

/// `f(x0; q)` from the functional equation, `x0 = sign * q^exponent`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn qm_series_f(
    d: u32,
    r: u32,
    x0_sign: i32,
    x0_exponent: u32,
    order: usize,
    out: *mut *mut QmSeries,
) -> QmStatus {
    guard(|| {
        check_out(out)?;
        let p = params(d, r)?;
        let x0 = monomial(x0_sign, x0_exponent)?;
        put_series(out, f_recurrence(x0, p, order))
    })
}

/// `g2(x; q^step)` with `x = sign * q^exponent`, `1 <= exponent < step`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn qm_series_g2(
    sign: i32,
    exponent: u32,
    step: u32,
    order: usize,
    out: *mut *mut QmSeries,
) -> QmStatus {
    guard(|| {
        check_out(out)?;
        let x = monomial(sign, exponent)?;
        put_series(out, g2_series(x, step as usize, order).map_err(from_error)?)
    })
}

/// `g3(x; q^step)` with `x = sign * q^exponent`, `1 <= exponent < step`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn qm_series_g3(
    sign: i32,
    exponent: u32,
    step: u32,
    order: usize,
    out: *mut *mut QmSeries,
) -> QmStatus {
    guard(|| {
        check_out(out)?;
        let x = monomial(sign, exponent)?;
        put_series(out, g3_series(x, step as usize, order).map_err(from_error)?)
    })
}

/// Truncation order of `s` (0 for NULL).
///
/// # Safety
/// `s` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qm_series_order(s: *const QmSeries) -> usize {
    s.as_ref().map_or(0, |s| s.0.order())
}

/// Coefficient of `q^n` as a 64-bit integer.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qm_series_coeff_i64(
    s: *const QmSeries,
    n: usize,
    out: *mut i64,
) -> QmStatus {
    guard(|| {
        check_out(out)?;
        let s = series_ref(s)?;
        let c = s.get(n).ok_or_else(|| {
            fail(
                QmStatus::OutOfRange,
                format!("index {n} beyond order {}", s.order()),
            )
        })?;
        *out = i64::try_from(c).map_err(|_| {
            fail(
                QmStatus::Overflow,
                format!("coefficient {c} does not fit in 64 bits"),
            )
        })?;
        Ok(())
    })
}

/// Coefficient of `q^n` as a decimal string, or NULL on error. Release with
/// `qm_string_free`.
///
/// # Safety
/// `s` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qm_series_coeff_string(s: *const QmSeries, n: usize) -> *mut c_char {
    let mut result = ptr::null_mut();
    guard(|| {
        let s = series_ref(s)?;
        let c = s.get(n).ok_or_else(|| {
            fail(
                QmStatus::OutOfRange,
                format!("index {n} beyond order {}", s.order()),
            )
        })?;
        result = CString::new(c.to_string()).expect("digits only").into_raw();
        Ok(())
    });
    result
}

/// Releases a series handle. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qm_series_free(s: *mut QmSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of members of size `n` in the named family (`"obar-b"`,
/// `"obar-c"`, `"obar-e"`, `"schur-b"`, `"schur-c"`, `"schur-e"`,
/// `"schur-b-matrix"`); `parts < 0` counts all lengths.
///
/// # Safety
/// `family` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qm_count(
    family: *const c_char,
    d: u32,
    r: u32,
    n: u32,
    parts: i64,
    out: *mut u64,
) -> QmStatus {
    guard(|| {
        check_out(out)?;
        if family.is_null() {
            return Err(fail(QmStatus::NullPointer, "family name is null"));
        }
        let name = CStr::from_ptr(family)
            .to_str()
            .map_err(|_| fail(QmStatus::InvalidUtf8, "family name is not UTF-8"))?;
        let family: Family = name.parse().map_err(from_error)?;
        let p = params(d, r)?;
        let m = usize::try_from(parts).ok();
        *out = count(family, p, n, m);
        Ok(())
    })
}

fn prob_params(d: u32, r: u32, q: f64) -> Result<ProbabilityParams, QmStatus> {
    ProbabilityParams::new(params(d, r)?, q).map_err(from_error)
}

/// `g2(-q^r; q^d)` at real `0 < q < 1`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qm_g2_real(d: u32, r: u32, q: f64, out: *mut f64) -> QmStatus {
    guard(|| {
        check_out(out)?;
        *out = g2_real(&prob_params(d, r, q)?);
        Ok(())
    })
}

/// Both conditional identities through the exact pipelines.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qm_prob_exact(d: u32, r: u32, q: f64, out: *mut QmProbResult) -> QmStatus {
    guard(|| {
        check_out(out)?;
        let rep = exact_report(&prob_params(d, r, q)?).map_err(from_error)?;
        *out = QmProbResult::from(&rep);
        Ok(())
    })
}

/// Seeded Monte Carlo estimate of both conditional probabilities, with the
/// horizon chosen from the tail bound.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qm_prob_mc(
    d: u32,
    r: u32,
    q: f64,
    samples: u64,
    seed: u64,
    out: *mut QmProbResult,
) -> QmStatus {
    guard(|| {
        check_out(out)?;
        let mut p = prob_params(d, r, q)?;
        p.mc.samples = samples;
        p.mc.seed = seed;
        let rep = mc_estimate(&p).map_err(from_error)?;
        *out = QmProbResult::from(&rep);
        Ok(())
    })
}

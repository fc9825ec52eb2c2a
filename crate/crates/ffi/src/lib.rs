//! C ABI for the bound computations.
//!
//! Vectors cross the boundary as arrays of doubled coordinates (`2 x_i`), so
//! half-integers stay exact. Every call returns an [`StStatus`]; on failure
//! [`st_last_error_message`] describes the error on the calling thread.
//! Panics are caught and reported as [`StStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use schubert_tangent::error::Error;
use schubert_tangent::{
    cli, tangent_bounds, CartanElement, Characteristic, HalfIntVector, Rational, RootDatum, SearchSet, Series,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    PreconditionFailed = 3,
    Internal = 4,
    Panic = 5,
}

/// Opaque handle to a root datum.
pub struct StDatum {
    datum: RootDatum,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> StStatus {
    match e {
        Error::NotBelow { .. } | Error::NotDominant { .. } | Error::EmptyPairSet { .. } | Error::ZeroCartan => {
            StStatus::PreconditionFailed
        }
        Error::Invariant(_) | Error::CapExceeded { .. } => StStatus::Internal,
        _ => StStatus::InvalidArgument,
    }
}

struct Failure(StStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(StStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> StStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            StStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("panic: {msg}"));
            StStatus::Panic
        }
    }
}

unsafe fn datum_ref<'a>(d: *const StDatum) -> Result<&'a RootDatum, Failure> {
    d.as_ref().map(|d| &d.datum).ok_or_else(|| null("datum"))
}

unsafe fn vector(p: *const i64, len: usize, what: &str, datum: &RootDatum) -> Result<HalfIntVector, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    if len != datum.dim() {
        return Err(Failure(
            StStatus::InvalidArgument,
            format!("{what} has {len} coordinates, expected {}", datum.dim()),
        ));
    }
    Ok(HalfIntVector::from_doubled(slice::from_raw_parts(p, len).to_vec()))
}

unsafe fn search_set(datum: &RootDatum, p: *const usize, len: usize) -> Result<SearchSet, Failure> {
    if len == 0 {
        return Ok(SearchSet::all_fundamental(datum)?);
    }
    if p.is_null() {
        return Err(null("search"));
    }
    Ok(SearchSet::from_one_based(datum, slice::from_raw_parts(p, len))?)
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = v;
    Ok(())
}

/// Creates a datum for series `'A'`, `'B'`, `'C'` or `'D'` of the given rank.
///
/// # Safety
/// `out` must be valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn st_datum_new(series: c_char, rank: usize, out: *mut *mut StDatum) -> StStatus {
    guard(|| {
        let letter = (series as u8 as char).to_string();
        let series: Series = letter.parse()?;
        let datum = RootDatum::from_parts(series, rank)?;
        write(out, Box::into_raw(Box::new(StDatum { datum })))
    })
}

/// Frees a datum. Null is ignored.
///
/// # Safety
/// `d` must come from [`st_datum_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn st_datum_free(d: *mut StDatum) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of ambient coordinates (rank + 1 in type A).
///
/// # Safety
/// `d` must be a live datum and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn st_datum_dim(d: *const StDatum, out: *mut usize) -> StStatus {
    guard(|| write(out, datum_ref(d)?.dim()))
}

/// Number of roots.
///
/// # Safety
/// `d` must be a live datum and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn st_root_count(d: *const StDatum, out: *mut usize) -> StStatus {
    guard(|| write(out, datum_ref(d)?.roots().len()))
}

/// Index of the simple root `alpha_i` (one-based `i`), or of `-alpha_i` when
/// `negative` is true.
///
/// # Safety
/// `d` must be a live datum and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn st_simple_root_index(
    d: *const StDatum,
    i: usize,
    negative: bool,
    out: *mut usize,
) -> StStatus {
    guard(|| {
        let datum = datum_ref(d)?;
        if i == 0 || i > datum.rank() {
            return Err(Failure(
                StStatus::InvalidArgument,
                format!("simple root index {i} outside 1..={}", datum.rank()),
            ));
        }
        let idx = datum.simple_root_index(i - 1);
        write(out, if negative { datum.negative_of(idx) } else { idx })
    })
}

/// `k_alpha` for the root with the given index.
///
/// # Safety
/// `lambda` and `mu` must point to `len` readable values; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn st_k_alpha(
    d: *const StDatum,
    lambda_doubled: *const i64,
    mu_doubled: *const i64,
    len: usize,
    root: usize,
    out: *mut i64,
) -> StStatus {
    guard(|| {
        let datum = datum_ref(d)?;
        let lambda = vector(lambda_doubled, len, "lambda", datum)?;
        let mu = vector(mu_doubled, len, "mu", datum)?;
        write(out, tangent_bounds::k_alpha(datum, &lambda, &mu, root)?)
    })
}

/// `l_alpha` over the search set given by one-based fundamental weight
/// indices (all fundamental weights when `search_len` is 0).
///
/// # Safety
/// Pointer arguments must be valid for their stated lengths; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn st_l_alpha(
    d: *const StDatum,
    lambda_doubled: *const i64,
    mu_doubled: *const i64,
    len: usize,
    root: usize,
    search: *const usize,
    search_len: usize,
    out: *mut i64,
) -> StStatus {
    guard(|| {
        let datum = datum_ref(d)?;
        let lambda = vector(lambda_doubled, len, "lambda", datum)?;
        let mu = vector(mu_doubled, len, "mu", datum)?;
        let search = search_set(datum, search, search_len)?;
        write(out, tangent_bounds::l_alpha(datum, &lambda, &mu, root, &search)?)
    })
}

/// `l_H` for `H = sum m_beta H_beta` with `m_beta = num[i] / den[i]`.
///
/// # Safety
/// `num` and `den` must hold `rank` values; other pointers as in [`st_l_alpha`].
#[no_mangle]
pub unsafe extern "C" fn st_l_h(
    d: *const StDatum,
    lambda_doubled: *const i64,
    mu_doubled: *const i64,
    len: usize,
    num: *const i64,
    den: *const i64,
    search: *const usize,
    search_len: usize,
    characteristic: u64,
    out: *mut i64,
) -> StStatus {
    guard(|| {
        let datum = datum_ref(d)?;
        let lambda = vector(lambda_doubled, len, "lambda", datum)?;
        let mu = vector(mu_doubled, len, "mu", datum)?;
        if num.is_null() || den.is_null() {
            return Err(null("H coefficients"));
        }
        let n = datum.rank();
        let (num, den) = (slice::from_raw_parts(num, n), slice::from_raw_parts(den, n));
        if den.contains(&0) {
            return Err(Failure(StStatus::InvalidArgument, "zero denominator in H".into()));
        }
        let m: Vec<Rational> = num.iter().zip(den).map(|(&a, &b)| Rational::new(a, b)).collect();
        let h = CartanElement::from_coroot_coefficients(datum, &m)?;
        let ch = Characteristic::new(characteristic)?;
        let search = search_set(datum, search, search_len)?;
        write(out, tangent_bounds::l_h(datum, &lambda, &mu, &h, &search, ch)?)
    })
}

/// Runs a command-line invocation in process. `argv` excludes the program
/// name. The report (JSON or TSV, as requested) is returned in `out_report`
/// and must be released with [`st_string_free`]; `out_exit` receives the
/// command's exit code.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_run_command(
    argv: *const *const c_char,
    argc: usize,
    out_report: *mut *mut c_char,
    out_exit: *mut i32,
) -> StStatus {
    guard(|| {
        if argv.is_null() && argc > 0 {
            return Err(null("argv"));
        }
        let mut args = vec!["schubert-tangent".to_string()];
        for i in 0..argc {
            let p = *argv.add(i);
            if p.is_null() {
                return Err(null("argument"));
            }
            let s = CStr::from_ptr(p)
                .to_str()
                .map_err(|_| Failure(StStatus::InvalidArgument, format!("argument {i} is not UTF-8")))?;
            args.push(s.to_string());
        }
        let outcome = cli::run(args);
        let text = if outcome.stdout.is_empty() {
            outcome.stderr
        } else {
            outcome.stdout
        };
        let c = CString::new(text).map_err(|_| Failure(StStatus::Internal, "report contains NUL".into()))?;
        if out_report.is_null() || out_exit.is_null() {
            return Err(null("output pointer"));
        }
        *out_exit = outcome.code;
        *out_report = c.into_raw();
        Ok(())
    })
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn st_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message of the last failed call on this thread, or an empty string.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn st_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

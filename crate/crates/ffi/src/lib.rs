//! C interface to the `dfsgf` engine.
//!
//! Conventions:
//!
//! * Every fallible function returns a [`DfsgfStatus`]; on failure a message
//!   is available from [`dfsgf_last_error`] on the same thread.
//! * Results come back through out-pointers. Strings returned this way are
//!   owned by the caller and must be released with [`dfsgf_string_free`].
//! * Rationals cross the boundary as `"a/b"` strings.
//! * Handles are opaque. An engine handle must not be used from two threads
//!   at once; distinct handles are independent.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dfsgf::algebra::{format_rational, parse_rational, Rational};
use dfsgf::arcs::Role;
use dfsgf::forest::{dist_coeffs, mean_arc_count, pgf_arc_count, verify_forward_back_law, DistributionTable, ModelParams};
use dfsgf::recursions::{Family, Recursions};
use dfsgf::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DfsgfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Pole = 3,
    InsufficientData = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DfsgfRole {
    Loop = 0,
    Forward = 1,
    Back = 2,
    Cross = 3,
    Tree = 4,
}

impl From<DfsgfRole> for Role {
    fn from(r: DfsgfRole) -> Role {
        match r {
            DfsgfRole::Loop => Role::L,
            DfsgfRole::Forward => Role::F,
            DfsgfRole::Back => Role::B,
            DfsgfRole::Cross => Role::C,
            DfsgfRole::Tree => Role::T,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DfsgfFamily {
    G = 0,
    Gx = 1,
    Gy = 2,
    GyAlt = 3,
}

impl From<DfsgfFamily> for Family {
    fn from(f: DfsgfFamily) -> Family {
        match f {
            DfsgfFamily::G => Family::G,
            DfsgfFamily::Gx => Family::GX,
            DfsgfFamily::Gy => Family::GY,
            DfsgfFamily::GyAlt => Family::GYAlt,
        }
    }
}

/// Memo tables of all recursion families.
pub struct DfsgfEngine {
    rec: Recursions,
}

/// An exact distribution table of one arc count.
pub struct DfsgfDistribution {
    table: DistributionTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

type Failure = (DfsgfStatus, String);

fn from_error(e: Error) -> Failure {
    let status = match e {
        Error::PoleAtPoint | Error::PoleAtOrigin => DfsgfStatus::Pole,
        Error::InsufficientData(_) => DfsgfStatus::InsufficientData,
        _ => DfsgfStatus::InvalidArgument,
    };
    (status, e.to_string())
}

fn null(what: &str) -> Failure {
    (DfsgfStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DfsgfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DfsgfStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            DfsgfStatus::Panic
        }
    }
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| (DfsgfStatus::InvalidArgument, e.to_string()))?;
    write_out(out, c.into_raw())
}

unsafe fn read_p(p: *const c_char) -> Result<Rational, Failure> {
    if p.is_null() {
        return Err(null("p"));
    }
    let s = CStr::from_ptr(p).to_str().map_err(|e| (DfsgfStatus::InvalidArgument, e.to_string()))?;
    parse_rational(s).map_err(from_error)
}

unsafe fn params(n: usize, p: *const c_char) -> Result<ModelParams, Failure> {
    ModelParams::new(n, read_p(p)?).map_err(from_error)
}

fn check_n(n: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err((DfsgfStatus::InvalidArgument, "n must be at least 1".into()));
    }
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dfsgf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dfsgf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn dfsgf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// New engine with empty memo tables. Release with [`dfsgf_engine_free`].
#[no_mangle]
pub extern "C" fn dfsgf_engine_new(reduce: bool) -> *mut DfsgfEngine {
    Box::into_raw(Box::new(DfsgfEngine { rec: Recursions::new(reduce) }))
}

/// # Safety
/// `engine` must come from [`dfsgf_engine_new`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn dfsgf_engine_free(engine: *mut DfsgfEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

unsafe fn engine_check(
    engine: *mut DfsgfEngine,
    n: usize,
    out: *mut bool,
    check: fn(&mut Recursions, usize) -> bool,
) -> DfsgfStatus {
    guard(|| {
        let e = engine.as_mut().ok_or_else(|| null("engine"))?;
        check_n(n)?;
        write_out(out, check(&mut e.rec, n))
    })
}

/// Whether forward and back arcs are equidistributed on `n` vertices.
///
/// # Safety
/// `engine` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dfsgf_engine_verify_knuth(engine: *mut DfsgfEngine, n: usize, out: *mut bool) -> DfsgfStatus {
    engine_check(engine, n, out, Recursions::verify_knuth)
}

/// Whether `(L,F,B+C,T)` and `(L,B,F+C,T)` have the same joint law.
///
/// # Safety
/// `engine` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dfsgf_engine_verify_extended(
    engine: *mut DfsgfEngine,
    n: usize,
    out: *mut bool,
) -> DfsgfStatus {
    engine_check(engine, n, out, Recursions::verify_extended)
}

/// Whether the two recursions for `GY_n` agree.
///
/// # Safety
/// `engine` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dfsgf_engine_check_gy_recursions(
    engine: *mut DfsgfEngine,
    n: usize,
    out: *mut bool,
) -> DfsgfStatus {
    engine_check(engine, n, out, Recursions::check_gy_recursions)
}

/// Entry `n` of a family as JSON `{"numerator": [...], "factors": [...]}`.
///
/// # Safety
/// `engine` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dfsgf_engine_entry_json(
    engine: *mut DfsgfEngine,
    family: DfsgfFamily,
    n: usize,
    out: *mut *mut c_char,
) -> DfsgfStatus {
    guard(|| {
        let e = engine.as_mut().ok_or_else(|| null("engine"))?;
        check_n(n)?;
        let f = e.rec.table(family.into()).get(n);
        let json = serde_json::to_string(&*f).map_err(|e| (DfsgfStatus::Panic, e.to_string()))?;
        write_string(out, json)
    })
}

/// Exact law of one arc count for `n` vertices and outdegree parameter `p`
/// (`"a/b"`), through `k = kmax`. Release with [`dfsgf_distribution_free`].
///
/// # Safety
/// `p` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dfsgf_distribution_new(
    n: usize,
    p: *const c_char,
    role: DfsgfRole,
    kmax: usize,
    out: *mut *mut DfsgfDistribution,
) -> DfsgfStatus {
    guard(|| {
        let pr = params(n, p)?;
        let pgf = pgf_arc_count(&pr, role.into()).map_err(from_error)?;
        let table = dist_coeffs(&pgf, kmax).map_err(from_error)?;
        write_out(out, Box::into_raw(Box::new(DfsgfDistribution { table })))
    })
}

/// # Safety
/// `dist` must come from [`dfsgf_distribution_new`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn dfsgf_distribution_free(dist: *mut DfsgfDistribution) {
    if !dist.is_null() {
        drop(Box::from_raw(dist));
    }
}

/// Number of tabulated probabilities (`kmax + 1`); 0 for NULL.
///
/// # Safety
/// `dist` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn dfsgf_distribution_len(dist: *const DfsgfDistribution) -> usize {
    dist.as_ref().map_or(0, |d| d.table.probs.len())
}

/// `P(count = k)` as `"a/b"`.
///
/// # Safety
/// `dist` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dfsgf_distribution_prob(
    dist: *const DfsgfDistribution,
    k: usize,
    out: *mut *mut c_char,
) -> DfsgfStatus {
    guard(|| {
        let d = dist.as_ref().ok_or_else(|| null("distribution"))?;
        let p = d.table.probs.get(k).ok_or_else(|| {
            (DfsgfStatus::InvalidArgument, format!("k = {k} is beyond the table"))
        })?;
        write_string(out, format_rational(p))
    })
}

/// `P(count > kmax)` as `"a/b"`.
///
/// # Safety
/// `dist` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dfsgf_distribution_tail(dist: *const DfsgfDistribution, out: *mut *mut c_char) -> DfsgfStatus {
    guard(|| {
        let d = dist.as_ref().ok_or_else(|| null("distribution"))?;
        write_string(out, format_rational(&d.table.tail))
    })
}

/// The table as JSON `{"n", "p", "role", "coeffs": [{"k", "prob"}], "tail"}`.
///
/// # Safety
/// `dist` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dfsgf_distribution_json(dist: *const DfsgfDistribution, out: *mut *mut c_char) -> DfsgfStatus {
    guard(|| {
        let d = dist.as_ref().ok_or_else(|| null("distribution"))?;
        let json = serde_json::to_string(&d.table).map_err(|e| (DfsgfStatus::Panic, e.to_string()))?;
        write_string(out, json)
    })
}

/// Exact mean of one arc count as `"a/b"`.
///
/// # Safety
/// `p` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dfsgf_mean_arc_count(
    n: usize,
    p: *const c_char,
    role: DfsgfRole,
    out: *mut *mut c_char,
) -> DfsgfStatus {
    guard(|| {
        let pr = params(n, p)?;
        let m = mean_arc_count(&pr, role.into()).map_err(from_error)?;
        write_string(out, format_rational(&m))
    })
}

/// Whether `F` and `B` have the same law at these parameters.
///
/// # Safety
/// `p` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dfsgf_verify_forward_back_law(n: usize, p: *const c_char, out: *mut bool) -> DfsgfStatus {
    guard(|| {
        let pr = params(n, p)?;
        write_out(out, verify_forward_back_law(&pr).map_err(from_error)?)
    })
}

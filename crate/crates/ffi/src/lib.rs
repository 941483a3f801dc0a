//! C ABI over `sparse-f2`.
//!
//! Objects cross the boundary as opaque handles (`Sf2Graph`, `Sf2System`,
//! `Sf2Rational`) created and destroyed by this library. Every entry point
//! returns an [`Sf2Status`]; on failure a message is kept per thread and read
//! with [`sf2_last_error_message`]. Panics are caught and reported as
//! `SF2_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sparse_f2::closed_forms::{cycle_q_conjecture, path_q, star_q};
use sparse_f2::monte_carlo::{mc_q, McConfig};
use sparse_f2::oracle::{oracle_q_with, OracleConfig};
use sparse_f2::rational::to_f64;
use sparse_f2::sweep::is_consistent;
use sparse_f2::{
    backtrack, dimacs, families, tree_dp, Error, Hypergraph, RandomSource, Rational, SystemInstance,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sf2Status {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    CapExceeded = 4,
    NotAForest = 5,
    InvariantViolation = 6,
    Panic = 7,
}

/// Hypergraph handle.
pub struct Sf2Graph(Hypergraph);

/// Equation system handle.
pub struct Sf2System(SystemInstance);

/// Exact rational handle.
pub struct Sf2Rational(Rational);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> Sf2Status {
    match e {
        Error::CapExceeded { .. } => Sf2Status::CapExceeded,
        Error::Parse(_) => Sf2Status::Parse,
        Error::NotATree(_) | Error::NotAForest(_) => Sf2Status::NotAForest,
        Error::InvariantViolation(_) => Sf2Status::InvariantViolation,
        _ => Sf2Status::InvalidArgument,
    }
}

enum Fail {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> Sf2Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            Sf2Status::Ok
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            Sf2Status::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            Sf2Status::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    // SAFETY: caller passes a handle produced by this library or null.
    unsafe { p.as_ref() }.ok_or(Fail::Null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T, what: &'static str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null(what));
    }
    // SAFETY: `out` is non-null and writable per the caller contract.
    unsafe { *out = Box::into_raw(Box::new(value)) };
    Ok(())
}

unsafe fn c_str<'a>(s: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail::Null(what));
    }
    // SAFETY: non-null, NUL-terminated per the caller contract.
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|e| Fail::Lib(Error::Parse(format!("{what} is not UTF-8: {e}"))))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sf2_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sf2_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sf2_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by `CString::into_raw` in this crate.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Builds a hypergraph on `n` variables from `m` edges in CSR form: edge `i`
/// is `vars[offsets[i] .. offsets[i + 1]]`, so `offsets` has `m + 1` entries.
///
/// # Safety
/// `offsets` must hold `m + 1` readable values and `vars` at least
/// `offsets[m]`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sf2_graph_from_edges(
    n: usize,
    m: usize,
    offsets: *const usize,
    vars: *const usize,
    out: *mut *mut Sf2Graph,
) -> Sf2Status {
    guard(|| {
        if offsets.is_null() {
            return Err(Fail::Null("offsets"));
        }
        // SAFETY: `offsets` holds m + 1 entries per the contract.
        let offs = unsafe { std::slice::from_raw_parts(offsets, m + 1) };
        let total = offs[m];
        if total > 0 && vars.is_null() {
            return Err(Fail::Null("vars"));
        }
        let flat: &[usize] = if total == 0 {
            &[]
        } else {
            // SAFETY: `vars` holds offsets[m] entries per the contract.
            unsafe { std::slice::from_raw_parts(vars, total) }
        };
        let mut edges = Vec::with_capacity(m);
        for i in 0..m {
            let (a, b) = (offs[i], offs[i + 1]);
            if a > b || b > total {
                return Err(
                    Error::InvalidArgument(format!("offsets not monotone at edge {i}")).into(),
                );
            }
            edges.push(flat[a..b].to_vec());
        }
        let g = sparse_f2::canonicalize(edges, n)?;
        // SAFETY: `out` checked inside `put`.
        unsafe { put(out, Sf2Graph(g), "out") }
    })
}

/// Parses a graph from JSON or edge-list text.
///
/// # Safety
/// `text` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf2_graph_parse(
    text: *const c_char,
    out: *mut *mut Sf2Graph,
) -> Sf2Status {
    guard(|| {
        // SAFETY: per contract.
        let t = unsafe { c_str(text, "text") }?;
        let g = Hypergraph::parse(t)?;
        // SAFETY: per contract.
        unsafe { put(out, Sf2Graph(g), "out") }
    })
}

/// Built-in family such as `"path:3"` or `"cycle:5"`.
///
/// # Safety
/// `name` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf2_graph_family(
    name: *const c_char,
    out: *mut *mut Sf2Graph,
) -> Sf2Status {
    guard(|| {
        // SAFETY: per contract.
        let s = unsafe { c_str(name, "name") }?;
        let g = families::by_name(s)?;
        // SAFETY: per contract.
        unsafe { put(out, Sf2Graph(g), "out") }
    })
}

/// Number of variables, or 0 for NULL.
///
/// # Safety
/// `g` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sf2_graph_n(g: *const Sf2Graph) -> usize {
    // SAFETY: per contract.
    unsafe { g.as_ref() }.map_or(0, |g| g.0.n())
}

/// Number of edges, or 0 for NULL.
///
/// # Safety
/// `g` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sf2_graph_m(g: *const Sf2Graph) -> usize {
    // SAFETY: per contract.
    unsafe { g.as_ref() }.map_or(0, |g| g.0.m())
}

/// # Safety
/// `g` must come from this library and not have been freed; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn sf2_graph_free(g: *mut Sf2Graph) {
    if !g.is_null() {
        // SAFETY: produced by `Box::into_raw`.
        drop(unsafe { Box::from_raw(g) });
    }
}

/// Exact consistency probability by exhaustive enumeration. `threads == 0`
/// uses the default pool.
///
/// # Safety
/// `g` live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf2_oracle_q(
    g: *const Sf2Graph,
    threads: usize,
    out: *mut *mut Sf2Rational,
) -> Sf2Status {
    guard(|| {
        // SAFETY: per contract.
        let g = unsafe { deref(g, "graph") }?;
        let cfg = OracleConfig {
            threads: (threads > 0).then_some(threads),
            ..OracleConfig::default()
        };
        let q = oracle_q_with(&g.0, false, &cfg)?.q;
        // SAFETY: per contract.
        unsafe { put(out, Sf2Rational(q), "out") }
    })
}

/// Exact consistency probability of a 2-uniform forest.
///
/// # Safety
/// `g` live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf2_forest_q(g: *const Sf2Graph, out: *mut *mut Sf2Rational) -> Sf2Status {
    guard(|| {
        // SAFETY: per contract.
        let g = unsafe { deref(g, "graph") }?;
        let q = tree_dp::forest_q(&g.0)?;
        // SAFETY: per contract.
        unsafe { put(out, Sf2Rational(q), "out") }
    })
}

/// Closed-form `q` of the path with `n` edges.
///
/// # Safety
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf2_path_q(n: usize, out: *mut *mut Sf2Rational) -> Sf2Status {
    // SAFETY: per contract.
    guard(|| unsafe { put(out, Sf2Rational(path_q(n)?), "out") })
}

/// Closed-form `q` of the star with `n` edges.
///
/// # Safety
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf2_star_q(n: usize, out: *mut *mut Sf2Rational) -> Sf2Status {
    // SAFETY: per contract.
    guard(|| unsafe { put(out, Sf2Rational(star_q(n)?), "out") })
}

/// Cycle formula value for `n >= 3` edges.
///
/// # Safety
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf2_cycle_q(n: usize, out: *mut *mut Sf2Rational) -> Sf2Status {
    // SAFETY: per contract.
    guard(|| unsafe { put(out, Sf2Rational(cycle_q_conjecture(n)?), "out") })
}

/// Nearest double, or NaN for NULL.
///
/// # Safety
/// `r` live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sf2_rational_to_f64(r: *const Sf2Rational) -> f64 {
    // SAFETY: per contract.
    unsafe { r.as_ref() }.map_or(f64::NAN, |r| to_f64(&r.0))
}

/// Decimal numerator; free with [`sf2_string_free`]. NULL for NULL.
///
/// # Safety
/// `r` live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sf2_rational_numerator(r: *const Sf2Rational) -> *mut c_char {
    // SAFETY: per contract.
    unsafe { r.as_ref() }.map_or(ptr::null_mut(), |r| owned_string(r.0.numer().to_string()))
}

/// Decimal denominator; free with [`sf2_string_free`]. NULL for NULL.
///
/// # Safety
/// `r` live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sf2_rational_denominator(r: *const Sf2Rational) -> *mut c_char {
    // SAFETY: per contract.
    unsafe { r.as_ref() }.map_or(ptr::null_mut(), |r| owned_string(r.0.denom().to_string()))
}

/// Exact equality of two rationals; false if either is NULL.
///
/// # Safety
/// Both live handles or NULL.
#[no_mangle]
pub unsafe extern "C" fn sf2_rational_equal(a: *const Sf2Rational, b: *const Sf2Rational) -> bool {
    // SAFETY: per contract.
    match unsafe { (a.as_ref(), b.as_ref()) } {
        (Some(a), Some(b)) => a.0 == b.0,
        _ => false,
    }
}

/// # Safety
/// `r` must come from this library and not have been freed; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn sf2_rational_free(r: *mut Sf2Rational) {
    if !r.is_null() {
        // SAFETY: produced by `Box::into_raw`.
        drop(unsafe { Box::from_raw(r) });
    }
}

/// Uniform random system on `g` drawn from `seed`.
///
/// # Safety
/// `g` live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf2_system_random(
    g: *const Sf2Graph,
    seed: u64,
    out: *mut *mut Sf2System,
) -> Sf2Status {
    guard(|| {
        // SAFETY: per contract.
        let g = unsafe { deref(g, "graph") }?;
        let sys = sparse_f2::random_system(&g.0, &mut RandomSource::new(seed));
        // SAFETY: per contract.
        unsafe { put(out, Sf2System(sys), "out") }
    })
}

/// System on `g` with one root-set mask per edge.
///
/// # Safety
/// `g` live handle; `masks` holds `len` values; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf2_system_from_masks(
    g: *const Sf2Graph,
    masks: *const u64,
    len: usize,
    out: *mut *mut Sf2System,
) -> Sf2Status {
    guard(|| {
        // SAFETY: per contract.
        let g = unsafe { deref(g, "graph") }?;
        let masks: Vec<u64> = if len == 0 {
            Vec::new()
        } else if masks.is_null() {
            return Err(Fail::Null("masks"));
        } else {
            // SAFETY: per contract.
            unsafe { std::slice::from_raw_parts(masks, len) }.to_vec()
        };
        let sys = SystemInstance::new(g.0.clone(), masks)?;
        // SAFETY: per contract.
        unsafe { put(out, Sf2System(sys), "out") }
    })
}

/// Decides whether the system has a solution. Uses the assignment sweep when
/// it fits and the backtracking search otherwise.
///
/// # Safety
/// `s` live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf2_system_is_consistent(
    s: *const Sf2System,
    out: *mut bool,
) -> Sf2Status {
    guard(|| {
        // SAFETY: per contract.
        let s = unsafe { deref(s, "system") }?;
        let answer = match is_consistent(&s.0) {
            Ok(b) => b,
            Err(Error::CapExceeded { .. }) => backtrack::backtrack_consistent(&s.0),
            Err(e) => return Err(e.into()),
        };
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        // SAFETY: non-null, writable.
        unsafe { *out = answer };
        Ok(())
    })
}

/// DIMACS CNF text; free with [`sf2_string_free`].
///
/// # Safety
/// `s` live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf2_system_to_dimacs(
    s: *const Sf2System,
    out: *mut *mut c_char,
) -> Sf2Status {
    guard(|| {
        // SAFETY: per contract.
        let s = unsafe { deref(s, "system") }?;
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        // SAFETY: non-null, writable.
        unsafe { *out = owned_string(dimacs::dimacs_export(&s.0)) };
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not have been freed; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn sf2_system_free(s: *mut Sf2System) {
    if !s.is_null() {
        // SAFETY: produced by `Box::into_raw`.
        drop(unsafe { Box::from_raw(s) });
    }
}

/// Monte Carlo estimate: writes the number of consistent samples out of
/// `trials`. Deterministic in `seed` for any `threads` (0 = default pool).
///
/// # Safety
/// `g` live handle; `successes` writable.
#[no_mangle]
pub unsafe extern "C" fn sf2_mc_q(
    g: *const Sf2Graph,
    trials: u64,
    seed: u64,
    threads: usize,
    successes: *mut u64,
) -> Sf2Status {
    guard(|| {
        // SAFETY: per contract.
        let g = unsafe { deref(g, "graph") }?;
        let mut cfg = McConfig::new(trials, seed);
        cfg.threads = (threads > 0).then_some(threads);
        let est = mc_q(&g.0, &cfg)?;
        if successes.is_null() {
            return Err(Fail::Null("successes"));
        }
        // SAFETY: non-null, writable.
        unsafe { *successes = est.successes };
        Ok(())
    })
}

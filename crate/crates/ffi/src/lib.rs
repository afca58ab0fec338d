//! C ABI over `condint`.
//!
//! Families and decompositions are opaque heap handles released with their
//! `_free` function. Every fallible call returns a [`CondintStatus`]; on
//! failure [`condint_last_error_message`] describes the error for the
//! calling thread. Strings returned through `char **` are owned by the
//! caller and released with [`condint_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use condint::cluster::find_violation;
use condint::io::{parse_family, serialize_family};
use condint::search::{max_family, max_nonintersecting, Enumerate, SearchConfig, SearchError, SearchResult};
use condint::structure::{decompose, verify_decomposition, Decomposition, StructureError};
use condint::{make_family, SetFamily};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CondintStatus {
    Ok = 0,
    /// The property under test is false: a cluster was found or a
    /// certificate clause failed.
    PropertyFalse = 1,
    NullPointer = 2,
    InvalidArgument = 3,
    ParseError = 4,
    /// The node budget ran out before the search finished.
    Inconclusive = 5,
    BufferTooSmall = 6,
    Internal = 7,
    Panic = 8,
}

/// Opaque family handle.
pub struct CondintFamily(SetFamily);

/// Opaque decomposition certificate handle.
pub struct CondintDecomposition(Decomposition);

/// Enumeration mode for the search entry points.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CondintEnumerate {
    ValueOnly = 0,
    OneWitness = 1,
    AllMaximum = 2,
}

/// Summary of an exact search.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CondintSearchSummary {
    pub h: usize,
    pub upper_bound: usize,
    pub certified: bool,
    pub nodes_explored: u64,
    pub witness_count: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let mut bytes = message.into().into_bytes();
    bytes.retain(|&b| b != 0);
    let c = CString::new(bytes).expect("interior nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: CondintStatus, message: impl Into<String>) -> CondintStatus {
    set_error(message);
    status
}

fn guard(f: impl FnOnce() -> CondintStatus) -> CondintStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => {
            if status == CondintStatus::Ok {
                set_error("");
            }
            status
        }
        Err(_) => fail(CondintStatus::Panic, "panic inside condint"),
    }
}

unsafe fn cstr<'a>(p: *const c_char) -> Result<&'a str, CondintStatus> {
    if p.is_null() {
        return Err(fail(CondintStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(CondintStatus::InvalidArgument, "string is not valid UTF-8"))
}

fn out_string(s: String, out: *mut *mut c_char) -> CondintStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            CondintStatus::Ok
        }
        Err(_) => fail(CondintStatus::Internal, "output contains a nul byte"),
    }
}

macro_rules! deref {
    ($p:expr) => {
        match unsafe { $p.as_ref() } {
            Some(v) => v,
            None => return fail(CondintStatus::NullPointer, concat!("null ", stringify!($p))),
        }
    };
}

macro_rules! check_out {
    ($p:expr) => {
        if $p.is_null() {
            return fail(CondintStatus::NullPointer, concat!("null ", stringify!($p)));
        }
    };
}

/// Message for the last failed call on this thread; empty after success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn condint_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a family from `count` sets of `k` vertices each, stored
/// contiguously in `vertices` (1-based).
///
/// # Safety
/// `vertices` must point to `count * k` readable values (may be null when
/// `count` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn condint_family_new(
    n: usize,
    k: usize,
    vertices: *const u32,
    count: usize,
    out: *mut *mut CondintFamily,
) -> CondintStatus {
    guard(|| {
        check_out!(out);
        if count > 0 && vertices.is_null() {
            return fail(CondintStatus::NullPointer, "null vertices");
        }
        let Some(total) = count.checked_mul(k) else {
            return fail(CondintStatus::InvalidArgument, "count * k overflows");
        };
        let flat: &[u32] = if total == 0 { &[] } else { std::slice::from_raw_parts(vertices, total) };
        let sets: Vec<Vec<usize>> = if k == 0 {
            Vec::new()
        } else {
            flat.chunks(k).map(|c| c.iter().map(|&v| v as usize).collect()).collect()
        };
        match make_family(n, k, &sets) {
            Ok(f) => {
                *out = Box::into_raw(Box::new(CondintFamily(f)));
                CondintStatus::Ok
            }
            Err(e) => fail(CondintStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Parses the text family format.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn condint_family_parse(text: *const c_char, out: *mut *mut CondintFamily) -> CondintStatus {
    guard(|| {
        check_out!(out);
        let text = match cstr(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_family(text) {
            Ok(f) => {
                *out = Box::into_raw(Box::new(CondintFamily(f)));
                CondintStatus::Ok
            }
            Err(e) => fail(CondintStatus::ParseError, e.to_string()),
        }
    })
}

/// # Safety
/// `family` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn condint_family_free(family: *mut CondintFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// # Safety
/// `family` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn condint_family_len(family: *const CondintFamily) -> usize {
    family.as_ref().map_or(0, |f| f.0.len())
}

/// # Safety
/// `family` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn condint_family_n(family: *const CondintFamily) -> usize {
    family.as_ref().map_or(0, |f| f.0.n())
}

/// # Safety
/// `family` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn condint_family_k(family: *const CondintFamily) -> usize {
    family.as_ref().map_or(0, |f| f.0.k())
}

/// Copies member `index` (canonical order) into `out`, which must hold
/// `capacity >= k` values.
///
/// # Safety
/// `out` must point to `capacity` writable values.
#[no_mangle]
pub unsafe extern "C" fn condint_family_member(
    family: *const CondintFamily,
    index: usize,
    out: *mut u32,
    capacity: usize,
) -> CondintStatus {
    guard(|| {
        let f = deref!(family);
        check_out!(out);
        let Some(m) = f.0.members().get(index) else {
            return fail(CondintStatus::InvalidArgument, format!("index {index} out of range"));
        };
        if capacity < f.0.k() {
            return fail(CondintStatus::BufferTooSmall, format!("need {} slots", f.0.k()));
        }
        for (i, v) in m.iter().enumerate() {
            *out.add(i) = v as u32;
        }
        CondintStatus::Ok
    })
}

/// Canonical text serialization.
///
/// # Safety
/// `family` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn condint_family_serialize(family: *const CondintFamily, out: *mut *mut c_char) -> CondintStatus {
    guard(|| {
        let f = deref!(family);
        check_out!(out);
        out_string(serialize_family(&f.0), out)
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn condint_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Searches for the canonically least `(d, s)`-cluster. On
/// `CONDINT_STATUS_PROPERTY_FALSE` the `d * k` witness vertices are written to
/// `out_members` (member by member) when it is non-null and large enough.
///
/// # Safety
/// `out_members` must point to `capacity` writable values or be null.
#[no_mangle]
pub unsafe extern "C" fn condint_find_violation(
    family: *const CondintFamily,
    d: usize,
    s: usize,
    out_members: *mut u32,
    capacity: usize,
) -> CondintStatus {
    guard(|| {
        let f = deref!(family);
        match find_violation(&f.0, d, s) {
            Ok(None) => CondintStatus::Ok,
            Ok(Some(w)) => {
                if !out_members.is_null() {
                    let flat: Vec<u32> = w.members.iter().flat_map(|m| m.iter().map(|v| v as u32)).collect();
                    if capacity < flat.len() {
                        return fail(CondintStatus::BufferTooSmall, format!("need {} slots", flat.len()));
                    }
                    ptr::copy_nonoverlapping(flat.as_ptr(), out_members, flat.len());
                }
                fail(CondintStatus::PropertyFalse, format!("cluster found: {:?}", w.to_lists()))
            }
            Err(e) => fail(CondintStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// # Safety
/// `family` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn condint_is_conditionally_intersecting(
    family: *const CondintFamily,
    d: usize,
    s: usize,
    out: *mut bool,
) -> CondintStatus {
    guard(|| {
        let f = deref!(family);
        check_out!(out);
        match find_violation(&f.0, d, s) {
            Ok(w) => {
                *out = w.is_none();
                CondintStatus::Ok
            }
            Err(e) => fail(CondintStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// # Safety
/// `family` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn condint_decompose(
    family: *const CondintFamily,
    d: usize,
    out: *mut *mut CondintDecomposition,
) -> CondintStatus {
    guard(|| {
        let f = deref!(family);
        check_out!(out);
        match decompose(&f.0, d) {
            Ok(dec) => {
                *out = Box::into_raw(Box::new(CondintDecomposition(dec)));
                CondintStatus::Ok
            }
            Err(e @ StructureError::NotConditionallyIntersecting(_)) => fail(CondintStatus::PropertyFalse, e.to_string()),
            Err(e) => fail(CondintStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// # Safety
/// `dec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn condint_decomposition_to_json(
    dec: *const CondintDecomposition,
    out: *mut *mut c_char,
) -> CondintStatus {
    guard(|| {
        let dec = deref!(dec);
        check_out!(out);
        out_string(dec.0.to_json(), out)
    })
}

/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn condint_decomposition_from_json(
    text: *const c_char,
    out: *mut *mut CondintDecomposition,
) -> CondintStatus {
    guard(|| {
        check_out!(out);
        let text = match cstr(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match Decomposition::from_json(text) {
            Ok(dec) => {
                *out = Box::into_raw(Box::new(CondintDecomposition(dec)));
                CondintStatus::Ok
            }
            Err(e) => fail(CondintStatus::ParseError, e.to_string()),
        }
    })
}

/// Checks every clause of the certificate. When a clause fails, `*passed`
/// is false, the status is `CONDINT_STATUS_PROPERTY_FALSE` and the error
/// message names the first failing clause.
///
/// # Safety
/// Handles must be live; `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn condint_verify_decomposition(
    family: *const CondintFamily,
    dec: *const CondintDecomposition,
    d: usize,
    s: usize,
    passed: *mut bool,
) -> CondintStatus {
    guard(|| {
        let f = deref!(family);
        let dec = deref!(dec);
        check_out!(passed);
        let report = verify_decomposition(&f.0, &dec.0, d, s);
        *passed = report.passed();
        match report.first_failure() {
            Some(c) => fail(
                CondintStatus::PropertyFalse,
                format!("clause {} failed: {}", c.clause.label(), c.witness.clone().unwrap_or_default()),
            ),
            None => CondintStatus::Ok,
        }
    })
}

/// # Safety
/// `dec` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn condint_decomposition_free(dec: *mut CondintDecomposition) {
    if !dec.is_null() {
        drop(Box::from_raw(dec));
    }
}

fn config(enumerate: CondintEnumerate, workers: usize, budget: u64) -> SearchConfig {
    let enumerate = match enumerate {
        CondintEnumerate::ValueOnly => Enumerate::ValueOnly,
        CondintEnumerate::OneWitness => Enumerate::OneWitness,
        CondintEnumerate::AllMaximum => Enumerate::AllMaximum,
    };
    let mut c = SearchConfig::new(enumerate).workers(workers.max(1));
    c.node_budget = (budget > 0).then_some(budget);
    c
}

unsafe fn report_search(
    result: Result<SearchResult, SearchError>,
    summary: *mut CondintSearchSummary,
    witness: *mut *mut CondintFamily,
) -> CondintStatus {
    let r = match result {
        Ok(r) => r,
        Err(e @ SearchError::BadParameters(_)) => return fail(CondintStatus::InvalidArgument, e.to_string()),
        Err(e) => return fail(CondintStatus::Internal, e.to_string()),
    };
    *summary = CondintSearchSummary {
        h: r.h,
        upper_bound: r.upper_bound,
        certified: r.certified,
        nodes_explored: r.nodes_explored,
        witness_count: r.witnesses.len(),
    };
    if !witness.is_null() {
        *witness = r
            .witnesses
            .first()
            .map_or(ptr::null_mut(), |w| Box::into_raw(Box::new(CondintFamily(w.clone()))));
    }
    if r.certified {
        CondintStatus::Ok
    } else {
        fail(
            CondintStatus::Inconclusive,
            format!("node budget exhausted: {} <= h <= {}", r.h, r.upper_bound),
        )
    }
}

/// Exact `h(n, k, d, s)`. `budget` 0 means unlimited. When `witness` is
/// non-null it receives the first maximum family (or null in value-only mode).
///
/// # Safety
/// `summary` must be writable; `witness` must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn condint_max_family(
    n: usize,
    k: usize,
    d: usize,
    s: usize,
    enumerate: CondintEnumerate,
    workers: usize,
    budget: u64,
    summary: *mut CondintSearchSummary,
    witness: *mut *mut CondintFamily,
) -> CondintStatus {
    guard(|| {
        check_out!(summary);
        report_search(max_family(n, k, d, s, &config(enumerate, workers, budget)), summary, witness)
    })
}

/// Largest `(3, 2k)`-conditionally intersecting family with a disjoint pair.
///
/// # Safety
/// As for [`condint_max_family`].
#[no_mangle]
pub unsafe extern "C" fn condint_max_nonintersecting(
    n: usize,
    k: usize,
    enumerate: CondintEnumerate,
    workers: usize,
    budget: u64,
    summary: *mut CondintSearchSummary,
    witness: *mut *mut CondintFamily,
) -> CondintStatus {
    guard(|| {
        check_out!(summary);
        report_search(max_nonintersecting(n, k, &config(enumerate, workers, budget)), summary, witness)
    })
}

//! C interface to `vw-core`.
//!
//! Handles are opaque pointers owned by the caller and released with the
//! matching `*_free`. Fallible calls return a [`VwStatus`]; on failure the
//! message is available from [`vw_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;
use vw_core::diagram::validate_generalized;
use vw_core::homology::{HomologyEngine, HomologyGroup, HomologyValue};
use vw_core::linalg::snf::SnfLimits;
use vw_core::relations::quantum_binomial;
use vw_core::{ComplexVariant, Diagram, Error, Limits, Parity, Ring};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    InvalidDiagram = 4,
    ResourceLimit = 5,
    /// A value does not fit the C integer type requested.
    Overflow = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VwParity {
    Odd = 0,
    Even = 1,
}

impl From<VwParity> for Parity {
    fn from(p: VwParity) -> Self {
        match p {
            VwParity::Odd => Parity::Odd,
            VwParity::Even => Parity::Even,
        }
    }
}

/// A parsed, validated diagram.
pub struct VwDiagram(Diagram);

/// A homology engine with its caches; not thread-safe, one per thread.
pub struct VwEngine(HomologyEngine);

/// A homology group over `Z`, or a dimension over a field (no torsion).
pub struct VwGroup(HomologyGroup);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: VwStatus, msg: impl Into<String>) -> VwStatus {
    set_error(msg);
    status
}

fn from_engine(e: Error) -> VwStatus {
    let status = match e {
        Error::Parse(_) => VwStatus::Parse,
        Error::InvalidDiagram { .. } => VwStatus::InvalidDiagram,
        Error::ResourceLimit(_) => VwStatus::ResourceLimit,
        _ => VwStatus::Internal,
    };
    fail(status, e.to_string())
}

fn guarded(f: impl FnOnce() -> VwStatus) -> VwStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(VwStatus::Internal, "panic inside vw"))
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, VwStatus> {
    if s.is_null() {
        return Err(fail(VwStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(VwStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message of the last failure on this thread, or null. Valid until the
/// next `vw_*` call on the same thread.
#[no_mangle]
pub extern "C" fn vw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn vw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses the text form `n;chords=a-b,...;bottom=...;top=...`.
///
/// # Safety
/// `input` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn vw_diagram_parse(input: *const c_char, out: *mut *mut VwDiagram) -> VwStatus {
    guarded(|| {
        if out.is_null() {
            return fail(VwStatus::NullPointer, "out is null");
        }
        let s = try_status!(text(input, "text"));
        let d: Diagram = match s.parse() {
            Ok(d) => d,
            Err(e) => return from_engine(e),
        };
        if let Err(e) = validate_generalized(&d, ComplexVariant::Tss).into_result(&d) {
            return from_engine(e);
        }
        *out = Box::into_raw(Box::new(VwDiagram(d)));
        VwStatus::Ok
    })
}

/// # Safety
/// `d` must be null or a handle from `vw_diagram_parse` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vw_diagram_free(d: *mut VwDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Canonical text form; release with `vw_string_free`. Null on failure.
///
/// # Safety
/// `d` must be a live diagram handle.
#[no_mangle]
pub unsafe extern "C" fn vw_diagram_serialize(d: *const VwDiagram) -> *mut c_char {
    let mut result = ptr::null_mut();
    guarded(|| {
        let Some(d) = d.as_ref() else {
            return fail(VwStatus::NullPointer, "diagram is null");
        };
        match CString::new(d.0.serialize()) {
            Ok(c) => {
                result = c.into_raw();
                VwStatus::Ok
            }
            Err(_) => fail(VwStatus::Internal, "serialization contains NUL"),
        }
    });
    result
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn vw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Complexity `i` and number of distinct points `j`.
///
/// # Safety
/// `d` must be a live diagram handle, `i` and `j` writable.
#[no_mangle]
pub unsafe extern "C" fn vw_diagram_bigrading(d: *const VwDiagram, i: *mut usize, j: *mut usize) -> VwStatus {
    guarded(|| {
        let (Some(d), false, false) = (d.as_ref(), i.is_null(), j.is_null()) else {
            return fail(VwStatus::NullPointer, "null argument");
        };
        let b = d.0.bigrading();
        *i = b.i;
        *j = b.j;
        VwStatus::Ok
    })
}

/// `max_slice` caps basis sizes; 0 selects the default.
#[no_mangle]
pub extern "C" fn vw_engine_new(max_slice: usize) -> *mut VwEngine {
    let limits = if max_slice == 0 { Limits::default() } else { Limits { max_slice } };
    Box::into_raw(Box::new(VwEngine(HomologyEngine::new(limits, SnfLimits::default()))))
}

/// # Safety
/// `e` must be null or a handle from `vw_engine_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vw_engine_free(e: *mut VwEngine) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// `H_(i,j)` of a complex (`"Tss"`, `"Tss_h"`, `"Ts"`, `"T"`, `"T0"`,
/// `"Z"`) over a ring (`"Z"`, `"Q"`, `"Fp:<p>"`). With `dual` set, the
/// homology of the transposed differentials.
///
/// # Safety
/// `engine` must be live, `complex` and `ring` NUL-terminated, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn vw_homology(
    engine: *mut VwEngine,
    complex: *const c_char,
    parity: VwParity,
    i: usize,
    j: usize,
    ring: *const c_char,
    dual: bool,
    out: *mut *mut VwGroup,
) -> VwStatus {
    guarded(|| {
        let (Some(engine), false) = (engine.as_mut(), out.is_null()) else {
            return fail(VwStatus::NullPointer, "null argument");
        };
        let variant: ComplexVariant = match try_status!(text(complex, "complex")).parse() {
            Ok(v) => v,
            Err(e) => return from_engine(e),
        };
        let ring: Ring = match try_status!(text(ring, "ring")).parse() {
            Ok(r) => r,
            Err(e) => return from_engine(e),
        };
        let value = if dual {
            engine.0.dual_homology_group(variant, parity.into(), i, j, ring)
        } else {
            engine.0.homology_group(variant, parity.into(), i, j, ring)
        };
        let group = match value {
            Ok(HomologyValue::Group(g)) => g,
            Ok(HomologyValue::Dimension(d)) => HomologyGroup::free(d),
            Err(e) => return from_engine(e),
        };
        *out = Box::into_raw(Box::new(VwGroup(group)));
        VwStatus::Ok
    })
}

/// # Safety
/// `g` must be null or a group handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vw_group_free(g: *mut VwGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Free rank over `Z`, dimension over a field. Zero for a null handle.
///
/// # Safety
/// `g` must be null or a live group handle.
#[no_mangle]
pub unsafe extern "C" fn vw_group_free_rank(g: *const VwGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.free_rank)
}

/// Number of invariant factors greater than one.
///
/// # Safety
/// `g` must be null or a live group handle.
#[no_mangle]
pub unsafe extern "C" fn vw_group_torsion_len(g: *const VwGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.torsion.len())
}

/// The `k`-th invariant factor, in divisibility order.
///
/// # Safety
/// `g` must be a live group handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vw_group_torsion_at(g: *const VwGroup, k: usize, out: *mut i64) -> VwStatus {
    guarded(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            return fail(VwStatus::NullPointer, "null argument");
        };
        let Some(t) = g.0.torsion.get(k) else {
            return fail(VwStatus::InvalidArgument, format!("torsion index {k} out of range"));
        };
        match t.to_i64() {
            Some(v) => {
                *out = v;
                VwStatus::Ok
            }
            None => fail(VwStatus::Overflow, format!("invariant factor {t} exceeds int64")),
        }
    })
}

/// Signed shuffle count of `k` and `n` letters at `q = ±1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vw_quantum_binomial(k: usize, n: usize, q: i32, out: *mut i64) -> VwStatus {
    guarded(|| {
        if out.is_null() {
            return fail(VwStatus::NullPointer, "out is null");
        }
        if q != 1 && q != -1 {
            return fail(VwStatus::InvalidArgument, format!("q must be 1 or -1, got {q}"));
        }
        let v = quantum_binomial(k, n, q);
        match v.to_i64() {
            Some(x) => {
                *out = x;
                VwStatus::Ok
            }
            None => fail(VwStatus::Overflow, format!("binomial {v} exceeds int64")),
        }
    })
}

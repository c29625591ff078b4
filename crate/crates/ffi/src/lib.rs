//! C interface to `permavoid`.
//!
//! Objects cross the boundary as opaque pointers that the caller releases
//! with the matching `*_free` function. Every fallible call returns a
//! [`PvStatus`]; on failure a message is kept per thread and can be read
//! with [`pv_last_error`]. Strings returned through `char **` out-parameters
//! are owned by the caller and released with [`pv_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use permavoid::{catalog, enumerate, CountTable, Error, FilterSpec, PatternSet};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed pattern, filter or other argument.
    InvalidArgument = 3,
    UnknownCase = 4,
    /// Series arithmetic failed (non-integral or undefined coefficient).
    Series = 5,
    Engine = 6,
    OutOfRange = 7,
    /// The value does not fit the requested integer type.
    Overflow = 8,
    Panic = 9,
}

/// Opaque set of forbidden patterns.
pub struct PvPatternSet {
    inner: PatternSet,
}

/// Opaque table of counts indexed by length.
pub struct PvCountTable {
    inner: CountTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> PvStatus {
    match e {
        Error::Perm(_) | Error::BadFilter(_) | Error::Clause { .. } => PvStatus::InvalidArgument,
        Error::UnknownCase { .. } | Error::UnknownAuxiliary { .. } => PvStatus::UnknownCase,
        Error::Series(_) => PvStatus::Series,
        Error::Engine { .. } => PvStatus::Engine,
    }
}

type Outcome = Result<(), (PvStatus, String)>;

fn fail(status: PvStatus, msg: impl Into<String>) -> Outcome {
    Err((status, msg.into()))
}

fn lib(e: Error) -> (PvStatus, String) {
    (status_of(&e), e.to_string())
}

/// Runs `body`, recording its error or panic for [`pv_last_error`].
fn guard(body: impl FnOnce() -> Outcome) -> PvStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PvStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside permavoid");
            PvStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (PvStatus, String)> {
    if s.is_null() {
        return Err((PvStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (PvStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Outcome {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            Ok(())
        }
        Err(_) => fail(PvStatus::Panic, "string contains NUL"),
    }
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(PvStatus::NullPointer, concat!(stringify!($p), " is null"));
        })+
    };
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn pv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a comma-separated list of patterns such as `"1342,2143,2314"`.
///
/// # Safety
/// `text` must be NULL or a NUL-terminated string; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn pv_pattern_set_parse(text: *const c_char, out: *mut *mut PvPatternSet) -> PvStatus {
    guard(|| {
        non_null!(out);
        let s = read_str(text, "text")?;
        let inner: PatternSet = s
            .parse()
            .map_err(|e: permavoid::PermError| (PvStatus::InvalidArgument, e.to_string()))?;
        write_out(out, PvPatternSet { inner });
        Ok(())
    })
}

/// # Safety
/// `set` must be NULL or a pointer from [`pv_pattern_set_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pv_pattern_set_free(set: *mut PvPatternSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Writes the canonical comma-joined form of the set.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_pattern_set_to_string(set: *const PvPatternSet, out: *mut *mut c_char) -> PvStatus {
    guard(|| {
        non_null!(set, out);
        write_string(out, (*set).inner.to_string())
    })
}

/// Counts avoiders of every length `0..=n_max`.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_count_avoiders(
    set: *const PvPatternSet,
    n_max: usize,
    out: *mut *mut PvCountTable,
) -> PvStatus {
    guard(|| {
        non_null!(set, out);
        let inner = enumerate::count_avoiders(&(*set).inner, n_max);
        write_out(out, PvCountTable { inner });
        Ok(())
    })
}

/// Counts avoiders accepted by `filter`, e.g. `"lrmax=2,start1<=n-2"`.
///
/// # Safety
/// `set` must be a live handle, `filter` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pv_count_filtered(
    set: *const PvPatternSet,
    n_max: usize,
    filter: *const c_char,
    out: *mut *mut PvCountTable,
) -> PvStatus {
    guard(|| {
        non_null!(set, out);
        let spec: FilterSpec = read_str(filter, "filter")?.parse().map_err(lib)?;
        let inner = enumerate::count_filtered(&(*set).inner, n_max, &spec).map_err(lib)?;
        write_out(out, PvCountTable { inner });
        Ok(())
    })
}

/// # Safety
/// `table` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pv_count_table_free(table: *mut PvCountTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Number of entries, `n_max + 1`.
///
/// # Safety
/// `table` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_count_table_len(table: *const PvCountTable, out: *mut usize) -> PvStatus {
    guard(|| {
        non_null!(table, out);
        *out = (*table).inner.counts().len();
        Ok(())
    })
}

/// The count at length `n` when it fits in 64 bits.
///
/// # Safety
/// `table` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_count_table_get_u64(table: *const PvCountTable, n: usize, out: *mut u64) -> PvStatus {
    guard(|| {
        non_null!(table, out);
        let t = &(*table).inner;
        let Some(v) = t.get(n) else {
            return fail(
                PvStatus::OutOfRange,
                format!("n = {n} beyond table of length {}", t.counts().len()),
            );
        };
        match u64::try_from(v) {
            Ok(x) => {
                *out = x;
                Ok(())
            }
            Err(_) => fail(PvStatus::Overflow, format!("count {v} exceeds 64 bits")),
        }
    })
}

/// Decimal counts joined by commas.
///
/// # Safety
/// `table` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_count_table_to_string(table: *const PvCountTable, out: *mut *mut c_char) -> PvStatus {
    guard(|| {
        non_null!(table, out);
        write_string(out, (*table).inner.to_string())
    })
}

/// First `terms` coefficients of a registered case's series, comma-joined.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_case_series(case_id: u32, terms: usize, out: *mut *mut c_char) -> PvStatus {
    guard(|| {
        non_null!(out);
        let s = catalog::evaluate_case(case_id, terms).map_err(lib)?;
        let parts: Vec<String> = s.coeffs().iter().map(ToString::to_string).collect();
        write_string(out, parts.join(","))
    })
}

/// Verifies one case up to `n_max`. `passed` receives 1 or 0; when `json` is
/// not NULL it receives the full report.
///
/// # Safety
/// `passed` must be writable; `json` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn pv_verify_case(
    case_id: u32,
    n_max: usize,
    passed: *mut i32,
    json: *mut *mut c_char,
) -> PvStatus {
    guard(|| {
        non_null!(passed);
        let report = catalog::verify_case(case_id, n_max).map_err(lib)?;
        *passed = i32::from(report.passed());
        if !json.is_null() {
            let text = serde_json::to_string(&report).map_err(|e| (PvStatus::Panic, e.to_string()))?;
            write_string(json, text)?;
        }
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

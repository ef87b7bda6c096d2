//! C interface to `permrex`.
//!
//! Expressions are passed around as opaque `PermrexRegex` handles owned by
//! the caller and released with [`permrex_regex_free`]. Every fallible entry
//! point returns a [`PermrexStatus`]; on failure a message is available from
//! [`permrex_last_error`] on the same thread. Strings returned through
//! `char **` out-parameters are NUL-terminated and must be released with
//! [`permrex_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use permrex::bounds::{self, BoundsConfig, BoundsError};
use permrex::construct::{AlphabetSet, BuildConfig, Builder, ConstructError, DEFAULT_FLAT_CAP};
use permrex::oracle::{Oracle, OracleError};
use permrex::verify::{self, VerifyConfig, VerifyError};
use permrex::{length, Regex, RenderFormat};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermrexStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    CapExceeded = 4,
    RenderError = 5,
    /// A certified check could not be decided at the maximum precision.
    Undecided = 6,
    /// The check ran and reported a violation.
    CheckFailed = 7,
    Panic = 8,
}

/// Builder selector for [`permrex_build`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermrexBuilder {
    DivideAndConquer = 0,
    TailRecursive = 1,
    FlatUnion = 2,
}

/// Opaque expression handle.
pub struct PermrexRegex {
    expr: Arc<Regex>,
}

/// Outcome of [`permrex_verify`].
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct PermrexCertificate {
    pub n: u32,
    pub words_tested: u64,
    pub accepted: u64,
    pub permutations_accepted: u64,
    pub non_permutations_accepted: u64,
    pub shorter_words_accepted: u64,
    pub position_count: u64,
    /// Nonzero when the language is exactly the permutations of `1..=n`.
    pub passed: u8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: PermrexStatus, msg: impl Into<String>) -> PermrexStatus {
    set_error(msg);
    status
}

/// Runs `body`, converting panics into [`PermrexStatus::Panic`].
fn guard(body: impl FnOnce() -> PermrexStatus) -> PermrexStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(s) => s,
        Err(_) => fail(PermrexStatus::Panic, "internal panic"),
    }
}

fn construct_status(e: &ConstructError) -> PermrexStatus {
    match e {
        ConstructError::SizeCap { .. } | ConstructError::FlatCap { .. } => {
            PermrexStatus::CapExceeded
        }
        _ => PermrexStatus::InvalidArgument,
    }
}

fn write_string(out: *mut *mut c_char, s: String) -> PermrexStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: caller checked `out` is non-null.
            unsafe { *out = c.into_raw() };
            PermrexStatus::Ok
        }
        Err(_) => fail(PermrexStatus::RenderError, "string contains NUL"),
    }
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn permrex_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds an expression for the alphabet `1..=n`. `max_symbols` of 0 means
/// the library default.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn permrex_build(
    builder: u32,
    n: u32,
    max_symbols: u64,
    out: *mut *mut PermrexRegex,
) -> PermrexStatus {
    guard(|| {
        if out.is_null() {
            return fail(PermrexStatus::NullPointer, "out is NULL");
        }
        let b = match builder {
            0 => Builder::DivideAndConquer,
            1 => Builder::TailRecursive,
            2 => Builder::FlatUnion,
            other => {
                return fail(
                    PermrexStatus::InvalidArgument,
                    format!("unknown builder {other}"),
                )
            }
        };
        let mut cfg = BuildConfig::default();
        if max_symbols > 0 {
            cfg.max_symbols = max_symbols;
        }
        cfg.flat_cap = DEFAULT_FLAT_CAP;
        let result = AlphabetSet::sigma(n).and_then(|s| b.build(&s, &cfg));
        match result {
            Ok(expr) => {
                *out = Box::into_raw(Box::new(PermrexRegex { expr }));
                PermrexStatus::Ok
            }
            Err(e) => fail(construct_status(&e), e.to_string()),
        }
    })
}

/// Parses compact or spaced text over `1..=n`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn permrex_parse(
    text: *const c_char,
    n: u32,
    out: *mut *mut PermrexRegex,
) -> PermrexStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(PermrexStatus::NullPointer, "text or out is NULL");
        }
        let Ok(s) = CStr::from_ptr(text).to_str() else {
            return fail(PermrexStatus::ParseError, "text is not UTF-8");
        };
        match permrex::parse(s, n) {
            Ok(expr) => {
                *out = Box::into_raw(Box::new(PermrexRegex { expr }));
                PermrexStatus::Ok
            }
            Err(e) => fail(PermrexStatus::ParseError, e.to_string()),
        }
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `re` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn permrex_regex_free(re: *mut PermrexRegex) {
    if !re.is_null() {
        drop(Box::from_raw(re));
    }
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn permrex_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Renders `re` as compact (`spaced == 0`) or spaced text.
///
/// # Safety
/// `re` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn permrex_render(
    re: *const PermrexRegex,
    spaced: u8,
    out: *mut *mut c_char,
) -> PermrexStatus {
    guard(|| {
        if re.is_null() || out.is_null() {
            return fail(PermrexStatus::NullPointer, "re or out is NULL");
        }
        let format = if spaced != 0 {
            RenderFormat::Spaced
        } else {
            RenderFormat::Compact
        };
        match permrex::render(&(*re).expr, format) {
            Ok(s) => write_string(out, s),
            Err(e) => fail(PermrexStatus::RenderError, e.to_string()),
        }
    })
}

/// Alphabetic length of `re` as a decimal string.
///
/// # Safety
/// `re` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn permrex_alphabetic_length(
    re: *const PermrexRegex,
    out: *mut *mut c_char,
) -> PermrexStatus {
    guard(|| {
        if re.is_null() || out.is_null() {
            return fail(PermrexStatus::NullPointer, "re or out is NULL");
        }
        write_string(out, permrex::alphabetic_length(&(*re).expr).to_string())
    })
}

unsafe fn length_string(
    n: u64,
    out: *mut *mut c_char,
    which: fn(u64) -> Result<String, length::LengthError>,
) -> PermrexStatus {
    guard(|| {
        if out.is_null() {
            return fail(PermrexStatus::NullPointer, "out is NULL");
        }
        match which(n) {
            Ok(v) => write_string(out, v),
            Err(e) => fail(PermrexStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// `f(n)`, the minimal alphabetic length, as a decimal string.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn permrex_f(n: u64, out: *mut *mut c_char) -> PermrexStatus {
    length_string(n, out, |n| length::f(n).map(|v| v.to_string()))
}

/// `t(n)`, the tail-recursive length, as a decimal string.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn permrex_t(n: u64, out: *mut *mut c_char) -> PermrexStatus {
    length_string(n, out, |n| length::t(n).map(|v| v.to_string()))
}

/// Exhaustively checks that `re` denotes the permutations of `1..=n`
/// (`n <= 7`). Returns `Ok` with `out->passed` set either way; a failed
/// certificate is not an error.
///
/// # Safety
/// `re` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn permrex_verify(
    re: *const PermrexRegex,
    n: u32,
    out: *mut PermrexCertificate,
) -> PermrexStatus {
    guard(|| {
        if re.is_null() || out.is_null() {
            return fail(PermrexStatus::NullPointer, "re or out is NULL");
        }
        match verify::language_equals_permutations(&(*re).expr, n, &VerifyConfig::default()) {
            Ok(c) => {
                *out = PermrexCertificate {
                    n: c.n,
                    words_tested: c.words_tested,
                    accepted: c.accepted,
                    permutations_accepted: c.permutations_accepted,
                    non_permutations_accepted: c.non_permutations_accepted,
                    shorter_words_accepted: c.shorter_words_accepted,
                    position_count: c.position_count,
                    passed: c.passed as u8,
                };
                PermrexStatus::Ok
            }
            Err(e @ VerifyError::CapExceeded { .. }) => {
                fail(PermrexStatus::CapExceeded, e.to_string())
            }
            Err(e) => fail(PermrexStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Brute-force minimal alphabetic length of the full permutation language
/// over `1..=n` (`n <= 3`), over star-free expressions.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn permrex_oracle_cost(n: u32, out: *mut u32) -> PermrexStatus {
    guard(|| {
        if out.is_null() {
            return fail(PermrexStatus::NullPointer, "out is NULL");
        }
        match Oracle::new(n) {
            Ok(o) => {
                *out = o.cost_of_permutations();
                PermrexStatus::Ok
            }
            Err(e @ OracleError::CapExceeded { .. }) => {
                fail(PermrexStatus::CapExceeded, e.to_string())
            }
            Err(e) => fail(PermrexStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Certifies the growth bounds on `f(n)` for `1 <= n <= max_n`, starting at
/// `precision_bits` (0 for the default). Returns `Ok` when every inequality
/// is certified, `CheckFailed` on a violation, `Undecided` when precision ran
/// out.
#[no_mangle]
pub extern "C" fn permrex_check_fn_bounds(max_n: u64, precision_bits: u32) -> PermrexStatus {
    guard(|| {
        let cfg = if precision_bits == 0 {
            BoundsConfig::default()
        } else {
            BoundsConfig::with_precision(precision_bits)
        };
        match bounds::check_fn_bounds(max_n, &cfg) {
            Ok(r) if r.passed() => PermrexStatus::Ok,
            Ok(r) => fail(
                PermrexStatus::CheckFailed,
                format!("{} violated inequalities", r.violated),
            ),
            Err(e @ BoundsError::UndecidedAtPrecision { .. }) => {
                fail(PermrexStatus::Undecided, e.to_string())
            }
            Err(e) => fail(PermrexStatus::InvalidArgument, e.to_string()),
        }
    })
}

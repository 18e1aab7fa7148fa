//! C ABI over `lcdcode`. Handles are opaque and owned by the caller once
//! returned; every fallible call returns an `LcdStatus` and writes results
//! through out-pointers. `lcd_last_error` holds the message of the most recent
//! failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lcdcode::constructs::{build_optimal_lcd, BuildStatus};
use lcdcode::db::Database;
use lcdcode::defvec::{matrix_from_defvec, DefiningVector};
use lcdcode::search::{hill_climb, SearchBudget};
use lcdcode::{BitMatrix, Error, LinearCode};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LcdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Io = 5,
    NotFound = 6,
    VerificationFailed = 7,
    Internal = 8,
    Panic = 9,
}

/// Parameters of a code; `hull` is the hull dimension, 0 for LCD codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LcdParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub hull: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LcdBuildStatus {
    OptimalLcd = 0,
    /// The reference distance is undecided; the lower value was built.
    OptimalOrNear = 1,
}

/// Opaque generator-matrix code.
pub struct LcdCode(LinearCode);

/// Opaque handle on a database directory.
pub struct LcdDatabase(Database);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn status_of(e: &Error) -> LcdStatus {
    match e {
        Error::Parse { .. } => LcdStatus::Parse,
        Error::Io { .. } => LcdStatus::Io,
        Error::RecordMissing { .. } => LcdStatus::NotFound,
        Error::VerificationMismatch { .. } | Error::NotLcd | Error::Consistency(_) => {
            LcdStatus::VerificationFailed
        }
        Error::Json(_) => LcdStatus::Internal,
        _ => LcdStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into a status plus `lcd_last_error`.
fn guard(f: impl FnOnce() -> Result<(), (LcdStatus, String)>) -> LcdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            LcdStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside lcdcode");
            LcdStatus::Panic
        }
    }
}

fn lib<T>(r: lcdcode::Result<T>) -> Result<T, (LcdStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, (LcdStatus, String)> {
    if p.is_null() {
        return Err((LcdStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| (LcdStatus::InvalidUtf8, e.to_string()))
}

fn null_out() -> (LcdStatus, String) {
    (LcdStatus::NullPointer, "null output pointer".into())
}

unsafe fn code_ref<'a>(p: *const LcdCode) -> Result<&'a LinearCode, (LcdStatus, String)> {
    p.as_ref()
        .map(|c| &c.0)
        .ok_or((LcdStatus::NullPointer, "null code handle".into()))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message of the last failure on this thread; empty after a success. Valid
/// until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn lcd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses ".g2m" text (`k n` header, then k rows of 0/1).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcd_code_from_g2m(text: *const c_char, out: *mut *mut LcdCode) -> LcdStatus {
    guard(|| {
        let text = str_arg(text)?;
        if out.is_null() {
            return Err(null_out());
        }
        let code = lib(BitMatrix::from_g2m(text).and_then(LinearCode::new))?;
        *out = Box::into_raw(Box::new(LcdCode(code)));
        Ok(())
    })
}

/// Parses a defining-vector line `k: l_1 ... l_N`.
///
/// # Safety
/// As for `lcd_code_from_g2m`.
#[no_mangle]
pub unsafe extern "C" fn lcd_code_from_defvec(line: *const c_char, out: *mut *mut LcdCode) -> LcdStatus {
    guard(|| {
        let line = str_arg(line)?;
        if out.is_null() {
            return Err(null_out());
        }
        let l: DefiningVector = lib(line.trim().parse())?;
        let code = lib(LinearCode::new(matrix_from_defvec(&l)))?;
        *out = Box::into_raw(Box::new(LcdCode(code)));
        Ok(())
    })
}

/// # Safety
/// `code` must come from this library and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lcd_code_free(code: *mut LcdCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Computes `[n, k, d]` and the hull dimension.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcd_code_params(code: *const LcdCode, out: *mut LcdParams) -> LcdStatus {
    guard(|| {
        let code = code_ref(code)?;
        let out = out.as_mut().ok_or_else(null_out)?;
        let p = lib(code.params())?;
        *out = LcdParams {
            n: p.n,
            k: p.k,
            d: p.d,
            hull: p.hull_dim,
        };
        Ok(())
    })
}

/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcd_code_is_lcd(code: *const LcdCode, out: *mut bool) -> LcdStatus {
    guard(|| {
        let code = code_ref(code)?;
        let out = out.as_mut().ok_or_else(null_out)?;
        *out = code.is_lcd();
        Ok(())
    })
}

/// Serializes to ".g2m"; release the string with `lcd_string_free`.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcd_code_to_g2m(code: *const LcdCode, out: *mut *mut c_char) -> LcdStatus {
    guard(|| {
        let code = code_ref(code)?;
        if out.is_null() {
            return Err(null_out());
        }
        *out = into_c_string(code.generator().to_g2m());
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lcd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Opens an existing database directory.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcd_database_open(path: *const c_char, out: *mut *mut LcdDatabase) -> LcdStatus {
    guard(|| {
        let path = str_arg(path)?;
        if out.is_null() {
            return Err(null_out());
        }
        let db = lib(Database::open(path))?;
        *out = Box::into_raw(Box::new(LcdDatabase(db)));
        Ok(())
    })
}

/// # Safety
/// `db` must come from this library and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lcd_database_free(db: *mut LcdDatabase) {
    if !db.is_null() {
        drop(Box::from_raw(db));
    }
}

/// Builds the `[n, 6]` LCD code for `n >= 51`. `status` may be null.
///
/// # Safety
/// `db` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcd_construct(
    db: *const LcdDatabase,
    n: usize,
    out: *mut *mut LcdCode,
    status: *mut LcdBuildStatus,
) -> LcdStatus {
    guard(|| {
        let db = db
            .as_ref()
            .ok_or((LcdStatus::NullPointer, "null database handle".into()))?;
        if out.is_null() {
            return Err(null_out());
        }
        let built = lib(build_optimal_lcd(&db.0, n))?;
        if !built.meets_plan() {
            return Err((
                LcdStatus::VerificationFailed,
                format!("built d={} but expected {}", built.record.d(), built.plan.expected_d),
            ));
        }
        if let Some(s) = status.as_mut() {
            *s = match built.status {
                BuildStatus::OptimalLcd => LcdBuildStatus::OptimalLcd,
                BuildStatus::Open => LcdBuildStatus::OptimalOrNear,
            };
        }
        *out = Box::into_raw(Box::new(LcdCode(built.record.code)));
        Ok(())
    })
}

/// Local search for an `[n, k, >= target_d]` code (LCD when `require_lcd`).
/// Returns `NotFound` when the budget runs out; deterministic in `seed`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcd_hill_climb(
    n: usize,
    k: usize,
    target_d: usize,
    require_lcd: bool,
    iterations: u64,
    restarts: u32,
    seed: u64,
    out: *mut *mut LcdCode,
) -> LcdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out());
        }
        let budget = SearchBudget {
            max_iterations: iterations,
            restarts,
            seed,
        };
        match lib(hill_climb(n, k, target_d, require_lcd, &budget))? {
            Some(found) => {
                *out = Box::into_raw(Box::new(LcdCode(found.record.code)));
                Ok(())
            }
            None => Err((LcdStatus::NotFound, "search budget exhausted".into())),
        }
    })
}

/// JSON report of one registered theorem; release with `lcd_string_free`.
///
/// # Safety
/// `id` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcd_check_theorem(id: *const c_char, out: *mut *mut c_char) -> LcdStatus {
    guard(|| {
        let id = str_arg(id)?;
        if out.is_null() {
            return Err(null_out());
        }
        let report = lib(lcdcode::theorem::check_theorem(id))?;
        *out = into_c_string(lib(report.to_json())?);
        Ok(())
    })
}

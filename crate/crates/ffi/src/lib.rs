//! C ABI for the hadamard-sojourn library.
//!
//! Conventions:
//!
//! * Every function returns an [`HwsStatus`]; results come back through out
//!   pointers. `HWS_STATUS_OK` is 0.
//! * Returned strings are UTF-8, NUL-terminated, allocated by this library,
//!   and must be released with [`hws_string_free`].
//! * On any non-OK status, [`hws_last_error`] returns a message describing
//!   the failure; the pointer stays valid until the next failing call on
//!   the same thread.
//! * Tables are opaque handles created by [`hws_table_new`] and released
//!   with [`hws_table_free`].
//!
//! All numbers inside the emitted JSON/CSV are exact scalar strings
//! (`a/b` or `a/b + c/d*sqrt(2)`), never floats.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hadamard_sojourn::emit;
use hadamard_sojourn::measures::{
    classical_arcsine, classical_equidistribution, sojourn_measure_a, sojourn_measure_b,
};
use hadamard_sojourn::theorems::{first_return_amplitudes, theorem1_series, theorem2_series};
use hadamard_sojourn::verify::{run_all, VerifyOptions};
use hadamard_sojourn::walk::{QubitState, SojournTable};

/// Result of every API call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HwsStatus {
    /// Success.
    Ok = 0,
    /// A verification run found a coefficient mismatch.
    MathMismatch = 1,
    /// A parameter was out of range (odd horizon, zero order, ...).
    InvalidArgument = 2,
    /// A required pointer was NULL.
    NullPointer = 3,
    /// A string was not valid UTF-8 or not a valid exact scalar/state.
    ParseError = 4,
    /// The library panicked; this indicates a bug.
    Internal = 5,
}

/// Which sojourn measure to compute.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HwsMeasureKind {
    /// Free walk from the origin.
    FreeWalk = 0,
    /// Bridge walk (conditioned on returning to the origin).
    Bridge = 1,
    /// Classical discrete arc-sine law.
    ClassicalArcsine = 2,
    /// Classical bridge equidistribution.
    ClassicalUniform = 3,
}

/// Output format for measure tables.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HwsFormat {
    Json = 0,
    Csv = 1,
}

/// Opaque handle to a path-sum table (time, endpoint, sojourn count).
pub struct HwsTable {
    inner: SojournTable,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("NULs removed");
    });
}

fn fail(status: HwsStatus, message: &str) -> HwsStatus {
    set_last_error(message);
    status
}

fn guard(body: impl FnOnce() -> HwsStatus) -> HwsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            fail(HwsStatus::Internal, &message)
        }
    }
}

/// Message for the most recent failure on this thread. Never NULL; empty
/// before the first failure. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn hws_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn hws_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must have been returned by a function of this library and not freed
/// before. NULL is accepted and ignored.
#[no_mangle]
pub unsafe extern "C" fn hws_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn write_string(out: *mut *mut c_char, text: String) -> HwsStatus {
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            HwsStatus::Ok
        }
        Err(_) => fail(HwsStatus::Internal, "emitted text contained a NUL byte"),
    }
}

/// Parse an optional state string: NULL means the symmetric state
/// `[1/sqrt(2), i/sqrt(2)]`, otherwise "a_re,a_im,b_re,b_im" in exact
/// scalar format.
unsafe fn parse_state_arg(state: *const c_char) -> Result<QubitState, HwsStatus> {
    if state.is_null() {
        return Ok(QubitState::symmetric());
    }
    let raw = CStr::from_ptr(state)
        .to_str()
        .map_err(|_| fail(HwsStatus::ParseError, "state string is not valid UTF-8"))?;
    emit::parse_state(raw).map_err(|e| fail(HwsStatus::ParseError, &e.to_string()))
}

/// Build a path-sum table from `start` up to time `n_max`.
///
/// # Safety
/// `out` must be a valid pointer; on `HWS_STATUS_OK` it receives a handle
/// that must be released with [`hws_table_free`].
#[no_mangle]
pub unsafe extern "C" fn hws_table_new(
    start: i64,
    n_max: u32,
    out: *mut *mut HwsTable,
) -> HwsStatus {
    if out.is_null() {
        return fail(HwsStatus::NullPointer, "out pointer is NULL");
    }
    guard(|| {
        let table = SojournTable::evolve(start, n_max);
        *out = Box::into_raw(Box::new(HwsTable { inner: table }));
        HwsStatus::Ok
    })
}

/// Release a table handle. NULL is accepted and ignored.
///
/// # Safety
/// `table` must have come from [`hws_table_new`] and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn hws_table_free(table: *mut HwsTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// JSON matrix (exact strings) of the path-sum entry at `(n, y, k)`; the
/// zero matrix outside the light cone.
///
/// # Safety
/// `table` must be a live handle from [`hws_table_new`]; `out` must be
/// valid and receives a string to free with [`hws_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hws_table_entry_json(
    table: *const HwsTable,
    n: u32,
    y: i64,
    k: u32,
    out: *mut *mut c_char,
) -> HwsStatus {
    if table.is_null() || out.is_null() {
        return fail(HwsStatus::NullPointer, "table or out pointer is NULL");
    }
    guard(|| {
        let table = &(*table).inner;
        if n > table.n_max() {
            return fail(
                HwsStatus::InvalidArgument,
                &format!("n {} exceeds the table horizon {}", n, table.n_max()),
            );
        }
        let matrix = emit::matrix_strings(&table.entry(n, y, k));
        write_string(out, serde_json_matrix(&matrix))
    })
}

fn serde_json_matrix(matrix: &[[String; 2]; 2]) -> String {
    format!(
        "[[{}, {}], [{}, {}]]",
        json_string(&matrix[0][0]),
        json_string(&matrix[0][1]),
        json_string(&matrix[1][0]),
        json_string(&matrix[1][1]),
    )
}

fn json_string(s: &str) -> String {
    // Exact scalar strings never contain characters needing JSON escapes.
    format!("\"{s}\"")
}

/// The whole table as a JSON document with rows `{n, y, k, matrix}`.
///
/// # Safety
/// As for [`hws_table_entry_json`].
#[no_mangle]
pub unsafe extern "C" fn hws_table_json(
    table: *const HwsTable,
    out: *mut *mut c_char,
) -> HwsStatus {
    if table.is_null() || out.is_null() {
        return fail(HwsStatus::NullPointer, "table or out pointer is NULL");
    }
    guard(|| write_string(out, emit::dp_json(&(*table).inner)))
}

/// Exact position distribution at time `n` as a JSON document; `state` may
/// be NULL for the symmetric state.
///
/// # Safety
/// As for [`hws_table_entry_json`]; `state`, when non-NULL, must be a
/// NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn hws_position_distribution_json(
    table: *const HwsTable,
    n: u32,
    state: *const c_char,
    out: *mut *mut c_char,
) -> HwsStatus {
    if table.is_null() || out.is_null() {
        return fail(HwsStatus::NullPointer, "table or out pointer is NULL");
    }
    guard(|| {
        let phi = match parse_state_arg(state) {
            Ok(phi) => phi,
            Err(status) => return status,
        };
        let table = &(*table).inner;
        if n > table.n_max() {
            return fail(
                HwsStatus::InvalidArgument,
                &format!("n {} exceeds the table horizon {}", n, table.n_max()),
            );
        }
        match table.position_distribution(n, &phi) {
            Ok(dist) => {
                let rows: Vec<String> = dist
                    .iter()
                    .map(|(y, p)| format!("{{\"x\": {y}, \"probability\": {}}}", json_string(&p.to_string())))
                    .collect();
                write_string(out, format!("[{}]", rows.join(", ")))
            }
            Err(e) => fail(HwsStatus::InvalidArgument, &e.to_string()),
        }
    })
}

/// Sojourn measure table at even horizon `n`. `state` may be NULL for the
/// symmetric state and is ignored by the classical kinds.
///
/// # Safety
/// `out` must be valid; `state`, when non-NULL, must be a NUL-terminated
/// string. Free the result with [`hws_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hws_measure(
    kind: HwsMeasureKind,
    n: u32,
    state: *const c_char,
    format: HwsFormat,
    out: *mut *mut c_char,
) -> HwsStatus {
    if out.is_null() {
        return fail(HwsStatus::NullPointer, "out pointer is NULL");
    }
    guard(|| {
        let phi = match parse_state_arg(state) {
            Ok(phi) => phi,
            Err(status) => return status,
        };
        let computed = match kind {
            HwsMeasureKind::FreeWalk => sojourn_measure_a(n, &phi).map(|m| ("A", m, true)),
            HwsMeasureKind::Bridge => sojourn_measure_b(n, &phi).map(|m| ("B", m, true)),
            HwsMeasureKind::ClassicalArcsine => {
                classical_arcsine(n).map(|m| ("classical-arcsine", m, false))
            }
            HwsMeasureKind::ClassicalUniform => {
                classical_equidistribution(n).map(|m| ("classical-uniform", m, false))
            }
        };
        match computed {
            Ok((label, measure, with_state)) => {
                let text = match format {
                    HwsFormat::Json => {
                        emit::measure_json(label, &measure, with_state.then_some(&phi))
                    }
                    HwsFormat::Csv => emit::measure_csv(&measure),
                };
                write_string(out, text)
            }
            Err(e) => fail(HwsStatus::InvalidArgument, &e.to_string()),
        }
    })
}

/// Expand the free-walk closed forms to `order` as JSON.
///
/// # Safety
/// `out` must be valid; free the result with [`hws_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hws_theorem1_json(order: u32, out: *mut *mut c_char) -> HwsStatus {
    if out.is_null() {
        return fail(HwsStatus::NullPointer, "out pointer is NULL");
    }
    guard(|| match theorem1_series(order) {
        Ok(series) => write_string(out, emit::theorem1_json(&series)),
        Err(e) => fail(HwsStatus::InvalidArgument, &e.to_string()),
    })
}

/// Expand the bridge closed form to `order` as JSON.
///
/// # Safety
/// As for [`hws_theorem1_json`].
#[no_mangle]
pub unsafe extern "C" fn hws_theorem2_json(order: u32, out: *mut *mut c_char) -> HwsStatus {
    if out.is_null() {
        return fail(HwsStatus::NullPointer, "out pointer is NULL");
    }
    guard(|| match theorem2_series(order) {
        Ok(series) => write_string(out, emit::theorem2_json(&series)),
        Err(e) => fail(HwsStatus::InvalidArgument, &e.to_string()),
    })
}

/// First-return amplitudes `a_1 .. a_n_max` as JSON.
///
/// # Safety
/// As for [`hws_theorem1_json`].
#[no_mangle]
pub unsafe extern "C" fn hws_first_return_json(n_max: u32, out: *mut *mut c_char) -> HwsStatus {
    if out.is_null() {
        return fail(HwsStatus::NullPointer, "out pointer is NULL");
    }
    guard(|| match first_return_amplitudes(n_max) {
        Ok(amps) => write_string(out, emit::first_return_json(&amps)),
        Err(e) => fail(HwsStatus::InvalidArgument, &e.to_string()),
    })
}

/// Run the full exact cross-check suite at the given series order.
///
/// Returns `HWS_STATUS_OK` when every comparison agrees and
/// `HWS_STATUS_MATH_MISMATCH` otherwise; `report_out` (optional, may be
/// NULL) receives the per-check report text either way.
///
/// # Safety
/// `report_out`, when non-NULL, receives a string to free with
/// [`hws_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hws_verify(order: u32, report_out: *mut *mut c_char) -> HwsStatus {
    guard(|| {
        if order < 2 {
            return fail(HwsStatus::InvalidArgument, "verify requires order >= 2");
        }
        let opts = VerifyOptions { order, ..VerifyOptions::default() };
        match run_all(&opts) {
            Ok(checks) => {
                let mut text = String::new();
                for check in &checks {
                    text.push_str(&format!("{check}\n"));
                }
                let all_ok = checks.iter().all(|c| c.ok());
                if !report_out.is_null() {
                    let status = write_string(report_out, text);
                    if status != HwsStatus::Ok {
                        return status;
                    }
                }
                if all_ok {
                    HwsStatus::Ok
                } else {
                    let first = checks
                        .iter()
                        .find(|c| !c.ok())
                        .and_then(|c| c.failures.first().cloned())
                        .unwrap_or_default();
                    fail(HwsStatus::MathMismatch, &first)
                }
            }
            Err(e) => fail(HwsStatus::InvalidArgument, &e.to_string()),
        }
    })
}

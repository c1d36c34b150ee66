//! C ABI over the `opsymbol` library.
//!
//! Operators and symbols cross the boundary as opaque handles created from
//! JSON and released with the matching `_free` function. Every fallible call
//! returns an [`OpsymStatus`]; on failure a description is available from
//! [`opsym_last_error_message`] on the same thread. Strings returned through
//! `char **` out-parameters are owned by the caller and must be released with
//! [`opsym_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use opsymbol::harness::config::{Suite, SuiteConfig};
use opsymbol::harness::suites::run_suite;
use opsymbol::{DifferentialOperator, Error, Json, Order, SymbolElement};

/// Value written by [`opsym_operator_pson_order`] for the zero operator.
pub const OPSYM_ORDER_NEG_INF: i64 = i64::MIN;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpsymStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Schema = 4,
    DimensionMismatch = 5,
    BelowOrder = 6,
    ZeroOperator = 7,
    NonHomogeneous = 8,
    NotInvertible = 9,
    NonzeroTrace = 10,
    Singular = 11,
    Config = 12,
    /// The verification run completed but at least one property failed.
    VerifyFailed = 13,
    Panic = 14,
}

/// Opaque matrix-coefficient differential operator.
pub struct OpsymOperator(DifferentialOperator);

/// Opaque element of the symbol algebra.
pub struct OpsymSymbol(SymbolElement);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

struct Failure(OpsymStatus, String);

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let status = match &err {
            Error::DimensionMismatch { .. } => OpsymStatus::DimensionMismatch,
            Error::BelowOrder { .. } => OpsymStatus::BelowOrder,
            Error::ZeroOperator => OpsymStatus::ZeroOperator,
            Error::NonHomogeneous { .. } => OpsymStatus::NonHomogeneous,
            Error::NotInvertible(_) => OpsymStatus::NotInvertible,
            Error::NonzeroTrace => OpsymStatus::NonzeroTrace,
            Error::Singular(_) => OpsymStatus::Singular,
            Error::Parse(_) => OpsymStatus::Parse,
            Error::Schema { .. } => OpsymStatus::Schema,
            Error::Config(_) => OpsymStatus::Config,
        };
        Failure(status, err.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(OpsymStatus::NullPointer, format!("null pointer passed for `{what}`"))
}

/// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> OpsymStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            clear_last_error();
            OpsymStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_last_error(format!("internal panic: {message}"));
            OpsymStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(text: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if text.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|e| Failure(OpsymStatus::InvalidUtf8, format!("`{what}` is not UTF-8: {e}")))
}

unsafe fn deref<'a, T>(handle: *const T, what: &str) -> Result<&'a T, Failure> {
    handle.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    let text = CString::new(text).map_err(|e| Failure(OpsymStatus::Parse, e.to_string()))?;
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(text.into_raw());
    Ok(())
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(Box::into_raw(Box::new(value)));
    Ok(())
}

/// Message describing the most recent failure on this thread, or NULL if the
/// last call succeeded. The pointer stays valid until the next call into this
/// library from the same thread.
#[no_mangle]
pub extern "C" fn opsym_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string produced by this library. NULL is ignored.
///
/// # Safety
/// `text` must come from this library and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn opsym_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn opsym_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses an operator from its JSON form.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opsym_operator_from_json(
    json: *const c_char,
    out: *mut *mut OpsymOperator,
) -> OpsymStatus {
    guard(|| {
        let op = DifferentialOperator::from_json(read_str(json, "json")?)?;
        write_handle(out, OpsymOperator(op))
    })
}

/// Canonical JSON for an operator.
///
/// # Safety
/// `op` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opsym_operator_to_json(
    op: *const OpsymOperator,
    out: *mut *mut c_char,
) -> OpsymStatus {
    guard(|| write_string(out, deref(op, "op")?.0.to_json()))
}

/// # Safety
/// `op` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn opsym_operator_free(op: *mut OpsymOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// `a ∘ b`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opsym_operator_compose(
    a: *const OpsymOperator,
    b: *const OpsymOperator,
    out: *mut *mut OpsymOperator,
) -> OpsymStatus {
    guard(|| {
        let c = deref(a, "a")?.0.compose(&deref(b, "b")?.0)?;
        write_handle(out, OpsymOperator(c))
    })
}

/// `[a, b] = a ∘ b − b ∘ a`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opsym_operator_commutator(
    a: *const OpsymOperator,
    b: *const OpsymOperator,
    out: *mut *mut OpsymOperator,
) -> OpsymStatus {
    guard(|| {
        let c = deref(a, "a")?.0.commutator(&deref(b, "b")?.0)?;
        write_handle(out, OpsymOperator(c))
    })
}

/// Least `k` with the operator in `P^k`, or [`OPSYM_ORDER_NEG_INF`].
///
/// # Safety
/// `op` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opsym_operator_pson_order(
    op: *const OpsymOperator,
    out: *mut i64,
) -> OpsymStatus {
    guard(|| {
        let order = match deref(op, "op")?.0.pson_order() {
            Order::NegInf => OPSYM_ORDER_NEG_INF,
            Order::Finite(k) => k,
        };
        write_out(out, order)
    })
}

/// Symbol of degree `degree` of an operator in `P^degree`.
///
/// # Safety
/// `op` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opsym_operator_sigma(
    op: *const OpsymOperator,
    degree: i64,
    out: *mut *mut OpsymSymbol,
) -> OpsymStatus {
    guard(|| {
        let s = SymbolElement::sigma(&deref(op, "op")?.0, degree)?;
        write_handle(out, OpsymSymbol(s))
    })
}

/// Principal symbol at the operator's own order.
///
/// # Safety
/// `op` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opsym_operator_sigma_pson(
    op: *const OpsymOperator,
    out: *mut *mut OpsymSymbol,
) -> OpsymStatus {
    guard(|| {
        let s = SymbolElement::sigma_pson(&deref(op, "op")?.0)?;
        write_handle(out, OpsymSymbol(s))
    })
}

/// Parses a symbol from its JSON form.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opsym_symbol_from_json(
    json: *const c_char,
    out: *mut *mut OpsymSymbol,
) -> OpsymStatus {
    guard(|| {
        let s = SymbolElement::from_json(read_str(json, "json")?)?;
        write_handle(out, OpsymSymbol(s))
    })
}

/// Canonical JSON for a symbol.
///
/// # Safety
/// `sym` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opsym_symbol_to_json(
    sym: *const OpsymSymbol,
    out: *mut *mut c_char,
) -> OpsymStatus {
    guard(|| write_string(out, deref(sym, "sym")?.0.to_json()))
}

/// # Safety
/// `sym` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn opsym_symbol_free(sym: *mut OpsymSymbol) {
    if !sym.is_null() {
        drop(Box::from_raw(sym));
    }
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opsym_symbol_product(
    a: *const OpsymSymbol,
    b: *const OpsymSymbol,
    out: *mut *mut OpsymSymbol,
) -> OpsymStatus {
    guard(|| {
        let c = deref(a, "a")?.0.product(&deref(b, "b")?.0)?;
        write_handle(out, OpsymSymbol(c))
    })
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opsym_symbol_bracket(
    a: *const OpsymSymbol,
    b: *const OpsymSymbol,
    out: *mut *mut OpsymSymbol,
) -> OpsymStatus {
    guard(|| {
        let c = deref(a, "a")?.0.bracket(&deref(b, "b")?.0)?;
        write_handle(out, OpsymSymbol(c))
    })
}

/// Multiplicative inverse of `u + f` with `u` in the ideal and `f` a nonzero
/// constant. Anything else fails with [`OpsymStatus::NotInvertible`].
///
/// # Safety
/// `sym` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opsym_symbol_invert(
    sym: *const OpsymSymbol,
    out: *mut *mut OpsymSymbol,
) -> OpsymStatus {
    guard(|| {
        let inv = deref(sym, "sym")?.0.invert()?;
        write_handle(out, OpsymSymbol(inv))
    })
}

/// Scalar principal symbol summed over all degrees, as a canonical
/// polynomial string.
///
/// # Safety
/// `sym` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opsym_symbol_delta(
    sym: *const OpsymSymbol,
    out: *mut *mut c_char,
) -> OpsymStatus {
    guard(|| write_string(out, deref(sym, "sym")?.0.delta().to_canonical_string()))
}

/// Whether the symbol lies in the ideal `J` of square-zero elements.
///
/// # Safety
/// `sym` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opsym_symbol_is_in_j(
    sym: *const OpsymSymbol,
    out: *mut bool,
) -> OpsymStatus {
    guard(|| write_out(out, deref(sym, "sym")?.0.j_membership()))
}

/// Runs a verification suite and writes its JSON report to `out`.
///
/// `suite` uses the CLI names (`all`, `ideal`, `morphism`, ...). The report
/// is written whenever the run completes. The status is
/// [`OpsymStatus::VerifyFailed`] if any property failed.
///
/// # Safety
/// `suite` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opsym_verify_suite(
    suite: *const c_char,
    seed: u64,
    base_dim: usize,
    rank: usize,
    trials: usize,
    out: *mut *mut c_char,
) -> OpsymStatus {
    let mut passed = true;
    let status = guard(|| {
        let suite: Suite = read_str(suite, "suite")?.parse()?;
        let config = SuiteConfig { suite, seed, base_dim, rank, trials, ..SuiteConfig::default() };
        let report = run_suite(&config)?;
        passed = report.ok();
        write_string(out, report.to_json())
    });
    if status == OpsymStatus::Ok && !passed {
        set_last_error("one or more properties failed; see the report".to_string());
        return OpsymStatus::VerifyFailed;
    }
    status
}

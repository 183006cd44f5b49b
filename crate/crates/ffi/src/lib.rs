//! C ABI over the `nilclean` engine.
//!
//! Rings and ideals cross the boundary as opaque handles that the caller
//! releases with `nc_ring_free` / `nc_ideal_free`. Every function returns an
//! [`NcStatus`]; on failure `nc_last_error_message` describes the error for
//! the calling thread. Strings returned through `char **` out-parameters are
//! owned by the caller and must be released with `nc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use nilclean::theorems::{run_checks, CheckConfig, Verdict};
use nilclean::{
    clean_decompositions, ideal_generated, is_nil_clean_ring, lift_idempotent,
    nil_clean_decompositions, table::TableJson, Error, FiniteRing, Ideal, IdealProperty, RingSpec,
};

/// Result codes shared by every exported function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    BadParameter = 4,
    OutOfRange = 5,
    CapExceeded = 6,
    RingMismatch = 7,
    NotAnIdeal = 8,
    PreconditionViolated = 9,
    AxiomFailure = 10,
    /// The output buffer is too small; the required length was written.
    BufferTooSmall = 11,
    /// A theorem check found a counterexample; the report is still returned.
    Counterexample = 12,
    Internal = 13,
    Panic = 14,
}

/// Opaque ring handle.
pub struct NcRing {
    ring: Arc<FiniteRing>,
}

/// Opaque ideal handle.
pub struct NcIdeal {
    ideal: Ideal,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(err: &Error) -> NcStatus {
    match err {
        Error::Parse { .. } => NcStatus::Parse,
        Error::BadParameter(_) | Error::UnknownCheck(_) | Error::MalformedTable(_) => {
            NcStatus::BadParameter
        }
        Error::ElementOutOfRange { .. } => NcStatus::OutOfRange,
        Error::OrderCapExceeded { .. }
        | Error::ExhaustiveTooLarge { .. }
        | Error::CapExceeded { .. } => NcStatus::CapExceeded,
        Error::ElementRingMismatch => NcStatus::RingMismatch,
        Error::NotAnIdeal(_) => NcStatus::NotAnIdeal,
        Error::NotCentralIdempotent(_)
        | Error::NotAlmostIdempotent(_)
        | Error::PreconditionViolated(_) => NcStatus::PreconditionViolated,
        Error::AxiomFailure(_) => NcStatus::AxiomFailure,
        Error::InternalInvariantViolation(_) => NcStatus::Internal,
    }
}

struct Fail(NcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(NcStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, converting errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<NcStatus, Fail>) -> NcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => {
            if status == NcStatus::Ok {
                set_error("");
            }
            status
        }
        Ok(Err(Fail(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("panic inside nilclean");
            NcStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(NcStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn ring_arg<'a>(p: *const NcRing) -> Result<&'a Arc<FiniteRing>, Fail> {
    p.as_ref().map(|r| &r.ring).ok_or_else(|| null("ring"))
}

unsafe fn ideal_arg<'a>(p: *const NcIdeal) -> Result<&'a Ideal, Fail> {
    p.as_ref().map(|i| &i.ideal).ok_or_else(|| null("ideal"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<NcStatus, Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(NcStatus::Ok)
}

fn c_string(text: String) -> Result<*mut c_char, Fail> {
    CString::new(text)
        .map(CString::into_raw)
        .map_err(|_| Fail(NcStatus::Internal, "string contains NUL".into()))
}

fn check_elem(ring: &FiniteRing, x: usize) -> Result<usize, Fail> {
    Ok(ring.elem(x)?.index())
}

/// Message for the last failing call on this thread; empty after success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn nc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn nc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a ring from a spec string such as `Z6`, `Z4xZ3` or `T2(Z4)`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_ring_from_spec(
    spec: *const c_char,
    order_cap: usize,
    out: *mut *mut NcRing,
) -> NcStatus {
    guard(|| {
        let spec = str_arg(spec, "spec")?;
        let ring = RingSpec::parse(spec)?.build(order_cap)?;
        write(out, Box::into_raw(Box::new(NcRing { ring })))
    })
}

/// Builds a ring from a JSON Cayley table `{order, add, mul, zero, one}`
/// after exhaustive axiom verification.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_ring_from_table_json(
    json: *const c_char,
    out: *mut *mut NcRing,
) -> NcStatus {
    guard(|| {
        let ring = TableJson::parse(str_arg(json, "json")?)?.into_ring()?;
        write(out, Box::into_raw(Box::new(NcRing { ring })))
    })
}

/// # Safety
/// `ring` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn nc_ring_free(ring: *mut NcRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_ring_order(ring: *const NcRing, out: *mut usize) -> NcStatus {
    guard(|| write(out, ring_arg(ring)?.order()))
}

/// Canonical spec of the ring; free with `nc_string_free`.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_ring_label(ring: *const NcRing, out: *mut *mut c_char) -> NcStatus {
    guard(|| {
        let label = ring_arg(ring)?.label().to_string();
        write(out, c_string(label)?)
    })
}

/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_ring_add(
    ring: *const NcRing,
    x: usize,
    y: usize,
    out: *mut usize,
) -> NcStatus {
    guard(|| {
        let r = ring_arg(ring)?;
        let (x, y) = (check_elem(r, x)?, check_elem(r, y)?);
        write(out, r.add_ix(x, y))
    })
}

/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_ring_mul(
    ring: *const NcRing,
    x: usize,
    y: usize,
    out: *mut usize,
) -> NcStatus {
    guard(|| {
        let r = ring_arg(ring)?;
        let (x, y) = (check_elem(r, x)?, check_elem(r, y)?);
        write(out, r.mul_ix(x, y))
    })
}

/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_ring_neg(ring: *const NcRing, x: usize, out: *mut usize) -> NcStatus {
    guard(|| {
        let r = ring_arg(ring)?;
        let x = check_elem(r, x)?;
        write(out, r.neg_ix(x))
    })
}

/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_ring_is_commutative(ring: *const NcRing, out: *mut bool) -> NcStatus {
    guard(|| write(out, ring_arg(ring)?.is_commutative()))
}

/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_ring_is_nil_clean(ring: *const NcRing, out: *mut bool) -> NcStatus {
    guard(|| write(out, is_nil_clean_ring(ring_arg(ring)?)))
}

/// Nilpotency index of `x`, or 0 when `x` is not nilpotent.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_ring_nil_index(
    ring: *const NcRing,
    x: usize,
    out: *mut u32,
) -> NcStatus {
    guard(|| {
        let r = ring_arg(ring)?;
        let x = check_elem(r, x)?;
        write(out, r.nil_index(x).unwrap_or(0))
    })
}

/// Lifts `a` with `a - a^2` nilpotent to an idempotent.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_lift_idempotent(
    ring: *const NcRing,
    a: usize,
    out: *mut usize,
) -> NcStatus {
    guard(|| {
        let r = ring_arg(ring)?;
        let a = check_elem(r, a)?;
        write(out, lift_idempotent(r, a)?.idempotent)
    })
}

/// All decompositions of `x` as JSON; `kind` is `clean` or `nil-clean`.
/// Free the result with `nc_string_free`.
///
/// # Safety
/// Handles and strings must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_decompose_json(
    ring: *const NcRing,
    x: usize,
    kind: *const c_char,
    out: *mut *mut c_char,
) -> NcStatus {
    guard(|| {
        let r = ring_arg(ring)?;
        let x = check_elem(r, x)?;
        let list = match str_arg(kind, "kind")? {
            "clean" => clean_decompositions(r, x),
            "nil-clean" => nil_clean_decompositions(r, x),
            other => {
                return Err(Fail(
                    NcStatus::BadParameter,
                    format!("unknown kind '{other}'"),
                ))
            }
        };
        let json =
            serde_json::to_string(&list).map_err(|e| Fail(NcStatus::Internal, e.to_string()))?;
        write(out, c_string(json)?)
    })
}

/// The two-sided ideal generated by `gens[0..n]`.
///
/// # Safety
/// `gens` must point to `n` readable values (or be null with `n == 0`).
#[no_mangle]
pub unsafe extern "C" fn nc_ideal_generated(
    ring: *const NcRing,
    gens: *const usize,
    n: usize,
    out: *mut *mut NcIdeal,
) -> NcStatus {
    guard(|| {
        let r = ring_arg(ring)?;
        let gens: &[usize] = if n == 0 {
            &[]
        } else if gens.is_null() {
            return Err(null("gens"));
        } else {
            std::slice::from_raw_parts(gens, n)
        };
        let ideal = ideal_generated(r, gens)?;
        write(out, Box::into_raw(Box::new(NcIdeal { ideal })))
    })
}

/// # Safety
/// `ideal` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn nc_ideal_free(ideal: *mut NcIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_ideal_len(ideal: *const NcIdeal, out: *mut usize) -> NcStatus {
    guard(|| write(out, ideal_arg(ideal)?.len()))
}

/// Copies the ascending member indices into `buf`. When `cap` is too small
/// nothing is copied, `written` receives the required length and the status
/// is `NC_STATUS_BUFFER_TOO_SMALL`.
///
/// # Safety
/// `buf` must have room for `cap` values; `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_ideal_members(
    ideal: *const NcIdeal,
    buf: *mut usize,
    cap: usize,
    written: *mut usize,
) -> NcStatus {
    guard(|| {
        let members = ideal_arg(ideal)?.to_vec();
        write(written, members.len())?;
        if members.len() > cap {
            return Err(Fail(
                NcStatus::BufferTooSmall,
                format!("need room for {} members", members.len()),
            ));
        }
        if !members.is_empty() {
            if buf.is_null() {
                return Err(null("buf"));
            }
            ptr::copy_nonoverlapping(members.as_ptr(), buf, members.len());
        }
        Ok(NcStatus::Ok)
    })
}

/// Tests an ideal property: `clean`, `nil-clean`, `strongly-nil-clean`,
/// `uniquely-nil-clean`, `uniquely-strongly-nil-clean`, `nil`, ...
///
/// # Safety
/// Handles and strings must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_ideal_check(
    ideal: *const NcIdeal,
    property: *const c_char,
    out: *mut bool,
) -> NcStatus {
    guard(|| {
        let ideal = ideal_arg(ideal)?;
        let property: IdealProperty = str_arg(property, "property")?.parse()?;
        write(out, property.holds(ideal))
    })
}

/// Runs theorem checks over the default family and returns the JSON report.
/// `ids` may be null (with `n_ids == 0`) to run every check. The status is
/// `NC_STATUS_COUNTEREXAMPLE` when any check fails; the report is still set.
///
/// # Safety
/// `ids` must point to `n_ids` NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_theorems_json(
    ids: *const *const c_char,
    n_ids: usize,
    out: *mut *mut c_char,
) -> NcStatus {
    guard(|| {
        let selected = if n_ids == 0 {
            None
        } else if ids.is_null() {
            return Err(null("ids"));
        } else {
            let raw = std::slice::from_raw_parts(ids, n_ids);
            Some(
                raw.iter()
                    .map(|&p| str_arg(p, "id").map(str::to_string))
                    .collect::<Result<Vec<_>, _>>()?,
            )
        };
        let reports = run_checks(selected.as_deref(), &CheckConfig::default())?;
        let json = serde_json::to_string_pretty(&reports)
            .map_err(|e| Fail(NcStatus::Internal, e.to_string()))?;
        write(out, c_string(json)?)?;
        if reports.iter().any(|r| r.verdict == Verdict::Counterexample) {
            set_error("a theorem check produced a counterexample");
            return Ok(NcStatus::Counterexample);
        }
        Ok(NcStatus::Ok)
    })
}

//! C ABI over `levalg`.
//!
//! Ideals live behind the opaque `LevalgIdeal` handle. Every fallible call
//! returns a `LevalgStatus`; on failure a message is kept per thread and
//! read with `levalg_last_error`. Panics are caught at the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use levalg::artinian::ArtinianAlgebra;
use levalg::betti::{betti_table_artinian, betti_table_stable};
use levalg::ring::{parse_ideal, GradedIdeal, Ring};
use levalg::strata::{h_of_c, Witness};
use levalg::tangent::tangent_dim_artinian;
use levalg::{Error, PrimeField};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevalgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Computation = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Opaque homogeneous ideal.
pub struct LevalgIdeal {
    inner: GradedIdeal,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

struct Failure(LevalgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => LevalgStatus::Parse,
            Error::InvalidArgument(_) | Error::InvalidPrime(_) | Error::UnknownName(_) => {
                LevalgStatus::InvalidArgument
            }
            _ => LevalgStatus::Computation,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(LevalgStatus::NullPointer, format!("{what} is null"))
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> LevalgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            LevalgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            LevalgStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(LevalgStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn ideal_ref<'a>(p: *const LevalgIdeal) -> Result<&'a GradedIdeal, Failure> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null("ideal"))
}

/// Copies `values` into `(buf, capacity)` and stores the count in `out_len`.
unsafe fn write_values(
    values: &[usize],
    buf: *mut usize,
    capacity: usize,
    out_len: *mut usize,
) -> Result<(), Failure> {
    if out_len.is_null() {
        return Err(null("out_len"));
    }
    *out_len = values.len();
    if capacity < values.len() {
        return Err(Failure(
            LevalgStatus::BufferTooSmall,
            format!("need {} entries, capacity {capacity}", values.len()),
        ));
    }
    if values.is_empty() {
        return Ok(());
    }
    if buf.is_null() {
        return Err(null("buffer"));
    }
    std::ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    Ok(())
}

unsafe fn emit_handle(out: *mut *mut LevalgIdeal, ideal: GradedIdeal) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(LevalgIdeal { inner: ideal }));
    Ok(())
}

/// Parses comma-separated homogeneous generators (optionally `+ m^t`) in
/// `nvars` variables over GF(`prime`). The handle must be released with
/// `levalg_ideal_free`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn levalg_ideal_parse(
    prime: u64,
    nvars: u32,
    text: *const c_char,
    out: *mut *mut LevalgIdeal,
) -> LevalgStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        if nvars == 0 || nvars > 8 {
            return Err(Failure(
                LevalgStatus::InvalidArgument,
                format!("nvars must be in 1..=8, got {nvars}"),
            ));
        }
        let field = PrimeField::new(prime)?;
        let ideal = parse_ideal(Ring::new(nvars as usize, field), text)?;
        emit_handle(out, ideal)
    })
}

/// Named witness ideal; `seed` is ignored by unseeded witnesses.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn levalg_witness(
    name: *const c_char,
    prime: u64,
    seed: u64,
    out: *mut *mut LevalgIdeal,
) -> LevalgStatus {
    guard(|| {
        let w: Witness = read_str(name, "name")?.parse()?;
        let ideal = w.ideal(PrimeField::new(prime)?, seed)?;
        emit_handle(out, ideal)
    })
}

/// Releases a handle; null is a no-op.
///
/// # Safety
/// `ideal` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn levalg_ideal_free(ideal: *mut LevalgIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// Hilbert function of an Artinian quotient through its socle degree.
/// On `BUFFER_TOO_SMALL`, `out_len` holds the required length.
///
/// # Safety
/// `buf` must have room for `capacity` entries; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn levalg_hilbert(
    ideal: *const LevalgIdeal,
    buf: *mut usize,
    capacity: usize,
    out_len: *mut usize,
) -> LevalgStatus {
    guard(|| {
        let a = ArtinianAlgebra::from_ideal(ideal_ref(ideal)?)?;
        write_values(&a.hilbert_values(), buf, capacity, out_len)
    })
}

/// Betti table as a JSON string (`{"r", "entries", "display"}`); free it
/// with `levalg_string_free`. A non-Artinian quotient must have a Hilbert
/// function that stabilizes by degree ten, as for point sets; otherwise
/// `COMPUTATION` is returned.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn levalg_betti_json(
    ideal: *const LevalgIdeal,
    out: *mut *mut c_char,
) -> LevalgStatus {
    guard(|| {
        let ideal = ideal_ref(ideal)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let table = match betti_table_artinian(ideal) {
            Err(Error::NotArtinian(_)) => betti_table_stable(ideal, 10)?.0,
            other => other?,
        };
        let text = serde_json::to_string(&table.to_json()).expect("json");
        *out = CString::new(text).expect("no NUL in JSON").into_raw();
        Ok(())
    })
}

/// Releases a string returned by this library; null is a no-op.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn levalg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `dim Hom(I, R/I)_0` for an Artinian quotient.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn levalg_tangent_artinian(
    ideal: *const LevalgIdeal,
    out: *mut usize,
) -> LevalgStatus {
    guard(|| {
        let a = ArtinianAlgebra::from_ideal(ideal_ref(ideal)?)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = tangent_dim_artinian(&a).dimension;
        Ok(())
    })
}

/// `H(c)` for `c ≥ 3`, of length `2c`.
///
/// # Safety
/// `buf` must have room for `capacity` entries; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn levalg_series_hilbert(
    c: u64,
    buf: *mut usize,
    capacity: usize,
    out_len: *mut usize,
) -> LevalgStatus {
    guard(|| {
        let h: Vec<usize> = h_of_c(c)?.into_iter().map(|v| v as usize).collect();
        write_values(&h, buf, capacity, out_len)
    })
}

/// Copies the calling thread's last error message, NUL-terminated, into
/// `buf`. `out_len` receives the message length without the terminator.
///
/// # Safety
/// `buf` must have room for `capacity` bytes; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn levalg_last_error(
    buf: *mut c_char,
    capacity: usize,
    out_len: *mut usize,
) -> LevalgStatus {
    if out_len.is_null() {
        return LevalgStatus::NullPointer;
    }
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        *out_len = msg.len();
        if capacity < msg.len() + 1 {
            return LevalgStatus::BufferTooSmall;
        }
        if buf.is_null() {
            return LevalgStatus::NullPointer;
        }
        std::ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, msg.len());
        *buf.add(msg.len()) = 0;
        LevalgStatus::Ok
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn levalg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

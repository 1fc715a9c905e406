//! C ABI for the qnetcap toolkit.
//!
//! Objects cross the boundary as opaque handles that the caller frees with
//! the matching `*_free` function. Every fallible call returns a
//! [`QncStatus`]; on failure, [`qnc_last_error`] returns a message for the
//! calling thread. Panics are caught and reported as [`QncStatus::Panic`].

// `!(x >= 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qnetcap::bosonic::{c_mode, DetectionMode};
use qnetcap::channels::{self, CqChannel};
use qnetcap::network::{self, InputDist};
use qnetcap::regions::HalfspaceRegion;
use qnetcap::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QncStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Bad argument, schema or dimension.
    InvalidArgument = 2,
    /// A numerical invariant failed.
    Numerical = 3,
    /// String argument was not valid UTF-8.
    Utf8 = 4,
    /// Index out of range.
    OutOfRange = 5,
    Panic = 6,
}

/// Single-letter detection strategy for bosonic capacities.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QncDetection {
    Homodyne = 0,
    Heterodyne = 1,
    Joint = 2,
}

/// Opaque classical-quantum channel.
pub struct QncChannel(CqChannel);

/// Opaque two-dimensional half-space region.
pub struct QncRegion(HalfspaceRegion);

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

struct Fail(QncStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = if e.is_numerical() {
            QncStatus::Numerical
        } else {
            QncStatus::InvalidArgument
        };
        Fail(code, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QncStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QncStatus::Ok,
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            QncStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(QncStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(QncStatus::Utf8, format!("`{what}` is not UTF-8")))
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn qnc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qnc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a named builtin channel (`bb84_p2p`, `bb84_qmac`, `bb84_ic`,
/// `theta_swap`).
///
/// # Safety
/// `name` must be a NUL-terminated string, `params` must point to
/// `n_params` doubles (or be null when `n_params` is 0) and `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn qnc_channel_builtin(
    name: *const c_char,
    params: *const f64,
    n_params: usize,
    out: *mut *mut QncChannel,
) -> QncStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let name = str_arg(name, "name")?;
        let params = slice_arg(params, n_params, "params")?;
        let ch = channels::builtin(name, params)?;
        *out = Box::into_raw(Box::new(QncChannel(ch)));
        Ok(())
    })
}

/// Parses a channel from its JSON description.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qnc_channel_from_json(
    json: *const c_char,
    out: *mut *mut QncChannel,
) -> QncStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let ch = CqChannel::from_json_str(str_arg(json, "json")?)?;
        *out = Box::into_raw(Box::new(QncChannel(ch)));
        Ok(())
    })
}

/// # Safety
/// `ch` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn qnc_channel_free(ch: *mut QncChannel) {
    if !ch.is_null() {
        drop(Box::from_raw(ch));
    }
}

/// Number of classical inputs of the channel.
///
/// # Safety
/// `ch` must be a live channel handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qnc_channel_num_inputs(ch: *const QncChannel, out: *mut usize) -> QncStatus {
    guard(|| {
        *out_arg(out, "out")? = ref_arg(ch, "ch")?.0.num_inputs();
        Ok(())
    })
}

/// Holevo capacity of a single-input channel, maximized over a simplex
/// grid of `grid` points per edge and refined locally.
///
/// # Safety
/// `ch` must be a live channel handle and `capacity` writable. `argmax`
/// may be null; otherwise it must hold `argmax_len` doubles, which must
/// equal the input alphabet size.
#[no_mangle]
pub unsafe extern "C" fn qnc_holevo_capacity(
    ch: *const QncChannel,
    grid: usize,
    capacity: *mut f64,
    argmax: *mut f64,
    argmax_len: usize,
) -> QncStatus {
    guard(|| {
        let ch = &ref_arg(ch, "ch")?.0;
        let cap = out_arg(capacity, "capacity")?;
        let (c, p) = network::hsw_capacity(ch, grid)?;
        if !argmax.is_null() {
            if argmax_len != p.len() {
                return Err(Fail(
                    QncStatus::InvalidArgument,
                    format!("argmax buffer has {argmax_len} slots, distribution has {}", p.len()),
                ));
            }
            std::slice::from_raw_parts_mut(argmax, argmax_len).copy_from_slice(p.weights());
        }
        *cap = c;
        Ok(())
    })
}

/// Multiple-access region of a two-input channel under uniform inputs.
///
/// # Safety
/// `ch` must be a live channel handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qnc_mac_region_uniform(
    ch: *const QncChannel,
    out: *mut *mut QncRegion,
) -> QncStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let ch = &ref_arg(ch, "ch")?.0;
        let r = network::mac_region_q(ch, &InputDist::uniform(ch))?;
        *out = Box::into_raw(Box::new(QncRegion(r)));
        Ok(())
    })
}

/// # Safety
/// `r` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn qnc_region_free(r: *mut QncRegion) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of coordinates of the region.
///
/// # Safety
/// `r` must be a live region handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qnc_region_dim(r: *const QncRegion, out: *mut usize) -> QncStatus {
    guard(|| {
        *out_arg(out, "out")? = ref_arg(r, "r")?.0.dim();
        Ok(())
    })
}

/// Number of stored inequalities `c · x ≤ b`, excluding nonnegativity.
///
/// # Safety
/// `r` must be a live region handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qnc_region_num_inequalities(r: *const QncRegion, out: *mut usize) -> QncStatus {
    guard(|| {
        *out_arg(out, "out")? = ref_arg(r, "r")?.0.inequalities().len();
        Ok(())
    })
}

/// Copies inequality `index` into `coeffs` (length `dim`) and `bound`.
///
/// # Safety
/// `r` must be a live region handle, `coeffs` must hold `dim` doubles and
/// `bound` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qnc_region_inequality(
    r: *const QncRegion,
    index: usize,
    coeffs: *mut f64,
    dim: usize,
    bound: *mut f64,
) -> QncStatus {
    guard(|| {
        let r = &ref_arg(r, "r")?.0;
        let b = out_arg(bound, "bound")?;
        let q = r.inequalities().get(index).ok_or_else(|| {
            Fail(QncStatus::OutOfRange, format!("inequality {index} of {}", r.inequalities().len()))
        })?;
        if dim != r.dim() {
            return Err(Fail(
                QncStatus::InvalidArgument,
                format!("coefficient buffer has {dim} slots, region has {} coordinates", r.dim()),
            ));
        }
        if coeffs.is_null() {
            return Err(null("coeffs"));
        }
        std::slice::from_raw_parts_mut(coeffs, dim).copy_from_slice(&q.coeffs);
        *b = q.bound;
        Ok(())
    })
}

/// Membership of `point` (length `dim`) with tolerance `tol`.
///
/// # Safety
/// `r` must be a live region handle, `point` must hold `dim` doubles and
/// `inside` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qnc_region_contains(
    r: *const QncRegion,
    point: *const f64,
    dim: usize,
    tol: f64,
    inside: *mut bool,
) -> QncStatus {
    guard(|| {
        let r = &ref_arg(r, "r")?.0;
        let out = out_arg(inside, "inside")?;
        let point = slice_arg(point, dim, "point")?;
        if dim != r.dim() {
            return Err(Fail(
                QncStatus::InvalidArgument,
                format!("point has {dim} coordinates, region has {}", r.dim()),
            ));
        }
        *out = r.contains(point, tol);
        Ok(())
    })
}

/// `max c · x` over the region. Writes infinity for unbounded directions.
///
/// # Safety
/// `r` must be a live region handle, `direction` must hold `dim` doubles
/// and `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qnc_region_support(
    r: *const QncRegion,
    direction: *const f64,
    dim: usize,
    value: *mut f64,
) -> QncStatus {
    guard(|| {
        let r = &ref_arg(r, "r")?.0;
        let out = out_arg(value, "value")?;
        let c = slice_arg(direction, dim, "direction")?;
        *out = r.support(c)?.unwrap_or(f64::INFINITY);
        Ok(())
    })
}

/// JSON form of the region. Free the result with [`qnc_string_free`].
///
/// # Safety
/// `r` must be a live region handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qnc_region_to_json(r: *const QncRegion, out: *mut *mut c_char) -> QncStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let s = ref_arg(r, "r")?.0.to_json_string();
        *out = CString::new(s)
            .map_err(|e| Fail(QncStatus::Numerical, e.to_string()))?
            .into_raw();
        Ok(())
    })
}

/// Capacity of a pure-loss thermal-noise channel with transmissivity `eta`,
/// mean signal photons `ns` and thermal photons `nb`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qnc_bosonic_capacity(
    mode: QncDetection,
    eta: f64,
    ns: f64,
    nb: f64,
    out: *mut f64,
) -> QncStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        if !(0.0..=1.0).contains(&eta) || !(ns >= 0.0) || !(nb >= 0.0) || !ns.is_finite() || !nb.is_finite() {
            return Err(Fail(
                QncStatus::InvalidArgument,
                format!("need 0 ≤ eta ≤ 1 and finite ns, nb ≥ 0; got eta={eta} ns={ns} nb={nb}"),
            ));
        }
        let mode = match mode {
            QncDetection::Homodyne => DetectionMode::Homodyne,
            QncDetection::Heterodyne => DetectionMode::Heterodyne,
            QncDetection::Joint => DetectionMode::Joint,
        };
        *out = c_mode(mode, eta, ns, nb);
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn builtin(name: &str, params: &[f64]) -> *mut QncChannel {
        let name = CString::new(name).unwrap();
        let mut ch = ptr::null_mut();
        let st = unsafe { qnc_channel_builtin(name.as_ptr(), params.as_ptr(), params.len(), &mut ch) };
        assert_eq!(st, QncStatus::Ok);
        ch
    }

    fn last_error() -> String {
        let p = qnc_last_error();
        assert!(!p.is_null());
        unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
    }

    #[test]
    fn holevo_capacity_round_trip() {
        let ch = builtin("bb84_p2p", &[]);
        let (mut c, mut p) = (0.0, [0.0; 2]);
        let st = unsafe { qnc_holevo_capacity(ch, 21, &mut c, p.as_mut_ptr(), 2) };
        assert_eq!(st, QncStatus::Ok);
        assert!((c - 0.600876).abs() < 1e-5);
        assert!((p[0] - 0.5).abs() < 1e-4);
        assert!(qnc_last_error().is_null());
        unsafe { qnc_channel_free(ch) };
    }

    #[test]
    fn mac_region_accessors() {
        let ch = builtin("bb84_qmac", &[]);
        let mut r = ptr::null_mut();
        assert_eq!(unsafe { qnc_mac_region_uniform(ch, &mut r) }, QncStatus::Ok);
        let mut n = 0;
        assert_eq!(unsafe { qnc_region_num_inequalities(r, &mut n) }, QncStatus::Ok);
        assert!(n >= 3);
        let (mut c, mut b) = ([0.0; 2], 0.0);
        assert_eq!(unsafe { qnc_region_inequality(r, 0, c.as_mut_ptr(), 2, &mut b) }, QncStatus::Ok);
        assert_eq!(
            unsafe { qnc_region_inequality(r, n, c.as_mut_ptr(), 2, &mut b) },
            QncStatus::OutOfRange
        );
        let mut sum = 0.0;
        assert_eq!(unsafe { qnc_region_support(r, [1.0, 1.0].as_ptr(), 2, &mut sum) }, QncStatus::Ok);
        assert!((sum - 1.0).abs() < 1e-9);
        let mut inside = false;
        unsafe { qnc_region_contains(r, [0.5, 0.4].as_ptr(), 2, 1e-9, &mut inside) };
        assert!(inside);
        unsafe { qnc_region_contains(r, [0.6, 0.6].as_ptr(), 2, 1e-9, &mut inside) };
        assert!(!inside);
        let mut js = ptr::null_mut();
        assert_eq!(unsafe { qnc_region_to_json(r, &mut js) }, QncStatus::Ok);
        let text = unsafe { CStr::from_ptr(js) }.to_str().unwrap().to_string();
        assert!(text.contains("\"coords\""));
        unsafe {
            qnc_string_free(js);
            qnc_region_free(r);
            qnc_channel_free(ch);
        }
    }

    #[test]
    fn errors_are_reported() {
        let name = CString::new("nope").unwrap();
        let mut ch = ptr::null_mut();
        let st = unsafe { qnc_channel_builtin(name.as_ptr(), ptr::null(), 0, &mut ch) };
        assert_eq!(st, QncStatus::InvalidArgument);
        assert!(ch.is_null());
        assert!(last_error().contains("nope"));

        let st = unsafe { qnc_channel_builtin(ptr::null(), ptr::null(), 0, &mut ch) };
        assert_eq!(st, QncStatus::NullPointer);

        let bad = CString::new("{\"outputs\": 1}").unwrap();
        let st = unsafe { qnc_channel_from_json(bad.as_ptr(), &mut ch) };
        assert_eq!(st, QncStatus::InvalidArgument);
        assert!(last_error().contains("schema"));

        let mut c = 0.0;
        let st = unsafe { qnc_bosonic_capacity(QncDetection::Joint, 1.5, 1.0, 1.0, &mut c) };
        assert_eq!(st, QncStatus::InvalidArgument);
    }

    #[test]
    fn json_channel_and_bosonic() {
        let ch = builtin("theta_swap", &[0.4]);
        let json = CString::new(unsafe { &(*ch).0 }.to_json_string()).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(unsafe { qnc_channel_from_json(json.as_ptr(), &mut back) }, QncStatus::Ok);
        let mut k = 0;
        unsafe { qnc_channel_num_inputs(back, &mut k) };
        assert_eq!(k, 2);
        unsafe {
            qnc_channel_free(ch);
            qnc_channel_free(back);
        }

        let (mut hom, mut het, mut hol) = (0.0, 0.0, 0.0);
        unsafe {
            qnc_bosonic_capacity(QncDetection::Homodyne, 0.9, 10.0, 1.0, &mut hom);
            qnc_bosonic_capacity(QncDetection::Heterodyne, 0.9, 10.0, 1.0, &mut het);
            qnc_bosonic_capacity(QncDetection::Joint, 0.9, 10.0, 1.0, &mut hol);
        }
        assert!(hol >= hom.max(het));
    }
}

//! C interface to `kernelforge`.
//!
//! Domains and virtual kernels are opaque heap handles released with their
//! `_free` functions. Every fallible call returns a [`KfStatus`]; on failure
//! [`kf_last_error_message`] describes the error for the calling thread.
//! Strings returned through out-parameters are owned by the caller and must be
//! released with [`kf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kernelforge::domains::{generic_norm, DomainPoint, DomainType};
use kernelforge::kernels::{chi_polynomial, hua_ratio_real, inflated_kernel, virtual_decomposition, VirtualKernel};
use kernelforge::polyalg::{format_rational, rat};
use kernelforge::Error;
use num_complex::Complex64;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidDomain = 3,
    Unsupported = 4,
    Shape = 5,
    OutsideDomain = 6,
    Singular = 7,
    Branch = 8,
    Divergence = 9,
    Parse = 10,
    Panic = 11,
}

/// Opaque domain handle.
pub struct KfDomain(DomainType);

/// Opaque virtual kernel handle (domain plus weight exponent).
pub struct KfVirtualKernel(VirtualKernel);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct KfInvariants {
    pub rank: u32,
    pub a: u32,
    pub b: u32,
    pub genus: u32,
    pub dim: u32,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct KfComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for KfComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<KfComplex> for Complex64 {
    fn from(z: KfComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> KfStatus {
    match e {
        Error::InvalidDomain(_) => KfStatus::InvalidDomain,
        Error::UnsupportedDomain(..) => KfStatus::Unsupported,
        Error::Shape(_) => KfStatus::Shape,
        Error::OutsideDomain(_) => KfStatus::OutsideDomain,
        Error::Parameter(_) => KfStatus::InvalidArgument,
        Error::Singular => KfStatus::Singular,
        Error::Branch { .. } => KfStatus::Branch,
        Error::Divergence(_) => KfStatus::Divergence,
        Error::Parse(_) => KfStatus::Parse,
    }
}

enum Failure {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> KfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            KfStatus::Ok
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer passed as {what}"));
            KfStatus::NullPointer
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            KfStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    unsafe { p.as_ref() }.ok_or(Failure::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    unsafe { p.as_mut() }.ok_or(Failure::Null(what))
}

unsafe fn complex_slice(p: *const KfComplex, len: usize, what: &'static str) -> Result<Vec<Complex64>, Failure> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(unsafe { std::slice::from_raw_parts(p, len) }.iter().map(|&z| z.into()).collect())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Message for the last failed call on this thread, or NULL after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn kf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn kf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses a type label (`I:m,n`, `II:n`, `III:n`, `IV:n`, `V`, `VI`).
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out_domain` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kf_domain_new(spec: *const c_char, out_domain: *mut *mut KfDomain) -> KfStatus {
    guard(|| {
        let out_domain = unsafe { out(out_domain, "out_domain") }?;
        if spec.is_null() {
            return Err(Failure::Null("spec"));
        }
        let text = unsafe { CStr::from_ptr(spec) }
            .to_str()
            .map_err(|_| Error::Parse("type label is not UTF-8".into()))?;
        let d: DomainType = text.parse()?;
        *out_domain = Box::into_raw(Box::new(KfDomain(d)));
        Ok(())
    })
}

/// # Safety
/// `d` must come from [`kf_domain_new`] and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn kf_domain_free(d: *mut KfDomain) {
    if !d.is_null() {
        drop(unsafe { Box::from_raw(d) });
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn kf_domain_invariants(d: *const KfDomain, out_inv: *mut KfInvariants) -> KfStatus {
    guard(|| {
        let d = unsafe { deref(d, "domain") }?;
        let out_inv = unsafe { out(out_inv, "out_inv") }?;
        let inv = d.0.invariants();
        *out_inv = KfInvariants { rank: inv.rank, a: inv.a, b: inv.b, genus: inv.genus, dim: inv.dim };
        Ok(())
    })
}

/// `chi(s)` as text: rising-factorial product, or expanded when `expanded`.
///
/// # Safety
/// Pointers must be valid; free the result with [`kf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn kf_chi_string(d: *const KfDomain, expanded: bool, out_str: *mut *mut c_char) -> KfStatus {
    guard(|| {
        let d = unsafe { deref(d, "domain") }?;
        let out_str = unsafe { out(out_str, "out_str") }?;
        let chi = chi_polynomial(d.0)?;
        let text = if expanded { chi.expanded().display_in("s") } else { chi.factored().display_in("s") };
        *out_str = owned_string(text);
        Ok(())
    })
}

/// `chi(0)/chi(s)` in floating point, `s > -1`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn kf_hua_ratio(d: *const KfDomain, s: f64, out_value: *mut f64) -> KfStatus {
    guard(|| {
        let d = unsafe { deref(d, "domain") }?;
        let out_value = unsafe { out(out_value, "out_value") }?;
        *out_value = hua_ratio_real(d.0, s)?;
        Ok(())
    })
}

/// Decomposes the generating function for weight exponent `mu_num / mu_den >= 0`.
///
/// # Safety
/// Pointers must be valid; release the handle with [`kf_vk_free`].
#[no_mangle]
pub unsafe extern "C" fn kf_vk_new(
    d: *const KfDomain,
    mu_num: i64,
    mu_den: i64,
    out_vk: *mut *mut KfVirtualKernel,
) -> KfStatus {
    guard(|| {
        let d = unsafe { deref(d, "domain") }?;
        let out_vk = unsafe { out(out_vk, "out_vk") }?;
        if mu_den == 0 {
            return Err(Error::Parameter("mu denominator is zero".into()).into());
        }
        let vk = virtual_decomposition(d.0, &rat(mu_num, mu_den))?;
        *out_vk = Box::into_raw(Box::new(KfVirtualKernel(vk)));
        Ok(())
    })
}

/// # Safety
/// `vk` must come from [`kf_vk_new`] and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn kf_vk_free(vk: *mut KfVirtualKernel) {
    if !vk.is_null() {
        drop(unsafe { Box::from_raw(vk) });
    }
}

/// Number of pole coefficients (`dim + 1`), or 0 for NULL.
///
/// # Safety
/// `vk` must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn kf_vk_coeff_count(vk: *const KfVirtualKernel) -> usize {
    unsafe { vk.as_ref() }.map_or(0, |v| v.0.coeffs().len())
}

/// Coefficient `j` as an exact `"p/q"` string.
///
/// # Safety
/// Pointers must be valid; free the result with [`kf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn kf_vk_coeff(vk: *const KfVirtualKernel, j: usize, out_str: *mut *mut c_char) -> KfStatus {
    guard(|| {
        let vk = unsafe { deref(vk, "vk") }?;
        let out_str = unsafe { out(out_str, "out_str") }?;
        let c = vk.0.coeffs().get(j).ok_or_else(|| {
            Error::Parameter(format!("coefficient index {j} out of range 0..{}", vk.0.coeffs().len()))
        })?;
        *out_str = owned_string(format_rational(c));
        Ok(())
    })
}

/// `(1/m!) d^m F/dt^m` at `t`, `|t| < 1`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn kf_vk_f_eval(
    vk: *const KfVirtualKernel,
    t: KfComplex,
    m: u32,
    out_value: *mut KfComplex,
) -> KfStatus {
    guard(|| {
        let vk = unsafe { deref(vk, "vk") }?;
        let out_value = unsafe { out(out_value, "out_value") }?;
        *out_value = vk.0.f_eval(t.into(), m)?.into();
        Ok(())
    })
}

/// Generic norm `N(x, y)`. Points are given either as all matrix entries in
/// row-major order or as independent coordinates.
///
/// # Safety
/// `x` and `y` must point to `x_len` and `y_len` values; `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kf_generic_norm(
    d: *const KfDomain,
    x: *const KfComplex,
    x_len: usize,
    y: *const KfComplex,
    y_len: usize,
    out_value: *mut KfComplex,
) -> KfStatus {
    guard(|| {
        let d = unsafe { deref(d, "domain") }?;
        let out_value = unsafe { out(out_value, "out_value") }?;
        let x = DomainPoint::from_entries(d.0, &unsafe { complex_slice(x, x_len, "x") }?)?;
        let y = DomainPoint::from_entries(d.0, &unsafe { complex_slice(y, y_len, "y") }?)?;
        *out_value = generic_norm(&x, &y)?.into();
        Ok(())
    })
}

/// Bergman kernel of the inflated domain at `((z, zf), (w, wf))`, fibers of
/// length `m`. The base volume is exact for balls and normalized to one
/// otherwise.
///
/// # Safety
/// Every array must hold the stated number of values.
#[no_mangle]
pub unsafe extern "C" fn kf_inflated_kernel(
    vk: *const KfVirtualKernel,
    z: *const KfComplex,
    z_len: usize,
    zf: *const KfComplex,
    w: *const KfComplex,
    w_len: usize,
    wf: *const KfComplex,
    m: usize,
    out_value: *mut KfComplex,
) -> KfStatus {
    guard(|| {
        let vk = unsafe { deref(vk, "vk") }?;
        let out_value = unsafe { out(out_value, "out_value") }?;
        let d = vk.0.domain();
        let z = DomainPoint::from_entries(d, &unsafe { complex_slice(z, z_len, "z") }?)?;
        let w = DomainPoint::from_entries(d, &unsafe { complex_slice(w, w_len, "w") }?)?;
        let zf = unsafe { complex_slice(zf, m, "zf") }?;
        let wf = unsafe { complex_slice(wf, m, "wf") }?;
        *out_value = inflated_kernel(&vk.0, &z, &zf, &w, &wf, None)?.value.into();
        Ok(())
    })
}

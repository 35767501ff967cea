//! C ABI for the spectral core. Spaces and fields are opaque heap handles
//! created and released through this interface; every function returns an
//! [`SqgStatus`] and writes results through out-pointers. On failure the
//! message is available from [`sqg_last_error_message`] on the same thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use sqg_disk::besov::{besov_norm, BesovSpec, Partition, PartitionKind};
use sqg_disk::operators::advect;
use sqg_disk::specfun::{bessel_j, bessel_zero};
use sqg_disk::spectral::{DiskSpace, GridField, SpectralField};
use sqg_disk::sqg::{etd_step, Advection, EtdWeights};
use sqg_disk::Error;

/// Result code of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SqgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    SizeMismatch = 4,
    NonFinite = 5,
    NoConvergence = 6,
    Internal = 7,
}

/// Which partition of unity a Besov norm uses.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SqgPartition {
    Dyadic = 0,
    Resolvent = 1,
}

/// A truncated eigenbasis with its transforms.
pub struct SqgSpace {
    inner: DiskSpace,
}

/// Spectral coefficients on the basis of the space that created it.
pub struct SqgField {
    inner: SpectralField,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SqgStatus {
    match e {
        Error::Domain(_) => SqgStatus::Domain,
        Error::SizeMismatch(_) => SqgStatus::SizeMismatch,
        Error::NonFinite(_) => SqgStatus::NonFinite,
        Error::ZeroBracket { .. } | Error::ZeroConvergence { .. } => SqgStatus::NoConvergence,
        Error::InvalidArgument(_) | Error::Config(_) | Error::Cfl { .. } => SqgStatus::InvalidArgument,
        _ => SqgStatus::Internal,
    }
}

/// Runs `body`, mapping errors and panics to status codes.
fn guard(body: impl FnOnce() -> Result<(), FfiError>) -> SqgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SqgStatus::Ok,
        Ok(Err(FfiError::Null(what))) => {
            set_error(&format!("null pointer: {what}"));
            SqgStatus::NullPointer
        }
        Ok(Err(FfiError::Core(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            SqgStatus::Internal
        }
    }
}

enum FfiError {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for FfiError {
    fn from(e: Error) -> Self {
        FfiError::Core(e)
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, FfiError> {
    p.as_ref().ok_or(FfiError::Null(what))
}

unsafe fn deref_mut<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, FfiError> {
    p.as_mut().ok_or(FfiError::Null(what))
}

fn same_basis(space: &SqgSpace, f: &SqgField) -> Result<(), FfiError> {
    f.inner.check(space.inner.basis())?;
    Ok(())
}

/// Message of the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sqg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// `J_order(x)`.
#[no_mangle]
pub unsafe extern "C" fn sqg_bessel_j(order: u32, x: f64, out: *mut f64) -> SqgStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        *out = bessel_j(order, x)?;
        Ok(())
    })
}

/// `j_{order,k}`, the `k`-th positive zero (`k >= 1`).
#[no_mangle]
pub unsafe extern "C" fn sqg_bessel_zero(order: u32, k: usize, out: *mut f64) -> SqgStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        *out = bessel_zero(order, k)?;
        Ok(())
    })
}

/// Basis `|m| <= max_m`, `1 <= k <= max_k` with its default grids.
#[no_mangle]
pub unsafe extern "C" fn sqg_space_new(max_m: usize, max_k: usize, out: *mut *mut SqgSpace) -> SqgStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        *out = ptr::null_mut();
        let space = DiskSpace::new(max_m, max_k)?;
        *out = Box::into_raw(Box::new(SqgSpace { inner: space }));
        Ok(())
    })
}

/// Releases a space; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sqg_space_free(space: *mut SqgSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Collocation grid size; `sqg_synthesize` and `sqg_analyze` use arrays of
/// `nr * ntheta` values, ring-major.
#[no_mangle]
pub unsafe extern "C" fn sqg_space_grid_shape(space: *const SqgSpace, nr: *mut usize, ntheta: *mut usize) -> SqgStatus {
    guard(|| {
        let grid = deref(space, "space")?.inner.grid();
        *deref_mut(nr, "nr")? = grid.nr();
        *deref_mut(ntheta, "ntheta")? = grid.ntheta();
        Ok(())
    })
}

/// Eigenvalue of `Λ_D` for mode `(m, k)`, `k >= 1`.
#[no_mangle]
pub unsafe extern "C" fn sqg_space_lambda(space: *const SqgSpace, m: i32, k: usize, out: *mut f64) -> SqgStatus {
    guard(|| {
        let basis = deref(space, "space")?.inner.basis();
        let mode =
            basis.mode(m, k).ok_or_else(|| Error::InvalidArgument(format!("mode ({m}, {k}) is outside the basis")))?;
        *deref_mut(out, "out")? = mode.lambda;
        Ok(())
    })
}

/// New zero field on the basis of `space`.
#[no_mangle]
pub unsafe extern "C" fn sqg_field_new(space: *const SqgSpace, out: *mut *mut SqgField) -> SqgStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        *out = ptr::null_mut();
        let space = deref(space, "space")?;
        *out = Box::into_raw(Box::new(SqgField { inner: space.inner.zeros() }));
        Ok(())
    })
}

/// Releases a field; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sqg_field_free(field: *mut SqgField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

fn check_mode(f: &SpectralField, m: i32, k: usize) -> Result<(), FfiError> {
    if m.unsigned_abs() as usize > f.max_m() || k == 0 || k > f.max_k() {
        return Err(Error::InvalidArgument(format!("mode ({m}, {k}) is outside the basis")).into());
    }
    Ok(())
}

/// Sets coefficient `c(m, k)`; `c(-m, k)` becomes its conjugate so the field
/// stays real. For `m = 0` the imaginary part is dropped.
#[no_mangle]
pub unsafe extern "C" fn sqg_field_set(field: *mut SqgField, m: i32, k: usize, re: f64, im: f64) -> SqgStatus {
    guard(|| {
        let f = &mut deref_mut(field, "field")?.inner;
        check_mode(f, m, k)?;
        if !(re.is_finite() && im.is_finite()) {
            return Err(Error::NonFinite(format!("coefficient ({re}, {im})")).into());
        }
        f.set(m, k, Complex64::new(re, if m == 0 { 0.0 } else { im }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sqg_field_get(
    field: *const SqgField,
    m: i32,
    k: usize,
    re: *mut f64,
    im: *mut f64,
) -> SqgStatus {
    guard(|| {
        let f = &deref(field, "field")?.inner;
        check_mode(f, m, k)?;
        let c = f.get(m, k);
        *deref_mut(re, "re")? = c.re;
        *deref_mut(im, "im")? = c.im;
        Ok(())
    })
}

/// Grid values of `field` into `values[0..len]`, `len = nr * ntheta`.
#[no_mangle]
pub unsafe extern "C" fn sqg_synthesize(
    space: *const SqgSpace,
    field: *const SqgField,
    values: *mut f64,
    len: usize,
) -> SqgStatus {
    guard(|| {
        let space = deref(space, "space")?;
        let field = deref(field, "field")?;
        same_basis(space, field)?;
        if values.is_null() {
            return Err(FfiError::Null("values"));
        }
        let grid = space.inner.synthesize(&field.inner)?;
        if grid.values().len() != len {
            return Err(Error::SizeMismatch(format!("expected {} values, got {len}", grid.values().len())).into());
        }
        std::slice::from_raw_parts_mut(values, len).copy_from_slice(grid.values());
        Ok(())
    })
}

/// Projects `values[0..len]` (collocation grid, ring-major) onto `out`.
#[no_mangle]
pub unsafe extern "C" fn sqg_analyze(
    space: *const SqgSpace,
    values: *const f64,
    len: usize,
    out: *mut SqgField,
) -> SqgStatus {
    guard(|| {
        let space = deref(space, "space")?;
        let out = deref_mut(out, "out")?;
        same_basis(space, out)?;
        if values.is_null() {
            return Err(FfiError::Null("values"));
        }
        let data = std::slice::from_raw_parts(values, len).to_vec();
        let grid = GridField::from_values(space.inner.grid(), data)?;
        out.inner = space.inner.analyze(&grid)?;
        Ok(())
    })
}

/// `‖f‖_{Ḃ^s_{p,q}}`; pass `INFINITY` for `p` or `q = ∞`.
#[no_mangle]
pub unsafe extern "C" fn sqg_besov_norm(
    space: *const SqgSpace,
    field: *const SqgField,
    s: f64,
    p: f64,
    q: f64,
    partition: SqgPartition,
    out: *mut f64,
) -> SqgStatus {
    guard(|| {
        let space = deref(space, "space")?;
        let field = deref(field, "field")?;
        same_basis(space, field)?;
        let kind = match partition {
            SqgPartition::Dyadic => PartitionKind::Dyadic,
            SqgPartition::Resolvent => PartitionKind::Resolvent,
        };
        let part = Partition::new(kind, space.inner.basis());
        let report = besov_norm(&space.inner, &field.inner, BesovSpec::new(s, p, q)?, &part)?;
        *deref_mut(out, "out")? = report.value;
        Ok(())
    })
}

/// `out = B(f, g) = (∇^⊥Λ_D^{-1} f · ∇) g`, projected. `out` may alias
/// neither `f` nor `g`.
#[no_mangle]
pub unsafe extern "C" fn sqg_advect(
    space: *const SqgSpace,
    f: *const SqgField,
    g: *const SqgField,
    out: *mut SqgField,
) -> SqgStatus {
    guard(|| {
        let space = deref(space, "space")?;
        let (f, g) = (deref(f, "f")?, deref(g, "g")?);
        same_basis(space, f)?;
        same_basis(space, g)?;
        let result = advect(&space.inner, &f.inner, &g.inner)?;
        deref_mut(out, "out")?.inner = result;
        Ok(())
    })
}

/// One ETDRK2 step of size `dt` of `∂_tθ + (Λ_D + εΛ_D²)θ + B(θ, θ) = 0`,
/// in place.
#[no_mangle]
pub unsafe extern "C" fn sqg_etd_step(
    space: *const SqgSpace,
    theta: *mut SqgField,
    dt: f64,
    epsilon: f64,
) -> SqgStatus {
    guard(|| {
        let space = deref(space, "space")?;
        let theta = deref_mut(theta, "theta")?;
        same_basis(space, theta)?;
        if !(dt > 0.0 && dt.is_finite() && epsilon >= 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidArgument(format!("need dt > 0 and epsilon >= 0, got {dt}, {epsilon}")).into());
        }
        let w = EtdWeights::new(space.inner.basis().lambdas(), dt, epsilon);
        let next = etd_step(&space.inner, &w, &theta.inner, Advection::SelfAdvect)?;
        if !next.is_finite() {
            return Err(Error::NonFinite("step produced non-finite coefficients".into()).into());
        }
        theta.inner = next;
        Ok(())
    })
}

//! C ABI for `eigregion`.
//!
//! Every fallible function returns an [`ErStatus`]; on failure the message is
//! available from [`er_last_error`] on the same thread. Objects are opaque
//! handles released with their matching `_free` function. Matrices are passed
//! row-major as separate real and imaginary arrays.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use eigregion::bases::{convert_to_basis, GeneralizedBasis};
use eigregion::cauchy::cauchy_radius;
use eigregion::linalg::polyeig_oracle;
use eigregion::problems::{acoustic, mass_spring, string_galerkin};
use eigregion::regions::{inclusion_region, reversal_exclusion, verify_containment, InclusionRegion};
use eigregion::{Complex64, ComplexMatrix, Error, MatrixPolynomial, Norm};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Dimension = 3,
    Singular = 4,
    NoConvergence = 5,
    InvalidBasis = 6,
    RecipeUndefined = 7,
    TooLarge = 8,
    BufferTooSmall = 9,
    Internal = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErNorm {
    One = 0,
    Inf = 1,
}

impl From<ErNorm> for Norm {
    fn from(n: ErNorm) -> Self {
        match n {
            ErNorm::One => Norm::One,
            ErNorm::Inf => Norm::Inf,
        }
    }
}

/// Matrix polynomial handle.
pub struct ErPolynomial(MatrixPolynomial);

/// Inclusion region handle.
pub struct ErRegion(InclusionRegion);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ErStatus {
    match e {
        Error::Dimension(_) | Error::DegreeMismatch { .. } => ErStatus::Dimension,
        Error::Singular { .. } => ErStatus::Singular,
        Error::NoConvergence { .. } => ErStatus::NoConvergence,
        Error::InvalidBasis(_) => ErStatus::InvalidBasis,
        Error::RecipeUndefined(_) => ErStatus::RecipeUndefined,
        Error::TooLarge(_) => ErStatus::TooLarge,
        Error::Precondition(_) | Error::Invalid(_) | Error::Json(_) => ErStatus::InvalidArgument,
        Error::Io(_) => ErStatus::Internal,
    }
}

struct Failure(ErStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(ErStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ErStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ErStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            ErStatus::Internal
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

fn boxed_poly(p: MatrixPolynomial, dst: &mut *mut ErPolynomial) {
    *dst = Box::into_raw(Box::new(ErPolynomial(p)));
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn er_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Power-basis polynomial from `degree + 1` row-major `size x size`
/// coefficients `A_0, ..., A_degree` stored back to back.
///
/// # Safety
/// `re` and `im` must point to `(degree + 1) * size * size` doubles.
#[no_mangle]
pub unsafe extern "C" fn er_polynomial_new(
    degree: usize,
    size: usize,
    re: *const f64,
    im: *const f64,
    result: *mut *mut ErPolynomial,
) -> ErStatus {
    guard(|| {
        let dst = out(result, "result")?;
        if re.is_null() || im.is_null() {
            return Err(null("coefficient array"));
        }
        if size == 0 || degree == 0 {
            return Err(Failure(ErStatus::Dimension, "degree and size must be positive".into()));
        }
        let block = size
            .checked_mul(size)
            .and_then(|b| b.checked_mul(degree + 1).map(|t| (b, t)))
            .ok_or_else(|| Failure(ErStatus::TooLarge, "coefficient array too large".into()))?;
        let (block, total) = block;
        let re = std::slice::from_raw_parts(re, total);
        let im = std::slice::from_raw_parts(im, total);
        let coeffs = (0..=degree)
            .map(|j| {
                let data = (j * block..(j + 1) * block)
                    .map(|k| Complex64::new(re[k], im[k]))
                    .collect();
                ComplexMatrix::from_row_major(size, size, data)
            })
            .collect::<Result<Vec<_>, _>>()?;
        boxed_poly(MatrixPolynomial::power(coeffs)?, dst);
        Ok(())
    })
}

/// Damped mass-spring chain of size `m`.
///
/// # Safety
/// `result` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn er_polynomial_mass_spring(
    m: usize,
    tau: f64,
    kappa: f64,
    result: *mut *mut ErPolynomial,
) -> ErStatus {
    guard(|| {
        let dst = out(result, "result")?;
        boxed_poly(mass_spring(m, tau, kappa)?, dst);
        Ok(())
    })
}

/// Monicized acoustic problem with `ell (ell - 1)` unknowns.
///
/// # Safety
/// `result` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn er_polynomial_acoustic(
    ell: usize,
    zeta_re: f64,
    zeta_im: f64,
    result: *mut *mut ErPolynomial,
) -> ErStatus {
    guard(|| {
        let dst = out(result, "result")?;
        boxed_poly(acoustic(ell, Complex64::new(zeta_re, zeta_im))?.monic(), dst);
        Ok(())
    })
}

/// Galerkin model of the damped string with `n_basis` sine modes.
///
/// # Safety
/// `result` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn er_polynomial_string(
    n_basis: usize,
    eps: f64,
    delta: f64,
    result: *mut *mut ErPolynomial,
) -> ErStatus {
    guard(|| {
        let dst = out(result, "result")?;
        boxed_poly(string_galerkin(n_basis, eps, delta)?, dst);
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn er_polynomial_free(p: *mut ErPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn er_polynomial_degree(p: *const ErPolynomial) -> usize {
    p.as_ref().map_or(0, |p| p.0.degree())
}

/// # Safety
/// `p` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn er_polynomial_size(p: *const ErPolynomial) -> usize {
    p.as_ref().map_or(0, |p| p.0.size())
}

/// Inclusion region of `p` in the basis described by `basis_json` (the
/// JSON basis object, e.g. `{"variant":"newton","nodes":[[1,0],[2,0]]}`);
/// null means the power basis.
///
/// # Safety
/// `p` must be a valid handle, `basis_json` null or a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn er_region_compute(
    p: *const ErPolynomial,
    basis_json: *const c_char,
    norm: ErNorm,
    result: *mut *mut ErRegion,
) -> ErStatus {
    guard(|| {
        let p = &deref(p, "polynomial")?.0;
        let dst = out(result, "result")?;
        let basis = if basis_json.is_null() {
            GeneralizedBasis::power(p.degree())
        } else {
            let text = CStr::from_ptr(basis_json)
                .to_str()
                .map_err(|_| Failure(ErStatus::InvalidArgument, "basis JSON is not UTF-8".into()))?;
            serde_json::from_str::<GeneralizedBasis>(text)
                .map_err(|e| Failure(ErStatus::InvalidBasis, e.to_string()))?
        };
        let coeffs = convert_to_basis(p, &basis)?;
        let region = inclusion_region(&coeffs, norm.into())?;
        *dst = Box::into_raw(Box::new(ErRegion(region)));
        Ok(())
    })
}

/// # Safety
/// `r` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn er_region_free(r: *mut ErRegion) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Common disk radius `gamma * rho`; NaN for a null handle.
///
/// # Safety
/// `r` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn er_region_radius(r: *const ErRegion) -> f64 {
    r.as_ref().map_or(f64::NAN, |r| r.0.radius)
}

/// # Safety
/// `r` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn er_region_gamma(r: *const ErRegion) -> f64 {
    r.as_ref().map_or(f64::NAN, |r| r.0.gamma)
}

/// # Safety
/// `r` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn er_region_rho(r: *const ErRegion) -> f64 {
    r.as_ref().map_or(f64::NAN, |r| r.0.rho)
}

/// # Safety
/// `r` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn er_region_disk_count(r: *const ErRegion) -> usize {
    r.as_ref().map_or(0, |r| r.0.disks.len())
}

/// Centre of disk `index`.
///
/// # Safety
/// `r` must be a valid handle and `re`, `im` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn er_region_disk_center(
    r: *const ErRegion,
    index: usize,
    re: *mut f64,
    im: *mut f64,
) -> ErStatus {
    guard(|| {
        let r = &deref(r, "region")?.0;
        let (re, im) = (out(re, "re")?, out(im, "im")?);
        let d = r
            .disks
            .get(index)
            .ok_or_else(|| Failure(ErStatus::InvalidArgument, format!("disk {index} of {}", r.disks.len())))?;
        *re = d.center.re;
        *im = d.center.im;
        Ok(())
    })
}

/// # Safety
/// `r` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn er_region_component_count(r: *const ErRegion) -> usize {
    r.as_ref().map_or(0, |r| r.0.components.len())
}

/// Predicted eigenvalue count of component `index`.
///
/// # Safety
/// `r` must be a valid handle and `count` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn er_region_predicted_count(r: *const ErRegion, index: usize, count: *mut usize) -> ErStatus {
    guard(|| {
        let r = &deref(r, "region")?.0;
        let count = out(count, "count")?;
        *count = *r.predicted_counts.get(index).ok_or_else(|| {
            Failure(
                ErStatus::InvalidArgument,
                format!("component {index} of {}", r.components.len()),
            )
        })?;
        Ok(())
    })
}

/// Region as a JSON document. Release the string with [`er_string_free`].
///
/// # Safety
/// `r` must be a valid handle and `json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn er_region_to_json(r: *const ErRegion, json: *mut *mut c_char) -> ErStatus {
    guard(|| {
        let r = &deref(r, "region")?.0;
        let dst = out(json, "json")?;
        let text = serde_json::to_string(&r.to_document()).map_err(Error::from)?;
        *dst = CString::new(text)
            .map_err(|_| Failure(ErStatus::Internal, "JSON contains NUL".into()))?
            .into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn er_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Checks the region against the eigenvalue oracle. `worst_margin` is the
/// largest distance by which an eigenvalue lies outside the disks (negative
/// when all are strictly inside).
///
/// # Safety
/// Handles must be valid; `contained` and `worst_margin` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn er_region_verify(
    p: *const ErPolynomial,
    r: *const ErRegion,
    contained: *mut bool,
    worst_margin: *mut f64,
) -> ErStatus {
    guard(|| {
        let p = &deref(p, "polynomial")?.0;
        let r = &deref(r, "region")?.0;
        let (contained, worst_margin) = (out(contained, "contained")?, out(worst_margin, "worst_margin")?);
        let report = verify_containment(p, r)?;
        *contained = report.contained;
        *worst_margin = report.worst_margin;
        Ok(())
    })
}

/// Oracle eigenvalues sorted by real then imaginary part. Writes the number
/// of eigenvalues to `count`; fails with `BufferTooSmall` (after setting
/// `count`) when `capacity` is insufficient.
///
/// # Safety
/// `re` and `im` must hold `capacity` doubles; `count` must be valid.
#[no_mangle]
pub unsafe extern "C" fn er_eigenvalues(
    p: *const ErPolynomial,
    re: *mut f64,
    im: *mut f64,
    capacity: usize,
    count: *mut usize,
) -> ErStatus {
    guard(|| {
        let p = &deref(p, "polynomial")?.0;
        let count = out(count, "count")?;
        let total = p.degree() * p.size();
        *count = total;
        if capacity < total {
            return Err(Failure(
                ErStatus::BufferTooSmall,
                format!("{total} eigenvalues, capacity {capacity}"),
            ));
        }
        if re.is_null() || im.is_null() {
            return Err(null("output array"));
        }
        let values = polyeig_oracle(p)?.sorted();
        let re = std::slice::from_raw_parts_mut(re, total);
        let im = std::slice::from_raw_parts_mut(im, total);
        for (k, z) in values.iter().enumerate() {
            re[k] = z.re;
            im[k] = z.im;
        }
        Ok(())
    })
}

/// Cauchy radius for `‖A_n⁻¹‖ = inv_leading_norm` and lower norms
/// `b_0, ..., b_{n-1}`.
///
/// # Safety
/// `lower` must hold `n` doubles; `rho` must be valid.
#[no_mangle]
pub unsafe extern "C" fn er_cauchy_radius(
    inv_leading_norm: f64,
    lower: *const f64,
    n: usize,
    rho: *mut f64,
) -> ErStatus {
    guard(|| {
        let rho = out(rho, "rho")?;
        if lower.is_null() && n > 0 {
            return Err(null("lower"));
        }
        let lower = if n == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(lower, n)
        };
        *rho = cauchy_radius(inv_leading_norm, lower)?.rho;
        Ok(())
    })
}

/// Radius of the eigenvalue-free disk around the origin; `INFINITY` when
/// the reversed polynomial has only its leading term.
///
/// # Safety
/// `p` must be a valid handle and `r_min` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn er_reversal_exclusion(p: *const ErPolynomial, norm: ErNorm, r_min: *mut f64) -> ErStatus {
    guard(|| {
        let p = &deref(p, "polynomial")?.0;
        let r_min = out(r_min, "r_min")?;
        *r_min = reversal_exclusion(p, norm.into())?;
        Ok(())
    })
}

use std::ffi::{CStr, CString};
use std::ptr;

use eigregion_ffi::*;

fn last_error() -> String {
    let p = er_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn shifted_identity() -> *mut ErPolynomial {
    // I z^2 - 4 I, m = 2
    let re = [-4.0, 0.0, 0.0, -4.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0];
    let im = [0.0; 12];
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { er_polynomial_new(2, 2, re.as_ptr(), im.as_ptr(), &mut p) },
        ErStatus::Ok
    );
    p
}

#[test]
fn eigenvalues_and_exclusion_radius() {
    let p = shifted_identity();
    let (mut re, mut im, mut n) = ([0.0; 4], [0.0; 4], 0);
    assert_eq!(
        unsafe { er_eigenvalues(p, re.as_mut_ptr(), im.as_mut_ptr(), 4, &mut n) },
        ErStatus::Ok
    );
    assert_eq!(n, 4);
    for (k, want) in [-2.0, -2.0, 2.0, 2.0].iter().enumerate() {
        assert!((re[k] - want).abs() < 1e-12 && im[k].abs() < 1e-12);
    }
    let mut r_min = 0.0;
    assert_eq!(
        unsafe { er_reversal_exclusion(p, ErNorm::One, &mut r_min) },
        ErStatus::Ok
    );
    assert!((r_min - 2.0).abs() < 1e-12);
    unsafe { er_polynomial_free(p) };
}

#[test]
fn power_region_accessors() {
    let p = shifted_identity();
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { er_region_compute(p, ptr::null(), ErNorm::Inf, &mut r) },
        ErStatus::Ok
    );
    unsafe {
        assert_eq!(er_region_disk_count(r), 1);
        assert_eq!(er_region_gamma(r), 1.0);
        assert!((er_region_radius(r) - 2.0).abs() < 1e-14);
        let (mut x, mut y) = (1.0, 1.0);
        assert_eq!(er_region_disk_center(r, 0, &mut x, &mut y), ErStatus::Ok);
        assert_eq!((x, y), (0.0, 0.0));
        assert_eq!(er_region_disk_center(r, 1, &mut x, &mut y), ErStatus::InvalidArgument);
        let mut count = 0;
        assert_eq!(er_region_predicted_count(r, 0, &mut count), ErStatus::Ok);
        assert_eq!(count, 4);
        let mut contained = false;
        let mut margin = f64::NAN;
        assert_eq!(er_region_verify(p, r, &mut contained, &mut margin), ErStatus::Ok);
        assert!(contained && margin.abs() < 1e-12);
        er_region_free(r);
        er_polynomial_free(p);
    }
}

#[test]
fn newton_region_from_json() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { er_polynomial_mass_spring(50, 1.0, 8.0, &mut p) }, ErStatus::Ok);
    let h = 87f64.sqrt() / 2.0;
    let basis = CString::new(format!(r#"{{"variant":"newton","nodes":[[-1.5,{h}],[-1.5,{}]]}}"#, -h)).unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { er_region_compute(p, basis.as_ptr(), ErNorm::One, &mut r) },
        ErStatus::Ok
    );
    unsafe {
        assert!((er_region_rho(r) - (1.0 + 17f64.sqrt())).abs() < 1e-10);
        assert_eq!(er_region_component_count(r), 1);
        er_region_free(r);
        er_polynomial_free(p);
    }
}

#[test]
fn error_codes() {
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { er_polynomial_mass_spring(1, 1.0, 1.0, &mut p) },
        ErStatus::InvalidArgument
    );
    assert!(last_error().contains("at least 2"));
    assert!(p.is_null());
    assert_eq!(
        unsafe { er_polynomial_acoustic(4, 0.0, 0.0, &mut p) },
        ErStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { er_polynomial_mass_spring(3, 1.0, 1.0, ptr::null_mut()) },
        ErStatus::NullPointer
    );
    assert_eq!(
        unsafe { er_polynomial_new(1, 1, ptr::null(), ptr::null(), &mut p) },
        ErStatus::NullPointer
    );

    assert_eq!(unsafe { er_polynomial_string(4, 0.1, 2.7, &mut p) }, ErStatus::Ok);
    let bad = CString::new(r#"{"variant":"newton"}"#).unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { er_region_compute(p, bad.as_ptr(), ErNorm::One, &mut r) },
        ErStatus::InvalidBasis
    );
    let cubic = CString::new(r#"{"variant":"power","degree":3}"#).unwrap();
    assert_eq!(
        unsafe { er_region_compute(p, cubic.as_ptr(), ErNorm::One, &mut r) },
        ErStatus::Dimension
    );
    let (mut re, mut im, mut n) = ([0.0; 2], [0.0; 2], 0);
    assert_eq!(
        unsafe { er_eigenvalues(p, re.as_mut_ptr(), im.as_mut_ptr(), 2, &mut n) },
        ErStatus::BufferTooSmall
    );
    assert_eq!(n, 8);

    let mut rho = 0.0;
    assert_eq!(
        unsafe { er_cauchy_radius(-1.0, [1.0].as_ptr(), 1, &mut rho) },
        ErStatus::InvalidArgument
    );
    unsafe {
        er_polynomial_free(p);
        er_polynomial_free(ptr::null_mut());
        er_region_free(ptr::null_mut());
        er_string_free(ptr::null_mut());
        assert_eq!(er_polynomial_degree(ptr::null()), 0);
        assert!(er_region_radius(ptr::null()).is_nan());
    }
}

#[test]
fn region_json_matches_library() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { er_polynomial_acoustic(3, 2.0, 2.0, &mut p) }, ErStatus::Ok);
    assert_eq!(unsafe { er_polynomial_size(p) }, 6);
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { er_region_compute(p, ptr::null(), ErNorm::One, &mut r) },
        ErStatus::Ok
    );
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { er_region_to_json(r, &mut json) }, ErStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    let doc: eigregion::regions::RegionDocument = serde_json::from_str(&text).unwrap();
    assert_eq!(doc.radius, unsafe { er_region_radius(r) });
    assert_eq!(doc.predicted_counts, vec![12]);
    unsafe {
        er_string_free(json);
        er_region_free(r);
        er_polynomial_free(p);
    }
}

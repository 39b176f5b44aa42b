use std::ffi::CStr;
use std::path::Path;
use std::process::Command;
use std::ptr;

use charged3_ffi::*;

const ONES: [f64; 3] = [1.0, 1.0, 1.0];

fn last_error() -> String {
    let mut buf = [0 as std::ffi::c_char; 256];
    unsafe {
        c3_last_error(buf.as_mut_ptr(), buf.len());
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

#[test]
fn anchor_root_through_handle() {
    let mut list = ptr::null_mut();
    unsafe {
        assert_eq!(c3_roots_isolate(ONES.as_ptr(), ONES.as_ptr(), &mut list), C3Status::Ok);
        assert_eq!(c3_roots_len(list), 1);
        let mut r = C3Root::default();
        assert_eq!(c3_roots_get(list, 0, &mut r), C3Status::Ok);
        assert_eq!((r.value, r.interval, r.multiplicity), (1.0, 3, 1));
        assert!(r.lo <= 1.0 && 1.0 <= r.hi);
        assert_eq!(c3_roots_get(list, 1, &mut r), C3Status::OutOfRange);
        c3_roots_free(list);
    }
}

#[test]
fn errors_carry_status_and_message() {
    let zero = [0.0; 3];
    let mut list = ptr::null_mut();
    unsafe {
        assert_eq!(c3_roots_isolate(zero.as_ptr(), ONES.as_ptr(), &mut list), C3Status::AllZero);
        assert!(list.is_null());
        assert!(last_error().contains("identically zero"));
        assert_eq!(c3_roots_isolate(ptr::null(), ONES.as_ptr(), &mut list), C3Status::NullPointer);
        let bad_mass = [1.0, -1.0, 1.0];
        let mut counts = [0u32; 3];
        assert_eq!(c3_count_roots(ONES.as_ptr(), bad_mass.as_ptr(), counts.as_mut_ptr()), C3Status::InvalidInput);
        c3_roots_free(ptr::null_mut());
        c3_sweep_free(ptr::null_mut());
    }
}

#[test]
fn classification_and_counts() {
    let mut cell = C3Cell::default();
    let mut counts = [0u32; 3];
    unsafe {
        assert_eq!(c3_classify(1.0, 1.0, ONES.as_ptr(), &mut cell), C3Status::Ok);
        assert_eq!((cell.region, cell.counts), (1, [0, 0, 1]));
        assert_eq!(c3_classify(2.0, 0.0, ONES.as_ptr(), &mut cell), C3Status::Boundary);
        let a = [-5.0, -5.0, 1.0];
        assert_eq!(c3_count_roots(a.as_ptr(), ONES.as_ptr(), counts.as_mut_ptr()), C3Status::Ok);
        assert_eq!(counts, [1, 1, 1]);
    }
}

#[test]
fn sweep_handle() {
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(c3_sweep_new(-1.0, 1.0, 3, -1.0, 1.0, 3, ONES.as_ptr(), &mut s), C3Status::Ok);
        assert_eq!(c3_sweep_len(s), 9);
        let mut centre = C3Cell::default();
        assert_eq!(c3_sweep_get(s, 4, &mut centre), C3Status::Ok);
        assert_eq!((centre.beta1, centre.beta2, centre.region), (0.0, 0.0, 0));
        let mut corner = C3Cell::default();
        assert_eq!(c3_sweep_get(s, 8, &mut corner), C3Status::Ok);
        assert_eq!((corner.beta1, corner.beta2, corner.region), (1.0, 1.0, 1));
        assert_eq!(c3_sweep_get(s, 9, &mut corner), C3Status::OutOfRange);
        c3_sweep_free(s);
    }
}

#[test]
fn curve_and_special_points() {
    let mut sp = [0.0; 6];
    let mut c = [0.0; 2];
    unsafe {
        assert_eq!(c3_special_points(1.0, sp.as_mut_ptr()), C3Status::Ok);
        assert_eq!((sp[1], sp[3], sp[5]), (-2.0, -0.5, 1.0));
        assert_eq!(c3_special_points(0.0, sp.as_mut_ptr()), C3Status::InvalidInput);
        assert_eq!(c3_gamma(1.0, ONES.as_ptr(), c.as_mut_ptr()), C3Status::Ok);
        assert!((c[0] + 1.0 / 28.0).abs() < 1e-15 && (c[1] + 1.0 / 28.0).abs() < 1e-15);
        assert_eq!(c3_gamma(-1.0, ONES.as_ptr(), c.as_mut_ptr()), C3Status::Boundary);
    }
}

#[test]
fn relative_equilibria() {
    let mut r = C3Releq::default();
    unsafe {
        assert_eq!(c3_releq_collinear(ONES.as_ptr(), ONES.as_ptr(), 1.0, 1e-9, &mut r), C3Status::Ok);
        assert_eq!(r.lambda, 1.25);
        assert!(r.rank < 10);
        assert_eq!(r.class, C3PointClass::RelativeEquilibrium as u32);
        assert!(r.singular_values[9] / r.singular_values[0] < 1e-9);
        assert_eq!(c3_releq_noncollinear(ONES.as_ptr(), ONES.as_ptr(), 1e-9, &mut r), C3Status::Ok);
        assert_eq!(r.class, C3PointClass::RelativeEquilibrium as u32);
        let repulsive = [-1.0; 3];
        assert_eq!(
            c3_releq_noncollinear(repulsive.as_ptr(), ONES.as_ptr(), 1e-9, &mut r),
            C3Status::NonpositiveMultiplier
        );
        assert_eq!(c3_releq_collinear(ONES.as_ptr(), ONES.as_ptr(), 0.0, 1e-9, &mut r), C3Status::CollisionPoint);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(c3_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

fn header() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/charged3.h")
}

#[test]
fn header_declares_the_interface() {
    let h = std::fs::read_to_string(header()).unwrap();
    for name in [
        "c3_roots_isolate", "c3_roots_len", "c3_roots_get", "c3_roots_free", "c3_count_roots",
        "c3_classify", "c3_sweep_new", "c3_sweep_len", "c3_sweep_get", "c3_sweep_free",
        "c3_special_points", "c3_gamma", "c3_releq_collinear", "c3_releq_noncollinear",
        "c3_last_error", "c3_version", "typedef struct C3RootList C3RootList",
        "typedef struct C3Sweep C3Sweep", "C3_STATUS_OK = 0",
    ] {
        assert!(h.contains(name), "{name} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let h = header();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c"])
        .arg(&h)
        .status();
    match status {
        Ok(s) => assert!(s.success(), "cc rejected {}", h.display()),
        Err(e) => panic!("no C compiler available: {e}"),
    }
}

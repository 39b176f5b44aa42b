//! C interface to `charged3`.
//!
//! Every function returns a [`C3Status`]; results go through out pointers.
//! Root lists and sweeps are returned as opaque handles that the caller
//! releases with the matching `_free` function. The message of the last
//! error on the calling thread is available from [`c3_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use charged3::atlas::{self, Axis, BetaPoint, GridSpec, RegionLabel, RegionReport};
use charged3::phase::{self, CriticalPointClass};
use charged3::quintic::{self, CouplingTriple, MassTriple, RootList};
use charged3::Error;

/// Outcome of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum C3Status {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    AllZero = 3,
    DegenerateAtCollision = 4,
    OnDiscriminant = 5,
    Boundary = 6,
    ChartUndefined = 7,
    NotACusp = 8,
    CollisionPoint = 9,
    NotACentralConfiguration = 10,
    NotRealizable = 11,
    NonpositiveMultiplier = 12,
    Collision = 13,
    NoSuchRoot = 14,
    OutOfRange = 15,
    Panic = 16,
}

/// Class of a phase point by the rank of the integral map.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum C3PointClass {
    Regular = 0,
    CollinearPhase = 1,
    Equilibrium = 2,
    RelativeEquilibrium = 3,
}

/// Real roots of the reduced quintic.
pub struct C3RootList(RootList);

/// Classified grid of normalised couplings.
pub struct C3Sweep(Vec<RegionReport>);

/// One certified root.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct C3Root {
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
    /// 1, 2 or 3.
    pub interval: u8,
    pub multiplicity: u32,
}

/// One classified cell. `region` is 1 to 13, 0 on the boundary and 255 for
/// counts outside the known table; the counts are zero on the boundary.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct C3Cell {
    pub beta1: f64,
    pub beta2: f64,
    pub region: u8,
    pub counts: [u32; 3],
    pub negative: [u32; 3],
}

/// A relative equilibrium and the singular values of the integral map there.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct C3Releq {
    pub lambda: f64,
    pub energy: f64,
    pub angular_momentum: [f64; 3],
    /// Descending.
    pub singular_values: [f64; 10],
    pub rank: u32,
    pub class: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> C3Status {
    match e {
        Error::AllZero => C3Status::AllZero,
        Error::DegenerateAtCollision(_) => C3Status::DegenerateAtCollision,
        Error::OnDiscriminant(_) => C3Status::OnDiscriminant,
        Error::Boundary(_) => C3Status::Boundary,
        Error::ChartUndefined => C3Status::ChartUndefined,
        Error::NotACusp(_) => C3Status::NotACusp,
        Error::CollisionPoint(_) | Error::CollisionInput(_) => C3Status::CollisionPoint,
        Error::NotACentralConfiguration(_) => C3Status::NotACentralConfiguration,
        Error::NotRealizable => C3Status::NotRealizable,
        Error::NonpositiveMultiplier(_) => C3Status::NonpositiveMultiplier,
        Error::Collision => C3Status::Collision,
        Error::NoSuchRoot(_) => C3Status::NoSuchRoot,
        Error::InvalidInput(_) => C3Status::InvalidInput,
    }
}

/// Run `f`, translating errors and panics into a status.
fn guard<F: FnOnce() -> Result<(), Error>>(f: F) -> C3Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            C3Status::Ok
        }
        Ok(Err(e)) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            C3Status::Panic
        }
    }
}

macro_rules! nonnull {
    ($($p:expr),+) => {
        if $($p.is_null())||+ {
            set_error("null pointer argument");
            return C3Status::NullPointer;
        }
    };
}

unsafe fn triple(p: *const f64) -> [f64; 3] {
    [*p, *p.add(1), *p.add(2)]
}

unsafe fn inputs(alpha: *const f64, masses: *const f64) -> Result<(CouplingTriple, MassTriple), Error> {
    Ok((CouplingTriple::from_array(triple(alpha))?, MassTriple::from_array(triple(masses))?))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn c3_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copy the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length.
///
/// # Safety
/// `buf` must be valid for `len` bytes or null.
#[no_mangle]
pub unsafe extern "C" fn c3_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let bytes = e.borrow();
        let bytes = bytes.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Isolate the real roots of `f(.; alpha, masses)` in exact arithmetic.
///
/// # Safety
/// `alpha` and `masses` point to three doubles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn c3_roots_isolate(
    alpha: *const f64,
    masses: *const f64,
    out: *mut *mut C3RootList,
) -> C3Status {
    nonnull!(alpha, masses, out);
    *out = ptr::null_mut();
    guard(|| {
        let (a, m) = inputs(alpha, masses)?;
        let roots = quintic::isolate_real_roots(&a, &m)?;
        *out = Box::into_raw(Box::new(C3RootList(roots)));
        Ok(())
    })
}

/// Number of roots in the list, 0 for null.
///
/// # Safety
/// `list` is null or a handle from [`c3_roots_isolate`].
#[no_mangle]
pub unsafe extern "C" fn c3_roots_len(list: *const C3RootList) -> usize {
    list.as_ref().map_or(0, |l| l.0.roots.len())
}

/// # Safety
/// `list` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn c3_roots_get(list: *const C3RootList, index: usize, out: *mut C3Root) -> C3Status {
    nonnull!(list, out);
    let list = &*list;
    let Some(r) = list.0.roots.get(index) else {
        set_error("root index out of range");
        return C3Status::OutOfRange;
    };
    *out = C3Root {
        value: r.value,
        lo: r.lo,
        hi: r.hi,
        interval: r.interval.index() as u8 + 1,
        multiplicity: r.multiplicity as u32,
    };
    C3Status::Ok
}

/// # Safety
/// `list` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn c3_roots_free(list: *mut C3RootList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Simple-root counts `(n1, n2, n3)`.
///
/// # Safety
/// `alpha`, `masses` point to three doubles; `counts` to three writable `u32`.
#[no_mangle]
pub unsafe extern "C" fn c3_count_roots(alpha: *const f64, masses: *const f64, counts: *mut u32) -> C3Status {
    nonnull!(alpha, masses, counts);
    guard(|| {
        let (a, m) = inputs(alpha, masses)?;
        let c = quintic::count_roots_by_interval(&a, &m)?;
        for (i, n) in c.counts.iter().enumerate() {
            *counts.add(i) = *n as u32;
        }
        Ok(())
    })
}

fn cell(r: &RegionReport) -> C3Cell {
    let region = match r.label {
        RegionLabel::Region(g) => g.id(),
        RegionLabel::Boundary => 0,
        RegionLabel::Unlisted => 255,
    };
    let t = r.triple.unwrap_or_default();
    C3Cell {
        beta1: r.beta.b1,
        beta2: r.beta.b2,
        region,
        counts: t.map(|x| x as u32),
        negative: r.neg_counts.map(|x| x as u32),
    }
}

/// Classify one point; returns `Boundary` on the discriminant set or an axis.
///
/// # Safety
/// `masses` points to three doubles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn c3_classify(beta1: f64, beta2: f64, masses: *const f64, out: *mut C3Cell) -> C3Status {
    nonnull!(masses, out);
    guard(|| {
        let m = MassTriple::from_array(triple(masses))?;
        let r = atlas::classify(BetaPoint::new(beta1, beta2), &m)?;
        *out = cell(&r);
        Ok(())
    })
}

/// Classify an `n1 x n2` grid, row-major with `beta2` outer.
///
/// # Safety
/// `masses` points to three doubles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn c3_sweep_new(
    min1: f64,
    max1: f64,
    n1: usize,
    min2: f64,
    max2: f64,
    n2: usize,
    masses: *const f64,
    out: *mut *mut C3Sweep,
) -> C3Status {
    nonnull!(masses, out);
    *out = ptr::null_mut();
    guard(|| {
        let m = MassTriple::from_array(triple(masses))?;
        let grid = GridSpec { b1: Axis::new(min1, max1, n1)?, b2: Axis::new(min2, max2, n2)? };
        *out = Box::into_raw(Box::new(C3Sweep(atlas::raster_sweep_parallel(&grid, &m))));
        Ok(())
    })
}

/// # Safety
/// `sweep` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn c3_sweep_len(sweep: *const C3Sweep) -> usize {
    sweep.as_ref().map_or(0, |s| s.0.len())
}

/// # Safety
/// `sweep` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn c3_sweep_get(sweep: *const C3Sweep, index: usize, out: *mut C3Cell) -> C3Status {
    nonnull!(sweep, out);
    let sweep = &*sweep;
    match sweep.0.get(index) {
        Some(r) => {
            *out = cell(r);
            C3Status::Ok
        }
        None => {
            set_error("cell index out of range");
            C3Status::OutOfRange
        }
    }
}

/// # Safety
/// `sweep` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn c3_sweep_free(sweep: *mut C3Sweep) {
    if !sweep.is_null() {
        drop(Box::from_raw(sweep));
    }
}

/// The six special parameters for masses `(mu, mu, 1)` in increasing order:
/// `xi-, eta-, -1, eta+, xi+, 1`.
///
/// # Safety
/// `out` points to six writable doubles.
#[no_mangle]
pub unsafe extern "C" fn c3_special_points(mu: f64, out: *mut f64) -> C3Status {
    nonnull!(out);
    guard(|| {
        for (i, v) in atlas::special_points(mu)?.ordered().iter().enumerate() {
            *out.add(i) = *v;
        }
        Ok(())
    })
}

/// The point `c(u)` of the discriminant curve; `Boundary` when it is at
/// infinity.
///
/// # Safety
/// `masses` points to three doubles; `out` to two writable doubles.
#[no_mangle]
pub unsafe extern "C" fn c3_gamma(u: f64, masses: *const f64, out: *mut f64) -> C3Status {
    nonnull!(masses, out);
    guard(|| {
        let m = MassTriple::from_array(triple(masses))?;
        match atlas::gamma_coords(&u, &m.as_array()) {
            Some((b1, b2)) => {
                *out = b1;
                *out.add(1) = b2;
                Ok(())
            }
            None => Err(Error::Boundary(format!("curve is at infinity at u = {u}"))),
        }
    })
}

fn releq_of(cc: &phase::CentralConfigResult, tol: f64) -> Result<C3Releq, Error> {
    let pp = phase::build_relative_equilibrium(&cc.configuration, cc.lambda)?;
    let f = phase::integral_map(&pp, &cc.couplings)?;
    let jr = phase::jacobian_rank(&pp, &cc.couplings, tol);
    let mut sv = [0.0; 10];
    sv.copy_from_slice(&jr.singular_values[..10]);
    Ok(C3Releq {
        lambda: cc.lambda,
        energy: f.h,
        angular_momentum: [f.l[0], f.l[1], f.l[2]],
        singular_values: sv,
        rank: jr.rank as u32,
        class: match jr.class {
            CriticalPointClass::Regular => C3PointClass::Regular,
            CriticalPointClass::CollinearPhase => C3PointClass::CollinearPhase,
            CriticalPointClass::Equilibrium => C3PointClass::Equilibrium,
            CriticalPointClass::RelativeEquilibrium => C3PointClass::RelativeEquilibrium,
        } as u32,
    })
}

/// Relative equilibrium over the collinear configuration at the root `u`
/// of `f` (unit gap between bodies 2 and 3).
///
/// # Safety
/// `alpha`, `masses` point to three doubles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn c3_releq_collinear(
    alpha: *const f64,
    masses: *const f64,
    u: f64,
    tol: f64,
    out: *mut C3Releq,
) -> C3Status {
    nonnull!(alpha, masses, out);
    guard(|| {
        let (a, m) = inputs(alpha, masses)?;
        let cc = phase::collinear_cc(u, &a, &m, 1.0)?;
        *out = releq_of(&cc, tol)?;
        Ok(())
    })
}

/// Relative equilibrium over the non-collinear configuration with unit
/// moment of inertia.
///
/// # Safety
/// `alpha`, `masses` point to three doubles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn c3_releq_noncollinear(
    alpha: *const f64,
    masses: *const f64,
    tol: f64,
    out: *mut C3Releq,
) -> C3Status {
    nonnull!(alpha, masses, out);
    guard(|| {
        let (a, m) = inputs(alpha, masses)?;
        let cc = phase::noncollinear_unit_inertia(&a, &m)?;
        *out = releq_of(&cc, tol)?;
        Ok(())
    })
}

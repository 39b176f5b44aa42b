//! Seeded property suites run by `charged3 verify`.
//!
//! Every suite draws its own samples from a ChaCha stream derived from the
//! seed, so suites can be added or resized without shifting the others.

use num_rational::BigRational;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::atlas::{classify_cell, gamma_coords, gamma_derivative, BetaPoint, RegionReport};
use crate::phase::{
    collinear_cc, gradient_and_alpha_matrix, noncollinear_config, potential_gradient, Configuration, Vec3,
};
use crate::poly::{rational, Poly, Scalar};
use crate::quintic::{
    count_roots_by_interval, isolate_real_roots, quintic_coefficients, CouplingTriple, IntervalId, MassTriple,
};
use crate::symmetry::{
    act_alpha, act_interval, act_mass, check_gamma_covariance_in, f_covariance_sides_by, f_value,
    PermutationElement,
};

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Samples per suite.
    pub iterations: usize,
    /// Evaluate `f` with the sign of the `f2` term flipped in the
    /// covariance suite. Used to check that the suite can fail.
    pub fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            iterations: 100,
            fault: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub failures: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub iterations: usize,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

/// Residual accumulator for one suite.
struct Tally {
    name: &'static str,
    tolerance: f64,
    samples: usize,
    max: f64,
    failures: usize,
}

impl Tally {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self { name, tolerance, samples: 0, max: 0.0, failures: 0 }
    }

    fn record(&mut self, residual: f64) {
        self.samples += 1;
        if residual.is_nan() || residual > self.tolerance {
            self.failures += 1;
        }
        if !(residual <= self.max) {
            self.max = residual;
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name,
            samples: self.samples,
            max_residual: self.max,
            tolerance: self.tolerance,
            failures: self.failures,
            passed: self.failures == 0,
        }
    }
}

fn stream(seed: u64, suite: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite);
    rng
}

pub fn random_masses(rng: &mut ChaCha8Rng) -> MassTriple {
    MassTriple::new(
        rng.random_range(0.2..5.0),
        rng.random_range(0.2..5.0),
        rng.random_range(0.2..5.0),
    )
    .expect("positive")
}

pub fn random_couplings(rng: &mut ChaCha8Rng) -> CouplingTriple {
    loop {
        let a = [0; 3].map(|_| rng.random_range(-3.0..3.0));
        if a.iter().all(|x: &f64| x.abs() > 1e-3) {
            return CouplingTriple::from_array(a).expect("finite");
        }
    }
}

/// A parameter at distance at least 0.05 from the collision points.
pub fn random_u(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let u: f64 = rng.random_range(-4.0..4.0);
        if u.abs() > 0.05 && (u + 1.0).abs() > 0.05 {
            return u;
        }
    }
}

/// Configuration with coordinates uniform in the unit cube, away from collisions.
pub fn random_configuration(rng: &mut ChaCha8Rng, m: MassTriple) -> Configuration {
    loop {
        let q = [0; 3].map(|_| Vec3::from_fn(|_, _| rng.random_range(-1.0..1.0)));
        if let Ok(c) = Configuration::new(q, m) {
            if c.distances().iter().all(|&r| r > 0.05) {
                return c;
            }
        }
    }
}

fn faulty_f(u: &f64, a: &[f64; 3], m: &[f64; 3]) -> f64 {
    f_value(u, &[a[0], -a[1], a[2]], m)
}

/// `f` covariance for every group element, curve covariance and the
/// equivariance of root counts.
pub fn covariance_suite(opts: &VerifyOptions) -> Vec<SuiteReport> {
    let mut rng = stream(opts.seed, 1);
    let mut f_tally = Tally::new("f covariance", 1e-10);
    let mut g_tally = Tally::new("curve covariance", 1e-10);
    let mut c_tally = Tally::new("count equivariance", 0.0);
    for _ in 0..opts.iterations {
        let (u, a, m) = (random_u(&mut rng), random_couplings(&mut rng), random_masses(&mut rng));
        for g in PermutationElement::ALL {
            let eval = if opts.fault { faulty_f } else { f_value::<f64> };
            let r = match f_covariance_sides_by(g, &u, &a.as_array(), &m.as_array(), eval) {
                Some((l, r)) => f_residual(&l, &r, u, &a, &m),
                None => f64::INFINITY,
            };
            f_tally.record(r);
            let gr = check_gamma_covariance_in(g, &u, &m.as_array());
            // Skip parameters where either side is at infinity.
            if gr.is_finite() {
                g_tally.record(gr);
            }
            c_tally.record(count_mismatch(g, &a, &m) as f64);
        }
    }
    vec![f_tally.finish(), g_tally.finish(), c_tally.finish()]
}

/// `|lhs - rhs|` over the sum of the absolute terms of `f(u)`, the natural
/// size of a rounding error in either side.
fn f_residual(lhs: &f64, rhs: &f64, u: f64, a: &CouplingTriple, m: &MassTriple) -> f64 {
    let c = quintic_coefficients(&a.as_array(), &m.as_array());
    let size: f64 = c.iter().enumerate().map(|(k, ck)| (ck * u.powi(k as i32)).abs()).sum();
    (lhs - rhs).abs() / size.max(f64::MIN_POSITIVE)
}

/// Number of intervals where counts fail to follow the permutation action.
/// Samples landing on a double root count as agreeing, since the counts
/// are undefined there.
pub fn count_mismatch(g: PermutationElement, a: &CouplingTriple, m: &MassTriple) -> usize {
    let before = count_roots_by_interval(a, m);
    let after = count_roots_by_interval(&act_alpha(g, a), &act_mass(g, m));
    match (before, after) {
        (Ok(b), Ok(c)) => IntervalId::ALL
            .iter()
            .filter(|&&iv| b.counts[iv.index()] != c.counts[act_interval(g, iv).index()])
            .count(),
        (Err(_), Err(_)) => 0,
        _ => 3,
    }
}

/// Relative size of `f` and `f'` at `u` for the couplings `c(u)`, in
/// floating point.
pub fn double_zero_residual(u: f64, m: &MassTriple) -> Option<f64> {
    let (b1, b2) = gamma_coords(&u, &m.as_array())?;
    let c = quintic_coefficients(&[b1, b2, 1.0], &m.as_array());
    let p = Poly::new(c.to_vec());
    let dp = p.derivative();
    let size = |q: &Poly<f64>| -> f64 {
        q.coeffs().iter().enumerate().map(|(k, ck)| (ck * u.powi(k as i32)).abs()).sum()
    };
    Some((p.eval(&u).abs() / size(&p)).max(dp.eval(&u).abs() / size(&dp)))
}

/// Exact version: true when both vanish identically.
pub fn double_zero_exact(u: f64, m: &MassTriple) -> Option<bool> {
    let uq = rational(u);
    let mq = m.as_array().map(rational);
    let (b1, b2) = gamma_coords(&uq, &mq)?;
    let p = Poly::new(quintic_coefficients(&[b1, b2, BigRational::one()], &mq).to_vec());
    Some(p.eval(&uq).is_zero() && p.derivative().eval(&uq).is_zero())
}

pub fn double_zero_suite(opts: &VerifyOptions) -> SuiteReport {
    let mut rng = stream(opts.seed, 2);
    let mut t = Tally::new("double zero", 1e-10);
    while t.samples < opts.iterations {
        let (u, m) = (random_u(&mut rng), random_masses(&mut rng));
        if let Some(r) = double_zero_residual(u, &m) {
            t.record(r);
        }
    }
    t.finish()
}

/// Change in root counts across the axis `beta2 = 0` (`axis = 2`) or
/// `beta1 = 0` (`axis = 1`) at the point `t` along it.
pub fn axis_crossing(axis: u8, t: f64, eps: f64, m: &MassTriple) -> Option<[i64; 3]> {
    let (lo, hi) = match axis {
        1 => (BetaPoint::new(-eps, t), BetaPoint::new(eps, t)),
        _ => (BetaPoint::new(t, -eps), BetaPoint::new(t, eps)),
    };
    count_change(&classify_cell(lo, m), &classify_cell(hi, m))
}

fn count_change(a: &RegionReport, b: &RegionReport) -> Option<[i64; 3]> {
    let (ta, tb) = (a.triple?, b.triple?);
    Some(std::array::from_fn(|i| tb[i] as i64 - ta[i] as i64))
}

/// Whether an axis crossing changes exactly the two intervals adjacent to
/// the collision the roots pass through, by one each.
pub fn axis_rule_holds(axis: u8, d: [i64; 3]) -> bool {
    let (moved, fixed) = match axis {
        1 => ([0, 2], 1),
        _ => ([1, 2], 0),
    };
    d[fixed] == 0 && moved.iter().all(|&i| d[i].abs() == 1)
}

/// Change in counts across the curve at parameter `u`, stepping `delta`
/// along the normal either side. `None` if the sample is unusable (at
/// infinity, near a cusp, or a boundary on either side). Near a cusp the
/// two branches are close and one step can cross both.
pub fn gamma_crossing(u: f64, delta: f64, m: &MassTriple) -> Option<[i64; 3]> {
    let (b1, b2) = gamma_coords(&u, &m.as_array())?;
    let [d1, d2] = gamma_derivative(u, m);
    let speed = d1.hypot(d2);
    let size = b1.hypot(b2).max(1.0);
    if !(speed > 0.05 * size) || size > 1e3 || b1.abs() < 1e-3 || b2.abs() < 1e-3 {
        return None;
    }
    let h = delta * size;
    let (n1, n2) = (-d2 / speed * h, d1 / speed * h);
    let a = classify_cell(BetaPoint::new(b1 - n1, b2 - n2), m);
    let b = classify_cell(BetaPoint::new(b1 + n1, b2 + n2), m);
    count_change(&a, &b)
}

pub fn gamma_rule_holds(u: f64, d: [i64; 3]) -> bool {
    let Some(iv) = IntervalId::of(u) else {
        return false;
    };
    IntervalId::ALL
        .iter()
        .all(|&j| d[j.index()].abs() == if j == iv { 2 } else { 0 })
}

pub fn crossing_suite(opts: &VerifyOptions) -> SuiteReport {
    let mut rng = stream(opts.seed, 3);
    let mut t = Tally::new("crossing rules", 0.0);
    let mut attempts = 0;
    while t.samples < opts.iterations && attempts < 20 * opts.iterations {
        attempts += 1;
        let m = random_masses(&mut rng);
        let ok = match t.samples % 3 {
            0 | 1 => {
                let axis = 1 + (t.samples % 2) as u8;
                let s: f64 = rng.random_range(0.1..5.0);
                let pos = if rng.random_bool(0.5) { s } else { -s };
                match axis_crossing(axis, pos, 1e-7, &m) {
                    Some(d) => axis_rule_holds(axis, d),
                    None => continue,
                }
            }
            _ => {
                let u = random_u(&mut rng);
                match gamma_crossing(u, 1e-9, &m) {
                    Some(d) => gamma_rule_holds(u, d),
                    None => continue,
                }
            }
        };
        t.record(if ok { 0.0 } else { 1.0 });
    }
    if t.samples < opts.iterations {
        t.failures += 1;
    }
    t.finish()
}

/// Largest relative error of the analytic gradient against central
/// differences with step `1e-6` times the configuration size.
pub fn gradient_residual(c: &Configuration, g: &CouplingTriple) -> f64 {
    let h = 1e-6 * c.size();
    let grad = potential_gradient(c, g);
    let scale = grad.iter().fold(0.0_f64, |s, v| s.max(v.norm()));
    let q = *c.positions();
    let mut err = 0.0_f64;
    for i in 0..3 {
        for k in 0..3 {
            let shifted = |t: f64| {
                let mut p = q;
                p[i][k] += t;
                Configuration::new(p, *c.masses()).map(|x| x.potential(g))
            };
            let (Ok(vp), Ok(vm)) = (shifted(h), shifted(-h)) else {
                return f64::INFINITY;
            };
            err = err.max(((vp - vm) / (2.0 * h) - grad[i][k]).abs());
        }
    }
    err / scale
}

pub fn gradient_suite(opts: &VerifyOptions) -> SuiteReport {
    let mut rng = stream(opts.seed, 4);
    let mut t = Tally::new("gradient", 1e-6);
    for _ in 0..opts.iterations {
        let m = random_masses(&mut rng);
        let g = random_couplings(&mut rng);
        let c = random_configuration(&mut rng, m);
        let mut r = gradient_residual(&c, &g);
        // The matrix form must agree with the direct sum as well.
        if let Ok((grad, a)) = gradient_and_alpha_matrix(&c, &g) {
            let scale = grad.iter().fold(0.0_f64, |s, v| s.max(v.norm()));
            for i in 0..3 {
                let aq: Vec3 = (0..3).map(|j| c.positions()[j] * a[(i, j)]).sum();
                r = r.max((aq - grad[i]).norm() / scale);
            }
        }
        t.record(r);
    }
    t.finish()
}

/// `|V + lambda I| / max(|V|, |lambda I|)`.
pub fn lagrange_residual(v: f64, lambda: f64, inertia: f64) -> f64 {
    let li = lambda * inertia;
    (v + li).abs() / v.abs().max(li.abs()).max(f64::MIN_POSITIVE)
}

pub fn lagrange_suite(opts: &VerifyOptions) -> SuiteReport {
    let mut rng = stream(opts.seed, 5);
    let mut t = Tally::new("lagrange identity", 1e-10);
    for _ in 0..opts.iterations {
        let m = random_masses(&mut rng);
        let a = random_couplings(&mut rng);
        if let Ok(roots) = isolate_real_roots(&a, &m) {
            for r in &roots.roots {
                match collinear_cc(r.value, &a, &m, 1.0) {
                    Ok(cc) => t.record(lagrange_residual(cc.potential, cc.lambda, cc.inertia)),
                    Err(_) => t.record(f64::INFINITY),
                }
            }
        }
        // Couplings near a multiple of the gravitational ones give nearly
        // equal distances, hence a triangle.
        let s = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let grav = CouplingTriple::gravitational(&m).as_array();
        let g = CouplingTriple::from_array(grav.map(|x| s * x * rng.random_range(0.8..1.2))).expect("finite");
        let lambda = s * rng.random_range(0.1..10.0);
        match noncollinear_config(&g, &m, lambda) {
            Ok(cc) => t.record(lagrange_residual(cc.potential, cc.lambda, cc.inertia)),
            Err(_) => t.record(f64::INFINITY),
        }
    }
    t.finish()
}

/// Run every suite.
pub fn run(opts: &VerifyOptions) -> VerifyReport {
    let mut suites = Vec::new();
    if opts.iterations > 0 {
        suites.extend(covariance_suite(opts));
        suites.push(double_zero_suite(opts));
        suites.push(crossing_suite(opts));
        suites.push(gradient_suite(opts));
        suites.push(lagrange_suite(opts));
    }
    VerifyReport {
        seed: opts.seed,
        iterations: opts.iterations,
        passed: suites.iter().all(|s| s.passed),
        suites,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(fault: bool) -> VerifyOptions {
        VerifyOptions { seed: 7, iterations: 20, fault }
    }

    #[test]
    fn suites_pass() {
        let r = run(&small(false));
        for s in &r.suites {
            assert!(s.passed, "{s:?}");
        }
        assert!(r.passed);
    }

    #[test]
    fn fault_is_caught() {
        let r = covariance_suite(&small(true));
        assert!(!r[0].passed);
        assert!(r[1].passed);
    }

    #[test]
    fn zero_iterations_is_vacuous() {
        let r = run(&VerifyOptions { iterations: 0, ..Default::default() });
        assert!(r.passed && r.suites.is_empty());
    }

    #[test]
    fn exact_double_zero() {
        let m = MassTriple::new(1.0, 2.0, 3.0).unwrap();
        assert_eq!(double_zero_exact(0.3, &m), Some(true));
        assert_eq!(double_zero_exact(-2.5, &m), Some(true));
    }
}

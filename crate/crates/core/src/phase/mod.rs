//! Configurations in space, central configurations and their multipliers,
//! relative equilibria and the rank of the integral map.
//!
//! The potential is `V = -a3/r12 - a2/r13 - a1/r23`, so coupling `a_i`
//! belongs to the pair not containing body `i`.

mod releq;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quintic::{CouplingTriple, IntervalId, MassTriple};
use crate::tolerances::CC_RESIDUAL;

pub use releq::{
    angular_velocity, build_relative_equilibrium, force_scale, hamiltonian_vector_field, integral_map, jacobian_rank,
    jacobian_transpose, CriticalPointClass, IntegralValue, JacobianReport, PhasePoint,
};

pub type Vec3 = Vector3<f64>;

/// Pairs `(i, j)` in the order `r12, r13, r23`.
pub const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Coupling of the pair `(i, j)`.
pub fn pair_coupling(g: &CouplingTriple, i: usize, j: usize) -> f64 {
    match (i.min(j), i.max(j)) {
        (0, 1) => g.a3,
        (0, 2) => g.a2,
        (1, 2) => g.a1,
        _ => panic!("no pair ({i}, {j})"),
    }
}

/// Positions of the three bodies with the centre of mass at the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration {
    q: [Vec3; 3],
    m: MassTriple,
}

impl Configuration {
    /// Recentres `q` so that the centre of mass is the origin. Fails if two
    /// bodies coincide.
    pub fn new(q: [Vec3; 3], m: MassTriple) -> Result<Self> {
        if q.iter().any(|v| !v.iter().all(|c| c.is_finite())) {
            return Err(Error::InvalidInput("position is not finite".into()));
        }
        let mw = m.as_array();
        let c = (q[0] * mw[0] + q[1] * mw[1] + q[2] * mw[2]) / m.total();
        let q = q.map(|v| v - c);
        if PAIRS.iter().any(|&(i, j)| (q[i] - q[j]).norm() == 0.0) {
            return Err(Error::Collision);
        }
        Ok(Self { q, m })
    }

    pub fn positions(&self) -> &[Vec3; 3] {
        &self.q
    }

    pub fn masses(&self) -> &MassTriple {
        &self.m
    }

    /// `(r12, r13, r23)`.
    pub fn distances(&self) -> [f64; 3] {
        PAIRS.map(|(i, j)| (self.q[i] - self.q[j]).norm())
    }

    pub fn potential(&self, g: &CouplingTriple) -> f64 {
        PAIRS
            .iter()
            .map(|&(i, j)| -pair_coupling(g, i, j) / (self.q[i] - self.q[j]).norm())
            .sum()
    }

    /// `sum m_i |q_i|^2`.
    pub fn moment_of_inertia(&self) -> f64 {
        let m = self.m.as_array();
        (0..3).map(|i| m[i] * self.q[i].norm_squared()).sum()
    }

    /// Dilation by `t`.
    pub fn scaled(&self, t: f64) -> Result<Self> {
        Self::new(self.q.map(|v| v * t), self.m)
    }

    pub fn rotated(&self, r: &nalgebra::Rotation3<f64>) -> Self {
        Self {
            q: self.q.map(|v| r * v),
            m: self.m,
        }
    }

    /// Largest distance of a body from the origin.
    pub fn size(&self) -> f64 {
        self.q.iter().fold(0.0, |s, v| s.max(v.norm()))
    }

    /// All bodies on one line through the origin, to relative `tol`.
    pub fn is_collinear(&self, tol: f64) -> bool {
        releq::all_parallel(&self.q, tol)
    }
}

/// `dV/dq_i` and the symmetric matrix `A` with `dV/dq_i = sum_j A_ij q_j`.
pub fn gradient_and_alpha_matrix(
    config: &Configuration,
    g: &CouplingTriple,
) -> Result<([Vec3; 3], nalgebra::Matrix3<f64>)> {
    let q = config.positions();
    let mut a = nalgebra::Matrix3::zeros();
    for &(i, j) in &PAIRS {
        let r = (q[i] - q[j]).norm();
        if r == 0.0 {
            return Err(Error::Collision);
        }
        let k = pair_coupling(g, i, j) / (r * r * r);
        a[(i, j)] = -k;
        a[(j, i)] = -k;
        a[(i, i)] += k;
        a[(j, j)] += k;
    }
    let grad = potential_gradient(config, g);
    Ok((grad, a))
}

/// `dV/dq_i` summed pair by pair.
pub fn potential_gradient(config: &Configuration, g: &CouplingTriple) -> [Vec3; 3] {
    let q = config.positions();
    let mut grad = [Vec3::zeros(); 3];
    for &(i, j) in &PAIRS {
        let d = q[i] - q[j];
        let r = d.norm();
        let f = d * (pair_coupling(g, i, j) / (r * r * r));
        grad[i] += f;
        grad[j] -= f;
    }
    grad
}

/// Shape of a central configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CcKind {
    Collinear,
    NonCollinear,
}

/// A certified central configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralConfigResult {
    pub kind: CcKind,
    /// `(r12, r13, r23)`.
    pub distances: [f64; 3],
    pub lambda: f64,
    pub potential: f64,
    pub inertia: f64,
    /// Largest `|dV/dq_i - lambda m_i q_i|`.
    pub residual: f64,
    pub configuration: Configuration,
    /// Couplings the configuration is central for.
    pub couplings: CouplingTriple,
}

/// `lambda = -V/I` together with the largest residual
/// `|dV/dq_i - lambda m_i q_i|` of the central configuration equations.
pub fn multiplier_and_residual(config: &Configuration, g: &CouplingTriple) -> (f64, f64) {
    let lambda = -config.potential(g) / config.moment_of_inertia();
    let grad = potential_gradient(config, g);
    let m = config.masses().as_array();
    let q = config.positions();
    let res = (0..3).fold(0.0_f64, |r, i| r.max((grad[i] - q[i] * (lambda * m[i])).norm()));
    (lambda, res)
}

/// Multiplier of a central configuration. The residual is compared with
/// `tol` after dividing by the largest force, so the test is scale free.
pub fn multiplier_of(config: &Configuration, g: &CouplingTriple, tol: f64) -> Result<(f64, f64)> {
    let (lambda, res) = multiplier_and_residual(config, g);
    let force = potential_gradient(config, g)
        .iter()
        .fold(0.0_f64, |s, v| s.max(v.norm()));
    if !(res <= tol * force.max(f64::MIN_POSITIVE)) {
        return Err(Error::NotACentralConfiguration(res));
    }
    Ok((lambda, res))
}

fn certify(config: Configuration, g: &CouplingTriple, kind: CcKind) -> Result<CentralConfigResult> {
    let (lambda, residual) = multiplier_of(&config, g, CC_RESIDUAL)?;
    Ok(CentralConfigResult {
        kind,
        distances: config.distances(),
        lambda,
        potential: config.potential(g),
        inertia: config.moment_of_inertia(),
        residual,
        configuration: config,
        couplings: *g,
    })
}

/// Collinear configuration on the first axis with gaps `x = r2 - r3 = scale`
/// and `y = r3 - r1 = u scale`, centred at the origin.
pub fn reconstruct_collinear(u: f64, scale: f64, m: &MassTriple) -> Result<Configuration> {
    if u == 0.0 || u == -1.0 {
        return Err(Error::CollisionInput(u));
    }
    if !(scale.is_finite() && scale > 0.0 && u.is_finite()) {
        return Err(Error::InvalidInput("scale must be positive and u finite".into()));
    }
    let (x, y) = (scale, u * scale);
    let [m1, _, m3] = m.as_array();
    // r3 = r2 - x and r1 = r3 - y, with sum m_i r_i = 0.
    let r2 = (m1 * (x + y) + m3 * x) / m.total();
    let r3 = r2 - x;
    let r1 = r3 - y;
    Configuration::new(
        [
            Vec3::new(r1, 0.0, 0.0),
            Vec3::new(r2, 0.0, 0.0),
            Vec3::new(r3, 0.0, 0.0),
        ],
        *m,
    )
}

/// Couplings for which a root of `f` on `iv` is a central configuration.
///
/// `f` is built from signed gaps, so the identity holds as written only for
/// the ordering of `I3`. On `I2` the gap `y` changes sign and on `I1` so does
/// `x + y`, which flips the corresponding couplings.
pub fn effective_couplings(iv: IntervalId, a: &CouplingTriple) -> CouplingTriple {
    match iv {
        IntervalId::I3 => *a,
        IntervalId::I2 => CouplingTriple { a1: a.a1, a2: -a.a2, a3: a.a3 },
        IntervalId::I1 => CouplingTriple { a1: a.a1, a2: -a.a2, a3: -a.a3 },
    }
}

/// Central configuration of a root `u` of `f(.; a, m)`.
pub fn collinear_cc(u: f64, a: &CouplingTriple, m: &MassTriple, scale: f64) -> Result<CentralConfigResult> {
    let iv = IntervalId::of(u).ok_or(Error::CollisionInput(u))?;
    let config = reconstruct_collinear(u, scale, m)?;
    certify(config, &effective_couplings(iv, a), CcKind::Collinear)
}

/// Relative residual of the three scalar equations in the signed gaps
/// `x`, `y`, `z = -(x + y)`. These are written without absolute values, so
/// they hold with the plain couplings `a` on every interval, with `lambda`
/// from the physical configuration.
pub fn collinear_equation_residual(u: f64, a: &CouplingTriple, m: &MassTriple, scale: f64) -> Result<f64> {
    let cc = collinear_cc(u, a, m, scale)?;
    let e = *a;
    let [m1, m2, m3] = m.as_array();
    let (x, y) = (scale, u * scale);
    let z = -(x + y);
    let l = cc.lambda;
    let r = [
        e.a1 * (m2 + m3) / (x * x) - e.a2 * m2 / (y * y) + e.a3 * m3 / (z * z) - l * m2 * m3 * x,
        e.a2 * (m1 + m3) / (y * y) - e.a1 * m1 / (x * x) + e.a3 * m3 / (z * z) - l * m1 * m3 * y,
        e.a3 * (m1 + m2) / (z * z) + e.a1 * m1 / (x * x) + e.a2 * m2 / (y * y) + l * m1 * m2 * z,
    ];
    let scale_terms = [e.a1 / (x * x), e.a2 / (y * y), e.a3 / (z * z)]
        .iter()
        .fold(0.0_f64, |s, v| s.max(v.abs()))
        * m.total()
        * m.total();
    Ok(r.iter().fold(0.0_f64, |s, v| s.max(v.abs())) / scale_terms.max(f64::MIN_POSITIVE))
}

/// Distances `(r12, r13, r23)` of the non-collinear central configuration
/// with multiplier `lambda`, if it exists.
pub fn noncollinear_cc(g: &CouplingTriple, m: &MassTriple, lambda: f64) -> Option<[f64; 3]> {
    if lambda == 0.0 || !lambda.is_finite() {
        return None;
    }
    let mw = m.as_array();
    let total = m.total();
    let mut r = [0.0; 3];
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        let arg = pair_coupling(g, i, j) * total / (mw[i] * mw[j] * lambda);
        if !(arg > 0.0) {
            return None;
        }
        r[k] = arg.cbrt();
    }
    strict_triangle(r).then_some(r)
}

fn strict_triangle([a, b, c]: [f64; 3]) -> bool {
    a < b + c && b < a + c && c < a + b
}

/// Planar embedding of distances `(r12, r13, r23)`: body 1 at the origin,
/// body 2 on the positive first axis, body 3 in the upper half plane, then
/// recentred.
pub fn embed_triangle(r: [f64; 3], m: &MassTriple) -> Result<Configuration> {
    let [r12, r13, r23] = r;
    let x3 = (r12 * r12 + r13 * r13 - r23 * r23) / (2.0 * r12);
    let h2 = r13 * r13 - x3 * x3;
    if h2 < -1e-12 * r13 * r13 {
        return Err(Error::NotRealizable);
    }
    Configuration::new(
        [
            Vec3::zeros(),
            Vec3::new(r12, 0.0, 0.0),
            Vec3::new(x3, h2.max(0.0).sqrt(), 0.0),
        ],
        *m,
    )
}

/// The non-collinear central configuration, certified.
pub fn noncollinear_config(g: &CouplingTriple, m: &MassTriple, lambda: f64) -> Result<CentralConfigResult> {
    let r = noncollinear_cc(g, m, lambda)
        .ok_or_else(|| Error::NoSuchRoot("no non-collinear central configuration".into()))?;
    certify(embed_triangle(r, m)?, g, CcKind::NonCollinear)
}

/// The non-collinear central configuration scaled to unit moment of inertia.
pub fn noncollinear_unit_inertia(g: &CouplingTriple, m: &MassTriple) -> Result<CentralConfigResult> {
    let s = if g.a1 > 0.0 { 1.0 } else { -1.0 };
    let r = noncollinear_cc(g, m, s)
        .ok_or_else(|| Error::NoSuchRoot("no non-collinear central configuration".into()))?;
    // Distances scale like |lambda|^(-1/3), so I scales like |lambda|^(-2/3).
    let i1 = moment_of_inertia(r[0], r[1], r[2], m)?;
    noncollinear_config(g, m, s * i1.powf(1.5))
}

/// `I = (m1 m2 r12^2 + m1 m3 r13^2 + m2 m3 r23^2) / m`.
pub fn moment_of_inertia(r12: f64, r13: f64, r23: f64, m: &MassTriple) -> Result<f64> {
    let [a, b, c] = [r12, r13, r23];
    let slack = 1e-12 * (a + b + c);
    if a > b + c + slack || b > a + c + slack || c > a + b + slack || a < 0.0 || b < 0.0 || c < 0.0 {
        return Err(Error::NotRealizable);
    }
    let [m1, m2, m3] = m.as_array();
    Ok((m1 * m2 * a * a + m1 * m3 * b * b + m2 * m3 * c * c) / m.total())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones() -> MassTriple {
        MassTriple::new(1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn equilateral_gravity() {
        let g = CouplingTriple::gravitational(&ones());
        let r = noncollinear_cc(&g, &ones(), 3.0).unwrap();
        for d in r {
            assert!((d - 1.0).abs() < 1e-15);
        }
        let cc = noncollinear_config(&g, &ones(), 3.0).unwrap();
        assert!((cc.potential + 3.0).abs() < 1e-14);
        assert!((cc.inertia - 1.0).abs() < 1e-14);
        assert!((cc.lambda - 3.0).abs() < 1e-14);
    }

    #[test]
    fn euler_point() {
        let c = reconstruct_collinear(1.0, 1.0, &ones()).unwrap();
        let x: Vec<f64> = c.positions().iter().map(|v| v[0]).collect();
        assert_eq!(x, vec![-1.0, 1.0, 0.0]);
        let cc = collinear_cc(1.0, &CouplingTriple::from_beta(1.0, 1.0).unwrap(), &ones(), 1.0).unwrap();
        assert_eq!(cc.potential, -2.5);
        assert_eq!(cc.inertia, 2.0);
        assert_eq!(cc.lambda, 1.25);
        assert!(reconstruct_collinear(-1.0, 1.0, &ones()).is_err());
    }

    #[test]
    fn mixed_signs_have_no_triangle() {
        let g = CouplingTriple::new(1.0, -1.0, 1.0).unwrap();
        assert_eq!(noncollinear_cc(&g, &ones(), 1.0), None);
        assert_eq!(noncollinear_cc(&g, &ones(), -1.0), None);
        let extreme = CouplingTriple::new(1000.0, 1.0, 1.0).unwrap();
        assert_eq!(noncollinear_cc(&extreme, &ones(), 1.0), None);
    }

    #[test]
    fn inertia_formula_matches_embedding() {
        let m = MassTriple::new(1.3, 0.4, 2.2).unwrap();
        let r = [1.0, 1.4, 0.9];
        let c = embed_triangle(r, &m).unwrap();
        let i = moment_of_inertia(r[0], r[1], r[2], &m).unwrap();
        assert!((i - c.moment_of_inertia()).abs() < 1e-14);
        assert_eq!(moment_of_inertia(1.0, 1.0, 3.0, &m), Err(Error::NotRealizable));
        let i2 = moment_of_inertia(2.0, 2.8, 1.8, &m).unwrap();
        assert!((i2 - 4.0 * i).abs() < 1e-13);
    }

    #[test]
    fn alpha_matrix_structure() {
        let m = MassTriple::new(1.0, 2.0, 3.0).unwrap();
        let c = Configuration::new(
            [Vec3::new(0.3, 1.0, -0.2), Vec3::new(-1.0, 0.4, 0.5), Vec3::new(0.7, -0.9, 0.1)],
            m,
        )
        .unwrap();
        let g = CouplingTriple::new(0.7, -1.1, 2.3).unwrap();
        let (grad, a) = gradient_and_alpha_matrix(&c, &g).unwrap();
        assert_eq!(a, a.transpose());
        for i in 0..3 {
            assert!(a.row(i).sum().abs() < 1e-12);
            let aq: Vec3 = (0..3).map(|j| c.positions()[j] * a[(i, j)]).sum();
            assert!((aq - grad[i]).norm() < 1e-12);
        }
        let total: Vec3 = grad.iter().sum();
        assert!(total.norm() < 1e-12);
    }

    #[test]
    fn every_root_is_central_for_its_interval_couplings() {
        use crate::atlas::{reduced_potential, BetaPoint};
        use crate::quintic::isolate_real_roots;
        let masses = [ones(), MassTriple::new(1.3, 0.7, 2.0).unwrap()];
        for m in &masses {
            for (b1, b2) in [(1.0, 1.0), (-5.0, -5.0), (-0.034, -0.034), (-60.0, -1.5), (0.3, 20.7)] {
                let a = CouplingTriple::from_beta(b1, b2).unwrap();
                let roots = isolate_real_roots(&a, m).unwrap();
                assert!(!roots.roots.is_empty());
                for r in &roots.roots {
                    let cc = collinear_cc(r.value, &a, m, 1.0).unwrap();
                    let eq = collinear_equation_residual(r.value, &a, m, 1.0).unwrap();
                    assert!(eq < 1e-12);
                    let u = reduced_potential(r.value, BetaPoint::new(b1, b2)).unwrap();
                    assert!((cc.potential - u).abs() < 1e-12 * u.abs().max(1.0));
                    assert_eq!(u < 0.0, cc.lambda > 0.0);
                    // The plain couplings only work on the ordering the quintic was derived for.
                    let plain = reconstruct_collinear(r.value, 1.0, m).unwrap();
                    assert_eq!(
                        multiplier_of(&plain, &a, CC_RESIDUAL).is_ok(),
                        r.interval == IntervalId::I3
                    );
                }
            }
        }
    }

    #[test]
    fn random_configuration_is_not_central() {
        let c = Configuration::new(
            [Vec3::new(0.0, 0.0, 0.0), Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.2, 2.0, 0.0)],
            ones(),
        )
        .unwrap();
        let g = CouplingTriple::gravitational(&ones());
        assert!(matches!(multiplier_of(&c, &g, 1e-9), Err(Error::NotACentralConfiguration(_))));
    }
}

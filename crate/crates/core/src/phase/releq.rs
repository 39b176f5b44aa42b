use nalgebra::{DMatrix, Matrix3, Rotation3};

use super::{pair_coupling, potential_gradient, Configuration, Vec3, PAIRS};
use crate::error::{Error, Result};
use crate::quintic::CouplingTriple;

/// Configuration with momenta; total momentum is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct PhasePoint {
    config: Configuration,
    p: [Vec3; 3],
}

impl PhasePoint {
    /// Fails unless the momenta sum to zero up to rounding.
    pub fn new(config: Configuration, p: [Vec3; 3]) -> Result<Self> {
        let total: Vec3 = p.iter().sum();
        let scale = p.iter().fold(0.0_f64, |s, v| s.max(v.norm()));
        if total.norm() > 1e-12 * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::InvalidInput("total momentum is not zero".into()));
        }
        Ok(Self { config, p })
    }

    /// Removes the total momentum, distributing it by mass.
    pub fn projected(config: Configuration, p: [Vec3; 3]) -> Self {
        let total: Vec3 = p.iter().sum();
        let m = config.masses().as_array();
        let mt = config.masses().total();
        let p = std::array::from_fn(|i| p[i] - total * (m[i] / mt));
        Self { config, p }
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn momenta(&self) -> &[Vec3; 3] {
        &self.p
    }

    pub fn rotated(&self, r: &Rotation3<f64>) -> Self {
        Self {
            config: self.config.rotated(r),
            p: self.p.map(|v| r * v),
        }
    }
}

/// Values of energy, angular momentum, momentum and centre of mass.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegralValue {
    pub h: f64,
    pub l: Vec3,
    pub p: Vec3,
    pub q: Vec3,
}

pub fn integral_map(pp: &PhasePoint, g: &CouplingTriple) -> Result<IntegralValue> {
    let c = pp.config();
    let q = c.positions();
    if c.distances().iter().any(|&r| r == 0.0) {
        return Err(Error::Collision);
    }
    let m = c.masses().as_array();
    let kinetic: f64 = (0..3).map(|i| pp.p[i].norm_squared() / (2.0 * m[i])).sum();
    Ok(IntegralValue {
        h: kinetic + c.potential(g),
        l: (0..3).map(|i| q[i].cross(&pp.p[i])).sum(),
        p: pp.p.iter().sum(),
        q: (0..3).map(|i| q[i] * m[i]).sum::<Vec3>() / c.masses().total(),
    })
}

/// `(dq_i/dt, dp_i/dt) = (p_i/m_i, -dV/dq_i)`.
pub fn hamiltonian_vector_field(pp: &PhasePoint, g: &CouplingTriple) -> ([Vec3; 3], [Vec3; 3]) {
    let m = pp.config.masses().as_array();
    let grad = potential_gradient(&pp.config, g);
    (
        std::array::from_fn(|i| pp.p[i] / m[i]),
        grad.map(|v| -v),
    )
}

/// Unit vector orthogonal to every position.
fn plane_normal(q: &[Vec3; 3]) -> Vec3 {
    let mut best = Vec3::zeros();
    for i in 0..3 {
        for j in i + 1..3 {
            let n = q[i].cross(&q[j]);
            if n.norm() > best.norm() {
                best = n;
            }
        }
    }
    let size = q.iter().fold(0.0_f64, |s, v| s.max(v.norm()));
    if best.norm() > 1e-12 * size * size {
        return best.normalize();
    }
    // Collinear: any direction orthogonal to the line.
    let d = q.iter().max_by(|a, b| a.norm().total_cmp(&b.norm())).copied().unwrap_or_default();
    let axis = [Vec3::x(), Vec3::y(), Vec3::z()]
        .into_iter()
        .min_by(|a, b| a.dot(&d).abs().total_cmp(&b.dot(&d).abs()))
        .unwrap();
    d.cross(&axis).normalize()
}

/// Rigid rotation `p_i = m_i e x q_i` about the normal of the plane of
/// `config`, with `|e|^2 = lambda`.
pub fn build_relative_equilibrium(config: &Configuration, lambda: f64) -> Result<PhasePoint> {
    if !(lambda > 0.0) {
        return Err(Error::NonpositiveMultiplier(lambda));
    }
    let q = config.positions();
    let e = plane_normal(q) * lambda.sqrt();
    let m = config.masses().as_array();
    Ok(PhasePoint {
        config: config.clone(),
        p: std::array::from_fn(|i| e.cross(&q[i]) * m[i]),
    })
}

/// Angular velocity `e` of a phase point built by
/// [`build_relative_equilibrium`], recovered from `L = I e`.
pub fn angular_velocity(pp: &PhasePoint) -> Vec3 {
    let q = pp.config.positions();
    let l: Vec3 = (0..3).map(|i| q[i].cross(&pp.p[i])).sum();
    l / pp.config.moment_of_inertia()
}

fn hat(v: &Vec3) -> Matrix3<f64> {
    v.cross_matrix()
}

/// The 18 x 10 matrix `DF^T`. Rows are `q1, q2, q3, p1, p2, p3`; columns
/// are `H, L, P, Q`.
pub fn jacobian_transpose(pp: &PhasePoint, g: &CouplingTriple) -> DMatrix<f64> {
    let c = &pp.config;
    let q = c.positions();
    let m = c.masses().as_array();
    let mt = c.masses().total();
    let grad = potential_gradient(c, g);
    let mut j = DMatrix::zeros(18, 10);
    for i in 0..3 {
        let (rq, rp) = (3 * i, 9 + 3 * i);
        j.view_mut((rq, 0), (3, 1)).copy_from(&grad[i]);
        j.view_mut((rp, 0), (3, 1)).copy_from(&(pp.p[i] / m[i]));
        // dL = dq x p + q x dp, transposed.
        j.view_mut((rq, 1), (3, 3)).copy_from(&hat(&pp.p[i]));
        j.view_mut((rp, 1), (3, 3)).copy_from(&(-hat(&q[i])));
        j.view_mut((rp, 4), (3, 3)).copy_from(&Matrix3::identity());
        j.view_mut((rq, 7), (3, 3)).copy_from(&(Matrix3::identity() * (m[i] / mt)));
    }
    j
}

/// Trichotomy of points where the integral map drops rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriticalPointClass {
    CollinearPhase,
    Equilibrium,
    RelativeEquilibrium,
    Regular,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobianReport {
    pub rank: usize,
    pub class: CriticalPointClass,
    /// Descending.
    pub singular_values: Vec<f64>,
    /// Multipliers `(l0, l1, l2, l3)` of the kernel vector of `DF^T`,
    /// scaled so `l0 = 1` when it is nonzero.
    pub kernel: Option<[f64; 10]>,
}

impl JacobianReport {
    /// `sigma_10 / sigma_1`.
    pub fn ratio(&self) -> f64 {
        let s = &self.singular_values;
        s[s.len() - 1] / s[0]
    }
}

pub(crate) fn all_parallel(v: &[Vec3], tol: f64) -> bool {
    let size = v.iter().fold(0.0_f64, |s, x| s.max(x.norm()));
    let Some(d) = v.iter().find(|x| x.norm() == size) else {
        return true;
    };
    if size == 0.0 {
        return true;
    }
    let d = d / size;
    v.iter().all(|x| x.cross(&d).norm() <= tol * size)
}

/// Numerical rank of `DF^T` with threshold `tol * sigma_1`, and the class
/// of the point.
pub fn jacobian_rank(pp: &PhasePoint, g: &CouplingTriple, tol: f64) -> JacobianReport {
    let jt = jacobian_transpose(pp, g);
    let svd = jt.svd(false, true);
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let sv: Vec<f64> = order.iter().map(|&k| svd.singular_values[k]).collect();
    let rank = sv.iter().filter(|&&s| s > tol * sv[0]).count();
    if rank == 10 {
        return JacobianReport { rank, class: CriticalPointClass::Regular, singular_values: sv, kernel: None };
    }
    let vt = svd.v_t.expect("requested");
    let row = vt.row(order[9]);
    let mut kernel: [f64; 10] = std::array::from_fn(|k| row[k]);
    let mut vectors: Vec<Vec3> = pp.config.positions().to_vec();
    vectors.extend_from_slice(&pp.p);
    let class = if all_parallel(&vectors, 1e-9) || kernel[0].abs() <= 1e-9 {
        CriticalPointClass::CollinearPhase
    } else {
        let l0 = kernel[0];
        kernel.iter_mut().for_each(|x| *x /= l0);
        let l1 = Vec3::new(kernel[1], kernel[2], kernel[3]);
        let p_size = pp.p.iter().fold(0.0_f64, |s, v| s.max(v.norm()));
        let q_size = pp.config.size();
        // l1 has the units of p / (m q).
        let m_max = pp.config.masses().as_array().into_iter().fold(0.0, f64::max);
        if l1.norm() * q_size * m_max <= 1e-9 * p_size.max(f64::MIN_POSITIVE) || p_size == 0.0 {
            CriticalPointClass::Equilibrium
        } else {
            CriticalPointClass::RelativeEquilibrium
        }
    };
    JacobianReport { rank, class, singular_values: sv, kernel: Some(kernel) }
}

/// Largest pairwise coupling over distance squared, a scale for forces.
pub fn force_scale(config: &Configuration, g: &CouplingTriple) -> f64 {
    let r = config.distances();
    PAIRS
        .iter()
        .enumerate()
        .map(|(k, &(i, j))| pair_coupling(g, i, j).abs() / (r[k] * r[k]))
        .fold(0.0, f64::max)
}

//! The discriminant curve `c(u)`: the couplings for which `f` has a double
//! root at `u`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Endpoint, Poly, Scalar};
use crate::quintic::{basis_polynomials_in, lift, MassTriple};
use crate::tolerances::CUSP_REL;

use super::BetaPoint;

/// `(g1, g2, g3)` with `c = -(m3/m1 g1/g3, m3/m2 g2/g3)`.
pub fn gamma_polys<T: Scalar>(m: &[T; 3]) -> [Poly<T>; 3] {
    let [m1, m2, m3] = m.clone();
    let k = |n: i64| T::from_i64(n);
    let g1 = Poly::new(vec![
        -(k(2) * m2.clone() * (m1.clone() + m3.clone())),
        -(m1.clone() * (-(k(3) * m1.clone()) + m2.clone() - k(3) * m3.clone())),
        m1.clone() * (k(3) * m1.clone() + m2.clone() + m3.clone()),
    ]);
    let u3 = Poly::new(vec![T::zero(), T::zero(), T::zero(), T::one()]);
    let g2 = &u3
        * &Poly::new(vec![
            m2.clone() * (m1.clone() + k(3) * m2.clone() + m3.clone()),
            m2.clone() * (-m1.clone() + k(3) * (m2.clone() + m3.clone())),
            -(k(2) * m1.clone() * (m2.clone() + m3.clone())),
        ]);
    let opu = Poly::new(vec![T::one(), T::one()]);
    let g3 = &(&(&opu * &opu) * &opu) * &denominator_quadratic(m);
    [g1, g2, g3]
}

/// Quadratic factor of `g3` whose roots are where the curve leaves to
/// infinity away from `u = -1`.
pub fn denominator_quadratic<T: Scalar>(m: &[T; 3]) -> Poly<T> {
    let [m1, m2, m3] = m.clone();
    let k = |n: i64| T::from_i64(n);
    Poly::new(vec![
        k(2) * m2.clone() * (m1.clone() + m3.clone()),
        k(3) * m3.clone() * (m2.clone() + m3.clone()) + m1.clone() * (k(4) * m2.clone() + k(3) * m3.clone()),
        k(2) * m1 * (m2 + m3),
    ])
}

/// Rational numerators `(n1, n2)` and denominator `d` of `c(u)`.
pub fn gamma_rational<T: Scalar>(m: &[T; 3]) -> (Poly<T>, Poly<T>, Poly<T>) {
    let [g1, g2, g3] = gamma_polys(m);
    let [m1, m2, m3] = m.clone();
    let n1 = g1.scale(&-(m3.clone() / m1));
    let n2 = g2.scale(&-(m3 / m2));
    (n1, n2, g3)
}

/// `c(u)` in `T`, `None` where the curve is at infinity.
pub fn gamma_coords<T: Scalar>(u: &T, m: &[T; 3]) -> Option<(T, T)> {
    let (n1, n2, d) = gamma_rational(m);
    let dv = d.eval(u);
    if dv.is_zero() {
        return None;
    }
    Some((n1.eval(u) / dv.clone(), n2.eval(u) / dv))
}

/// `c(u)` from the two-by-two linear system `f(u) = f'(u) = 0` solved by
/// Cramer's rule. Independent of the closed form used by [`gamma_coords`].
pub fn gamma_cramer<T: Scalar>(u: &T, m: &[T; 3]) -> Option<(T, T)> {
    let [f1, f2, f3] = basis_polynomials_in(m);
    let v = |p: &Poly<T>| (p.eval(u), p.derivative().eval(u));
    let ((a, ad), (b, bd), (c, cd)) = (v(&f1), v(&f2), v(&f3));
    let det = b.clone() * ad.clone() - a.clone() * bd.clone();
    if det.is_zero() {
        return None;
    }
    let b1 = (c.clone() * bd - b * cd.clone()) / det.clone();
    let b2 = (a * cd - c * ad) / det;
    Some((b1, b2))
}

/// Where a sample of the curve lies.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GammaPoint {
    Finite(BetaPoint),
    /// Unit vector along which the curve leaves, as the denominator of `c`
    /// tends to zero through positive values.
    AtInfinity { direction: [f64; 2] },
}

/// One sample of the discriminant curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaSample {
    pub u: f64,
    pub point: GammaPoint,
    /// 1 on `(xi-, -1)`, 2 on `(-1, xi+)`, 3 on the rest.
    pub branch: u8,
}

/// Parameters where the denominator quadratic vanishes, ascending.
pub fn infinity_parameters(m: &MassTriple) -> (f64, f64) {
    let q = denominator_quadratic::<f64>(&m.as_array());
    let (c, b, a) = (q.coeff(0), q.coeff(1), q.coeff(2));
    let disc = (b * b - 4.0 * a * c).sqrt();
    // Both roots are negative; avoid cancellation in the small one.
    let big = (-b - disc) / (2.0 * a);
    (big, c / (a * big))
}

/// Branch label of parameter `u` for masses `m`.
pub fn branch_of(u: f64, m: &MassTriple) -> u8 {
    let (xm, xp) = infinity_parameters(m);
    if u >= xm && u < -1.0 {
        1
    } else if (-1.0..xp).contains(&u) {
        2
    } else {
        3
    }
}

/// The discriminant curve at `u`.
pub fn gamma_point(u: f64, m: &MassTriple) -> GammaSample {
    let branch = branch_of(u, m);
    let (n1, n2, d) = gamma_rational::<f64>(&m.as_array());
    let (a, b) = (n1.eval(&u), n2.eval(&u));
    let (xm, xp) = infinity_parameters(m);
    let dv = d.eval(&u);
    let at_inf = dv == 0.0 || u == xm || u == xp;
    let point = if at_inf {
        // Sign of d just to the right of u times the numerator direction.
        let s = d.sign_at(&(u + 1e-9 * u.abs().max(1.0)));
        let s = if s == 0 { 1.0 } else { s as f64 };
        let norm = a.hypot(b);
        GammaPoint::AtInfinity {
            direction: [s * a / norm, s * b / norm],
        }
    } else {
        GammaPoint::Finite(BetaPoint::new(a / dv, b / dv))
    };
    GammaSample { u, point, branch }
}

/// `c(u) / |c(u)|^2`, finite near the points at infinity.
pub fn gamma_inverted(u: f64, m: &MassTriple) -> [f64; 2] {
    let (n1, n2, d) = gamma_rational::<f64>(&m.as_array());
    let (a, b, dv) = (n1.eval(&u), n2.eval(&u), d.eval(&u));
    let nn = a * a + b * b;
    [a * dv / nn, b * dv / nn]
}

/// `c'(u)`.
pub fn gamma_derivative(u: f64, m: &MassTriple) -> [f64; 2] {
    let (n1, n2, d) = gamma_rational::<f64>(&m.as_array());
    let (dv, dd) = (d.eval(&u), d.derivative().eval(&u));
    let q = |n: &Poly<f64>| (n.derivative().eval(&u) * dv - n.eval(&u) * dd) / (dv * dv);
    [q(&n1), q(&n2)]
}

/// Parameters of the points at infinity and of the cusps.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecialPoints {
    pub xi_minus: f64,
    pub xi_plus: f64,
    pub xi0: f64,
    pub eta_minus: f64,
    pub eta_plus: f64,
    pub eta0: f64,
}

impl SpecialPoints {
    /// `[xi-, eta-, xi0, eta+, xi+, eta0]`, which is increasing.
    pub fn ordered(&self) -> [f64; 6] {
        [
            self.xi_minus,
            self.eta_minus,
            self.xi0,
            self.eta_plus,
            self.xi_plus,
            self.eta0,
        ]
    }
}

/// Closed forms for masses `(mu, mu, 1)`.
pub fn special_points(mu: f64) -> Result<SpecialPoints> {
    if !(mu.is_finite() && mu > 0.0) {
        return Err(Error::InvalidInput(format!("mu = {mu} must be positive")));
    }
    let xi_b = -3.0 - 6.0 * mu - 4.0 * mu * mu;
    let xi_s = (9.0 + 36.0 * mu + 44.0 * mu * mu + 16.0 * mu * mu * mu).sqrt();
    let xi_d = 4.0 * mu * (1.0 + mu);
    let eta_b = -5.0 - 12.0 * mu - 8.0 * mu * mu;
    let eta_s = (21.0 + 80.0 * mu + 92.0 * mu * mu + 32.0 * mu * mu * mu).sqrt();
    let eta_d = 2.0 * (1.0 + 5.0 * mu + 4.0 * mu * mu);
    Ok(SpecialPoints {
        xi_minus: (xi_b - xi_s) / xi_d,
        xi_plus: (xi_b + xi_s) / xi_d,
        xi0: -1.0,
        eta_minus: (eta_b - eta_s) / eta_d,
        eta_plus: (eta_b + eta_s) / eta_d,
        eta0: 1.0,
    })
}

/// `|q(xi)|` over the sum of the absolute terms, for the denominator
/// quadratic `q`. Zero at a point at infinity.
pub fn infinity_residual(xi: f64, m: &MassTriple) -> f64 {
    let q = denominator_quadratic::<f64>(&m.as_array());
    relative_value(&q, xi)
}

/// Relative size of `c'(eta)`: each component of the numerator of the
/// derivative over the sum of the absolute terms that cancel in it. Zero
/// at a cusp.
pub fn cusp_residual(eta: f64, m: &MassTriple) -> f64 {
    let (n1, n2, d) = gamma_rational::<f64>(&m.as_array());
    let (dv, dd) = (d.eval(&eta), d.derivative().eval(&eta));
    let comp = |n: &Poly<f64>| {
        let (a, b) = (n.derivative().eval(&eta) * dv, n.eval(&eta) * dd);
        let size = a.abs() + b.abs();
        if size == 0.0 { 0.0 } else { (a - b).abs() / size }
    };
    comp(&n1).max(comp(&n2))
}

fn relative_value(p: &Poly<f64>, x: f64) -> f64 {
    let size: f64 = p.coeffs().iter().enumerate().map(|(k, c)| (c * x.powi(k as i32)).abs()).sum();
    if size == 0.0 { 0.0 } else { p.eval(&x).abs() / size }
}

/// Wronskian of `f1, f2, f3`. Its zeros away from the collision points
/// are the parameters where `c'` vanishes.
pub fn singularity_polynomial<T: Scalar>(m: &[T; 3]) -> Poly<T> {
    let f = basis_polynomials_in(m);
    let d1: Vec<Poly<T>> = f.iter().map(|p| p.derivative()).collect();
    let d2: Vec<Poly<T>> = d1.iter().map(|p| p.derivative()).collect();
    let minor = |a: usize, b: usize| &(&d1[a] * &d2[b]) - &(&d1[b] * &d2[a]);
    let t0 = &f[0] * &minor(1, 2);
    let t1 = &f[1] * &minor(0, 2);
    let t2 = &f[2] * &minor(0, 1);
    &(&t0 - &t1) + &t2
}

/// Cusp parameters for arbitrary masses, ascending.
pub fn cusp_parameters(m: &MassTriple) -> Vec<f64> {
    use num_rational::BigRational;
    let mut w = singularity_polynomial::<BigRational>(&lift(m.as_array()));
    for r in [BigRational::from_i64(0), BigRational::from_i64(-1)] {
        loop {
            let (q, rem) = w.deflate(&r);
            if !rem.is_zero() || q.is_zero() {
                break;
            }
            w = q;
        }
    }
    let chain = w.square_free_part(0.0).sturm_chain(0.0);
    let mut out: Vec<f64> = chain
        .isolate(&Endpoint::NegInf, &Endpoint::PosInf)
        .into_iter()
        .map(|mut e| {
            e.refine_to_f64(chain.poly());
            e.value_f64()
        })
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// Leading coefficients of `c(eta + t) - c(eta)` in the frame where the
/// quadratic term points along the first axis: `(gamma1, gamma2)` with the
/// cubic coefficient across and the quadratic coefficient along it.
pub fn cusp_local_form(eta: f64, m: &MassTriple) -> Result<(f64, f64)> {
    let (n1, n2, d) = gamma_rational::<f64>(&m.as_array());
    let series = |n: &Poly<f64>| -> [f64; 4] {
        let (ns, ds) = (n.shift(&eta), d.shift(&eta));
        let mut q = [0.0; 4];
        for k in 0..4 {
            let mut acc = ns.coeff(k);
            for j in 1..=k {
                acc -= ds.coeff(j) * q[k - j];
            }
            q[k] = acc / ds.coeff(0);
        }
        q
    };
    let (s1, s2) = (series(&n1), series(&n2));
    if !(s1[0].is_finite() && s2[0].is_finite()) {
        return Err(Error::NotACusp(eta));
    }
    let q1 = [s1[1], s2[1]];
    let q2 = [s1[2], s2[2]];
    let q3 = [s1[3], s2[3]];
    let inf = |v: [f64; 2]| v[0].abs().max(v[1].abs());
    if inf(q1) > CUSP_REL * inf(q2).max(inf(q3)) || inf(q2) == 0.0 {
        return Err(Error::NotACusp(eta));
    }
    let v = [q2[0] / inf(q2), q2[1] / inf(q2)];
    let jv = [-v[1], v[0]];
    let gamma1 = jv[0] * q3[0] + jv[1] * q3[1];
    let gamma2 = v[0] * q2[0] + v[1] * q2[1];
    Ok((gamma1, gamma2))
}

/// Samples of the curve at evenly spaced parameters in `[lo, hi]`, with the
/// points at infinity inside the range inserted.
pub fn trace(m: &MassTriple, lo: f64, hi: f64, samples: usize) -> Vec<GammaSample> {
    let mut us: Vec<f64> = match samples {
        0 => Vec::new(),
        1 => vec![lo],
        n => (0..n)
            .map(|i| lo + (hi - lo) * (i as f64) / ((n - 1) as f64))
            .collect(),
    };
    if samples > 0 {
        let (xm, xp) = infinity_parameters(m);
        us.extend([xm, -1.0, xp].into_iter().filter(|x| *x >= lo && *x <= hi));
        us.sort_by(f64::total_cmp);
        us.dedup();
    }
    us.into_iter().map(|u| gamma_point(u, m)).collect()
}

/// Polylines of the curve clipped to a window, for plotting. The curve is
/// walked over `u = tan(theta)` and split wherever it leaves the window or
/// passes through infinity.
pub fn polylines(m: &MassTriple, window: [[f64; 2]; 2], steps: usize) -> Vec<Vec<[f64; 2]>> {
    let [[x0, x1], [y0, y1]] = window;
    let margin = 0.05 * (x1 - x0).max(y1 - y0);
    let inside = |p: [f64; 2]| {
        p[0] >= x0 - margin && p[0] <= x1 + margin && p[1] >= y0 - margin && p[1] <= y1 + margin
    };
    let (n1, n2, d) = gamma_rational::<f64>(&m.as_array());
    let mut out = Vec::new();
    let mut cur: Vec<[f64; 2]> = Vec::new();
    let mut last_sign = 0;
    for i in 1..steps {
        let theta = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * (i as f64) / (steps as f64);
        let u = theta.tan();
        let dv = d.eval(&u);
        let s = dv.sign();
        let p = [n1.eval(&u) / dv, n2.eval(&u) / dv];
        let crossed = last_sign != 0 && s != last_sign;
        last_sign = s;
        if crossed || !inside(p) || !p.iter().all(|c| c.is_finite()) {
            if cur.len() > 1 {
                out.push(std::mem::take(&mut cur));
            }
            cur.clear();
            if inside(p) && p.iter().all(|c| c.is_finite()) {
                cur.push(p);
            }
            continue;
        }
        cur.push(p);
    }
    if cur.len() > 1 {
        out.push(cur);
    }
    out
}

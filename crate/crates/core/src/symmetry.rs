//! Relabelling the bodies. The symmetric group on three letters acts on the
//! reduced coordinate, the couplings, the normalised couplings and the masses
//! at once, and both `f` and the discriminant curve transform covariantly.
//!
//! Generators: `p1` swaps bodies 1 and 2, `p2` swaps bodies 2 and 3.
//!
//! ```text
//! h1(u) = 1/u               h2(u) = -(1 + u)
//! phi1(a) = (a2, a1, a3)    phi2(a) = (a1, -a3, -a2)
//! psi1(b) = (b2, b1)        psi2(b) = (-b1/b2, 1/b2)
//! pi1(m) = (m2, m1, m3)     pi2(m) = (m1, m3, m2)
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::atlas::{gamma_coords, BetaPoint};
use crate::error::{Error, Result};
use crate::poly::Scalar;
use crate::poly::Poly;
use crate::quintic::{quintic_coefficients, CouplingTriple, IntervalId, MassTriple};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Generator {
    P1,
    P2,
}

/// Element of the permutation group, written as a word in the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PermutationElement {
    /// Identity.
    P0,
    /// `p1`
    P1,
    /// `p2`
    P2,
    /// `p1 . p2`
    P3,
    /// `p2 . p1`
    P4,
    /// `p1 . p2 . p1`
    P5,
}

use PermutationElement::*;

impl PermutationElement {
    pub const ALL: [PermutationElement; 6] = [P0, P1, P2, P3, P4, P5];

    /// Generators, leftmost applied last.
    fn word(self) -> &'static [Generator] {
        use Generator as G;
        match self {
            P0 => &[],
            P1 => &[G::P1],
            P2 => &[G::P2],
            P3 => &[G::P1, G::P2],
            P4 => &[G::P2, G::P1],
            P5 => &[G::P1, G::P2, G::P1],
        }
    }

    /// Generators in the order they are applied.
    fn applied(self) -> impl Iterator<Item = Generator> {
        self.word().iter().rev().copied()
    }

    /// Index map `s` with `act_mass(g, m)[i] = m[s[i]]`.
    pub fn mass_permutation(self) -> [usize; 3] {
        let mut s = [0, 1, 2];
        for g in self.applied() {
            let t = match g {
                Generator::P1 => [1, 0, 2],
                Generator::P2 => [0, 2, 1],
            };
            s = [s[t[0]], s[t[1]], s[t[2]]];
        }
        s
    }

    fn from_mass_permutation(s: [usize; 3]) -> Self {
        *Self::ALL
            .iter()
            .find(|g| g.mass_permutation() == s)
            .expect("every permutation of three letters has a word")
    }

    /// `self . other`: apply `other` first.
    pub fn compose(self, other: Self) -> Self {
        let (a, b) = (self.mass_permutation(), other.mass_permutation());
        Self::from_mass_permutation([b[a[0]], b[a[1]], b[a[2]]])
    }

    pub fn inverse(self) -> Self {
        *Self::ALL
            .iter()
            .find(|g| self.compose(**g) == P0)
            .expect("group element has an inverse")
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|g| g.to_string() == s)
    }
}

impl fmt::Display for PermutationElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A point of the real projective line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ProjectiveU {
    Finite(f64),
    Infinity,
}

fn h_gen(g: Generator, u: ProjectiveU) -> ProjectiveU {
    use ProjectiveU::*;
    match (g, u) {
        (Generator::P1, Finite(x)) if x == 0.0 => Infinity,
        (Generator::P1, Finite(x)) => Finite(1.0 / x),
        (Generator::P1, Infinity) => Finite(0.0),
        // `+ 0.0` keeps `h2(-1)` from being `-0.0`.
        (Generator::P2, Finite(x)) => Finite(-(1.0 + x) + 0.0),
        (Generator::P2, Infinity) => Infinity,
    }
}

/// `h_g(u)` on the projective line.
pub fn act_u(g: PermutationElement, u: ProjectiveU) -> ProjectiveU {
    g.applied().fold(u, |u, k| h_gen(k, u))
}

/// `h_g(u)` in `T`; `None` when the image is infinite.
pub fn act_u_in<T: Scalar>(g: PermutationElement, u: &T) -> Option<T> {
    let mut u = u.clone();
    for k in g.applied() {
        u = match k {
            Generator::P1 if u.is_zero() => return None,
            Generator::P1 => T::one() / u,
            Generator::P2 => -(T::one() + u),
        };
    }
    Some(u)
}

/// Image of an interval under `h_g`.
pub fn act_interval(g: PermutationElement, iv: IntervalId) -> IntervalId {
    use IntervalId::*;
    g.applied().fold(iv, |iv, k| match (k, iv) {
        (Generator::P1, I1) => I2,
        (Generator::P1, I2) => I1,
        (Generator::P2, I1) => I3,
        (Generator::P2, I3) => I1,
        (_, other) => other,
    })
}

/// `phi_g(a)` in `T`.
pub fn act_alpha_in<T: Scalar>(g: PermutationElement, a: &[T; 3]) -> [T; 3] {
    let mut a = a.clone();
    for k in g.applied() {
        let [a1, a2, a3] = a;
        a = match k {
            Generator::P1 => [a2, a1, a3],
            Generator::P2 => [a1, -a3, -a2],
        };
    }
    a
}

pub fn act_alpha(g: PermutationElement, a: &CouplingTriple) -> CouplingTriple {
    let [a1, a2, a3] = act_alpha_in(g, &a.as_array());
    CouplingTriple { a1, a2, a3 }
}

/// `pi_g(m)` in `T`.
pub fn act_mass_in<T: Scalar>(g: PermutationElement, m: &[T; 3]) -> [T; 3] {
    let s = g.mass_permutation();
    [m[s[0]].clone(), m[s[1]].clone(), m[s[2]].clone()]
}

pub fn act_mass(g: PermutationElement, m: &MassTriple) -> MassTriple {
    let [m1, m2, m3] = act_mass_in(g, &m.as_array());
    MassTriple { m1, m2, m3 }
}

/// `psi_g(b)` in `T`, composed from the generator formulas.
pub fn act_beta_in<T: Scalar>(g: PermutationElement, b: &(T, T)) -> Result<(T, T)> {
    let mut b = b.clone();
    for k in g.applied() {
        let (b1, b2) = b;
        b = match k {
            Generator::P1 => (b2, b1),
            Generator::P2 if b2.is_zero() => return Err(Error::ChartUndefined),
            Generator::P2 => (-(b1 / b2.clone()), T::one() / b2),
        };
    }
    Ok(b)
}

/// `psi_g(b)`, computed through the couplings `(b1, b2, 1)` so that only
/// the final chart has to exist.
pub fn act_beta(g: PermutationElement, b: BetaPoint) -> Result<BetaPoint> {
    let [a1, a2, a3] = act_alpha_in(g, &[b.b1, b.b2, 1.0]);
    if a3 == 0.0 {
        return Err(Error::ChartUndefined);
    }
    Ok(BetaPoint::new(a1 / a3, a2 / a3))
}

/// `f(u; a, m)` from its coefficients.
pub fn f_value<T: Scalar>(u: &T, a: &[T; 3], m: &[T; 3]) -> T {
    Poly::new(quintic_coefficients(a, m).to_vec()).eval(u)
}

/// Both sides of `f(u; a, m) = s_g(u) f(h_g u; phi_g a, pi_g m)`, where
/// `s_g` is the product of `-u^5` for each `p1` and `-1` for each `p2`
/// along the word. `None` if the word passes through `u = 0` at a `p1`.
pub fn f_covariance_sides<T: Scalar>(
    g: PermutationElement,
    u: &T,
    a: &[T; 3],
    m: &[T; 3],
) -> Option<(T, T)> {
    f_covariance_sides_by(g, u, a, m, f_value)
}

/// As [`f_covariance_sides`] with `f` supplied by the caller, so that a
/// deliberately broken evaluator can be checked against the identity.
pub fn f_covariance_sides_by<T: Scalar, F>(
    g: PermutationElement,
    u: &T,
    a: &[T; 3],
    m: &[T; 3],
    f_value: F,
) -> Option<(T, T)>
where
    F: Fn(&T, &[T; 3], &[T; 3]) -> T,
{
    let lhs = f_value(u, a, m);
    let (mut x, mut al, mut ms, mut factor) = (u.clone(), a.clone(), m.clone(), T::one());
    for k in g.applied() {
        let single = match k {
            Generator::P1 => PermutationElement::P1,
            Generator::P2 => PermutationElement::P2,
        };
        factor = factor
            * match k {
                Generator::P1 => {
                    let x2 = x.clone() * x.clone();
                    -(x2.clone() * x2 * x.clone())
                }
                Generator::P2 => -T::one(),
            };
        x = act_u_in(single, &x)?;
        al = act_alpha_in(single, &al);
        ms = act_mass_in(single, &ms);
    }
    Some((lhs, factor * f_value(&x, &al, &ms)))
}

pub(crate) fn relative<T: Scalar>(lhs: &T, rhs: &T) -> f64 {
    let diff = (lhs.clone() - rhs.clone()).to_f64().abs();
    diff / lhs.to_f64().abs().max(1.0)
}

/// Relative residual of the covariance of `f`, normalised by
/// `max(1, |f(u; a, m)|)`. Infinite if `u` hits a pole of the action.
pub fn check_f_covariance_in<T: Scalar>(g: PermutationElement, u: &T, a: &[T; 3], m: &[T; 3]) -> f64 {
    match f_covariance_sides(g, u, a, m) {
        Some((l, r)) => relative(&l, &r),
        None => f64::INFINITY,
    }
}

pub fn check_f_covariance(g: PermutationElement, u: f64, a: &CouplingTriple, m: &MassTriple) -> f64 {
    check_f_covariance_in(g, &u, &a.as_array(), &m.as_array())
}

/// Both sides of `c(h_g u; pi_g m) = psi_g(c(u; m))`.
pub fn gamma_covariance_sides<T: Scalar>(
    g: PermutationElement,
    u: &T,
    m: &[T; 3],
) -> Option<((T, T), (T, T))> {
    let c = gamma_coords(u, m)?;
    let rhs = act_beta_in(g, &c).ok()?;
    let hu = act_u_in(g, u)?;
    let lhs = gamma_coords(&hu, &act_mass_in(g, m))?;
    Some((lhs, rhs))
}

/// Relative residual of the curve covariance, normalised by the larger of
/// 1 and the size of either side. Infinite when a side is undefined.
pub fn check_gamma_covariance_in<T: Scalar>(g: PermutationElement, u: &T, m: &[T; 3]) -> f64 {
    match gamma_covariance_sides(g, u, m) {
        Some((l, r)) => {
            let d = (l.0.clone() - r.0.clone())
                .to_f64()
                .abs()
                .max((l.1.clone() - r.1.clone()).to_f64().abs());
            let s = [&l.0, &l.1, &r.0, &r.1]
                .iter()
                .fold(1.0_f64, |s, v| s.max(v.to_f64().abs()));
            d / s
        }
        None => f64::INFINITY,
    }
}

pub fn check_gamma_covariance(g: PermutationElement, u: f64, m: &MassTriple) -> f64 {
    check_gamma_covariance_in(g, &u, &m.as_array())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn group_table() {
        for g in PermutationElement::ALL {
            assert_eq!(g.compose(P0), g);
            assert_eq!(g.compose(g.inverse()), P0);
        }
        assert_eq!(P1.compose(P1), P0);
        assert_eq!(P2.compose(P2), P0);
        assert_eq!(P1.compose(P2), P3);
        assert_eq!(P2.compose(P1), P4);
        assert_eq!(P3.compose(P1), P5);
        assert_eq!(P3.compose(P3), P4);
        let u = ProjectiveU::Finite(0.37);
        for a in PermutationElement::ALL {
            for b in PermutationElement::ALL {
                let ab = a.compose(b);
                assert_eq!(act_mass_in(ab, &[1.0, 2.0, 3.0]), act_mass_in(a, &act_mass_in(b, &[1.0, 2.0, 3.0])));
                assert_eq!(act_alpha_in(ab, &[1.0, 2.0, 3.0]), act_alpha_in(a, &act_alpha_in(b, &[1.0, 2.0, 3.0])));
                let (x, y) = (act_u(ab, u), act_u(a, act_u(b, u)));
                match (x, y) {
                    (ProjectiveU::Finite(x), ProjectiveU::Finite(y)) => assert!((x - y).abs() < 1e-14),
                    _ => assert_eq!(x, y),
                }
            }
        }
    }

    #[test]
    fn generator_samples() {
        for u in [-3.0, 0.5, 7.0] {
            assert_eq!(act_u(P2, act_u(P2, ProjectiveU::Finite(u))), ProjectiveU::Finite(u));
        }
        assert_eq!(act_u(P1, ProjectiveU::Finite(-0.5)), ProjectiveU::Finite(-2.0));
        assert_eq!(act_u(P2, ProjectiveU::Finite(0.0)), ProjectiveU::Finite(-1.0));
        assert_eq!(act_u(P1, ProjectiveU::Finite(0.0)), ProjectiveU::Infinity);
        assert_eq!(act_alpha_in(P1, &[1.0, 2.0, 3.0]), [2.0, 1.0, 3.0]);
        let b = act_beta(P2, act_beta(P2, BetaPoint::new(3.0, -2.0)).unwrap()).unwrap();
        assert_eq!(b, BetaPoint::new(3.0, -2.0));
        assert_eq!(act_beta(P2, BetaPoint::new(1.5, 0.0)), Err(Error::ChartUndefined));
    }

    #[test]
    fn collision_points_are_permuted() {
        use ProjectiveU::*;
        for g in PermutationElement::ALL {
            let mut img: Vec<String> = [Finite(-1.0), Finite(0.0), Infinity]
                .iter()
                .map(|u| format!("{:?}", act_u(g, *u)))
                .collect();
            img.sort();
            assert_eq!(img, vec!["Finite(-1.0)", "Finite(0.0)", "Infinity"]);
        }
    }

    #[test]
    fn interval_table() {
        use IntervalId::*;
        assert_eq!([I1, I2, I3].map(|i| act_interval(P1, i)), [I2, I1, I3]);
        assert_eq!([I1, I2, I3].map(|i| act_interval(P2, i)), [I3, I2, I1]);
        for g in PermutationElement::ALL {
            for (u, iv) in [(-2.5, I1), (-0.3, I2), (1.7, I3)] {
                let ProjectiveU::Finite(x) = act_u(g, ProjectiveU::Finite(u)) else {
                    panic!("finite")
                };
                assert_eq!(IntervalId::of(x), Some(act_interval(g, iv)));
            }
        }
    }

    #[test]
    fn f_covariance_exact() {
        let a = [q(1, 1), q(2, 1), q(3, 1)];
        let m = [q(1, 1), q(2, 1), q(3, 1)];
        for g in PermutationElement::ALL {
            let (l, r) = f_covariance_sides(g, &q(2, 1), &a, &m).unwrap();
            assert_eq!(l, r, "{g}");
            let (l, r) = f_covariance_sides(g, &q(3, 10), &a, &m).unwrap();
            assert_eq!(l, r, "{g}");
        }
    }

    #[test]
    fn gamma_covariance_exact() {
        let m = [q(3, 2), q(1, 3), q(5, 1)];
        for g in PermutationElement::ALL {
            let (l, r) = gamma_covariance_sides(g, &q(7, 3), &m).unwrap();
            assert_eq!(l, r, "{g}");
        }
        // Equal first two masses: swapping the coordinates maps c(u) to c(1/u).
        let one = [q(1, 1), q(1, 1), q(1, 1)];
        let (a, b) = gamma_coords(&q(1, 2), &one).unwrap();
        assert_eq!(Some((b, a)), gamma_coords(&q(2, 1), &one));
        assert_eq!(check_gamma_covariance(P1, 2.0, &MassTriple::new(1.0, 1.0, 1.0).unwrap()), 0.0);
    }

    #[test]
    fn beta_routes_agree() {
        let b = BetaPoint::new(0.7, -1.3);
        for g in PermutationElement::ALL {
            let x = act_beta(g, b).unwrap();
            let (y1, y2) = act_beta_in(g, &(0.7, -1.3)).unwrap();
            assert!((x.b1 - y1).abs() < 1e-14 && (x.b2 - y2).abs() < 1e-14);
        }
    }
}

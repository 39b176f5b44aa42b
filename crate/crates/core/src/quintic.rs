//! The reduced quintic whose real roots are the collinear central
//! configurations, and certified root isolation on the three orderings.
//!
//! With bodies on a line at `r1, r2, r3`, put `x = r2 - r3` and
//! `y = r3 - r1 = u x`. Then `f(u) = a1 f1 + a2 f2 + a3 f3` with
//!
//! ```text
//! f1 = m1 u^2 (1 + u)^2 (m2 + m2 u + m3 u)
//! f2 = -m2 (1 + u)^2 (m1 + m3 + m1 u)
//! f3 = -m3 u^2 (m2 - m1 u)
//! ```
//!
//! and `u = -1, 0, inf` are the collisions of bodies (1,2), (1,3) and (2,3).

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Endpoint, Poly, RootEnclosure, Scalar, SturmChain};
use crate::tolerances::FLOAT_GCD_REL;

/// Three positive masses.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MassTriple {
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
}

impl MassTriple {
    pub fn new(m1: f64, m2: f64, m3: f64) -> Result<Self> {
        for m in [m1, m2, m3] {
            if !(m.is_finite() && m > 0.0) {
                return Err(Error::InvalidInput(format!("mass {m} is not positive")));
            }
        }
        Ok(Self { m1, m2, m3 })
    }

    /// `(mu, mu, 1)`.
    pub fn symmetric(mu: f64) -> Result<Self> {
        Self::new(mu, mu, 1.0)
    }

    pub fn total(&self) -> f64 {
        self.m1 + self.m2 + self.m3
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.m1, self.m2, self.m3]
    }

    pub fn from_array(m: [f64; 3]) -> Result<Self> {
        Self::new(m[0], m[1], m[2])
    }
}

/// Couplings `(a1, a2, a3)` where `a_i` multiplies `1/r_jk` for the pair
/// opposite body `i`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CouplingTriple {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl CouplingTriple {
    pub fn new(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        if ![a1, a2, a3].iter().all(|a| a.is_finite()) {
            return Err(Error::InvalidInput("coupling is not finite".into()));
        }
        Ok(Self { a1, a2, a3 })
    }

    /// `(b1, b2, 1)`.
    pub fn from_beta(b1: f64, b2: f64) -> Result<Self> {
        Self::new(b1, b2, 1.0)
    }

    /// Newtonian gravity with unit constant: `a_i = m_j m_k`.
    pub fn gravitational(m: &MassTriple) -> Self {
        Self {
            a1: m.m2 * m.m3,
            a2: m.m1 * m.m3,
            a3: m.m1 * m.m2,
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.a1, self.a2, self.a3]
    }

    pub fn from_array(a: [f64; 3]) -> Result<Self> {
        Self::new(a[0], a[1], a[2])
    }

    pub fn is_zero(&self) -> bool {
        self.a1 == 0.0 && self.a2 == 0.0 && self.a3 == 0.0
    }
}

/// One of the three orderings of the bodies on the line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IntervalId {
    /// `u < -1`
    I1,
    /// `-1 < u < 0`
    I2,
    /// `u > 0`
    I3,
}

impl IntervalId {
    pub const ALL: [IntervalId; 3] = [IntervalId::I1, IntervalId::I2, IntervalId::I3];

    /// `None` at the collision points.
    pub fn of(u: f64) -> Option<Self> {
        if u < -1.0 {
            Some(Self::I1)
        } else if u > -1.0 && u < 0.0 {
            Some(Self::I2)
        } else if u > 0.0 && u.is_finite() {
            Some(Self::I3)
        } else {
            None
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    fn endpoints<T: Scalar>(self) -> (Endpoint<T>, Endpoint<T>) {
        match self {
            Self::I1 => (Endpoint::NegInf, Endpoint::Finite(T::from_i64(-1))),
            Self::I2 => (Endpoint::Finite(T::from_i64(-1)), Endpoint::Finite(T::zero())),
            Self::I3 => (Endpoint::Finite(T::zero()), Endpoint::PosInf),
        }
    }

    /// Sign of `u (1 + u)` on the interval.
    pub fn sign_of_u_one_plus_u(self) -> i32 {
        match self {
            Self::I2 => -1,
            _ => 1,
        }
    }
}

impl fmt::Display for IntervalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::I1 => "I1",
            Self::I2 => "I2",
            Self::I3 => "I3",
        };
        f.write_str(s)
    }
}

pub(crate) fn lift<T: Scalar>(v: [f64; 3]) -> [T; 3] {
    v.map(|x| T::from_f64(x).expect("finite parameter"))
}

/// `f1, f2, f3` with coefficients in `T`.
pub fn basis_polynomials_in<T: Scalar>(m: &[T; 3]) -> [Poly<T>; 3] {
    let [m1, m2, m3] = m.clone();
    let one = T::one();
    let sq = |p: &Poly<T>| p * p;
    let u = Poly::new(vec![T::zero(), one.clone()]);
    let one_plus_u = Poly::new(vec![one.clone(), one.clone()]);
    let u2 = sq(&u);
    let opu2 = sq(&one_plus_u);

    let f1 = &(&u2 * &opu2) * &Poly::new(vec![m1.clone() * m2.clone(), m1.clone() * (m2.clone() + m3.clone())]);
    let f2 = &opu2 * &Poly::new(vec![-(m2.clone() * (m1.clone() + m3.clone())), -(m2.clone() * m1.clone())]);
    let f3 = &u2 * &Poly::new(vec![-(m3.clone() * m2), m3 * m1]);
    [f1, f2, f3]
}

/// `f1, f2, f3` for the given masses.
pub fn basis_polynomials<T: Scalar>(m: &MassTriple) -> [Poly<T>; 3] {
    basis_polynomials_in(&lift::<T>(m.as_array()))
}

/// Coefficients `c0..c5` of `f` from their closed forms.
pub fn quintic_coefficients<T: Scalar>(a: &[T; 3], m: &[T; 3]) -> [T; 6] {
    let [a1, a2, a3] = a.clone();
    let [m1, m2, m3] = m.clone();
    let k = |n: i64| T::from_i64(n);
    let c5 = a1.clone() * m1.clone() * (m2.clone() + m3.clone());
    let c4 = a1.clone() * m1.clone() * (k(3) * m2.clone() + k(2) * m3.clone());
    let c3 = a1.clone() * m1.clone() * (k(3) * m2.clone() + m3.clone())
        - a2.clone() * m1.clone() * m2.clone()
        + a3.clone() * m1.clone() * m3.clone();
    let c2 = a1 * m1.clone() * m2.clone()
        - a2.clone() * m2.clone() * (k(3) * m1.clone() + m3.clone())
        - a3 * m2.clone() * m3.clone();
    let c1 = -(a2.clone() * m2.clone() * (k(3) * m1.clone() + k(2) * m3.clone()));
    let c0 = -(a2 * m2 * (m1 + m3));
    [c0, c1, c2, c3, c4, c5]
}

/// Multiplicities of `f` at the three collision points.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collisions {
    pub at_minus_one: usize,
    pub at_zero: usize,
    pub at_infinity: usize,
}

impl Collisions {
    pub fn any(&self) -> bool {
        self.at_minus_one + self.at_zero + self.at_infinity > 0
    }
}

/// The reduced quintic in `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedQuintic<T> {
    poly: Poly<T>,
    rel_tol: f64,
}

impl<T: Scalar> ReducedQuintic<T> {
    /// From couplings and masses already in `T`.
    pub fn from_parts(a: &[T; 3], m: &[T; 3]) -> Result<Self> {
        let poly = Poly::new(quintic_coefficients(a, m).to_vec());
        if poly.is_zero() {
            return Err(Error::AllZero);
        }
        Ok(Self { poly, rel_tol: FLOAT_GCD_REL })
    }

    /// From an arbitrary polynomial of degree at most five.
    pub fn from_poly(poly: Poly<T>) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::AllZero);
        }
        if poly.degree().unwrap_or(0) > 5 {
            return Err(Error::InvalidInput("degree exceeds five".into()));
        }
        Ok(Self { poly, rel_tol: FLOAT_GCD_REL })
    }

    /// Relative tolerance of floating gcds; ignored in exact mode.
    pub fn with_tolerance(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn poly(&self) -> &Poly<T> {
        &self.poly
    }

    /// Coefficient of `u^i`.
    pub fn coeff(&self, i: usize) -> T {
        self.poly.coeff(i)
    }

    /// `[c0, .., c5]` as `f64`.
    pub fn coefficients_f64(&self) -> [f64; 6] {
        std::array::from_fn(|i| self.coeff(i).to_f64())
    }

    pub fn eval(&self, u: &T) -> T {
        self.poly.eval(u)
    }

    /// Splits off the collision roots, then isolates the remaining roots of
    /// every square-free factor on each interval.
    pub fn isolate(&self) -> Isolation<T> {
        let tol = self.rel_tol;
        let scale = self.poly.max_abs();
        let cleaned = self.poly.clean(scale, tol);
        let mut collisions = Collisions {
            at_infinity: 5 - cleaned.degree().unwrap_or(0),
            ..Default::default()
        };
        let lead_zeros = cleaned.coeffs().iter().take_while(|c| c.is_zero()).count();
        collisions.at_zero = lead_zeros;
        let mut rest = Poly::new(cleaned.coeffs()[lead_zeros..].to_vec());

        let minus_one = T::from_i64(-1);
        while rest.degree().unwrap_or(0) > 0 {
            let (q, r) = rest.deflate(&minus_one);
            if !r.negligible(scale, tol) {
                break;
            }
            collisions.at_minus_one += 1;
            rest = q;
        }

        let factors = rest
            .square_free_decomposition(tol)
            .into_iter()
            .map(|(factor, multiplicity)| {
                let chain = factor.sturm_chain(tol);
                let roots = IntervalId::ALL
                    .iter()
                    .flat_map(|&iv| {
                        let (a, b) = iv.endpoints::<T>();
                        chain.isolate(&a, &b).into_iter().map(move |e| (iv, e))
                    })
                    .collect();
                IsolatedFactor { chain, multiplicity, roots }
            })
            .collect();
        Isolation { collisions, factors, rel_tol: tol }
    }

    /// All real roots away from the collision points, with multiplicity.
    pub fn isolate_real_roots(&self) -> Result<RootList> {
        let iso = self.isolate();
        if iso.collisions.at_minus_one > 0 {
            return Err(Error::DegenerateAtCollision("-1"));
        }
        if iso.collisions.at_zero > 0 {
            return Err(Error::DegenerateAtCollision("0"));
        }
        Ok(iso.root_list())
    }

    /// Simple-root counts per interval.
    pub fn count_by_interval(&self) -> Result<RootCounts> {
        let iso = self.isolate();
        if let Some(f) = iso.factors.iter().find(|f| f.multiplicity > 1 && !f.roots.is_empty()) {
            let mut e = f.roots[0].1.clone();
            e.refine_to_f64(f.poly());
            return Err(Error::OnDiscriminant(e.value_f64()));
        }
        Ok(RootCounts {
            counts: iso.counts(),
            collisions: iso.collisions,
        })
    }
}

impl ReducedQuintic<f64> {
    /// Exact twin of a floating quintic; every `f64` is a rational.
    pub fn to_exact(&self) -> ReducedQuintic<BigRational> {
        ReducedQuintic {
            poly: Poly::new(self.poly.coeffs().iter().map(|&c| crate::poly::rational(c)).collect()),
            rel_tol: self.rel_tol,
        }
    }
}

/// `f` for the given couplings and masses.
pub fn build_quintic<T: Scalar>(alpha: &CouplingTriple, m: &MassTriple) -> Result<ReducedQuintic<T>> {
    ReducedQuintic::from_parts(&lift::<T>(alpha.as_array()), &lift::<T>(m.as_array()))
}

/// Certified roots of `f` in exact arithmetic.
pub fn isolate_real_roots(alpha: &CouplingTriple, m: &MassTriple) -> Result<RootList> {
    build_quintic::<BigRational>(alpha, m)?.isolate_real_roots()
}

/// Simple-root counts per interval in exact arithmetic.
pub fn count_roots_by_interval(alpha: &CouplingTriple, m: &MassTriple) -> Result<RootCounts> {
    build_quintic::<BigRational>(alpha, m)?.count_by_interval()
}

/// Square-free factor with its enclosures.
#[derive(Clone, Debug)]
pub struct IsolatedFactor<T> {
    pub chain: SturmChain<T>,
    pub multiplicity: usize,
    pub roots: Vec<(IntervalId, RootEnclosure<T>)>,
}

impl<T: Scalar> IsolatedFactor<T> {
    pub fn poly(&self) -> &Poly<T> {
        self.chain.poly()
    }
}

/// Result of [`ReducedQuintic::isolate`].
#[derive(Clone, Debug)]
pub struct Isolation<T> {
    pub collisions: Collisions,
    pub factors: Vec<IsolatedFactor<T>>,
    rel_tol: f64,
}

impl<T: Scalar> Isolation<T> {
    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    /// Roots of multiplicity one.
    pub fn simple_roots(&self) -> impl Iterator<Item = (&IsolatedFactor<T>, IntervalId, &RootEnclosure<T>)> {
        self.factors
            .iter()
            .filter(|f| f.multiplicity == 1)
            .flat_map(|f| f.roots.iter().map(move |(iv, e)| (f, *iv, e)))
    }

    /// Roots of multiplicity at least two.
    pub fn multiple_roots(&self) -> impl Iterator<Item = (IntervalId, &RootEnclosure<T>)> {
        self.factors
            .iter()
            .filter(|f| f.multiplicity > 1)
            .flat_map(|f| f.roots.iter().map(|(iv, e)| (*iv, e)))
    }

    /// Simple-root counts on `I1, I2, I3`.
    pub fn counts(&self) -> [usize; 3] {
        let mut n = [0; 3];
        for (_, iv, _) in self.simple_roots() {
            n[iv.index()] += 1;
        }
        n
    }

    pub fn root_list(&self) -> RootList {
        let mut roots: Vec<Root> = self
            .factors
            .iter()
            .flat_map(|f| {
                f.roots.iter().map(move |(iv, e)| {
                    let mut e = e.clone();
                    e.refine_to_f64(f.poly());
                    let (lo, hi) = e.bounds_f64();
                    Root {
                        value: e.value_f64(),
                        lo,
                        hi,
                        multiplicity: f.multiplicity,
                        interval: *iv,
                    }
                })
            })
            .collect();
        roots.sort_by(|a, b| a.value.total_cmp(&b.value));
        RootList { roots, collisions: self.collisions }
    }
}

/// A certified real root.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub value: f64,
    /// Outward-rounded enclosure.
    pub lo: f64,
    pub hi: f64,
    pub multiplicity: usize,
    pub interval: IntervalId,
}

/// Real roots of `f`, strictly increasing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootList {
    pub roots: Vec<Root>,
    pub collisions: Collisions,
}

impl RootList {
    /// Widest enclosure over all roots.
    pub fn max_width(&self) -> f64 {
        self.roots.iter().fold(0.0, |w, r| w.max(r.hi - r.lo))
    }

    pub fn in_interval(&self, iv: IntervalId) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(move |r| r.interval == iv)
    }

    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

/// Output of [`count_roots_by_interval`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootCounts {
    /// `(n1, n2, n3)`.
    pub counts: [usize; 3],
    pub collisions: Collisions,
}

//! Dense univariate polynomials and certified real-root isolation.
//!
//! Everything is generic over [`Scalar`], which is implemented for `f64` and
//! for exact [`BigRational`]. In exact mode gcds, square-free parts and Sturm
//! counts are exact. In floating mode a remainder coefficient whose magnitude
//! is at most `rel_tol` times the largest coefficient of the dividend is
//! treated as zero.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Ordered field used for polynomial coefficients and root enclosures.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic is exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// `None` for non-finite input.
    fn from_f64(v: f64) -> Option<Self>;
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;
    /// -1, 0 or 1.
    fn sign(&self) -> i32;
    fn halve(&self) -> Self;

    fn magnitude(&self) -> Self {
        if self.sign() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Whether `self` counts as zero next to coefficients of size `scale`.
    fn negligible(&self, scale: f64, rel_tol: f64) -> bool;

    /// Sign of the polynomial with ascending `coeffs` at `x`.
    fn poly_sign(coeffs: &[Self], x: &Self) -> i32 {
        horner(coeffs, x).sign()
    }

    /// Multiply by a positive constant chosen to keep coefficients tame.
    /// Signs of the polynomial are unchanged.
    fn normalize_positive(coeffs: Vec<Self>) -> Vec<Self>;
}

fn horner<T: Scalar>(coeffs: &[T], x: &T) -> T {
    let mut acc = T::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x.clone() + c.clone();
    }
    acc
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_f64(v: f64) -> Option<Self> {
        v.is_finite().then_some(v)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn sign(&self) -> i32 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }
    fn halve(&self) -> Self {
        self * 0.5
    }
    fn negligible(&self, scale: f64, rel_tol: f64) -> bool {
        self.abs() <= rel_tol * scale
    }
    fn normalize_positive(coeffs: Vec<Self>) -> Vec<Self> {
        let m = coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        if m > 0.0 && m.is_finite() {
            coeffs.into_iter().map(|c| c / m).collect()
        } else {
            coeffs
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_f64(v: f64) -> Option<Self> {
        BigRational::from_float(v)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sign(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn halve(&self) -> Self {
        self / BigInt::from(2)
    }
    fn negligible(&self, _scale: f64, _rel_tol: f64) -> bool {
        Zero::is_zero(self)
    }

    fn poly_sign(coeffs: &[Self], x: &Self) -> i32 {
        if !coeffs.iter().all(|c| c.denom().is_one()) {
            return horner(coeffs, x).sign();
        }
        // Integer coefficients: evaluate b^n p(a/b) without any gcd work.
        let Some((lead, rest)) = coeffs.split_last() else {
            return 0;
        };
        let (a, b) = (x.numer(), x.denom());
        let mut acc = lead.numer().clone();
        let mut bp = BigInt::one();
        for c in rest.iter().rev() {
            bp *= b;
            acc = acc * a + c.numer() * &bp;
        }
        if acc.is_positive() {
            1
        } else if acc.is_negative() {
            -1
        } else {
            0
        }
    }

    fn normalize_positive(coeffs: Vec<Self>) -> Vec<Self> {
        if coeffs.iter().all(|c| Zero::is_zero(c)) {
            return coeffs;
        }
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
        let content = ints
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c));
        ints.into_iter()
            .map(|c| BigRational::from_integer(c / &content))
            .collect()
    }
}

/// Polynomial with ascending coefficients and no trailing zero coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// Ascending coefficients.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `u^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        horner(&self.coeffs, x)
    }

    pub fn sign_at(&self, x: &T) -> i32 {
        T::poly_sign(&self.coeffs, x)
    }

    /// Sign as `x -> +inf` (`positive`) or `x -> -inf`.
    pub fn sign_at_infinity(&self, positive: bool) -> i32 {
        match (self.leading(), self.degree()) {
            (Some(l), Some(d)) => {
                if !positive && d % 2 == 1 {
                    -l.sign()
                } else {
                    l.sign()
                }
            }
            _ => 0,
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.to_f64().abs()))
    }

    /// Zero out coefficients negligible next to `scale`.
    pub fn clean(&self, scale: f64, rel_tol: f64) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|c| {
                    if c.negligible(scale, rel_tol) {
                        T::zero()
                    } else {
                        c.clone()
                    }
                })
                .collect(),
        )
    }

    /// Same polynomial times a positive constant.
    pub fn normalized(&self) -> Self {
        Self::new(T::normalize_positive(self.coeffs.clone()))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let l = l.clone();
                Self::new(self.coeffs.iter().map(|c| c.clone() / l.clone()).collect())
            }
            None => Self::zero(),
        }
    }

    /// Quotient and remainder. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self, rel_tol: f64) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let scale = self.max_abs();
        let lead = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        let Some(n) = self.degree().filter(|&n| n >= dd) else {
            return (Self::zero(), self.clone());
        };
        let mut q = vec![T::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let t = r[k + dd].clone() / lead.clone();
            if !t.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].clone() - t.clone() * dc.clone();
                }
            }
            r[k + dd] = T::zero();
            q[k] = t;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r).clean(scale, rel_tol))
    }

    /// Quotient of a division known to be exact.
    pub fn div_exact(&self, d: &Self, rel_tol: f64) -> Self {
        self.div_rem(d, rel_tol).0
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(&self, other: &Self, rel_tol: f64) -> Self {
        let (mut a, mut b) = (self.normalized(), other.normalized());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b, rel_tol);
            a = b;
            b = r.normalized();
        }
        a.monic()
    }

    /// Yun's algorithm: `(factor, multiplicity)` with pairwise coprime
    /// square-free factors of positive degree.
    pub fn square_free_decomposition(&self, rel_tol: f64) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let fp = self.derivative();
        let a0 = self.gcd(&fp, rel_tol);
        let mut b = self.div_exact(&a0, rel_tol);
        let mut c = fp.div_exact(&a0, rel_tol);
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d, rel_tol);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.normalized(), i));
            }
            b = b.div_exact(&a, rel_tol);
            c = d.div_exact(&a, rel_tol);
            d = &c - &b.derivative();
            i += 1;
            if i > self.coeffs.len() {
                break;
            }
        }
        out
    }

    /// Product of the square-free factors.
    pub fn square_free_part(&self, rel_tol: f64) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative(), rel_tol);
        self.div_exact(&g, rel_tol).normalized()
    }

    /// `u^n p(1/u)`; `n` must be at least the degree.
    pub fn reversed(&self, n: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(n + 1, T::zero());
        c.reverse();
        Self::new(c)
    }

    /// Coefficients of `p(a + t)` in `t`.
    pub fn shift(&self, a: &T) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                c[j] = c[j].clone() + a.clone() * c[j + 1].clone();
            }
        }
        Self::new(c)
    }

    /// Divide by `(u - r)` once; returns quotient and remainder `p(r)`.
    pub fn deflate(&self, r: &T) -> (Self, T) {
        let Some(n) = self.degree() else {
            return (Self::zero(), T::zero());
        };
        let mut q = vec![T::zero(); n];
        let mut acc = T::zero();
        for k in (0..=n).rev() {
            acc = acc * r.clone() + self.coeffs[k].clone();
            if k > 0 {
                q[k - 1] = acc.clone();
            }
        }
        (Self::new(q), acc)
    }

    /// Power of two strictly larger than the modulus of every root.
    pub fn root_bound(&self) -> T {
        let mut bound = T::one();
        if let Some(l) = self.leading() {
            let l = l.magnitude();
            for c in &self.coeffs[..self.coeffs.len() - 1] {
                let r = c.magnitude() / l.clone();
                if r > bound {
                    bound = r;
                }
            }
        }
        let limit = bound + T::one();
        let mut p = T::one();
        while p <= limit {
            p = p.clone() + p;
        }
        p
    }

    pub fn sturm_chain(&self, rel_tol: f64) -> SturmChain<T> {
        let mut seq = vec![self.normalized()];
        let mut next = self.derivative().normalized();
        while !next.is_zero() {
            let prev = seq.last().expect("nonempty");
            let (_, r) = prev.div_rem(&next, rel_tol);
            seq.push(next);
            next = (-&r).normalized();
        }
        SturmChain { seq }
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{:?}", c)?,
                1 => write!(f, "{:?}*u", c)?,
                _ => write!(f, "{:?}*u^{}", c, i)?,
            }
        }
        Ok(())
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, o: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, o: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, o: &Poly<T>) -> Poly<T> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(c)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

/// A point of the extended real line used as an isolation endpoint.
#[derive(Clone, Debug, PartialEq)]
pub enum Endpoint<T> {
    NegInf,
    Finite(T),
    PosInf,
}

/// Sturm sequence of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain<T> {
    seq: Vec<Poly<T>>,
}

impl<T: Scalar> SturmChain<T> {
    pub fn poly(&self) -> &Poly<T> {
        &self.seq[0]
    }

    fn variations<I: Iterator<Item = i32>>(signs: I) -> usize {
        let mut last = 0;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &Endpoint<T>) -> usize {
        match x {
            Endpoint::Finite(x) => Self::variations(self.seq.iter().map(|p| p.sign_at(x))),
            Endpoint::NegInf => Self::variations(self.seq.iter().map(|p| p.sign_at_infinity(false))),
            Endpoint::PosInf => Self::variations(self.seq.iter().map(|p| p.sign_at_infinity(true))),
        }
    }

    /// Number of distinct real roots in the open interval `(a, b)`.
    pub fn count_open(&self, a: &Endpoint<T>, b: &Endpoint<T>) -> usize {
        let va = self.variations_at(a);
        let vb = self.variations_at(b);
        let at_b = matches!(b, Endpoint::Finite(x) if self.poly().sign_at(x) == 0);
        (va - vb).saturating_sub(usize::from(at_b))
    }

    fn count_finite(&self, a: &T, b: &T) -> usize {
        self.count_open(&Endpoint::Finite(a.clone()), &Endpoint::Finite(b.clone()))
    }

    /// Disjoint enclosures of every root in `(a, b)`, ascending.
    pub fn isolate(&self, a: &Endpoint<T>, b: &Endpoint<T>) -> Vec<RootEnclosure<T>> {
        let p = self.poly();
        if p.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let bound = p.root_bound();
        let lo = match a {
            Endpoint::NegInf => -bound.clone(),
            Endpoint::Finite(x) => x.clone(),
            Endpoint::PosInf => return Vec::new(),
        };
        let hi = match b {
            Endpoint::PosInf => bound,
            Endpoint::Finite(x) => x.clone(),
            Endpoint::NegInf => return Vec::new(),
        };
        if lo >= hi {
            return Vec::new();
        }
        let lo = self.nudge(lo, &hi, true);
        let hi = self.nudge(hi, &lo, false);

        let mut out = Vec::new();
        let mut stack = vec![(lo, hi)];
        while let Some((a, b)) = stack.pop() {
            let k = self.count_finite(&a, &b);
            if k == 0 {
                continue;
            }
            if k == 1 {
                out.push(RootEnclosure { lo: a, hi: b });
                continue;
            }
            let mid = (a.clone() + b.clone()).halve();
            if mid <= a || mid >= b {
                // Floating resolution exhausted: report the cluster as is.
                out.push(RootEnclosure { lo: a, hi: b });
                continue;
            }
            if p.sign_at(&mid) == 0 {
                let (l, r) = self.split_around(&a, &mid, &b);
                out.push(RootEnclosure { lo: mid.clone(), hi: mid });
                stack.push((r, b));
                stack.push((a, l));
            } else {
                stack.push((mid.clone(), b));
                stack.push((a, mid));
            }
        }
        out.sort_by(|x, y| x.lo.partial_cmp(&y.lo).unwrap_or(Ordering::Equal));
        out
    }

    /// Move a root endpoint inward until it is not a root and no root lies
    /// between the old and new position.
    fn nudge(&self, x: T, towards: &T, up: bool) -> T {
        let p = self.poly();
        if p.sign_at(&x) != 0 {
            return x;
        }
        let mut step = (towards.clone() - x.clone()).magnitude().halve();
        for _ in 0..4096 {
            let y = if up {
                x.clone() + step.clone()
            } else {
                x.clone() - step.clone()
            };
            let (l, r) = if up { (&x, &y) } else { (&y, &x) };
            if p.sign_at(&y) != 0 && self.count_finite(l, r) == 0 {
                return y;
            }
            step = step.halve();
        }
        x
    }

    /// Points `l < m < r` inside `(a, b)` with `m` the only root in `[l, r]`.
    fn split_around(&self, a: &T, m: &T, b: &T) -> (T, T) {
        let p = self.poly();
        let (left, right) = (m.clone() - a.clone(), b.clone() - m.clone());
        let mut d = if left < right { left } else { right }.halve();
        for _ in 0..4096 {
            let l = m.clone() - d.clone();
            let r = m.clone() + d.clone();
            if p.sign_at(&l) != 0
                && p.sign_at(&r) != 0
                && self.count_finite(&l, &r) == 1
            {
                return (l, r);
            }
            d = d.halve();
        }
        (m.clone(), m.clone())
    }
}

/// Interval holding exactly one root of a square-free polynomial.
///
/// Either `lo == hi` and the root is exact, or the root lies in the open
/// interval `(lo, hi)` and neither endpoint is a root.
#[derive(Clone, Debug, PartialEq)]
pub struct RootEnclosure<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> RootEnclosure<T> {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> T {
        (self.lo.clone() + self.hi.clone()).halve()
    }

    /// Outward-rounded `f64` bounds.
    pub fn bounds_f64(&self) -> (f64, f64) {
        let mut lo = self.lo.to_f64();
        let mut hi = self.hi.to_f64();
        if T::from_f64(lo).is_some_and(|l| l > self.lo) {
            lo = lo.next_down();
        }
        if T::from_f64(hi).is_some_and(|h| h < self.hi) {
            hi = hi.next_up();
        }
        (lo, hi)
    }

    /// One bisection step against the square-free `p`.
    pub fn bisect(&mut self, p: &Poly<T>) {
        if self.is_exact() {
            return;
        }
        let mid = self.midpoint();
        if mid <= self.lo || mid >= self.hi {
            return;
        }
        let sm = p.sign_at(&mid);
        if sm == 0 {
            self.lo = mid.clone();
            self.hi = mid;
        } else if sm == p.sign_at(&self.lo) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Bisect until the outward `f64` bounds are at most two ulps apart.
    pub fn refine_to_f64(&mut self, p: &Poly<T>) {
        for _ in 0..4096 {
            let (lo, hi) = self.bounds_f64();
            if self.is_exact() || hi <= lo.next_up().next_up() {
                return;
            }
            let before = self.clone();
            self.bisect(p);
            if *self == before {
                return;
            }
        }
    }

    /// Best `f64` estimate of the root.
    pub fn value_f64(&self) -> f64 {
        self.midpoint().to_f64()
    }

    /// Sign of `q` at the root of the square-free `p` inside this enclosure.
    pub fn sign_of(&self, p: &Poly<T>, q: &Poly<T>, rel_tol: f64) -> i32 {
        if q.is_zero() {
            return 0;
        }
        if self.is_exact() {
            return q.sign_at(&self.lo);
        }
        let g = p.gcd(q, rel_tol);
        if g.degree().unwrap_or(0) > 0 {
            let gc = g.sturm_chain(rel_tol);
            if gc.count_finite(&self.lo, &self.hi) > 0 {
                return 0;
            }
        }
        let qc = q.square_free_part(rel_tol).sturm_chain(rel_tol);
        let mut enc = self.clone();
        for _ in 0..4096 {
            if enc.is_exact() {
                return q.sign_at(&enc.lo);
            }
            let s = q.sign_at(&enc.lo);
            if s != 0 && q.sign_at(&enc.hi) == s && qc.count_finite(&enc.lo, &enc.hi) == 0 {
                return s;
            }
            let before = enc.clone();
            enc.bisect(p);
            if enc == before {
                break;
            }
        }
        q.sign_at(&enc.midpoint())
    }
}

/// Exact rational from an `f64`; panics on non-finite input.
pub fn rational(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite value")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n)
    }

    fn qpoly(c: &[i64]) -> Poly<BigRational> {
        Poly::new(c.iter().map(|&v| q(v)).collect())
    }

    #[test]
    fn trims_and_degree() {
        let p = qpoly(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(qpoly(&[0, 0]).is_zero());
    }

    #[test]
    fn division_recovers_dividend() {
        let a = qpoly(&[-2, 0, 3, 1, 5]);
        let b = qpoly(&[1, -1, 2]);
        let (qt, r) = a.div_rem(&b, 0.0);
        assert_eq!(&(&qt * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn yun_finds_multiplicities() {
        // (u - 2)^2 (u + 3) (u^2 + 1)
        let l = qpoly(&[-2, 1]);
        let p = &(&(&l * &l) * &qpoly(&[3, 1])) * &qpoly(&[1, 0, 1]);
        let sf = p.square_free_decomposition(0.0);
        assert_eq!(sf.len(), 2);
        assert_eq!(sf[0].1, 1);
        assert_eq!(sf[0].0.degree(), Some(3));
        assert_eq!(sf[1].1, 2);
        assert_eq!(sf[1].0.monic(), l);
    }

    #[test]
    fn sturm_counts_and_isolates() {
        // (u - 1)(u - 2)(u + 5)
        let p = &(&qpoly(&[-1, 1]) * &qpoly(&[-2, 1])) * &qpoly(&[5, 1]);
        let chain = p.sturm_chain(0.0);
        assert_eq!(chain.count_open(&Endpoint::NegInf, &Endpoint::PosInf), 3);
        assert_eq!(
            chain.count_open(&Endpoint::Finite(q(1)), &Endpoint::Finite(q(2))),
            0
        );
        let roots = chain.isolate(&Endpoint::NegInf, &Endpoint::PosInf);
        let vals: Vec<f64> = roots
            .into_iter()
            .map(|mut r| {
                r.refine_to_f64(chain.poly());
                r.value_f64()
            })
            .collect();
        assert_eq!(vals, vec![-5.0, 1.0, 2.0]);
    }

    #[test]
    fn isolation_skips_root_endpoints() {
        let p = &qpoly(&[0, 1]) * &qpoly(&[-1, 1]);
        let chain = p.sturm_chain(0.0);
        let r = chain.isolate(&Endpoint::Finite(q(0)), &Endpoint::Finite(q(1)));
        assert!(r.is_empty());
    }

    #[test]
    fn close_irrational_roots_are_separated() {
        // u^2 - 2 and u^2 - 2.0001 multiplied: four roots, two pairs very close.
        let a = qpoly(&[-2, 0, 1]);
        let b = Poly::new(vec![-rational(2.0001), q(0), q(1)]);
        let p = &a * &b;
        let chain = p.sturm_chain(0.0);
        let roots = chain.isolate(&Endpoint::NegInf, &Endpoint::PosInf);
        assert_eq!(roots.len(), 4);
        for w in roots.windows(2) {
            assert!(w[0].hi <= w[1].lo);
        }
    }

    #[test]
    fn sign_at_root_of_other_polynomial() {
        // p has root sqrt(2); q = u - 1.5 is negative there, u^2 - 2 is zero.
        let p = qpoly(&[-2, 0, 1]);
        let chain = p.sturm_chain(0.0);
        let roots = chain.isolate(&Endpoint::Finite(q(0)), &Endpoint::PosInf);
        assert_eq!(roots.len(), 1);
        let below = Poly::new(vec![-rational(1.5), q(1)]);
        assert_eq!(roots[0].sign_of(chain.poly(), &below, 0.0), -1);
        assert_eq!(roots[0].sign_of(chain.poly(), &qpoly(&[-4, 0, 2]), 0.0), 0);
        let close = Poly::new(vec![-rational(1.4142135), q(1)]);
        assert_eq!(roots[0].sign_of(chain.poly(), &close, 0.0), 1);
    }

    #[test]
    fn float_mode_agrees_on_simple_case() {
        let p = Poly::new(vec![-6.0, 11.0, -6.0, 1.0]);
        let chain = p.sturm_chain(1e-10);
        let roots = chain.isolate(&Endpoint::NegInf, &Endpoint::PosInf);
        assert_eq!(roots.len(), 3);
        let sf = Poly::new(vec![4.0, -4.0, 1.0]).square_free_decomposition(1e-10);
        assert_eq!(sf.len(), 1);
        assert_eq!(sf[0].1, 2);
    }

    #[test]
    fn shift_and_reverse() {
        let p = qpoly(&[1, 2, 3]);
        // p(1 + t) = 6 + 8t + 3t^2
        assert_eq!(p.shift(&q(1)), qpoly(&[6, 8, 3]));
        assert_eq!(p.reversed(4), qpoly(&[0, 0, 3, 2, 1]));
        let (d, r) = p.deflate(&q(-1));
        assert_eq!(r, q(2));
        assert_eq!(&(&d * &qpoly(&[1, 1])) + &Poly::constant(r), p);
    }

    #[test]
    fn integer_sign_path_matches_rational_eval() {
        let p = qpoly(&[7, -3, 0, 2]);
        for x in [rational(0.37), rational(-2.5), q(3), rational(1e-9)] {
            assert_eq!(p.sign_at(&x), p.eval(&x).sign());
        }
    }
}

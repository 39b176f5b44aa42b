use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{Poly, Scalar};
use crate::quintic::{MassTriple, ReducedQuintic};

use super::BetaPoint;

/// One of the thirteen regions, numbered as in the region figure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Region(u8);

/// Root counts `(n1, n2, n3)` of regions 1 to 13.
const TRIPLES: [[usize; 3]; 13] = [
    [0, 0, 1],
    [2, 0, 1],
    [1, 0, 0],
    [1, 2, 0],
    [1, 3, 1],
    [1, 1, 1],
    [3, 1, 1],
    [2, 1, 0],
    [0, 1, 0],
    [0, 2, 1],
    [0, 1, 2],
    [1, 0, 2],
    [1, 1, 3],
];

/// Row numbers used by the table of potential signs, which numbers some
/// regions differently. Keyed by region id; zero where the table has no row.
const SIGN_TABLE_ROWS: [u8; 13] = [1, 10, 9, 0, 0, 6, 0, 0, 3, 2, 12, 11, 13];

impl Region {
    pub fn new(id: u8) -> Option<Self> {
        (1..=13).contains(&id).then_some(Self(id))
    }

    pub fn all() -> impl Iterator<Item = Region> {
        (1..=13).map(Region)
    }

    pub fn from_triple(t: [usize; 3]) -> Option<Self> {
        TRIPLES
            .iter()
            .position(|x| *x == t)
            .map(|i| Region(i as u8 + 1))
    }

    pub fn id(self) -> u8 {
        self.0
    }

    pub fn triple(self) -> [usize; 3] {
        TRIPLES[self.0 as usize - 1]
    }

    /// Row number of this region in the table of potential signs.
    pub fn sign_table_row(self) -> Option<u8> {
        match SIGN_TABLE_ROWS[self.0 as usize - 1] {
            0 => None,
            r => Some(r),
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Classification outcome of one parameter point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Deserialize)]
pub enum RegionLabel {
    Region(Region),
    /// On the discriminant set or a coordinate axis.
    Boundary,
    /// Simple-root counts outside the thirteen known triples.
    Unlisted,
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionLabel::Region(r) => write!(f, "{r}"),
            RegionLabel::Boundary => f.write_str("B"),
            RegionLabel::Unlisted => f.write_str("U"),
        }
    }
}

impl Serialize for RegionLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RegionLabel::Region(r) => s.serialize_u8(r.id()),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

/// Region, root counts and potential signs at one point of the plane.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionReport {
    pub beta: BetaPoint,
    pub label: RegionLabel,
    /// `None` on the boundary.
    pub triple: Option<[usize; 3]>,
    /// Sign of the reduced potential at each root, per interval, ascending in `u`.
    pub signs: [Vec<i8>; 3],
    /// Number of roots with negative reduced potential, per interval.
    pub neg_counts: [usize; 3],
    /// Why the point is on the boundary.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl RegionReport {
    fn boundary(beta: BetaPoint, reason: String) -> Self {
        Self {
            beta,
            label: RegionLabel::Boundary,
            triple: None,
            signs: Default::default(),
            neg_counts: [0; 3],
            reason: Some(reason),
        }
    }

    pub fn region(&self) -> Option<Region> {
        match self.label {
            RegionLabel::Region(r) => Some(r),
            _ => None,
        }
    }

    /// Signs written as `(+,-,--)`, one group per interval.
    pub fn sign_pattern(&self) -> String {
        let groups: Vec<String> = self
            .signs
            .iter()
            .map(|g| {
                g.iter()
                    .map(|s| match s {
                        1 => '+',
                        -1 => '-',
                        _ => '0',
                    })
                    .collect()
            })
            .collect();
        format!("({})", groups.join(","))
    }
}

/// Numerator `b1 u^2 + (1 + b1 + b2) u + b2` of the reduced potential, so
/// that `U = -N / (u (1 + u))`.
pub fn reduced_potential_numerator<T: Scalar>(b1: &T, b2: &T) -> Poly<T> {
    Poly::new(vec![
        b2.clone(),
        T::one() + b1.clone() + b2.clone(),
        b1.clone(),
    ])
}

/// `U(u) = -(b1 u^2 + (1 + b1 + b2) u + b2) / (u (1 + u))`.
pub fn reduced_potential(u: f64, beta: BetaPoint) -> Result<f64> {
    if u == 0.0 || u == -1.0 {
        return Err(Error::CollisionPoint(u));
    }
    let n = reduced_potential_numerator(&beta.b1, &beta.b2).eval(&u);
    Ok(-n / (u * (1.0 + u)))
}

/// `(b1 - b2)^2 + 2 (b1 + b2) + 1`, the discriminant of the numerator of
/// the reduced potential.
pub fn zero_potential_parabola(beta: BetaPoint) -> f64 {
    let d = beta.b1 - beta.b2;
    d * d + 2.0 * (beta.b1 + beta.b2) + 1.0
}

/// Classify in arithmetic `T`; boundary points come back as a report with
/// label [`RegionLabel::Boundary`].
pub fn classify_in<T: Scalar>(beta: BetaPoint, m: &MassTriple) -> RegionReport {
    let lift = |x: f64| T::from_f64(x).expect("finite parameter");
    classify_point(beta, lift(beta.b1), lift(beta.b2), &m.as_array().map(lift))
}

/// Classify the point `(b1, b2)` given in `T`; `beta` is its `f64` rounding
/// and is only used for reporting.
pub fn classify_point<T: Scalar>(beta: BetaPoint, b1: T, b2: T, mass: &[T; 3]) -> RegionReport {
    let q = match ReducedQuintic::from_parts(&[b1.clone(), b2.clone(), T::one()], mass) {
        Ok(q) => q,
        Err(e) => return RegionReport::boundary(beta, e.to_string()),
    };
    let iso = q.isolate();
    let c = iso.collisions;
    if c.any() {
        let at = [("-1", c.at_minus_one), ("0", c.at_zero), ("inf", c.at_infinity)]
            .iter()
            .filter(|(_, k)| *k > 0)
            .map(|(p, _)| *p)
            .collect::<Vec<_>>()
            .join(", ");
        return RegionReport::boundary(beta, format!("root at collision u = {at}"));
    }
    if iso.multiple_roots().next().is_some() {
        return RegionReport::boundary(beta, "double root".into());
    }
    let numerator = reduced_potential_numerator(&b1, &b2);
    let mut signs: [Vec<(T, i8)>; 3] = Default::default();
    for (factor, iv, e) in iso.simple_roots() {
        let sn = e.sign_of(factor.poly(), &numerator, iso.rel_tol());
        let s = -sn * iv.sign_of_u_one_plus_u();
        signs[iv.index()].push((e.lo.clone(), s as i8));
    }
    let signs = signs.map(|mut v| {
        v.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
        v.into_iter().map(|(_, s)| s).collect::<Vec<i8>>()
    });
    let triple = [signs[0].len(), signs[1].len(), signs[2].len()];
    let neg_counts = std::array::from_fn(|i| signs[i].iter().filter(|&&s| s < 0).count());
    let label = match Region::from_triple(triple) {
        Some(r) => RegionLabel::Region(r),
        None => RegionLabel::Unlisted,
    };
    RegionReport {
        beta,
        label,
        triple: Some(triple),
        signs,
        neg_counts,
        reason: None,
    }
}

/// Classify in exact arithmetic; boundary points are reported, not errors.
pub fn classify_cell(beta: BetaPoint, m: &MassTriple) -> RegionReport {
    classify_in::<BigRational>(beta, m)
}

/// Region of a point off the boundary, in exact arithmetic.
pub fn classify(beta: BetaPoint, m: &MassTriple) -> Result<RegionReport> {
    if !(beta.b1.is_finite() && beta.b2.is_finite()) {
        return Err(Error::InvalidInput("beta must be finite".into()));
    }
    let r = classify_cell(beta, m);
    match r.label {
        RegionLabel::Boundary => Err(Error::Boundary(r.reason.unwrap_or_default())),
        _ => Ok(r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones() -> MassTriple {
        MassTriple::new(1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn triples_are_distinct() {
        for a in Region::all() {
            for b in Region::all() {
                assert_eq!(a == b, a.triple() == b.triple());
            }
            assert_eq!(Region::from_triple(a.triple()), Some(a));
        }
    }

    #[test]
    fn anchor_region() {
        let r = classify(BetaPoint::new(1.0, 1.0), &ones()).unwrap();
        assert_eq!(r.region().map(Region::id), Some(1));
        assert_eq!(r.sign_pattern(), "(,,-)");
    }

    #[test]
    fn axis_is_boundary() {
        assert!(matches!(
            classify(BetaPoint::new(2.0, 0.0), &ones()),
            Err(Error::Boundary(_))
        ));
        assert!(matches!(
            classify(BetaPoint::new(0.0, 2.0), &ones()),
            Err(Error::Boundary(_))
        ));
    }

    #[test]
    fn region_six_both_sides_of_parabola() {
        let inside = classify(BetaPoint::new(-5.0, -5.0), &ones()).unwrap();
        assert_eq!(inside.triple, Some([1, 1, 1]));
        assert_eq!(inside.sign_pattern(), "(+,-,+)");
        let outside = classify(BetaPoint::new(-0.3, -0.1), &ones()).unwrap();
        assert_eq!(outside.triple, Some([1, 1, 1]));
        assert_eq!(outside.sign_pattern(), "(+,-,-)");
    }

    #[test]
    fn potential_values() {
        assert_eq!(reduced_potential(1.0, BetaPoint::new(1.0, 1.0)).unwrap(), -2.5);
        assert!(reduced_potential(0.0, BetaPoint::new(1.0, 1.0)).is_err());
        assert_eq!(zero_potential_parabola(BetaPoint::new(0.0, 0.0)), 1.0);
        assert_eq!(zero_potential_parabola(BetaPoint::new(-0.25, -0.25)), 0.0);
    }

    #[test]
    fn float_and_exact_agree_off_boundary() {
        for (b1, b2) in [(1.0, 1.0), (-5.0, -5.0), (0.3, 20.7), (-60.0, -1.5)] {
            let e = classify_in::<BigRational>(BetaPoint::new(b1, b2), &ones());
            let f = classify_in::<f64>(BetaPoint::new(b1, b2), &ones());
            assert_eq!(e.label, f.label);
            assert_eq!(e.signs, f.signs);
        }
    }
}

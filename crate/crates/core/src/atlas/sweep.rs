use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quintic::MassTriple;

use super::region::{classify_point, RegionReport};
use super::BetaPoint;

/// Evenly spaced samples `min, .., max` along one axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, n: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || min > max {
            return Err(Error::InvalidInput(format!("bad axis range {min}:{max}")));
        }
        Ok(Self { min, max, n })
    }

    /// Sample `i` as an exact rational.
    pub fn exact(&self, i: usize) -> BigRational {
        let lo = BigRational::from_float(self.min).expect("finite");
        if self.n <= 1 {
            return lo;
        }
        let hi = BigRational::from_float(self.max).expect("finite");
        let t = BigRational::new(i.into(), (self.n - 1).into());
        lo.clone() + (hi - lo) * t
    }

    /// Sample `i`, computed exactly and rounded once.
    pub fn value(&self, i: usize) -> f64 {
        self.exact(i).to_f64().expect("finite")
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.value(i)).collect()
    }
}

/// Rectangular grid over the `(beta1, beta2)` plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub b1: Axis,
    pub b2: Axis,
}

impl GridSpec {
    pub fn len(&self) -> usize {
        self.b1.n * self.b2.n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Points in row-major order: `beta2` ascending in the outer loop,
    /// `beta1` ascending in the inner one.
    pub fn points(&self) -> Vec<BetaPoint> {
        let xs = self.b1.values();
        self.b2
            .values()
            .into_iter()
            .flat_map(|y| xs.iter().map(move |&x| BetaPoint::new(x, y)))
            .collect()
    }

    /// Grid index `k` in row-major order.
    fn cell(&self, k: usize, m: &[BigRational; 3]) -> RegionReport {
        let (i, j) = (k % self.b1.n, k / self.b1.n);
        let (x, y) = (self.b1.exact(i), self.b2.exact(j));
        let beta = BetaPoint::new(x.to_f64().expect("finite"), y.to_f64().expect("finite"));
        classify_point(beta, x, y, m)
    }
}

fn exact_masses(m: &MassTriple) -> [BigRational; 3] {
    m.as_array().map(|v| BigRational::from_float(v).expect("finite"))
}

/// Classify every grid point on the calling thread, lazily. Grid points are
/// classified as exact rationals; the reported `beta` is their rounding.
pub fn raster_sweep(grid: &GridSpec, m: &MassTriple) -> impl Iterator<Item = RegionReport> {
    let (grid, m) = (*grid, exact_masses(m));
    (0..grid.len()).map(move |k| grid.cell(k, &m))
}

/// Classify every grid point on the rayon pool; rows come back in the same
/// order as [`raster_sweep`].
pub fn raster_sweep_parallel(grid: &GridSpec, m: &MassTriple) -> Vec<RegionReport> {
    let m = exact_masses(m);
    (0..grid.len())
        .into_par_iter()
        .map(|k| grid.cell(k, &m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::RegionLabel;

    fn ones() -> MassTriple {
        MassTriple::new(1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn axis_hits_zero_exactly() {
        let a = Axis::new(-5.0, 5.0, 201).unwrap();
        assert_eq!(a.value(100), 0.0);
        assert_eq!(a.value(0), -5.0);
        assert_eq!(a.value(200), 5.0);
    }

    #[test]
    fn small_box_is_one_region() {
        let g = GridSpec {
            b1: Axis::new(0.9, 1.1, 3).unwrap(),
            b2: Axis::new(0.9, 1.1, 3).unwrap(),
        };
        let rows: Vec<_> = raster_sweep(&g, &ones()).collect();
        assert_eq!(rows.len(), 9);
        assert!(rows.iter().all(|r| r.region().map(|r| r.id()) == Some(1)));
        assert_eq!(rows, raster_sweep_parallel(&g, &ones()));
    }

    #[test]
    fn straddling_the_first_axis() {
        let g = GridSpec {
            b1: Axis::new(2.0, 2.0, 1).unwrap(),
            b2: Axis::new(-0.1, 0.1, 3).unwrap(),
        };
        let rows: Vec<_> = raster_sweep(&g, &ones()).collect();
        assert_eq!(rows[1].label, RegionLabel::Boundary);
        let (lo, hi) = (rows[0].triple.unwrap(), rows[2].triple.unwrap());
        assert_eq!(lo[0], hi[0]);
        assert_eq!(lo[1].abs_diff(hi[1]), 1);
        assert_eq!(lo[2].abs_diff(hi[2]), 1);
    }

    #[test]
    fn empty_grid() {
        let g = GridSpec {
            b1: Axis::new(0.0, 1.0, 0).unwrap(),
            b2: Axis::new(0.0, 1.0, 5).unwrap(),
        };
        assert_eq!(raster_sweep(&g, &ones()).count(), 0);
    }
}

//! The `(beta1, beta2)` plane: discriminant curve, special points, region
//! classification and the sign of the potential at each collinear
//! configuration.

mod gamma;
mod region;
mod sweep;

use serde::{Deserialize, Serialize};

pub use gamma::{
    branch_of, cusp_local_form, cusp_parameters, cusp_residual, denominator_quadratic, gamma_coords,
    gamma_cramer, gamma_derivative, gamma_inverted, gamma_point, gamma_polys, gamma_rational,
    infinity_parameters, infinity_residual, polylines, singularity_polynomial, special_points, trace, GammaPoint,
    GammaSample, SpecialPoints,
};
pub use region::{
    classify, classify_cell, classify_in, classify_point, reduced_potential, reduced_potential_numerator,
    zero_potential_parabola, Region, RegionLabel, RegionReport,
};
pub use sweep::{raster_sweep, raster_sweep_parallel, Axis, GridSpec};

/// Normalised couplings `(a1/a3, a2/a3)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetaPoint {
    pub b1: f64,
    pub b2: f64,
}

impl BetaPoint {
    pub fn new(b1: f64, b2: f64) -> Self {
        Self { b1, b2 }
    }
}

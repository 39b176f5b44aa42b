//! Default tolerances. Every one of them can be overridden per call.

/// Relative coefficient threshold for floating gcds and collision tests.
pub const FLOAT_GCD_REL: f64 = 1e-10;

/// Relative singular-value threshold for the rank of the integral map.
pub const RANK_REL: f64 = 1e-9;

/// Residual above which a configuration is not accepted as central.
pub const CC_RESIDUAL: f64 = 1e-9;

/// Relative size of `c'(eta)` below which `eta` counts as a cusp.
pub const CUSP_REL: f64 = 1e-6;

/// Relative residual for the covariance and double-zero identities.
pub const IDENTITY_REL: f64 = 1e-10;

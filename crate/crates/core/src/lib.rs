//! Central configurations of the charged three-body problem.
//!
//! Collinear central configurations reduce to the real roots of a quintic in
//! the ratio `u` of the two gaps between the bodies. The parameter plane of
//! normalised couplings `(beta1, beta2)` is cut into thirteen regions by the
//! coordinate axes and the discriminant curve, and each region has a fixed
//! number of roots on each of the three orderings of the bodies.
//!
//! - [`quintic`]: the reduced polynomial and certified root counts.
//! - [`atlas`]: the discriminant curve, its special points and region
//!   classification.
//! - [`symmetry`]: the action of the permutation group on every parameter.
//! - [`phase`]: configurations, relative equilibria and the rank of the
//!   integral map.
//! - [`cli`]: the command-line front end.

pub mod atlas;
pub mod cli;
pub mod error;
pub mod phase;
pub mod poly;
pub mod quintic;
pub mod symmetry;
pub mod tolerances;
pub mod verify;

pub use error::{Error, Result};

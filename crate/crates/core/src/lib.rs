//! Computational Lie theory for level-`k` fusion.
//!
//! The crate computes fusion coefficients of `G` at level `k` by a finite
//! character sum over the regular torsion points `exp(2πi M*/(k+h∨))`, checks
//! them against the Kac-Walton algorithm, and verifies the fixed-point
//! localization identities that relate the fusion product of two coadjoint
//! orbits to their Cartesian product.
//!
//! Conventions used throughout:
//!
//! * weights and Cartan points are vectors of exact rationals in the
//!   fundamental-weight basis; the invariant form satisfies `(θ|θ) = 2`;
//! * `e(μ)` at a torus point `τ` is `exp(2πi (μ|τ))`;
//! * translations act as `R_t(x) = x + t`.

pub mod characters;
pub mod error;
pub mod fixed_points;
pub mod fusion;
pub mod lie;
pub mod localization;
pub mod sampling;
pub mod tolerances;

pub use error::{Error, Result};
pub use lie::{RootDatum, Series, SimpleType, Weight, WeylElement, Q};

//! Exact-arithmetic toolkit for acyclic quivers: root systems, central
//! charges, semistable classes, phase gaps certifying algebraic hearts,
//! class-level simple tilts and exceptional collections.
//!
//! Everything that feeds a decision is computed over exact integers and
//! rationals; floating point appears only in display serialization. The
//! numeric core is generic over the integer coefficient type through the
//! [`Scalar`] trait, so the same code runs on `i64`/`i128` at desk scale
//! and on [`num_bigint::BigInt`] when coefficients may grow.

pub mod analyze;
pub mod charge;
pub mod cone;
pub mod error;
pub mod exceptional;
pub mod gauss;
pub mod homext;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod quiver;
pub mod repr;
pub mod roots;
pub mod scalar;
pub mod stability;
pub mod tilt;

pub use error::Error;
pub use scalar::Scalar;

/// Default arbitrary-precision coefficient type.
pub type Int = num_bigint::BigInt;
/// Exact rational over [`Int`].
pub type Rat = num_rational::Ratio<Int>;
/// Gaussian rational over [`Int`].
pub type GaussRat = gauss::Gaussian<Int>;
/// Lattice vector over [`Int`].
pub type LatVec = lattice::LatticeVector<Int>;
/// Phase point over [`Int`].
pub type Phase = charge::PhaseKey<Int>;

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

//! Integer coefficient abstraction.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, NumAssign, Signed, ToPrimitive};

/// Integer scalar for lattice coordinates and rational numerators.
///
/// `i64` and `i128` cover desk-scale runs; `BigInt` is the safe default
/// when reflection closures or form values may grow without bound.
pub trait Scalar:
    Integer
    + Signed
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Clone
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossless conversion from `i64`.
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("i64 conversion")
    }
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + NumAssign
        + FromPrimitive
        + ToPrimitive
        + Clone
        + Hash
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

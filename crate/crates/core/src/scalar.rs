//! Scalar traits shared by the exact and floating-point code paths.

use std::fmt::Debug;
use std::hash::Hash;

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FloatConst, Signed, ToPrimitive};

/// An exact signed integer usable as a group-ring coefficient.
///
/// Every arithmetic step goes through the checked operations, so a
/// fixed-width type reports overflow instead of wrapping. `BigInt` never
/// overflows and is the escalation target.
pub trait Coefficient:
    Clone
    + Debug
    + Eq
    + Ord
    + Hash
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + ToPrimitive
    + From<i64>
    + Send
    + Sync
    + 'static
{
}

impl<T> Coefficient for T where
    T: Clone
        + Debug
        + Eq
        + Ord
        + Hash
        + Signed
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + ToPrimitive
        + From<i64>
        + Send
        + Sync
        + 'static
{
}

/// Floating-point type used by the numeric cross-check.
pub trait Real: num_traits::Float + FloatConst + Debug + Send + Sync + 'static {}

impl<T> Real for T where T: num_traits::Float + FloatConst + Debug + Send + Sync + 'static {}

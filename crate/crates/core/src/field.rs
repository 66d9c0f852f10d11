use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use crate::hyperreal::Lc;
use crate::scalar::Rat;

/// An ordered field over which vectors and inner products are built.
///
/// Implemented for [`Rat`] and for the Levi-Civita hyperreals [`Lc`], so
/// every vector-space law can be exercised over both.
pub trait OrderedField:
    Clone
    + Eq
    + Ord
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rat(r: Rat) -> Self;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl OrderedField for Rat {
    fn zero() -> Self {
        Rat::zero()
    }

    fn one() -> Self {
        Rat::one()
    }

    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }

    fn from_rat(r: Rat) -> Self {
        r
    }

    fn abs(&self) -> Self {
        Rat::abs(self)
    }
}

impl OrderedField for Lc {
    fn zero() -> Self {
        Lc::zero()
    }

    fn one() -> Self {
        Lc::from(Rat::one())
    }

    fn is_zero(&self) -> bool {
        Lc::is_zero(self)
    }

    fn from_rat(r: Rat) -> Self {
        Lc::from(r)
    }
}

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Commutative ring with exact arithmetic.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Panics on zero.
    fn inv(&self) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.clone() * other.inv()
    }
}

/// A ring containing the scalars, so that forms with rational
/// coefficients such as `½(abᵀ + baᵀ)` can be built over it.
pub trait Algebra: Ring {
    fn scale_by(&self, c: &crate::scalar::Scalar) -> Self;
}

impl Algebra for crate::scalar::Scalar {
    fn scale_by(&self, c: &crate::scalar::Scalar) -> Self {
        self.clone() * c.clone()
    }
}

impl Algebra for crate::poly::Poly {
    fn scale_by(&self, c: &crate::scalar::Scalar) -> Self {
        self.scale(c)
    }
}

impl Algebra for crate::poly::RatFunc {
    fn scale_by(&self, c: &crate::scalar::Scalar) -> Self {
        crate::poly::RatFunc::new(self.numer().scale(c), self.denom().clone())
    }
}

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};

/// Coefficient ring for matrix entries.
///
/// Operations are fallible so that fixed-width integers can report overflow
/// instead of wrapping. Multiplication need not be commutative.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    const NAME: &'static str;

    fn zero() -> Self;
    fn try_add(&self, rhs: &Self) -> Result<Self>;
    fn try_sub(&self, rhs: &Self) -> Result<Self>;
    fn try_mul(&self, rhs: &Self) -> Result<Self>;
    /// Action of a rational constant from the ground field.
    fn try_scale(&self, c: &Rational) -> Result<Self>;
}

impl Ring for Rational {
    const NAME: &'static str = "rational";

    fn zero() -> Self {
        Zero::zero()
    }

    fn try_add(&self, rhs: &Self) -> Result<Self> {
        Ok(self + rhs)
    }

    fn try_sub(&self, rhs: &Self) -> Result<Self> {
        Ok(self - rhs)
    }

    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        Ok(self * rhs)
    }

    fn try_scale(&self, c: &Rational) -> Result<Self> {
        Ok(self * c)
    }
}

impl Ring for i64 {
    const NAME: &'static str = "i64";

    fn zero() -> Self {
        0
    }

    fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(*rhs).ok_or(Error::Overflow("i64 addition"))
    }

    fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_sub(*rhs).ok_or(Error::Overflow("i64 subtraction"))
    }

    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(*rhs).ok_or(Error::Overflow("i64 multiplication"))
    }

    fn try_scale(&self, c: &Rational) -> Result<Self> {
        let k = rational::to_i64(c).ok_or_else(|| Error::Coefficient(rational::format(c)))?;
        self.checked_mul(k).ok_or(Error::Overflow("i64 scaling"))
    }
}

impl Ring for f64 {
    const NAME: &'static str = "f64";

    fn zero() -> Self {
        0.0
    }

    fn try_add(&self, rhs: &Self) -> Result<Self> {
        Ok(self + rhs)
    }

    fn try_sub(&self, rhs: &Self) -> Result<Self> {
        Ok(self - rhs)
    }

    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        Ok(self * rhs)
    }

    fn try_scale(&self, c: &Rational) -> Result<Self> {
        Ok(self * rational::to_f64(c))
    }
}

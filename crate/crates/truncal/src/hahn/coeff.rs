use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{fmt_q, Q};

/// A characteristic-zero coefficient field.
///
/// `exp_const` and `log_const` are partial: they return `None` outside the
/// domain the field can represent exactly.
pub trait CoefficientField:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inverse(&self) -> Option<Self>;
    fn from_q(q: &Q) -> Self;
    /// Sign in the field order, when the field is ordered.
    fn sign(&self) -> Option<i8>;
    fn render(&self) -> String;

    fn exp_const(&self) -> Option<Self> {
        self.is_zero().then(Self::one)
    }

    fn log_const(&self) -> Option<Self> {
        (*self == Self::one()).then(Self::zero)
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl CoefficientField for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
    fn sign(&self) -> Option<i8> {
        Some(if Zero::is_zero(self) {
            0
        } else if num_traits::Signed::is_positive(self) {
            1
        } else {
            -1
        })
    }
    fn render(&self) -> String {
        fmt_q(self)
    }
}

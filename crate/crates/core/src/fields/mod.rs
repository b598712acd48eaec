//! Exact scalar fields.
//!
//! Three concrete fields are provided, each an extension of the previous:
//!
//! * [`Rational`]: arbitrary-precision rationals,
//! * [`RatFunc`]: rational functions in one indeterminate `s` over the rationals,
//! * [`MultiQuad`]: multiquadratic towers `Q(s)(u_1, ..., u_N)` with `u_j^2 = s - j`.
//!
//! Everything downstream (polynomials, series, degree functions) is generic over
//! the [`Field`] trait.

use std::fmt;

use thiserror::Error;

mod multiquad;
mod ratfunc;
mod rational;
mod upoly;

pub use multiquad::{MultiQuad, SubsetMask, MAX_LEVEL};
pub use ratfunc::RatFunc;
pub use rational::{parse_rational, Rational};
pub use upoly::UPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("tower level mismatch: {left} vs {right}")]
    LevelMismatch { left: usize, right: usize },
    #[error("cannot lower tower level from {from} to {to}")]
    LevelDecrease { from: usize, to: usize },
    #[error("tower level {0} exceeds the supported maximum")]
    LevelTooLarge(usize),
    #[error("malformed rational literal `{0}`")]
    MalformedRational(String),
}

/// Exact field arithmetic.
///
/// Equality is exact: implementors keep a canonical form so that `==` decides
/// equality of field elements.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn inv(&self) -> Result<Self, FieldError>;
    fn from_rational(q: &Rational) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&rhs.inv()?))
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    /// `self * n` for a small integer `n`.
    fn scale_int(&self, n: i64) -> Self {
        self.mul(&Self::from_int(n))
    }

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Whether the printed form needs parentheses when used as a factor.
    fn needs_parens(&self) -> bool {
        false
    }

    /// Whether the printed form leads with a minus sign that a printer may
    /// pull out as a term separator.
    fn is_negative(&self) -> bool {
        false
    }
}

/// Structural embedding of a subfield `C` into `Self`.
pub trait Embed<C>: Field {
    fn embed(c: &C) -> Self;
}

impl<F: Field> Embed<F> for F {
    fn embed(c: &F) -> Self {
        c.clone()
    }
}

impl Embed<Rational> for RatFunc {
    fn embed(c: &Rational) -> Self {
        RatFunc::constant(c.clone())
    }
}

impl Embed<Rational> for MultiQuad {
    fn embed(c: &Rational) -> Self {
        MultiQuad::scalar(0, RatFunc::constant(c.clone()))
    }
}

impl Embed<RatFunc> for MultiQuad {
    fn embed(c: &RatFunc) -> Self {
        MultiQuad::scalar(0, c.clone())
    }
}

//! Scalar abstractions.
//!
//! The combinatorial layer is written against [`Scalar`], a field with exact
//! integer embedding. [`num_rational::BigRational`] gives exact results;
//! `f64`/`f32` give fast approximations of the same sums. The numerical layer
//! (quadrature, simulator) is written against [`Real`].

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

/// A field the combinatorial sums can be evaluated in.
pub trait Scalar:
    Num + Neg<Output = Self> + Clone + Debug + Display + PartialEq + Send + Sync + 'static
{
    /// True when arithmetic never rounds.
    const EXACT: bool;

    fn from_bigint(v: BigInt) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_bigint(BigInt::from(v))
    }

    /// `num / den`, with `den != 0`.
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// `base^exp` for a possibly negative exponent.
    fn powi(base: &Self, exp: i32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp.unsigned_abs() {
            acc = acc * base.clone();
        }
        if exp < 0 {
            Self::one() / acc
        } else {
            acc
        }
    }

    fn to_f64(&self) -> f64;
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_bigint(v: BigInt) -> Self {
        BigRational::from_integer(v)
    }

    fn powi(base: &Self, exp: i32) -> Self {
        num_traits::Pow::pow(base, exp)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

macro_rules! impl_float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_bigint(v: BigInt) -> Self {
                v.to_f64().unwrap_or(f64::NAN) as $t
            }

            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn powi(base: &Self, exp: i32) -> Self {
                <$t>::powi(*base, exp)
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }
        }
    };
}

impl_float_scalar!(f64);
impl_float_scalar!(f32);

/// Floating point types used by the numerical modules.
pub trait Real:
    Float + FloatConst + FromPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Shorthand for lossless-enough literal conversion.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    fn of_usize(v: usize) -> Self {
        Self::from_usize(v).expect("usize representable")
    }
}

impl Real for f64 {}
impl Real for f32 {}

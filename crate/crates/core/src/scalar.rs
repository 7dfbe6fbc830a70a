//! Scalar abstractions shared by the exact and floating kernels.
//!
//! [`Field`] is the minimal surface the nested-sum and polynomial kernels
//! need; it is implemented by `f32`, `f64`, [`BigRational`] and
//! [`BigFloat`]. [`Real`] adds ordering, precision and the elementary
//! functions used by quadrature and extrapolation.
//!
//! Kernels that must run at a caller-chosen precision take a `unit: &F`
//! argument (the value one at that precision). For `BigFloat` the unit
//! carries the working precision into every division; for the other types it
//! is just `1`.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::numerics::bigfloat::BigFloat;

pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Exact conversion of a small integer (rounded for binary floats).
    fn from_i64_exact(v: i64) -> Self;

    /// `self^n` by repeated squaring.
    fn powu(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base.clone();
            }
            n >>= 1;
            if n > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

pub trait Real: Field + PartialOrd {
    fn from_f64_at(v: f64, prec: u32) -> Self;
    fn from_rational(r: &BigRational, prec: u32) -> Self;
    /// The value one carrying `prec` bits of working precision.
    fn unit(prec: u32) -> Self;
    fn pi(prec: u32) -> Self;
    /// Working precision in bits (53 for `f64`, 24 for `f32`).
    fn precision(&self) -> u32;
    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn sin_cos(&self) -> (Self, Self);
    fn ln(&self) -> Self;
    fn exp(&self) -> Self;
    fn to_f64(&self) -> f64;

    fn sin(&self) -> Self {
        self.sin_cos().0
    }

    fn cos(&self) -> Self {
        self.sin_cos().1
    }

    /// `2^-bits` at the given precision.
    fn pow2_neg(bits: u32, prec: u32) -> Self {
        let half = Self::unit(prec) / Self::from_i64_exact(2);
        half.powu(bits)
    }
}

macro_rules! impl_float_scalar {
    ($t:ty, $bits:expr, $pi:expr) => {
        impl Field for $t {
            fn from_i64_exact(v: i64) -> Self {
                v as $t
            }
        }

        impl Real for $t {
            fn from_f64_at(v: f64, _prec: u32) -> Self {
                v as $t
            }
            fn from_rational(r: &BigRational, _prec: u32) -> Self {
                r.to_f64().unwrap_or(f64::NAN) as $t
            }
            fn unit(_prec: u32) -> Self {
                1.0
            }
            fn pi(_prec: u32) -> Self {
                $pi
            }
            fn precision(&self) -> u32 {
                $bits
            }
            fn abs(&self) -> Self {
                <$t>::abs(*self)
            }
            fn sqrt(&self) -> Self {
                <$t>::sqrt(*self)
            }
            fn sin_cos(&self) -> (Self, Self) {
                <$t>::sin_cos(*self)
            }
            fn ln(&self) -> Self {
                <$t>::ln(*self)
            }
            fn exp(&self) -> Self {
                <$t>::exp(*self)
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
        }
    };
}

impl_float_scalar!(f32, 24, std::f32::consts::PI);
impl_float_scalar!(f64, 53, std::f64::consts::PI);

impl Field for BigRational {
    fn from_i64_exact(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Field for BigFloat {
    fn from_i64_exact(v: i64) -> Self {
        BigFloat::from_int(v)
    }
}

impl Real for BigFloat {
    fn from_f64_at(v: f64, prec: u32) -> Self {
        BigFloat::from_f64(v).with_precision(prec)
    }
    fn from_rational(r: &BigRational, prec: u32) -> Self {
        BigFloat::from_rational(r, prec)
    }
    fn unit(prec: u32) -> Self {
        BigFloat::one().with_precision(prec)
    }
    fn pi(prec: u32) -> Self {
        crate::numerics::constants::pi_float(prec)
    }
    fn precision(&self) -> u32 {
        self.prec()
    }
    fn abs(&self) -> Self {
        BigFloat::abs(self)
    }
    fn sqrt(&self) -> Self {
        BigFloat::sqrt(self)
    }
    fn sin_cos(&self) -> (Self, Self) {
        BigFloat::sin_cos(self)
    }
    fn ln(&self) -> Self {
        BigFloat::ln(self)
    }
    fn exp(&self) -> Self {
        BigFloat::exp(self)
    }
    fn to_f64(&self) -> f64 {
        BigFloat::to_f64(self)
    }
}

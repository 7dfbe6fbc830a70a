//! Binary arbitrary-precision floating point on top of `num-bigint`.
//!
//! A value is `mantissa * 2^exponent`. Each value remembers its precision
//! in bits; binary operations round to the larger precision of the two
//! operands. Precision 0 marks an exact value (small integers, dyadic
//! constants) that never rounds on addition or multiplication.
//!
//! Rounding is to nearest, so each elementary operation is within one unit
//! in the last place of its result. Transcendental functions are evaluated
//! in fixed point with guard bits and are accurate to a few ulps; they carry
//! no proof of that and callers treat them as heuristic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numerics::constants;

/// Precision used when two exact operands are divided.
pub const DEFAULT_PRECISION: u32 = 64;
const GUARD_BITS: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Rounding {
    Nearest,
    /// Away from zero; used for radii, which are nonnegative.
    Up,
}

#[derive(Clone, Debug)]
pub struct BigFloat {
    man: BigInt,
    exp: i64,
    prec: u32,
}

fn shr_round(m: &BigInt, s: u64, mode: Rounding) -> BigInt {
    if s == 0 {
        return m.clone();
    }
    let mag: BigUint = m.magnitude().clone();
    let q = match mode {
        Rounding::Nearest => (mag + (BigUint::one() << (s - 1))) >> s,
        Rounding::Up => (mag + ((BigUint::one() << s) - 1u32)) >> s,
    };
    BigInt::from_biguint(
        if m.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        },
        q,
    )
}

pub(crate) fn ldexp(x: f64, e: i64) -> f64 {
    let mut v = x;
    let mut e = e;
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
        if v.is_infinite() {
            return v;
        }
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
        if v == 0.0 {
            return v;
        }
    }
    v * 2f64.powi(e as i32)
}

impl BigFloat {
    pub fn from_int(v: impl Into<BigInt>) -> Self {
        BigFloat {
            man: v.into(),
            exp: 0,
            prec: 0,
        }
        .normalize(Rounding::Nearest)
    }

    /// `mantissa * 2^exponent` rounded to `prec` bits (0 keeps it exact).
    pub fn from_parts(mantissa: BigInt, exponent: i64, prec: u32) -> Self {
        BigFloat {
            man: mantissa,
            exp: exponent,
            prec,
        }
        .normalize(Rounding::Nearest)
    }

    /// Exact conversion; the result has precision 0.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "cannot convert non-finite {x} to BigFloat");
        if x == 0.0 {
            return BigFloat::zero();
        }
        let (m, e, s) = num_traits::Float::integer_decode(x);
        let man = BigInt::from(m) * BigInt::from(s);
        BigFloat::from_parts(man, e as i64, 0)
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        let num = BigFloat::from_int(r.numer().clone());
        let den = BigFloat::from_int(r.denom().clone());
        num.div_at(&den, if prec == 0 { DEFAULT_PRECISION } else { prec })
    }

    pub fn zero() -> Self {
        BigFloat {
            man: BigInt::zero(),
            exp: 0,
            prec: 0,
        }
    }

    pub fn one() -> Self {
        BigFloat::from_int(1)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    /// Sets the precision, rounding to nearest if it drops.
    pub fn with_precision(mut self, prec: u32) -> Self {
        self.prec = prec;
        self.normalize(Rounding::Nearest)
    }

    pub(crate) fn round_with(mut self, prec: u32, mode: Rounding) -> Self {
        self.prec = prec;
        self.normalize(mode)
    }

    /// Marks the value exact without changing it.
    pub fn exact(mut self) -> Self {
        self.prec = 0;
        self
    }

    fn normalize(mut self, mode: Rounding) -> Self {
        if self.man.is_zero() {
            self.exp = 0;
            return self;
        }
        if self.prec > 0 {
            let bits = self.man.bits();
            if bits > self.prec as u64 {
                let s = bits - self.prec as u64;
                self.man = shr_round(&self.man, s, mode);
                self.exp += s as i64;
            }
        }
        if let Some(tz) = self.man.trailing_zeros() {
            if tz > 0 {
                self.man >>= tz;
                self.exp += tz as i64;
            }
        }
        self
    }

    /// Exponent of the leading bit plus one, i.e. `|self| < 2^top`.
    pub fn top(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.man.bits() as i64)
        }
    }

    /// One unit in the last place at this value's precision.
    pub fn ulp(&self) -> BigFloat {
        match (self.top(), self.prec) {
            (Some(t), p) if p > 0 => BigFloat::from_parts(BigInt::one(), t - p as i64, 0),
            _ => BigFloat::zero(),
        }
    }

    pub fn mul_pow2(&self, k: i64) -> BigFloat {
        let mut r = self.clone();
        if !r.is_zero() {
            r.exp += k;
        }
        r
    }

    pub fn abs(&self) -> BigFloat {
        BigFloat {
            man: self.man.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    pub fn signum(&self) -> i32 {
        match self.man.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as usize)
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits();
        let s = bits.saturating_sub(64);
        let top = (&self.man >> s as usize).to_f64().unwrap_or(0.0);
        ldexp(top, self.exp + s as i64)
    }

    /// Rounds to the nearest integer, ties away from zero.
    pub fn round_to_integer(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as usize
        } else {
            shr_round(&self.man, (-self.exp) as u64, Rounding::Nearest)
        }
    }

    /// `round(self * 2^w)` as an integer.
    pub(crate) fn to_fixed(&self, w: u32) -> BigInt {
        let e = self.exp + w as i64;
        if e >= 0 {
            &self.man << e as usize
        } else {
            shr_round(&self.man, (-e) as u64, Rounding::Nearest)
        }
    }

    pub(crate) fn from_fixed(x: BigInt, w: u32, prec: u32) -> BigFloat {
        BigFloat::from_parts(x, -(w as i64), prec)
    }

    fn working_prec(&self, other: &BigFloat) -> u32 {
        self.prec.max(other.prec)
    }

    fn add_at(&self, other: &BigFloat, prec: u32) -> BigFloat {
        if self.is_zero() {
            return other.clone().with_precision(prec);
        }
        if other.is_zero() {
            return self.clone().with_precision(prec);
        }
        if prec > 0 {
            let (ta, tb) = (self.top().unwrap(), other.top().unwrap());
            if ta > tb + prec as i64 + 4 {
                return self.clone().with_precision(prec);
            }
            if tb > ta + prec as i64 + 4 {
                return other.clone().with_precision(prec);
            }
        }
        let e = self.exp.min(other.exp);
        let m = (&self.man << (self.exp - e) as usize) + (&other.man << (other.exp - e) as usize);
        BigFloat::from_parts(m, e, prec)
    }

    fn mul_at(&self, other: &BigFloat, prec: u32) -> BigFloat {
        BigFloat::from_parts(&self.man * &other.man, self.exp + other.exp, prec)
    }

    /// Division rounded to `prec` bits (truncated quotient, then rounded).
    pub fn div_at(&self, other: &BigFloat, prec: u32) -> BigFloat {
        assert!(!other.is_zero(), "BigFloat division by zero");
        if self.is_zero() {
            return BigFloat::zero().with_precision(prec);
        }
        let prec = prec.max(1);
        let shift = (prec as i64 + 2 + other.man.bits() as i64 - self.man.bits() as i64).max(0);
        let q = (&self.man << shift as usize) / &other.man;
        BigFloat::from_parts(q, self.exp - other.exp - shift, prec)
    }

    /// Upper bound of `self / other` for nonnegative operands.
    pub(crate) fn div_up(&self, other: &BigFloat, prec: u32) -> BigFloat {
        let q = self.div_at(other, prec + 2);
        if q.is_zero() {
            return q;
        }
        (q.clone() + q.ulp().mul_pow2(1)).round_with(prec, Rounding::Up)
    }

    pub fn sqrt(&self) -> BigFloat {
        assert!(!self.is_negative(), "sqrt of negative BigFloat");
        if self.is_zero() {
            return self.clone();
        }
        let p = if self.prec == 0 {
            DEFAULT_PRECISION
        } else {
            self.prec
        };
        let bits = self.man.bits() as i64;
        let mut s = (2 * p as i64 + 4 - bits).max(0);
        if (self.exp - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let m = self.man.magnitude() << s as usize;
        let r = m.sqrt();
        BigFloat::from_parts(BigInt::from(r), (self.exp - s) / 2, p)
    }

    fn effective_prec(&self) -> u32 {
        if self.prec == 0 {
            DEFAULT_PRECISION
        } else {
            self.prec
        }
    }

    pub fn exp(&self) -> BigFloat {
        let p = self.effective_prec();
        if self.is_zero() {
            return BigFloat::one().with_precision(p);
        }
        let xf = self.to_f64();
        assert!(xf.abs() < 1e15, "exp argument out of range");
        let k = (xf / std::f64::consts::LN_2).round() as i64;
        let kbits = 64 - k.unsigned_abs().leading_zeros();
        let ln2 = constants::log2_float(p + GUARD_BITS + kbits);
        let r = self.clone().with_precision(p + GUARD_BITS + kbits) - ln2 * BigFloat::from_int(k);
        let w = p + GUARD_BITS;
        let x = r.to_fixed(w);
        let one = BigInt::one() << w as usize;
        let mut sum = one.clone();
        let mut term = one;
        let mut n = 1u64;
        loop {
            term = ((&term * &x) >> w as usize) / n;
            if term.is_zero() {
                break;
            }
            sum += &term;
            n += 1;
        }
        BigFloat::from_fixed(sum, w, p).mul_pow2(k)
    }

    pub fn ln(&self) -> BigFloat {
        assert!(
            self.signum() > 0,
            "ln of nonpositive BigFloat {}",
            self.to_f64()
        );
        let p = self.effective_prec();
        let w = p + GUARD_BITS;
        let bits = self.man.bits() as i64;
        let mut e = self.exp + bits - 1;
        let shift = w as i64 - (bits - 1);
        let mut m = if shift >= 0 {
            &self.man << shift as usize
        } else {
            &self.man >> (-shift) as usize
        };
        let one = BigInt::one() << w as usize;
        let three_halves = (&one * 3) >> 1usize;
        if m > three_halves {
            m >>= 1usize;
            e += 1;
        }
        let t = ((&m - &one) << w as usize) / (&m + &one);
        let t2 = (&t * &t) >> w as usize;
        let mut sum = t.clone();
        let mut term = t;
        let mut k = 1u64;
        loop {
            term = (&term * &t2) >> w as usize;
            let add = &term / (2 * k + 1);
            if add.is_zero() {
                break;
            }
            sum += add;
            k += 1;
        }
        let ln_m = BigFloat::from_fixed(sum << 1usize, w, p + 8);
        if e == 0 {
            return ln_m.with_precision(p);
        }
        let ebits = 64 - e.unsigned_abs().leading_zeros();
        let ln2 = constants::log2_float(p + 8 + ebits);
        (ln2 * BigFloat::from_int(e) + ln_m).with_precision(p)
    }

    /// Sine and cosine together; shares the argument reduction.
    pub fn sin_cos(&self) -> (BigFloat, BigFloat) {
        let p = self.effective_prec();
        if self.is_zero() {
            return (
                BigFloat::zero().with_precision(p),
                BigFloat::one().with_precision(p),
            );
        }
        let mag_bits = self.top().unwrap().max(0) as u32;
        let pp = p + GUARD_BITS + mag_bits;
        let half_pi = constants::pi_float(pp).mul_pow2(-1);
        let xx = self.clone().with_precision(pp);
        let q = xx.div_at(&half_pi, 64).to_f64();
        assert!(q.abs() < 4.0e15, "sin/cos argument out of range");
        let k = q.round() as i64;
        let r = xx - half_pi * BigFloat::from_int(k);
        let w = p + GUARD_BITS;
        let x = r.to_fixed(w);
        let x2 = (&x * &x) >> w as usize;
        let one = BigInt::one() << w as usize;

        let mut s = x.clone();
        let mut term = x;
        let mut n = 1u64;
        loop {
            term = -(((&term * &x2) >> w as usize) / ((2 * n) * (2 * n + 1)));
            if term.is_zero() {
                break;
            }
            s += &term;
            n += 1;
        }
        let mut c = one.clone();
        let mut term = one;
        let mut n = 1u64;
        loop {
            term = -(((&term * &x2) >> w as usize) / ((2 * n - 1) * (2 * n)));
            if term.is_zero() {
                break;
            }
            c += &term;
            n += 1;
        }
        let s = BigFloat::from_fixed(s, w, p);
        let c = BigFloat::from_fixed(c, w, p);
        match k.rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    pub fn sin(&self) -> BigFloat {
        self.sin_cos().0
    }

    pub fn cos(&self) -> BigFloat {
        self.sin_cos().1
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        crate::numerics::decimal::format_significant(&self.to_rational(), digits)
    }
}

impl Zero for BigFloat {
    fn zero() -> Self {
        BigFloat::zero()
    }
    fn is_zero(&self) -> bool {
        self.man.is_zero()
    }
}

impl One for BigFloat {
    fn one() -> Self {
        BigFloat::one()
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.man == other.man && self.exp == other.exp
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let diff = self.add_at(&-other, 0);
        Some(diff.signum().cmp(&0))
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(mut self) -> BigFloat {
        self.man = -self.man;
        self
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        -(self.clone())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &BigFloat) -> BigFloat {
                let f: fn(&BigFloat, &BigFloat) -> BigFloat = $body;
                f(self, rhs)
            }
        }
        impl $tr<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &BigFloat) -> BigFloat {
                (&self).$method(rhs)
            }
        }
        impl $tr<BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_at(b, a.working_prec(b)));
forward_binop!(Sub, sub, |a, b| a.add_at(&-b, a.working_prec(b)));
forward_binop!(Mul, mul, |a, b| a.mul_at(b, a.working_prec(b)));
forward_binop!(Div, div, |a, b| {
    let p = a.working_prec(b);
    a.div_at(b, if p == 0 { DEFAULT_PRECISION } else { p })
});

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.effective_prec() as f64) * std::f64::consts::LOG10_2).floor() as usize;
        write!(f, "{}", self.to_decimal(digits.max(1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(x: f64) -> BigFloat {
        BigFloat::from_f64(x).with_precision(128)
    }

    #[test]
    fn exact_integer_arithmetic() {
        let a = BigFloat::from_int(12);
        let b = BigFloat::from_int(-5);
        assert_eq!((&a + &b).to_f64(), 7.0);
        assert_eq!((&a * &b).to_f64(), -60.0);
        assert_eq!((a.clone() - b.clone()).to_f64(), 17.0);
        assert_eq!(a.prec(), 0);
        assert!(b < a);
    }

    #[test]
    fn division_rounds_to_precision() {
        let third = BigFloat::unit_at(200) / BigFloat::from_int(3);
        assert_eq!(third.prec(), 200);
        let back = &third * &BigFloat::from_int(3);
        let err = (back - BigFloat::one()).abs();
        assert!(err.to_f64() < 2f64.powi(-198));
    }

    #[test]
    fn sqrt_two() {
        let r = BigFloat::from_int(2).with_precision(256).sqrt();
        let sq = &r * &r;
        assert!((sq - BigFloat::from_int(2)).abs().to_f64() < 2f64.powi(-250));
    }

    #[test]
    fn elementary_functions_match_f64() {
        for &x in &[0.1, 0.5, 1.0, 2.5, -3.7, 10.0, 100.25] {
            let (s, c) = bf(x).sin_cos();
            assert!((s.to_f64() - x.sin()).abs() < 1e-14, "sin {x}");
            assert!((c.to_f64() - x.cos()).abs() < 1e-14, "cos {x}");
            assert!(
                (bf(x).exp().to_f64() / x.exp() - 1.0).abs() < 1e-14,
                "exp {x}"
            );
            if x > 0.0 {
                assert!((bf(x).ln().to_f64() - x.ln()).abs() < 1e-14, "ln {x}");
            }
        }
    }

    #[test]
    fn exp_ln_round_trip_high_precision() {
        let x = BigFloat::from_rational(&BigRational::new(7.into(), 3.into()), 300);
        let back = x.ln().exp();
        assert!((back - &x).abs().to_f64() < 2f64.powi(-290));
    }

    #[test]
    fn pythagoras_high_precision() {
        let x = BigFloat::from_rational(&BigRational::new(13.into(), 7.into()), 400);
        let (s, c) = x.sin_cos();
        let one = &s * &s + &c * &c;
        assert!((one - BigFloat::one()).abs().to_f64() < 2f64.powi(-390));
    }

    #[test]
    fn ordering_and_equality_are_value_based() {
        let a = BigFloat::from_int(4);
        let b = BigFloat::from_parts(BigInt::from(1), 2, 0);
        assert_eq!(a, b);
        assert!(BigFloat::from_f64(1e-300) > BigFloat::zero());
        assert!(BigFloat::from_f64(-1e-300) < BigFloat::zero());
    }

    #[test]
    fn far_apart_addition_keeps_larger() {
        let big = BigFloat::one().with_precision(64);
        let tiny = BigFloat::from_parts(BigInt::one(), -10_000, 64);
        assert_eq!(&big + &tiny, big);
    }

    #[test]
    fn to_f64_of_small_values() {
        let v = BigFloat::from_parts(BigInt::from(3), -1100, 0);
        assert_eq!(v.to_f64(), 0.0);
        let v = BigFloat::from_parts(BigInt::from(3), -1000, 0);
        assert!((v.to_f64() / (3.0 * 2f64.powi(-1000)) - 1.0).abs() < 1e-15);
    }

    impl BigFloat {
        fn unit_at(p: u32) -> BigFloat {
            BigFloat::one().with_precision(p)
        }
    }
}

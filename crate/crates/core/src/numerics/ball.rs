//! Midpoint-radius enclosures.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::bigfloat::{BigFloat, Rounding};
use super::decimal;
use crate::error::NumericsError;

/// Bits kept in a radius; radii are always rounded upward.
const RADIUS_BITS: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rigor {
    /// The true value is guaranteed to lie in `[mid - rad, mid + rad]`.
    Rigorous,
    /// `rad` is an error estimate, not a bound.
    Heuristic,
}

impl Rigor {
    pub fn and(self, other: Rigor) -> Rigor {
        if self == Rigor::Rigorous && other == Rigor::Rigorous {
            Rigor::Rigorous
        } else {
            Rigor::Heuristic
        }
    }
}

#[derive(Clone, Debug)]
pub struct RealBall {
    mid: BigFloat,
    rad: BigFloat,
    rigor: Rigor,
}

/// Result of rendering a ball to decimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rendered {
    pub text: String,
    /// Significant digits actually printed; every printed digit is stable
    /// for any value inside the ball.
    pub digits: usize,
    /// True when fewer digits than requested could be certified.
    pub reduced: bool,
}

fn radius_up(x: BigFloat) -> BigFloat {
    x.abs().round_with(RADIUS_BITS, Rounding::Up).exact()
}

/// Rounds an exact value to `prec`, returning the rounded value and the
/// exact rounding error magnitude.
fn round_tracked(exact: BigFloat, prec: u32) -> (BigFloat, BigFloat) {
    let rounded = exact.clone().with_precision(prec);
    let err = (exact.exact() - rounded.clone().exact()).abs();
    (rounded, err)
}

impl RealBall {
    pub fn new(mid: BigFloat, rad: BigFloat, rigor: Rigor) -> Self {
        assert!(!rad.is_negative(), "negative radius");
        RealBall {
            mid,
            rad: radius_up(rad),
            rigor,
        }
    }

    pub fn exact(mid: BigFloat) -> Self {
        RealBall::new(mid, BigFloat::zero(), Rigor::Rigorous)
    }

    pub fn zero() -> Self {
        RealBall::exact(BigFloat::zero())
    }

    pub fn from_int(v: i64) -> Self {
        RealBall::exact(BigFloat::from_int(v))
    }

    /// Encloses a rational at `prec` bits.
    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        let exact_den = r.denom().trailing_zeros() == Some(r.denom().bits() - 1);
        if exact_den {
            let mid = BigFloat::from_parts(r.numer().clone(), -(r.denom().bits() as i64 - 1), 0);
            let (mid, err) = round_tracked(mid, prec);
            return RealBall::new(mid, err, Rigor::Rigorous);
        }
        let mid = BigFloat::from_rational(r, prec);
        let err = mid.ulp();
        RealBall::new(mid, err, Rigor::Rigorous)
    }

    pub fn from_f64(v: f64) -> Self {
        RealBall::exact(BigFloat::from_f64(v))
    }

    pub fn mid(&self) -> &BigFloat {
        &self.mid
    }

    pub fn rad(&self) -> &BigFloat {
        &self.rad
    }

    pub fn rigor(&self) -> Rigor {
        self.rigor
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    pub fn with_rigor(mut self, rigor: Rigor) -> Self {
        self.rigor = rigor;
        self
    }

    /// Widens the radius by `extra` (an absolute amount).
    pub fn widen(mut self, extra: &BigFloat) -> Self {
        self.rad = radius_up(self.rad.clone() + extra.abs());
        self
    }

    /// Rounds the midpoint to `prec`, folding the rounding into the radius.
    pub fn round_to(&self, prec: u32) -> RealBall {
        let (mid, err) = round_tracked(self.mid.clone().exact(), prec);
        RealBall {
            mid,
            rad: radius_up(self.rad.clone() + err),
            rigor: self.rigor,
        }
    }

    pub fn lower(&self) -> BigFloat {
        self.mid.clone().exact() - self.rad.clone()
    }

    pub fn upper(&self) -> BigFloat {
        self.mid.clone().exact() + self.rad.clone()
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs().exact() <= self.rad.clone()
    }

    /// Whether the two enclosures intersect.
    pub fn overlaps(&self, other: &RealBall) -> bool {
        let gap = (self.mid.clone().exact() - other.mid.clone().exact()).abs();
        gap <= self.rad.clone() + other.rad.clone()
    }

    /// Whether `other` lies entirely inside `self`.
    pub fn contains(&self, other: &RealBall) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn contains_value(&self, v: &BigFloat) -> bool {
        self.lower() <= v.clone().exact() && v.clone().exact() <= self.upper()
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn rad_f64(&self) -> f64 {
        self.rad.to_f64()
    }

    /// `|mid_a - mid_b| - (rad_a + rad_b)`, floored at zero.
    pub fn discrepancy(&self, other: &RealBall) -> BigFloat {
        let gap = (self.mid.clone().exact() - other.mid.clone().exact()).abs();
        let d = gap - (self.rad.clone() + other.rad.clone());
        if d.is_negative() {
            BigFloat::zero()
        } else {
            radius_up(d)
        }
    }

    pub fn add_ball(&self, other: &RealBall) -> RealBall {
        let prec = self.prec().max(other.prec());
        let exact = self.mid.clone().exact() + other.mid.clone().exact();
        let (mid, err) = round_tracked(exact, prec);
        RealBall::new(
            mid,
            self.rad.clone() + other.rad.clone() + err,
            self.rigor.and(other.rigor),
        )
    }

    pub fn mul_ball(&self, other: &RealBall) -> RealBall {
        let prec = self.prec().max(other.prec());
        let exact = self.mid.clone().exact() * other.mid.clone().exact();
        let (mid, err) = round_tracked(exact, prec);
        let ra = &self.rad;
        let rb = &other.rad;
        let prop = self.mid.abs().exact() * rb.clone()
            + other.mid.abs().exact() * ra.clone()
            + ra.clone() * rb.clone();
        RealBall::new(mid, prop + err, self.rigor.and(other.rigor))
    }

    pub fn div_ball(&self, other: &RealBall) -> Result<RealBall, NumericsError> {
        if other.contains_zero() {
            return Err(NumericsError::DivisionByBallContainingZero);
        }
        let prec = match self.prec().max(other.prec()) {
            0 => super::bigfloat::DEFAULT_PRECISION,
            p => p,
        };
        let mid = self.mid.div_at(&other.mid, prec);
        let b = other.mid.abs().exact();
        let num = b.clone() * self.rad.clone() + self.mid.abs().exact() * other.rad.clone();
        let den =
            (b.clone() * (b - other.rad.clone())).round_with(RADIUS_BITS + 2, Rounding::Nearest);
        // den rounded to nearest may overshoot; shrink it by one ulp for a lower bound
        let den = den.clone() - den.ulp();
        let prop = if num.is_zero() {
            BigFloat::zero()
        } else {
            num.div_up(&den, RADIUS_BITS)
        };
        let err = mid.ulp();
        Ok(RealBall::new(mid, prop + err, self.rigor.and(other.rigor)))
    }

    pub fn mul_rational(&self, r: &BigRational, prec: u32) -> RealBall {
        self.mul_ball(&RealBall::from_rational(r, prec.max(self.prec())))
    }

    pub fn mul_pow2(&self, k: i64) -> RealBall {
        RealBall {
            mid: self.mid.mul_pow2(k),
            rad: self.rad.mul_pow2(k),
            rigor: self.rigor,
        }
    }

    /// Integer power; negative exponents divide.
    pub fn powi(&self, n: i64) -> Result<RealBall, NumericsError> {
        let mut base = self.clone();
        let mut e = n.unsigned_abs();
        let mut acc = RealBall::from_int(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ball(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ball(&base);
            }
        }
        if n < 0 {
            RealBall::from_int(1).round_to(self.prec()).div_ball(&acc)
        } else {
            Ok(acc)
        }
    }

    pub fn abs(&self) -> RealBall {
        RealBall {
            mid: self.mid.abs(),
            rad: self.rad.clone(),
            rigor: self.rigor,
        }
    }

    /// `exp` of the ball. The kernel is not proven, so the result is heuristic.
    pub fn exp(&self) -> RealBall {
        let v = self.mid.exp();
        let slack =
            v.abs().exact() * (self.rad.mul_pow2(1) + v.ulp().mul_pow2(4) / v.abs().exact());
        RealBall::new(v, slack, Rigor::Heuristic)
    }

    /// `ln` of a ball with positive lower end; heuristic.
    pub fn ln(&self) -> Result<RealBall, NumericsError> {
        if self.lower().signum() <= 0 {
            return Err(NumericsError::InvalidArgument(
                "logarithm of a ball reaching zero".into(),
            ));
        }
        let v = self.mid.ln();
        let lo = self.lower().with_precision(RADIUS_BITS + 2);
        let slack = self.rad.clone().div_up(&lo, RADIUS_BITS) + v.ulp().mul_pow2(4);
        Ok(RealBall::new(v, slack, Rigor::Heuristic))
    }

    /// Decimal rendering; see [`Rendered`].
    pub fn render(&self, digits: usize) -> Rendered {
        let digits = digits.max(1);
        if self.rad.is_zero() {
            return Rendered {
                text: self.mid.to_decimal(digits),
                digits,
                reduced: false,
            };
        }
        let lo = self.lower().to_rational();
        let hi = self.upper().to_rational();
        for d in (1..=digits).rev() {
            let a = decimal::format_significant(&lo, d);
            let b = decimal::format_significant(&hi, d);
            if a == b {
                return Rendered {
                    text: a,
                    digits: d,
                    reduced: d < digits,
                };
            }
        }
        Rendered {
            text: format!("0 +/- {}", self.rad.to_decimal(2)),
            digits: 0,
            reduced: true,
        }
    }
}

impl fmt::Display for RealBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec().max(16) as f64) * std::f64::consts::LOG10_2) as usize;
        write!(
            f,
            "[{} +/- {}]",
            self.mid.to_decimal(digits),
            self.rad.to_decimal(3)
        )
    }
}

impl Add for &RealBall {
    type Output = RealBall;
    fn add(self, rhs: &RealBall) -> RealBall {
        self.add_ball(rhs)
    }
}

impl Sub for &RealBall {
    type Output = RealBall;
    fn sub(self, rhs: &RealBall) -> RealBall {
        self.add_ball(&-rhs)
    }
}

impl Mul for &RealBall {
    type Output = RealBall;
    fn mul(self, rhs: &RealBall) -> RealBall {
        self.mul_ball(rhs)
    }
}

impl Neg for &RealBall {
    type Output = RealBall;
    fn neg(self) -> RealBall {
        RealBall {
            mid: -&self.mid,
            rad: self.rad.clone(),
            rigor: self.rigor,
        }
    }
}

impl Zero for RealBall {
    fn zero() -> Self {
        RealBall::zero()
    }
    fn is_zero(&self) -> bool {
        self.mid.is_zero() && self.rad.is_zero()
    }
}

impl Add for RealBall {
    type Output = RealBall;
    fn add(self, rhs: RealBall) -> RealBall {
        self.add_ball(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn third(prec: u32) -> RealBall {
        RealBall::from_rational(&BigRational::new(BigInt::from(1), BigInt::from(3)), prec)
    }

    #[test]
    fn rational_enclosure_contains_value() {
        let b = third(100);
        let exact = BigRational::new(1.into(), 3.into());
        let lo = b.lower().to_rational();
        let hi = b.upper().to_rational();
        assert!(lo <= exact && exact <= hi);
        assert!(b.rad_f64() < 2f64.powi(-98));
    }

    #[test]
    fn dyadic_rational_is_exact() {
        let b = RealBall::from_rational(&BigRational::new(3.into(), 8.into()), 64);
        assert!(b.rad().is_zero());
        assert_eq!(b.to_f64(), 0.375);
    }

    #[test]
    fn arithmetic_keeps_containment() {
        let x = third(80);
        let y = &(&x * &x) + &x;
        let exact = BigRational::new(4.into(), 9.into());
        let lo = y.lower().to_rational();
        let hi = y.upper().to_rational();
        assert!(lo <= exact && exact <= hi);
        let q = x.div_ball(&y).unwrap();
        let exact_q = BigRational::new(3.into(), 4.into());
        assert!(q.lower().to_rational() <= exact_q && exact_q <= q.upper().to_rational());
    }

    #[test]
    fn negative_power() {
        let x = RealBall::from_int(2).round_to(64);
        let inv = x.powi(-3).unwrap();
        assert!(inv.contains_value(&BigFloat::from_f64(0.125)));
    }

    #[test]
    fn division_by_zero_ball_rejected() {
        let z = RealBall::new(BigFloat::zero(), BigFloat::from_f64(1e-10), Rigor::Rigorous);
        assert!(RealBall::from_int(1).div_ball(&z).is_err());
    }

    #[test]
    fn rendering_reduces_digits_when_radius_large() {
        let b = RealBall::new(
            BigFloat::from_f64(1.23456789),
            BigFloat::from_f64(1e-4),
            Rigor::Rigorous,
        );
        let r = b.render(10);
        assert!(r.reduced);
        assert!(r.digits <= 4);
        assert!(r.text.starts_with("1.23"));
        let exact = RealBall::from_int(7).render(3);
        assert_eq!(exact.text, "7.00");
        assert!(!exact.reduced);
    }

    #[test]
    fn discrepancy_is_ball_aware() {
        let a = RealBall::new(
            BigFloat::from_f64(1.0),
            BigFloat::from_f64(0.25),
            Rigor::Rigorous,
        );
        let b = RealBall::new(
            BigFloat::from_f64(1.5),
            BigFloat::from_f64(0.125),
            Rigor::Rigorous,
        );
        assert_eq!(a.discrepancy(&b).to_f64(), 0.125);
        assert_eq!(a.discrepancy(&b), b.discrepancy(&a));
        assert!(!a.overlaps(&b));
    }
}

//! Numeric evaluation of exact combinations and of the Clausen closed form of
//! `∫_0^{πz} x^p cot x dx`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ball::RealBall;
use super::clausen::{clausen, Angle};
use super::constants::{const_log2, const_pi, zeta_int};
use crate::error::NumericsError;
use crate::exact::combination::{MonomialKind, ZetaCombination};
use crate::exact::combinatorics::{binomial, factorial};

const GUARD: u32 = 16;

/// `Σ c · π^e · (1 | ζ(m) | log 2)` as a ball at `prec` bits.
pub fn eval_combination(c: &ZetaCombination, prec: u32) -> RealBall {
    let wp = prec + GUARD;
    let pi = const_pi(wp);
    let mut acc = RealBall::zero();
    for (m, coeff) in c.iter() {
        let base = match m.kind {
            MonomialKind::One => RealBall::from_int(1),
            MonomialKind::Zeta(s) => zeta_int(s, wp),
            MonomialKind::Log2 => const_log2(wp),
        };
        let pe = pi.powi(m.pi_exp).expect("π is bounded away from zero");
        let term = base.mul_ball(&pe).mul_rational(coeff, wp);
        acc = acc.add_ball(&term);
    }
    if c.is_zero() {
        return acc;
    }
    acc.round_to(prec)
}

/// Special points where the Clausen closed form is assembled from exact
/// particular values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CotPoint {
    /// z = 1/4, so 2πz = π/2.
    Quarter,
    /// z = 1/2, so 2πz = π.
    Half,
}

impl CotPoint {
    pub fn z(self) -> BigRational {
        match self {
            CotPoint::Quarter => BigRational::new(1.into(), 4.into()),
            CotPoint::Half => BigRational::new(1.into(), 2.into()),
        }
    }

    fn angle(self) -> Angle {
        match self {
            CotPoint::Quarter => Angle::HalfPi,
            CotPoint::Half => Angle::Pi,
        }
    }
}

/// `(πz)^p Σ_{k=0}^{p} C(p,k) k! (-1)^{⌊(k+3)/2⌋} Cl_{k+1}(2πz) / (2πz)^k
///  + [p even] p! (-1)^{p/2} ζ(p+1) / 2^p`.
pub fn cot_power_closed_form(z: CotPoint, p: u32, prec: u32) -> Result<RealBall, NumericsError> {
    let wp = prec + GUARD + 2 * p;
    let pz = const_pi(wp).mul_rational(&z.z(), wp);
    let two_pz = pz.mul_pow2(1);
    let angle = z.angle();
    let mut sum = RealBall::zero();
    for k in 0..=p {
        let coeff = binomial(p as u64, k as i64) * factorial(k as u64);
        let sign_neg = ((k + 3) / 2) % 2 == 1;
        let c = BigRational::from_integer(if sign_neg { -coeff } else { coeff });
        let cl = clausen(k + 1, &angle, wp)?;
        if cl.mid().is_zero() && cl.rad().is_zero() {
            continue;
        }
        let term = cl.div_ball(&two_pz.powi(k as i64)?)?.mul_rational(&c, wp);
        sum = sum.add_ball(&term);
    }
    let mut out = sum.mul_ball(&pz.powi(p as i64)?);
    if p.is_multiple_of(2) {
        let mut c = BigRational::new(factorial(p as u64), BigInt::from(1) << p as usize);
        if (p / 2) % 2 == 1 {
            c = -c;
        }
        out = out.add_ball(&zeta_int(p + 1, wp).mul_rational(&c, wp));
    }
    Ok(out.round_to(prec))
}

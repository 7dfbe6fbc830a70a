//! Clausen functions `Cl_n(θ)`: `Σ sin(kθ)/k^n` for even `n`,
//! `Σ cos(kθ)/k^n` for odd `n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::ball::{RealBall, Rigor};
use super::bigfloat::BigFloat;
use super::constants::{beta_even, const_log2, const_pi, zeta_int};
use crate::error::NumericsError;

/// Argument of a Clausen function: one of the two exact special angles or a
/// general ball.
#[derive(Clone, Debug)]
pub enum Angle {
    Pi,
    HalfPi,
    Value(RealBall),
}

/// Most terms the generic direct series will sum.
const MAX_DIRECT_TERMS: u64 = 1 << 16;

pub fn clausen(order: u32, theta: &Angle, prec: u32) -> Result<RealBall, NumericsError> {
    if order < 1 {
        return Err(NumericsError::InvalidOrder(order));
    }
    match theta {
        Angle::Pi => Ok(clausen_pi(order, prec)),
        Angle::HalfPi => Ok(clausen_half_pi(order, prec)),
        Angle::Value(t) => clausen_generic(order, t, prec),
    }
}

fn four_pow_ratio(m: u32, den_log2: u32) -> BigRational {
    let four_m = BigInt::one() << (2 * m) as usize;
    BigRational::new(four_m - 1, BigInt::one() << den_log2 as usize)
}

fn clausen_pi(order: u32, prec: u32) -> RealBall {
    if order == 1 {
        return -&const_log2(prec);
    }
    if order.is_multiple_of(2) {
        return RealBall::zero();
    }
    let m = (order - 1) / 2;
    let c = four_pow_ratio(m, 2 * m);
    -&zeta_int(order, prec + 8)
        .mul_rational(&c, prec + 8)
        .round_to(prec)
}

fn clausen_half_pi(order: u32, prec: u32) -> RealBall {
    if order == 1 {
        return -&const_log2(prec).mul_pow2(-1);
    }
    if order.is_multiple_of(2) {
        return beta_even(order, prec);
    }
    let m = (order - 1) / 2;
    let c = four_pow_ratio(m, 4 * m + 1);
    -&zeta_int(order, prec + 8)
        .mul_rational(&c, prec + 8)
        .round_to(prec)
}

/// Reduces θ into [0, 2π) using the midpoint; returns (θ', sign) where the
/// sign accounts for the reflection θ -> 2π - θ applied when θ' > π.
fn reduce(theta: &RealBall, prec: u32, order: u32) -> (RealBall, bool) {
    let two_pi = const_pi(prec + 32).mul_pow2(1);
    let q = theta.mid().div_at(two_pi.mid(), 64).to_f64().floor() as i64;
    let mut t = theta - &two_pi.mul_rational(&BigRational::from_integer(q.into()), prec + 32);
    let mut flip = false;
    if t.mid() > const_pi(prec + 32).mid() {
        t = &two_pi - &t;
        // sine series are odd, cosine series even, under θ -> 2π - θ
        flip = order.is_multiple_of(2);
    }
    (t, flip)
}

fn clausen_generic(order: u32, theta: &RealBall, prec: u32) -> Result<RealBall, NumericsError> {
    let (t, flip) = reduce(theta, prec, order);
    if t.contains_zero() && order <= 2 {
        return Err(NumericsError::InvalidArgument(
            "Clausen argument too close to a multiple of 2π".into(),
        ));
    }
    let v = match order {
        1 => {
            // -log(2 sin(θ/2))
            let half = t.mid().mul_pow2(-1).with_precision(prec + 32);
            let s = RealBall::exact(half.sin().mul_pow2(1));
            -&s.ln()?.widen(&t.rad().mul_pow2(2))
        }
        2 => clausen2_series(&t, prec)?,
        _ => clausen_direct(order, &t, prec),
    };
    Ok(if flip { -&v } else { v })
}

/// `Cl_2(θ) = θ - θ log θ + Σ ζ(2k) θ^{2k+1} / (k (2k+1) (2π)^{2k})` for
/// 0 < θ ≤ π. The error is estimated from two truncation depths.
fn clausen2_series(t: &RealBall, prec: u32) -> Result<RealBall, NumericsError> {
    let wp = prec + 32;
    let theta = t.mid().clone().with_precision(wp);
    let two_pi = const_pi(wp).mid().mul_pow2(1).with_precision(wp);
    let r = (theta.clone() / two_pi).with_precision(wp);
    let r2 = r.clone() * r.clone();
    let mut base = theta.clone() - theta.clone() * theta.ln();
    let mut pow = theta.clone();
    let mut last_terms = Vec::new();
    let mut k = 1u32;
    loop {
        pow = pow * r2.clone();
        let z = zeta_int(2 * k, wp).mid().clone();
        let term = (z * pow.clone()).div_at(&BigFloat::from_int(k as i64 * (2 * k as i64 + 1)), wp);
        base = base + term.clone();
        last_terms.push(term.abs());
        let tiny = term.abs().to_f64();
        if (tiny == 0.0 || tiny.log2() < -((wp + 4) as f64)) && k > 2 {
            break;
        }
        k += 1;
        if k > 4 * wp {
            break;
        }
    }
    // error estimate: twice the magnitude of the last retained terms
    let n = last_terms.len();
    let est = last_terms[n.saturating_sub(2)..]
        .iter()
        .fold(BigFloat::zero(), |acc, x| acc + x.clone())
        .mul_pow2(1);
    let deriv = t.rad().mul_pow2(3);
    Ok(RealBall::new(
        base.with_precision(prec + 8),
        est + deriv + theta.ulp(),
        Rigor::Heuristic,
    ))
}

/// Direct series for order ≥ 3 with the tail bound `K^{1-n}/(n-1)`.
fn clausen_direct(order: u32, t: &RealBall, prec: u32) -> RealBall {
    let wp = prec + 64;
    let needed = 2f64.powf((prec as f64 + 4.0) / (order as f64 - 1.0)).ceil();
    let terms = if needed.is_finite() && needed < MAX_DIRECT_TERMS as f64 {
        needed as u64 + 1
    } else {
        MAX_DIRECT_TERMS
    };
    let theta = t.mid().clone().with_precision(wp);
    let (s1, c1) = theta.sin_cos();
    // (c_k, s_k) = (cos kθ, sin kθ) by complex multiplication
    let (mut c, mut s) = (c1.clone(), s1.clone());
    let mut sum = BigFloat::zero().with_precision(wp);
    for k in 1..=terms {
        let trig = if order.is_multiple_of(2) {
            s.clone()
        } else {
            c.clone()
        };
        let den = BigFloat::from_int(BigInt::from(k).pow(order));
        sum = sum + trig.div_at(&den, wp);
        let nc = c.clone() * c1.clone() - s.clone() * s1.clone();
        let ns = s * c1.clone() + c * s1.clone();
        c = nc;
        s = ns;
    }
    let kf = terms as f64;
    let tail = kf.powi(1 - order as i32) / (order as f64 - 1.0);
    // each recurrence step adds at most a few ulps of relative drift
    let drift = kf * kf * 2f64.powi(-(wp as i32) + 4);
    // |dCl_n/dθ| ≤ ζ(n-1) ≤ 2 for n ≥ 3
    let propagated = t.rad().mul_pow2(1);
    RealBall::new(
        sum.with_precision(prec + 8),
        BigFloat::from_f64(tail) + BigFloat::from_f64(drift) + propagated,
        t.rigor(),
    )
    .round_to(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn special_values_at_pi() {
        let c3 = clausen(3, &Angle::Pi, 128).unwrap();
        let expect = -&zeta_int(3, 128).mul_rational(&q(3, 4), 128);
        assert!(c3.overlaps(&expect));
        assert!(clausen(2, &Angle::Pi, 128).unwrap().mid().is_zero());
        assert!(clausen(0, &Angle::Pi, 128).is_err());
    }

    #[test]
    fn special_values_at_half_pi() {
        let c3 = clausen(3, &Angle::HalfPi, 128).unwrap();
        let expect = -&zeta_int(3, 128).mul_rational(&q(3, 32), 128);
        assert!(c3.overlaps(&expect));
        let c2 = clausen(2, &Angle::HalfPi, 128).unwrap();
        assert!(c2.overlaps(&beta_even(2, 128)));
    }

    #[test]
    fn closed_forms_cancel_for_small_m() {
        for m in 1..=6u32 {
            let c = clausen(2 * m + 1, &Angle::Pi, 160).unwrap();
            let z = zeta_int(2 * m + 1, 160).mul_rational(&four_pow_ratio(m, 2 * m), 160);
            let s = &c + &z;
            assert!(s.contains_zero(), "m = {m}: {s}");
        }
    }

    #[test]
    fn generic_angle_matches_tags() {
        let pi = const_pi(96);
        let half = pi.mul_pow2(-1);
        for order in 1..=5u32 {
            let g = clausen(order, &Angle::Value(half.clone()), 24).unwrap();
            let t = clausen(order, &Angle::HalfPi, 96).unwrap();
            assert!(
                (g.to_f64() - t.to_f64()).abs() < 1e-6,
                "order {order}: {} vs {}",
                g.to_f64(),
                t.to_f64()
            );
        }
        let g = clausen(3, &Angle::Value(pi.clone()), 30).unwrap();
        assert!(g.overlaps(&clausen(3, &Angle::Pi, 96).unwrap()));
        assert_eq!(
            clausen(2, &Angle::Value(half), 64).unwrap().rigor(),
            Rigor::Heuristic
        );
    }

    #[test]
    fn reflection_for_sine_series() {
        let pi = const_pi(96);
        let a = pi.mul_rational(&q(1, 3), 96);
        let b = pi.mul_rational(&q(5, 3), 96);
        let x = clausen(2, &Angle::Value(a), 64).unwrap().to_f64();
        let y = clausen(2, &Angle::Value(b), 64).unwrap().to_f64();
        assert!((x + y).abs() < 1e-15);
        // Cl_2(π/3) maximum of the Clausen function
        assert!((x - 1.014941606409653).abs() < 1e-14);
    }
}

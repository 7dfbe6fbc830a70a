//! Rigorous enclosures of π, log 2, ζ(s) at integers and β(m) at even m.
//!
//! Every routine sums its series in fixed point with 32 guard bits. Each
//! term is a single truncated integer division, so it is off by less than
//! one unit of the fixed-point scale; the returned radius is the count of
//! such units plus an explicit truncation bound plus the final rounding.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ball::{RealBall, Rigor};
use super::bigfloat::BigFloat;
use crate::exact::combinatorics::{bernoulli, factorial};

const GUARD: u32 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Key {
    Pi,
    Log2,
    Zeta(u32),
    Beta(u32),
}

fn cache() -> &'static Mutex<HashMap<(Key, u32), RealBall>> {
    static CACHE: OnceLock<Mutex<HashMap<(Key, u32), RealBall>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Computes at a precision rounded up to a multiple of 64 and memoises, so
/// nearby precisions share one evaluation.
fn cached(key: Key, prec: u32, compute: impl FnOnce(u32) -> RealBall) -> RealBall {
    let bucket = prec.div_ceil(64) * 64;
    let hit = cache()
        .lock()
        .expect("constant cache poisoned")
        .get(&(key, bucket))
        .cloned();
    let ball = match hit {
        Some(b) => b,
        None => {
            let b = compute(bucket);
            cache()
                .lock()
                .expect("constant cache poisoned")
                .entry((key, bucket))
                .or_insert(b)
                .clone()
        }
    };
    ball.round_to(prec)
}

/// Turns a fixed-point value `x * 2^-w` known to within `err_units` units
/// (plus an extra absolute bound) into a ball at `prec` bits.
fn ball_from_fixed(x: BigInt, w: u32, err_units: BigInt, extra: BigFloat, prec: u32) -> RealBall {
    let exact = BigFloat::from_parts(x, -(w as i64), 0);
    let err = BigFloat::from_parts(err_units, -(w as i64), 0) + extra;
    RealBall::new(exact, err, Rigor::Rigorous).round_to(prec)
}

fn one_fixed(w: u32) -> BigInt {
    BigInt::one() << w as usize
}

/// `atan(1/x)` in fixed point; returns (value, error units, number of terms).
fn atan_inv(x: u64, w: u32) -> (BigInt, BigInt) {
    let one = one_fixed(w);
    let x2 = BigInt::from(x) * x;
    let mut power = BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    loop {
        let term = &one / (&power * (2 * k + 1));
        if term.is_zero() {
            break;
        }
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &x2;
        k += 1;
    }
    // k truncated divisions plus the first omitted term (< 1 unit)
    (sum, BigInt::from(k + 1))
}

fn compute_pi(prec: u32) -> RealBall {
    let w = prec + GUARD;
    let (a5, e5) = atan_inv(5, w);
    let (a239, e239) = atan_inv(239, w);
    let x = a5 * 16 - a239 * 4;
    let err = e5 * 16 + e239 * 4;
    ball_from_fixed(x, w, err, BigFloat::zero(), prec)
}

fn compute_log2(prec: u32) -> RealBall {
    // log 2 = 2 atanh(1/3) = sum_k 2 / ((2k+1) 3^(2k+1))
    let w = prec + GUARD;
    let two = one_fixed(w) << 1usize;
    let mut power = BigInt::from(3);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    loop {
        let term = &two / (&power * (2 * k + 1));
        if term.is_zero() {
            break;
        }
        sum += term;
        power *= 9;
        k += 1;
    }
    // omitted tail < (9/8) * (first omitted term) < 2 units
    ball_from_fixed(sum, w, BigInt::from(k + 2), BigFloat::zero(), prec)
}

/// `floor(2^w * r)` for a nonnegative-or-negative rational, error < 1 unit.
fn rational_fixed(r: &BigRational, w: u32) -> BigInt {
    (r.numer() << w as usize) / r.denom()
}

/// log2 of |B_{2j}|/(2j)! * s(s+1)...(s+2j-2) * N^(-s-2j+1), estimated in f64.
fn em_term_log2(s: u32, j: u32, n: u64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut l = 1.0 - (2 * j) as f64 * two_pi.log2();
    for i in 0..(2 * j - 1) {
        l += ((s + i) as f64).log2();
    }
    l - ((s + 2 * j - 1) as f64) * (n as f64).log2()
}

fn rising(s: u32, len: u32) -> BigInt {
    (0..len).fold(BigInt::one(), |acc, i| acc * (s + i))
}

fn compute_zeta(s: u32, prec: u32) -> RealBall {
    assert!(s >= 2);
    let w = prec + GUARD;
    let target = -((prec + GUARD) as f64) - 8.0;
    // pick N, then M so that the first omitted Euler-Maclaurin term is tiny
    let mut n: u64 = 8 + prec as u64 / 4;
    let m = loop {
        let mut found = None;
        let mut prev = f64::INFINITY;
        for j in 1..=(4 * n as u32) {
            let l = em_term_log2(s, j + 1, n);
            if l < target {
                found = Some(j);
                break;
            }
            if l > prev {
                break;
            }
            prev = l;
        }
        match found {
            Some(j) => break j,
            None => n *= 2,
        }
    };

    let mut sum = BigInt::zero();
    let mut units = 0u64;
    let one = one_fixed(w);
    for k in 1..n {
        sum += &one / num_traits::pow(BigInt::from(k), s as usize);
        units += 1;
    }
    let nb = BigInt::from(n);
    // N^(1-s)/(s-1) + N^(-s)/2
    let integral = BigRational::new(
        BigInt::one(),
        num_traits::pow(nb.clone(), s as usize - 1) * (s - 1),
    );
    let half = BigRational::new(BigInt::one(), num_traits::pow(nb.clone(), s as usize) * 2);
    sum += rational_fixed(&integral, w) + rational_fixed(&half, w);
    units += 2;
    for j in 1..=m {
        let coeff = bernoulli(2 * j as usize) / BigRational::from_integer(factorial(2 * j as u64))
            * BigRational::from_integer(rising(s, 2 * j - 1));
        let term = coeff
            / BigRational::from_integer(num_traits::pow(nb.clone(), (s + 2 * j - 1) as usize));
        sum += rational_fixed(&term, w);
        units += 1;
    }
    let j = m + 1;
    let omitted = (bernoulli(2 * j as usize) / BigRational::from_integer(factorial(2 * j as u64))
        * BigRational::from_integer(rising(s, 2 * j - 1))
        / BigRational::from_integer(num_traits::pow(nb, (s + 2 * j - 1) as usize)))
    .abs();
    // remainder bounded by the first omitted term; doubled for slack
    let tail = BigFloat::from_rational(&omitted, 64).abs() * BigFloat::from_int(2);
    ball_from_fixed(sum, w, BigInt::from(units + 1), tail, prec)
}

/// Chebyshev-accelerated alternating sum of `1/(2k+1)^m`.
fn compute_beta(m: u32, prec: u32) -> RealBall {
    let w = prec + GUARD;
    // (3 + sqrt 8)^n > 2^(w + 8)
    let n = (((w + 8) as f64) / (3.0 + 8f64.sqrt()).log2()).ceil() as u64 + 1;
    // d = ((3+√8)^n + (3-√8)^n)/2 = T_n(3)
    let (mut t0, mut t1) = (BigInt::one(), BigInt::from(3));
    for _ in 1..n {
        let t2 = &t1 * 6 - &t0;
        t0 = t1;
        t1 = t2;
    }
    let d = t1;
    let mut b = BigInt::from(-1);
    let mut c = -d.clone();
    let mut s = BigInt::zero();
    let nn = n as i64;
    for k in 0..n {
        c = &b - &c;
        let den = num_traits::pow(BigInt::from(2 * k + 1), m as usize);
        s += (&c << w as usize) / den;
        let ki = k as i64;
        b = b * (2 * (ki + nn) * (ki - nn)) / ((2 * ki + 1) * (ki + 1));
    }
    let x = &s / &d;
    // division errors: n units in s become n/d units after dividing, plus 1
    let units = BigInt::from(n) / &d + 2;
    // acceleration error <= 2 S / (3+√8)^n <= 2 / (3+√8)^n <= 2^-(w+7)
    let accel = BigFloat::from_parts(BigInt::one(), -((w + 7) as i64), 0);
    ball_from_fixed(x, w, units, accel, prec)
}

pub fn const_pi(prec: u32) -> RealBall {
    cached(Key::Pi, prec.max(16), compute_pi)
}

pub fn const_log2(prec: u32) -> RealBall {
    cached(Key::Log2, prec.max(16), compute_log2)
}

/// ζ(s) for integer `s >= 2`.
pub fn zeta_int(s: u32, prec: u32) -> RealBall {
    assert!(s >= 2, "zeta_int needs s >= 2, got {s}");
    cached(Key::Zeta(s), prec.max(16), |p| compute_zeta(s, p))
}

/// Dirichlet β(m) for even `m >= 2`.
pub fn beta_even(m: u32, prec: u32) -> RealBall {
    assert!(
        m >= 2 && m.is_multiple_of(2),
        "beta_even needs even m >= 2, got {m}"
    );
    cached(Key::Beta(m), prec.max(16), |p| compute_beta(m, p))
}

/// Midpoint of π, for the floating kernels.
pub fn pi_float(prec: u32) -> BigFloat {
    const_pi(prec).mid().clone().with_precision(prec)
}

pub fn log2_float(prec: u32) -> BigFloat {
    const_log2(prec).mid().clone().with_precision(prec)
}

/// ζ(2k) from the Bernoulli closed form, as a ball.
pub fn zeta_even_closed_form(k: u32, prec: u32) -> RealBall {
    let b = bernoulli(2 * k as usize);
    let coeff = b.abs() * BigRational::from_integer(BigInt::one() << (2 * k - 1) as usize)
        / BigRational::from_integer(factorial(2 * k as u64));
    let pi = const_pi(prec + 16);
    pi.powi(2 * k as i64)
        .expect("positive power")
        .mul_rational(&coeff, prec + 16)
        .round_to(prec)
}

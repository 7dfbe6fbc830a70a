//! Richardson extrapolation of truncated nested sums.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::composition::{Composition, IndexSpace, Parity, SeriesKind};
use super::nested::nested_checkpoints;
use crate::error::SeriesError;
use crate::numerics::ball::{RealBall, Rigor};
use crate::numerics::bigfloat::BigFloat;
use crate::scalar::Real;

/// Precisions up to this many bits use the `f64` kernel.
pub const F64_KERNEL_BITS: u32 = 53;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Partial sums at `N, 2N, 4N, …` fitted to `c_0 + Σ c_i / N^i`.
    RichardsonGeometric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationPlan {
    pub n: u64,
    pub levels: u32,
    pub scheme: Scheme,
}

impl Default for TruncationPlan {
    fn default() -> Self {
        TruncationPlan {
            n: 100_000,
            levels: 3,
            scheme: Scheme::RichardsonGeometric,
        }
    }
}

impl TruncationPlan {
    pub fn new(n: u64, levels: u32) -> Self {
        TruncationPlan {
            n,
            levels,
            scheme: Scheme::RichardsonGeometric,
        }
    }

    pub fn validate(&self) -> Result<(), SeriesError> {
        if self.levels < 1 {
            return Err(SeriesError::InvalidPlan("levels must be at least 1".into()));
        }
        if self.n < 16 {
            return Err(SeriesError::InvalidPlan(format!(
                "N = {} is below 16",
                self.n
            )));
        }
        if self.levels > 24 {
            return Err(SeriesError::InvalidPlan(format!(
                "{} levels is too many",
                self.levels
            )));
        }
        Ok(())
    }

    /// Truncation points `N 2^i`; a single level also records `N/2` so an
    /// error estimate is available.
    pub(crate) fn checkpoints(&self, levels: u32) -> Vec<u64> {
        if levels == 1 {
            return vec![self.n / 2, self.n];
        }
        (0..levels).map(|i| self.n << i).collect()
    }
}

/// Solves the square system `Σ_j M_ij c_j = v_i` and returns `c_0`.
fn solve_constant(mut m: Vec<Vec<BigRational>>, mut v: Vec<BigRational>) -> BigRational {
    let n = v.len();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("extrapolation basis is nonsingular");
        m.swap(col, piv);
        v.swap(col, piv);
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = &m[r][col] / &m[col][col];
                let pivot = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot.iter()).skip(col) {
                    *x -= &f * y;
                }
                let t = &f * &v[col];
                v[r] -= t;
            }
        }
    }
    &v[0] / &m[0][0]
}

/// Basis `1, then u^i L^j for i ≥ 1, 0 ≤ j ≤ log_power`, where
/// `u = N_0/N = 2^{-level}` and `L = level`.
fn basis(level: u32, count: usize, log_power: u32) -> Vec<BigRational> {
    let u = BigRational::new(BigInt::one(), BigInt::one() << level as usize);
    let l = BigRational::from_integer(BigInt::from(level));
    let mut out = vec![BigRational::one()];
    let mut i = 1u32;
    while out.len() < count {
        let ui = num_traits::pow(u.clone(), i as usize);
        for j in 0..=log_power {
            if out.len() == count {
                break;
            }
            out.push(&ui * num_traits::pow(l.clone(), j as usize));
        }
        i += 1;
    }
    out
}

fn fit(levels: &[u32], values: &[BigRational], log_power: u32) -> BigRational {
    let m = values.len();
    let rows = levels.iter().map(|&lv| basis(lv, m, log_power)).collect();
    solve_constant(rows, values.to_vec())
}

/// Extrapolated limit of partial sums taken at `N 2^i` (levels `i`), with
/// the heuristic error `|full fit - fit dropping the lowest level and the
/// last basis function|` plus `noise`.
pub(crate) fn extrapolate_levels(
    levels: &[u32],
    values: &[BigFloat],
    log_power: u32,
    noise: &BigFloat,
    prec: u32,
) -> RealBall {
    let q: Vec<BigRational> = values.iter().map(BigFloat::to_rational).collect();
    let m = q.len();
    let full = fit(levels, &q, log_power);
    let reduced = if m >= 2 {
        fit(&levels[1..], &q[1..], log_power)
    } else {
        full.clone()
    };
    let diff = (&full - &reduced).abs();
    let mid = BigFloat::from_rational(&full, prec);
    let rad = BigFloat::from_rational(&diff, 64).abs() + noise.abs() + mid.ulp();
    RealBall::new(mid, rad, Rigor::Heuristic)
}

/// Partial sums at the checkpoints, evaluated in `f64` or at `prec + 32`
/// bits, together with an estimate of accumulated rounding.
pub(crate) fn partial_sums(
    parts: &[u32],
    space: IndexSpace,
    cps: &[u64],
    prec: u32,
) -> (Vec<BigFloat>, BigFloat) {
    let terms = *cps.last().unwrap_or(&1) as f64;
    if prec <= F64_KERNEL_BITS {
        let v = nested_checkpoints(parts, space, cps, &1.0f64);
        let top = v.last().copied().unwrap_or(0.0).abs();
        let noise = top * terms.sqrt() * 64.0 * f64::EPSILON;
        (
            v.into_iter().map(BigFloat::from_f64).collect(),
            BigFloat::from_f64(noise),
        )
    } else {
        let wp = prec + 32;
        let v = nested_checkpoints(parts, space, cps, &BigFloat::unit(wp));
        let top = v.last().map(|x| x.to_f64().abs()).unwrap_or(0.0);
        let noise = top * terms * 2f64.powi(-(wp as i32) + 2);
        (v, BigFloat::from_f64(noise))
    }
}

pub(crate) fn run_plan(
    parts: &[u32],
    space: IndexSpace,
    plan: &TruncationPlan,
    log_power: u32,
    prec: u32,
) -> Result<RealBall, SeriesError> {
    plan.validate()?;
    let mut levels = plan.levels;
    if log_power > 0 {
        levels = levels.max(1 + 2 * (log_power + 1));
    }
    let cps = plan.checkpoints(levels);
    let (values, noise) = partial_sums(parts, space, &cps, prec);
    if levels == 1 {
        let diff = (values[1].clone() - values[0].clone()).abs();
        let mid = values[1].clone().with_precision(prec.max(53));
        return Ok(RealBall::new(mid, diff + noise, Rigor::Heuristic));
    }
    let lv: Vec<u32> = (0..levels).collect();
    Ok(extrapolate_levels(
        &lv,
        &values,
        log_power,
        &noise,
        prec.max(53),
    ))
}

/// `ζ(c)` or `t(c)` from partial sums at `N, 2N, 4N, …` and Richardson
/// extrapolation. A part equal to 1 adds `log N` terms to the error model
/// and raises the number of levels to fit them. Always heuristic.
pub fn mzv_extrapolated(
    c: &Composition,
    plan: &TruncationPlan,
    prec: u32,
    kind: SeriesKind,
) -> Result<RealBall, SeriesError> {
    run_plan(
        c.parts(),
        IndexSpace::full(kind.parity()),
        plan,
        c.ones(),
        prec,
    )
}

/// `Σ_{n < m_1 < … < m_d} Π w(m_i)^{-2}` by extrapolated truncation.
pub fn tail_mhn_extrapolated(
    depth: u32,
    n: u64,
    parity: Parity,
    plan: &TruncationPlan,
    prec: u32,
) -> Result<RealBall, SeriesError> {
    if depth == 0 {
        plan.validate()?;
        return Ok(RealBall::from_int(1));
    }
    let parts = vec![2; depth as usize];
    run_plan(&parts, IndexSpace::after(parity, n), plan, 0, prec)
}

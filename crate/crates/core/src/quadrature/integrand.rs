//! Integrand families and adaptive node doubling.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::gauss::{gauss_legendre_rule, GaussLegendre};
use crate::error::QuadratureError;
use crate::exact::combinatorics::{bernoulli, factorial, factorial_q};
use crate::exact::cot_poly::RationalPolynomial;
use crate::numerics::ball::{RealBall, Rigor};
use crate::numerics::bigfloat::BigFloat;
use crate::scalar::Real;

const GUARD: u32 = 32;
/// Below this magnitude `x cot x` is summed from its Taylor series.
const SERIES_CUTOFF: f64 = 0.25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MomentParity {
    Odd,
    Even,
}

/// Definite integrals evaluated by Gauss-Legendre quadrature.
#[derive(Clone, Debug, PartialEq)]
pub enum IntegrandSpec {
    /// `∫_0^{π/2} x^p (1 - 2x/π)^q cot x dx`, `p ≥ 1`.
    CotMoment { p: u32, q: u32 },
    /// `∫_0^1 x^{2n-1} (2 arccos x)^{2b+1} / (2b+1)! dx`, `n ≥ 1`.
    ArccosMomentOdd { n: u32, b: u32 },
    /// `∫_0^1 x^{2n} arccos^{2b+1}(x) / (2b+1)! dx`.
    ArccosMomentEven { n: u32, b: u32 },
    /// `∫_0^{πz} x^p cot x dx`, `p ≥ 1`, `0 < z ≤ 1/2`.
    CotPower { p: u32, z: BigRational },
    /// `∫_0^1 P(x) cot(πx/2) dx`, `P(0) = 0`.
    CotPolynomial(RationalPolynomial),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadOptions {
    pub start_nodes: usize,
    pub max_nodes: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            start_nodes: 16,
            max_nodes: 4096,
        }
    }
}

#[derive(Clone, Debug)]
pub struct QuadResult {
    pub value: RealBall,
    /// Nodes of the accepted rule.
    pub nodes: usize,
    /// `|I_n - I_{n/2}|` at acceptance.
    pub difference: f64,
    /// Successive differences, one per doubling.
    pub history: Vec<f64>,
}

/// Taylor coefficients `(-4)^k B_{2k} / (2k)!` of `x cot x` in `x^{2k}`.
fn xcotx_coefficients<F: Real>(prec: u32) -> Vec<F> {
    // |c_{k+1}/c_k| x² ≤ (4π)^{-2} on the series range, about 7 bits per term
    let terms = (prec / 7 + 3) as usize;
    (0..terms)
        .map(|k| {
            let mut c = bernoulli(2 * k) / factorial_q(2 * k as u64);
            c *= BigRational::from_integer(BigInt::from(4).pow(k as u32));
            if k % 2 == 1 {
                c = -c;
            }
            F::from_rational(&c, prec)
        })
        .collect()
}

fn xcotx_with<F: Real>(x: &F, coeffs: &[F], unit: &F) -> F {
    if x.to_f64().abs() < SERIES_CUTOFF {
        let x2 = x.clone() * x.clone();
        let mut acc = F::zero();
        for c in coeffs.iter().rev() {
            acc = acc * x2.clone() + c.clone();
        }
        acc * unit.clone()
    } else {
        let (s, c) = x.sin_cos();
        x.clone() * c / s
    }
}

/// `x cot x`, with the value 1 at the origin.
pub fn xcotx<F: Real>(x: &F) -> F {
    let prec = x.precision().max(53);
    xcotx_with(x, &xcotx_coefficients::<F>(prec), &F::unit(prec))
}

struct Prepared<F: Real> {
    lo: F,
    hi: F,
    f: Box<dyn Fn(&F) -> F + Send + Sync>,
}

fn check(spec: &IntegrandSpec) -> Result<(), QuadratureError> {
    let bad = |m: String| Err(QuadratureError::InvalidParameter(m));
    match spec {
        IntegrandSpec::CotMoment { p: 0, .. } => bad("cot moment needs p >= 1".into()),
        IntegrandSpec::ArccosMomentOdd { n: 0, .. } => bad("odd arccos moment needs n >= 1".into()),
        IntegrandSpec::CotPower { p, z } => {
            if *p == 0 {
                return bad("cot power needs p >= 1".into());
            }
            let half = BigRational::new(1.into(), 2.into());
            if !z.is_positive() || z > &half {
                return bad(format!("z = {z} is outside (0, 1/2]"));
            }
            Ok(())
        }
        IntegrandSpec::CotPolynomial(p) if !p.coeff(0).is_zero() => {
            bad("polynomial must vanish at 0".into())
        }
        _ => Ok(()),
    }
}

fn prepare<F: Real + Send + Sync + 'static>(spec: &IntegrandSpec, wp: u32) -> Prepared<F> {
    let unit = F::unit(wp);
    let pi = F::pi(wp);
    let half_pi = pi.clone() / F::from_i64_exact(2);
    let coeffs = xcotx_coefficients::<F>(wp);
    let zero = F::zero();
    match spec.clone() {
        IntegrandSpec::CotMoment { p, q } => {
            let two_over_pi = F::from_i64_exact(2) * unit.clone() / pi.clone();
            Prepared {
                lo: zero,
                hi: half_pi,
                f: Box::new(move |x: &F| {
                    let lin = unit.clone() - two_over_pi.clone() * x.clone();
                    x.powu(p - 1) * lin.powu(q) * xcotx_with(x, &coeffs, &unit)
                }),
            }
        }
        IntegrandSpec::ArccosMomentOdd { n, b } => {
            let inv = F::from_rational(
                &BigRational::new(
                    BigInt::one() << (2 * b + 1) as usize,
                    factorial(2 * b as u64 + 1),
                ),
                wp,
            );
            Prepared {
                lo: zero,
                hi: half_pi,
                f: Box::new(move |t: &F| {
                    let (s, c) = t.sin_cos();
                    c.powu(2 * n - 1) * s * t.powu(2 * b + 1) * inv.clone()
                }),
            }
        }
        IntegrandSpec::ArccosMomentEven { n, b } => {
            let inv = F::from_rational(
                &BigRational::new(BigInt::one(), factorial(2 * b as u64 + 1)),
                wp,
            );
            Prepared {
                lo: zero,
                hi: half_pi,
                f: Box::new(move |t: &F| {
                    let (s, c) = t.sin_cos();
                    c.powu(2 * n) * s * t.powu(2 * b + 1) * inv.clone()
                }),
            }
        }
        IntegrandSpec::CotPower { p, z } => Prepared {
            lo: zero,
            hi: pi * F::from_rational(&z, wp),
            f: Box::new(move |x: &F| x.powu(p - 1) * xcotx_with(x, &coeffs, &unit)),
        },
        IntegrandSpec::CotPolynomial(poly) => {
            // P(x) cot(πx/2) = (P(x)/x) (2/π) y cot y with y = πx/2
            let reduced = poly.div_by_x().map(|c| F::from_rational(c, wp));
            let two_over_pi = F::from_i64_exact(2) * unit.clone() / pi.clone();
            Prepared {
                lo: zero,
                hi: unit.clone(),
                f: Box::new(move |x: &F| {
                    let y = half_pi.clone() * x.clone();
                    reduced.eval(x) * two_over_pi.clone() * xcotx_with(&y, &coeffs, &unit)
                }),
            }
        }
    }
}

impl<F: Real> GaussLegendre<F> {
    /// `∫_lo^hi f` with the rule mapped affinely onto `[lo, hi]`.
    pub fn apply(&self, lo: &F, hi: &F, f: impl Fn(&F) -> F) -> F {
        let two = F::from_i64_exact(2);
        let mid = (lo.clone() + hi.clone()) / two.clone();
        let half = (hi.clone() - lo.clone()) / two;
        let mut acc = F::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + w.clone() * f(&(mid.clone() + half.clone() * x.clone()));
        }
        acc * half
    }
}

/// Node doubling in any [`Real`] scalar; rules are built at `prec` bits.
/// Returns the accepted value, node count, difference and history.
pub fn integrate_scalar<F: Real + Send + Sync + 'static>(
    spec: &IntegrandSpec,
    prec: u32,
    tol: f64,
    opts: QuadOptions,
    rule: impl Fn(usize) -> Result<GaussLegendre<F>, QuadratureError>,
) -> Result<(F, usize, f64, Vec<f64>), QuadratureError> {
    check(spec)?;
    if opts.start_nodes < 2 {
        return Err(QuadratureError::TooFewNodes(opts.start_nodes));
    }
    let wp = F::unit(prec + GUARD).precision();
    let prep = prepare::<F>(spec, prec + GUARD);
    let floor_bits = wp.saturating_sub(GUARD + 8) as i32;
    let mut n = opts.start_nodes;
    let mut prev = rule(n)?.apply(&prep.lo, &prep.hi, &prep.f);
    let mut history = Vec::new();
    loop {
        let next_n = n * 2;
        if next_n > opts.max_nodes {
            return Err(QuadratureError::NoConvergence {
                nodes: n,
                difference: history.last().copied().unwrap_or(f64::INFINITY),
                tolerance: tol,
            });
        }
        let cur = rule(next_n)?.apply(&prep.lo, &prep.hi, &prep.f);
        let diff = (cur.clone() - prev).abs().to_f64();
        history.push(diff);
        let floor = cur.to_f64().abs().max(1.0) * 2f64.powi(-floor_bits);
        if diff <= tol.max(floor) {
            return Ok((cur, next_n, diff, history));
        }
        prev = cur;
        n = next_n;
    }
}

/// Integral at `prec` bits with node doubling from `opts.start_nodes` until
/// successive rules agree within `tol`. The radius is the last difference
/// plus a rounding allowance; the result is heuristic.
pub fn integrate_with(
    spec: &IntegrandSpec,
    prec: u32,
    tol: f64,
    opts: QuadOptions,
) -> Result<QuadResult, QuadratureError> {
    let rule = |n: usize| gauss_legendre_rule(n, prec).map(|r| (*r).clone());
    let (v, nodes, diff, history) = integrate_scalar::<BigFloat>(spec, prec, tol, opts, rule)?;
    let rounding = BigFloat::from_f64(v.to_f64().abs().max(1.0) * 2f64.powi(-(prec as i32) + 4));
    let rad = BigFloat::from_f64(diff) + rounding;
    let value = RealBall::new(v.with_precision(prec), rad, Rigor::Heuristic);
    Ok(QuadResult {
        value,
        nodes,
        difference: diff,
        history,
    })
}

/// Value of the single `nodes`-point rule, without doubling.
pub fn integrate_fixed(
    spec: &IntegrandSpec,
    nodes: usize,
    prec: u32,
) -> Result<BigFloat, QuadratureError> {
    check(spec)?;
    let rule = gauss_legendre_rule(nodes, prec)?;
    let prep = prepare::<BigFloat>(spec, prec + GUARD);
    Ok(rule.apply(&prep.lo, &prep.hi, &prep.f).with_precision(prec))
}

pub fn integrate(spec: &IntegrandSpec, prec: u32, tol: f64) -> Result<RealBall, QuadratureError> {
    integrate_with(spec, prec, tol, QuadOptions::default()).map(|r| r.value)
}

pub fn cot_moment_integral(
    p: u32,
    q: u32,
    prec: u32,
    tol: f64,
) -> Result<RealBall, QuadratureError> {
    integrate(&IntegrandSpec::CotMoment { p, q }, prec, tol)
}

pub fn arccos_moment(
    parity: MomentParity,
    n: u32,
    b: u32,
    prec: u32,
    tol: f64,
) -> Result<RealBall, QuadratureError> {
    let spec = match parity {
        MomentParity::Odd => IntegrandSpec::ArccosMomentOdd { n, b },
        MomentParity::Even => IntegrandSpec::ArccosMomentEven { n, b },
    };
    integrate(&spec, prec, tol)
}

pub fn cot_power_integral(
    p: u32,
    z: &BigRational,
    prec: u32,
    tol: f64,
) -> Result<RealBall, QuadratureError> {
    integrate(&IntegrandSpec::CotPower { p, z: z.clone() }, prec, tol)
}

pub fn cot_polynomial_quadrature(
    poly: &RationalPolynomial,
    prec: u32,
    tol: f64,
) -> Result<RealBall, QuadratureError> {
    integrate(&IntegrandSpec::CotPolynomial(poly.clone()), prec, tol)
}

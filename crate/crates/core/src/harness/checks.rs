//! Individual identity checks across the closed-form (A), quadrature (B)
//! and series (C) routes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::report::{route_value, run_check, Attempt, CheckResult, Route, RouteValue};
use crate::error::{Error, QuadratureError};
use crate::exact::combinatorics::{binomial, factorial, pow2_q};
use crate::exact::cot_poly::RationalPolynomial;
use crate::exact::cot_poly::{
    cot_polynomial_integral, cot_power_half_pi_closed_form, divisibility_experiment,
    experiment_polynomial,
};
use crate::exact::hoffman::{hat_h, hat_k, hat_t};
use crate::exact::poly::Polynomial;
use crate::numerics::ball::{RealBall, Rigor};
use crate::numerics::constants::{const_log2, const_pi, zeta_int};
use crate::numerics::eval::{cot_power_closed_form, eval_combination, CotPoint};
use crate::quadrature::{
    arccos_moment, cot_moment_integral, cot_polynomial_quadrature, cot_power_integral, MomentParity,
};
use crate::series::{
    mzv_extrapolated, single_sum_with, tail_mhn_extrapolated, Composition, Parity, SeriesKind,
    TruncationPlan,
};

/// Tolerances, precision and truncation shared by all checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub bits: u32,
    /// Pairs of closed-form and quadrature routes.
    pub tol: f64,
    /// Any pair involving the extrapolated series route.
    pub series_tol: f64,
    /// Moment recurrences evaluated on quadrature values.
    pub recurrence_tol: f64,
    pub series_plan: TruncationPlan,
    /// Quadrature stops at `tol * quad_tol_factor`.
    pub quad_tol_factor: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            bits: 256,
            tol: 1e-30,
            series_tol: 1e-8,
            recurrence_tol: 1e-25,
            series_plan: TruncationPlan::default(),
            quad_tol_factor: 0.01,
        }
    }
}

impl CheckConfig {
    fn quad_tol(&self, tol: f64) -> f64 {
        tol * self.quad_tol_factor
    }

    /// Series routes run in the `f64` kernel unless the series tolerance
    /// is beyond its reach.
    fn series_bits(&self, bits: u32) -> u32 {
        if self.series_tol >= 1e-12 {
            53
        } else {
            bits
        }
    }

    fn series_precheck(&self) -> Option<f64> {
        (self.series_tol < 1e-12).then_some(self.series_tol)
    }

    fn exact_route(&self, label: &'static str, ball: RealBall) -> Route {
        Route {
            label,
            ball,
            tol: self.tol,
            fixed_precision: false,
        }
    }

    fn series_route(&self, label: &'static str, ball: RealBall) -> Route {
        Route {
            label,
            ball,
            tol: self.series_tol,
            fixed_precision: self.series_tol >= 1e-12,
        }
    }
}

fn q(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

fn pi_power_times(e: u32, r: &BigRational, bits: u32) -> Result<RealBall, Error> {
    Ok(const_pi(bits).powi(e as i64)?.mul_rational(r, bits))
}

fn min_tol(a: f64, b: Option<f64>) -> Option<f64> {
    Some(b.map_or(a, |b| a.min(b)))
}

/// `H(a,b)`: closed form, `cot` moment of `x^{2a+2}(1-2x/π)^{2b+1}`, single sum.
pub fn verify_hoffman_h(a: u32, b: u32, cfg: &CheckConfig) -> CheckResult {
    let params = json!({"a": a, "b": b});
    run_check(
        "zagier_hoffman",
        params,
        cfg.bits,
        min_tol(cfg.tol, cfg.series_precheck()),
        |bits| {
            let ra = eval_combination(&hat_h(a, b), bits);
            let integral = cot_moment_integral(2 * a + 2, 2 * b + 1, bits, cfg.quad_tol(cfg.tol))?;
            let f = q(
                BigInt::one() << (2 * a + 3) as usize,
                factorial(2 * a as u64 + 2) * factorial(2 * b as u64 + 1),
            );
            let rb = integral.mul_ball(&pi_power_times(2 * b, &f, bits)?);
            let rc = single_sum_with(a, b, Parity::All, &cfg.series_plan, cfg.series_bits(bits))?;
            Ok(Attempt {
                routes: vec![
                    cfg.exact_route("A", ra),
                    cfg.exact_route("B", rb),
                    cfg.series_route("C", rc),
                ],
                ..Default::default()
            })
        },
    )
}

/// `T(a,b)`: closed form, `cot` moment of `x^{2a+1}(1-2x/π)^{2b+1}`, odd single sum.
pub fn verify_hoffman_t(a: u32, b: u32, cfg: &CheckConfig) -> CheckResult {
    let params = json!({"a": a, "b": b});
    run_check(
        "t_hoffman",
        params,
        cfg.bits,
        min_tol(cfg.tol, cfg.series_precheck()),
        |bits| {
            let ra = eval_combination(&hat_t(a, b), bits);
            let integral = cot_moment_integral(2 * a + 1, 2 * b + 1, bits, cfg.quad_tol(cfg.tol))?;
            let f = q(
                BigInt::one(),
                (BigInt::one() << (2 * b + 1) as usize)
                    * factorial(2 * a as u64 + 1)
                    * factorial(2 * b as u64 + 1),
            );
            let rb = integral.mul_ball(&pi_power_times(2 * b + 1, &f, bits)?);
            let rc = single_sum_with(a, b, Parity::Odd, &cfg.series_plan, cfg.series_bits(bits))?;
            Ok(Attempt {
                routes: vec![
                    cfg.exact_route("A", ra),
                    cfg.exact_route("B", rb),
                    cfg.series_route("C", rc),
                ],
                ..Default::default()
            })
        },
    )
}

/// `∫_0^{π/2} x^p cot x dx` against its `log 2`, `π`, `ζ` closed form.
pub fn verify_cot_power_half_pi(p: u32, cfg: &CheckConfig) -> CheckResult {
    run_check(
        "cot_power_half_pi",
        json!({"p": p}),
        cfg.bits,
        Some(cfg.tol),
        |bits| {
            let ra = eval_combination(&cot_power_half_pi_closed_form(p), bits);
            let rb = cot_moment_integral(p, 0, bits, cfg.quad_tol(cfg.tol))?;
            Ok(Attempt {
                routes: vec![cfg.exact_route("A", ra), cfg.exact_route("B", rb)],
                ..Default::default()
            })
        },
    )
}

/// `∫_0^{πz} x^p cot x dx` against its Clausen expansion, `z ∈ {1/4, 1/2}`.
pub fn verify_cot_power_clausen(z: CotPoint, p: u32, cfg: &CheckConfig) -> CheckResult {
    let params = json!({"z": z.z().to_string(), "p": p});
    run_check(
        "cot_power_clausen",
        params,
        cfg.bits,
        Some(cfg.tol),
        |bits| {
            let ra = cot_power_closed_form(z, p, bits)?;
            let rb = cot_power_integral(p, &z.z(), bits, cfg.quad_tol(cfg.tol))?;
            Ok(Attempt {
                routes: vec![cfg.exact_route("A", ra), cfg.exact_route("B", rb)],
                ..Default::default()
            })
        },
    )
}

/// `∫_0^1 P(x) cot(πx/2) dx` against its exact value.
pub fn verify_cot_polynomial(poly: &RationalPolynomial, cfg: &CheckConfig) -> CheckResult {
    let coeffs: Vec<String> = poly.coeffs().iter().map(|c| c.to_string()).collect();
    run_check(
        "cot_half_pi_polynomial",
        json!({"coefficients": coeffs}),
        cfg.bits,
        Some(cfg.tol),
        |bits| {
            let ra = eval_combination(&cot_polynomial_integral(poly)?, bits);
            let rb = cot_polynomial_quadrature(poly, bits, cfg.quad_tol(cfg.tol))?;
            Ok(Attempt {
                routes: vec![cfg.exact_route("A", ra), cfg.exact_route("B", rb)],
                ..Default::default()
            })
        },
    )
}

/// Closed prefactor multiplying the tail sum in the moment identities.
fn moment_prefactor(parity: MomentParity, n: u32, bits: u32) -> RealBall {
    let c = binomial(2 * n as u64, n as i64);
    match parity {
        // C(2n,n) / (n 4^n) · π/2
        MomentParity::Odd => {
            let r = q(c, BigInt::from(n) << (2 * n + 1) as usize);
            const_pi(bits).mul_rational(&r, bits)
        }
        // 4^n / ((2n+1)² C(2n,n))
        MomentParity::Even => {
            let m = BigInt::from(2 * n + 1);
            RealBall::from_rational(&q(BigInt::one() << (2 * n) as usize, &m * &m * c), bits)
        }
    }
}

fn moment_spec(parity: MomentParity, n: u32) -> Result<(), Error> {
    if parity == MomentParity::Odd && n == 0 {
        return Err(QuadratureError::InvalidParameter("odd moment needs n >= 1".into()).into());
    }
    Ok(())
}

/// Arccos moment by quadrature against prefactor × extrapolated tail sum.
pub fn verify_moments(parity: MomentParity, n: u32, b: u32, cfg: &CheckConfig) -> CheckResult {
    let params = json!({"parity": parity, "n": n, "b": b});
    run_check(
        "arccos_moment",
        params,
        cfg.bits,
        cfg.series_precheck(),
        |bits| {
            moment_spec(parity, n)?;
            let rb = arccos_moment(parity, n, b, bits, cfg.quad_tol(cfg.tol))?;
            let tail_parity = match parity {
                MomentParity::Odd => Parity::All,
                MomentParity::Even => Parity::Odd,
            };
            let tail = tail_mhn_extrapolated(
                b,
                n as u64,
                tail_parity,
                &cfg.series_plan,
                cfg.series_bits(bits),
            )?;
            let rc = moment_prefactor(parity, n, bits).mul_ball(&tail);
            Ok(Attempt {
                routes: vec![cfg.exact_route("B", rb), cfg.series_route("C", rc)],
                ..Default::default()
            })
        },
    )
}

/// `I_{n,b} = (2n-1)/(2n) I_{n-1,b} - I_{n,b-1}/n²` with `I = n · odd moment`
/// (`n ≥ 2`), or `J_{n,b} = 2n/(2n+1) J_{n-1,b} - J_{n,b-1}/(2n+1)²` with
/// `J = (2n+1) · even moment` (`n ≥ 1`); moments with `b < 0` vanish.
pub fn verify_moment_recurrence(
    parity: MomentParity,
    n: u32,
    b: u32,
    cfg: &CheckConfig,
) -> CheckResult {
    let params = json!({"parity": parity, "n": n, "b": b});
    let tol = cfg.recurrence_tol;
    run_check(
        "arccos_moment_recurrence",
        params,
        cfg.bits,
        Some(tol),
        |bits| {
            let min_n = if parity == MomentParity::Odd { 2 } else { 1 };
            if n < min_n {
                return Err(QuadratureError::InvalidParameter(format!(
                    "recurrence needs n >= {min_n}"
                ))
                .into());
            }
            let qt = cfg.quad_tol(tol.min(cfg.tol));
            let scale = |m: u32| match parity {
                MomentParity::Odd => BigRational::from_integer(m.into()),
                MomentParity::Even => BigRational::from_integer((2 * m + 1).into()),
            };
            let val = |m: u32, bb: Option<u32>| -> Result<RealBall, Error> {
                match bb {
                    None => Ok(RealBall::zero()),
                    Some(bb) => {
                        Ok(arccos_moment(parity, m, bb, bits, qt)?.mul_rational(&scale(m), bits))
                    }
                }
            };
            let lhs = val(n, Some(b))?;
            let prev = val(n - 1, Some(b))?;
            let lower = val(n, b.checked_sub(1))?;
            let (c1, c2) = match parity {
                MomentParity::Odd => (
                    q(BigInt::from(2 * n - 1), BigInt::from(2 * n)),
                    q(BigInt::from(-1), BigInt::from(n) * n),
                ),
                MomentParity::Even => (
                    q(BigInt::from(2 * n), BigInt::from(2 * n + 1)),
                    q(BigInt::from(-1), BigInt::from(2 * n + 1) * (2 * n + 1)),
                ),
            };
            let rhs = prev
                .mul_rational(&c1, bits)
                .add_ball(&lower.mul_rational(&c2, bits));
            let route = |label, ball| Route {
                label,
                ball,
                tol,
                fixed_precision: false,
            };
            Ok(Attempt {
                routes: vec![route("lhs", lhs), route("rhs", rhs)],
                ..Default::default()
            })
        },
    )
}

/// `∫_0^1 x^{2n-1} 2 arccos x dx = C(2n,n) π / (2n 4^n)`.
pub fn verify_wallis(n: u32, cfg: &CheckConfig) -> CheckResult {
    run_check("wallis", json!({"n": n}), cfg.bits, Some(cfg.tol), |bits| {
        moment_spec(MomentParity::Odd, n)?;
        let ra = moment_prefactor(MomentParity::Odd, n, bits);
        let rb = arccos_moment(MomentParity::Odd, n, 0, bits, cfg.quad_tol(cfg.tol))?;
        Ok(Attempt {
            routes: vec![cfg.exact_route("A", ra), cfg.exact_route("B", rb)],
            ..Default::default()
        })
    })
}

fn series_vs_closed(
    id: &str,
    params: serde_json::Value,
    comp: Vec<u32>,
    kind: SeriesKind,
    cfg: &CheckConfig,
    closed: impl Fn(u32) -> Result<RealBall, Error>,
) -> CheckResult {
    run_check(id, params, cfg.bits, cfg.series_precheck(), |bits| {
        let c = Composition::new(comp.clone())?;
        let rc = mzv_extrapolated(&c, &cfg.series_plan, cfg.series_bits(bits), kind)?;
        Ok(Attempt {
            routes: vec![
                cfg.exact_route("A", closed(bits)?),
                cfg.series_route("C", rc),
            ],
            ..Default::default()
        })
    })
}

/// `ζ(1,2) = ζ(3)`.
pub fn verify_euler_zeta(cfg: &CheckConfig) -> CheckResult {
    series_vs_closed(
        "euler_zeta_1_2",
        json!({"composition": [1, 2]}),
        vec![1, 2],
        SeriesKind::Zeta,
        cfg,
        |bits| Ok(zeta_int(3, bits)),
    )
}

/// `t(1,2) = -t(3)/2 + t(2) log 2` with `t(3) = 7ζ(3)/8`, `t(2) = π²/8`.
pub fn verify_euler_t(cfg: &CheckConfig) -> CheckResult {
    series_vs_closed(
        "euler_t_1_2",
        json!({"composition": [1, 2]}),
        vec![1, 2],
        SeriesKind::T,
        cfg,
        |bits| {
            let t3 = zeta_int(3, bits).mul_rational(&q(BigInt::from(-7), BigInt::from(16)), bits);
            let pi = const_pi(bits);
            let t2 = pi.mul_ball(&pi).mul_pow2(-3);
            Ok(t3.add_ball(&t2.mul_ball(&const_log2(bits))))
        },
    )
}

/// `ζ({2}^n) = π^{2n}/(2n+1)!`.
pub fn verify_zeta_twos(n: u32, cfg: &CheckConfig) -> CheckResult {
    series_vs_closed(
        "zeta_twos",
        json!({"n": n}),
        vec![2; n as usize],
        SeriesKind::Zeta,
        cfg,
        |bits| pi_power_times(2 * n, &q(BigInt::one(), factorial(2 * n as u64 + 1)), bits),
    )
}

/// `t({2}^n) = π^{2n}/(4^n (2n)!)`.
pub fn verify_t_twos(n: u32, cfg: &CheckConfig) -> CheckResult {
    series_vs_closed(
        "t_twos",
        json!({"n": n}),
        vec![2; n as usize],
        SeriesKind::T,
        cfg,
        |bits| {
            let d = factorial(2 * n as u64) << (2 * n) as usize;
            pi_power_times(2 * n, &q(BigInt::one(), d), bits)
        },
    )
}

fn exact_value(label: &str, text: String) -> RouteValue {
    RouteValue {
        label: label.to_string(),
        value: text,
        radius: "0".into(),
        rigor: Rigor::Rigorous,
    }
}

/// `K̂(a,b) = 2^{2a+2b+3} T̂(a,b)` exactly on the grid.
pub fn verify_murakami_scaling(a_max: u32, b_max: u32) -> CheckResult {
    run_check(
        "scaled_t_values",
        json!({"a_max": a_max, "b_max": b_max}),
        64,
        None,
        |_| {
            let mut bad = Vec::new();
            for a in 0..=a_max {
                for b in 0..=b_max {
                    let scaled = hat_t(a, b).scale(&pow2_q(2 * (a + b) as i64 + 3));
                    if hat_k(a, b) != scaled {
                        bad.push(format!("({a},{b})"));
                    }
                }
            }
            let extra = vec![
                exact_value("K", hat_k(a_max, b_max).to_string()),
                exact_value(
                    "scaled T",
                    hat_t(a_max, b_max)
                        .scale(&pow2_q(2 * (a_max + b_max) as i64 + 3))
                        .to_string(),
                ),
            ];
            let condition =
                (!bad.is_empty()).then(|| format!("scaling fails at {}", bad.join(", ")));
            Ok(Attempt {
                extra,
                condition,
                ..Default::default()
            })
        },
    )
}

/// Exact change of basis between the polynomial integral of
/// `x^{2a+2}(1-x)^{2b+1}` and `(2a+2)!(2b+1)!/π^{2a+2b+3} · Ĥ(a,b)`.
pub fn verify_basis_change(a: u32, b: u32) -> CheckResult {
    run_check(
        "polynomial_basis_change",
        json!({"a": a, "b": b}),
        64,
        None,
        |_| {
            let lhs = cot_polynomial_integral(&Polynomial::beta_kernel(2 * a + 2, 2 * b + 1))?;
            let f = BigRational::from_integer(
                factorial(2 * a as u64 + 2) * factorial(2 * b as u64 + 1),
            );
            let rhs = hat_h(a, b).scale(&f).shift_pi(-(2 * (a + b) as i64 + 3));
            let condition = (lhs != rhs).then(|| "combinations differ".to_string());
            Ok(Attempt {
                extra: vec![
                    exact_value("integral", lhs.to_string()),
                    exact_value("scaled H", rhs.to_string()),
                ],
                condition,
                ..Default::default()
            })
        },
    )
}

/// Divisibility of the scaled coefficients by `(2a+2)!`, and
/// `0 < ∫ x^{2a+2}(1-x)^{2a+1} cot(πx/2) dx < (2/π) B(2a+2, 2a+2)`.
pub fn verify_experiment(a: u32, cfg: &CheckConfig) -> CheckResult {
    run_check(
        "denominator_experiment",
        json!({"a": a}),
        cfg.bits,
        Some(cfg.tol),
        |bits| {
            let report = divisibility_experiment(a);
            let poly = experiment_polynomial(a);
            let ra = eval_combination(&cot_polynomial_integral(&poly)?, bits);
            let rb = cot_polynomial_quadrature(&poly, bits, cfg.quad_tol(cfg.tol))?;
            let beta = q(
                factorial(2 * a as u64 + 1) * factorial(2 * a as u64 + 1),
                factorial(4 * a as u64 + 3),
            );
            let bound =
                RealBall::from_rational(&(beta * BigRational::from_integer(2.into())), bits)
                    .div_ball(&const_pi(bits))?;
            let mut problems = Vec::new();
            if !report.all_divisible {
                problems.push("scaled coefficients not divisible".to_string());
            }
            if rb.lower() <= Zero::zero() {
                problems.push("integral not positive".to_string());
            }
            if rb.upper() >= bound.lower() {
                problems.push("integral not below the beta bound".to_string());
            }
            let digits = super::report::digits_for_bits(bits);
            let mut extra = vec![route_value("bound", &bound, digits)];
            extra.push(exact_value("divisor", report.factorial_divisor.to_string()));
            extra.push(exact_value(
                "scaled",
                report
                    .scaled_integers
                    .values()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            ));
            Ok(Attempt {
                routes: vec![cfg.exact_route("A", ra), cfg.exact_route("B", rb)],
                extra,
                condition: (!problems.is_empty()).then(|| problems.join("; ")),
            })
        },
    )
}

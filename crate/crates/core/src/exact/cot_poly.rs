//! Exact values of `∫_0^1 P(x) cot(πx/2) dx` and of `∫_0^{π/2} x^p cot x dx`,
//! and the denominator experiment built on them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::combination::{ZetaCombination, ZetaMonomial};
use super::combinatorics::{factorial, factorial_q, pow2_q};
use super::poly::Polynomial;
use crate::error::ExactError;

pub type RationalPolynomial = Polynomial<BigRational>;

/// `2P(1) log2/π + 2 Σ_k (-1)^k [P^{(2k)}(1)(1 - 2^{-2k}) + P^{(2k)}(0)] ζ(2k+1)/π^{2k+1}`.
pub fn cot_polynomial_integral(p: &RationalPolynomial) -> Result<ZetaCombination, ExactError> {
    let zero = BigRational::zero();
    let one = BigRational::one();
    let p0 = p.eval(&zero);
    if !p0.is_zero() {
        return Err(ExactError::NonzeroConstantTerm(p0.to_string()));
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let mut out = ZetaCombination::new();
    out.add_term(ZetaMonomial::log2(-1), &two * p.eval(&one));
    let mut d = p.clone();
    let half_deg = p.degree().max(0) as u32 / 2;
    for k in 1..=half_deg {
        d = d.derivative().derivative();
        let bracket = d.eval(&one) * (&one - pow2_q(-2 * k as i64)) + d.eval(&zero);
        let c = if k % 2 == 0 {
            &two * bracket
        } else {
            -(&two * bracket)
        };
        out.add_term(
            ZetaMonomial::zeta(-(2 * k as i64 + 1), 2 * k + 1).expect("odd argument"),
            c,
        );
    }
    Ok(out)
}

/// `∫_0^{π/2} x^p cot x dx` in closed form, `p ≥ 1`.
pub fn cot_power_half_pi_closed_form(p: u32) -> ZetaCombination {
    let pf = factorial_q(p as u64);
    let scale = pow2_q(-(p as i64));
    let mut out = ZetaCombination::from_term(ZetaMonomial::log2(p as i64), scale.clone());
    for k in 1..=p / 2 {
        let four_k = BigRational::from_integer(BigInt::one() << (2 * k) as usize);
        let mut c = &scale * &pf * (&four_k - BigRational::one())
            / (factorial_q((p - 2 * k) as u64) * four_k);
        if k % 2 == 1 {
            c = -c;
        }
        out.add_term(
            ZetaMonomial::zeta((p - 2 * k) as i64, 2 * k + 1).expect("odd argument"),
            c,
        );
    }
    if p.is_multiple_of(2) {
        let mut c = &pf * &scale;
        if (p / 2) % 2 == 1 {
            c = -c;
        }
        out.add_term(ZetaMonomial::zeta(0, p + 1).expect("odd argument"), c);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub a: u32,
    /// `r_k`, the coefficient of `ζ(2k+1)/π^{2k+1}`.
    #[serde(serialize_with = "ser_rational_map")]
    pub coefficients: BTreeMap<u32, BigRational>,
    /// `2^{4a+2} r_k` for every `k` where this is an integer.
    #[serde(serialize_with = "ser_int_map")]
    pub scaled_integers: BTreeMap<u32, BigInt>,
    pub log2_coefficient_zero: bool,
    pub all_divisible: bool,
    #[serde(serialize_with = "ser_int")]
    pub factorial_divisor: BigInt,
}

fn ser_rational_map<S: serde::Serializer>(
    m: &BTreeMap<u32, BigRational>,
    s: S,
) -> Result<S::Ok, S::Error> {
    let v: BTreeMap<String, String> = m
        .iter()
        .map(|(k, r)| (k.to_string(), r.to_string()))
        .collect();
    v.serialize(s)
}

fn ser_int_map<S: serde::Serializer>(m: &BTreeMap<u32, BigInt>, s: S) -> Result<S::Ok, S::Error> {
    let v: BTreeMap<String, String> = m
        .iter()
        .map(|(k, r)| (k.to_string(), r.to_string()))
        .collect();
    v.serialize(s)
}

fn ser_int<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    v.to_string().serialize(s)
}

/// The polynomial `x^{2a+2} (1-x)^{2a+1}` of the experiment.
pub fn experiment_polynomial(a: u32) -> RationalPolynomial {
    RationalPolynomial::beta_kernel(2 * a + 2, 2 * a + 1)
}

pub fn divisibility_experiment(a: u32) -> DivisibilityReport {
    let p = experiment_polynomial(a);
    let value = cot_polynomial_integral(&p).expect("kernel vanishes at 0");
    let log2_coefficient_zero = value.coefficient(&ZetaMonomial::log2(-1)).is_zero();
    let divisor = factorial(2 * a as u64 + 2);
    let scale = pow2_q(4 * a as i64 + 2);
    let mut coefficients = BTreeMap::new();
    let mut scaled_integers = BTreeMap::new();
    let mut all_divisible = log2_coefficient_zero;
    for k in 1..=(4 * a + 3) / 2 {
        let mono = ZetaMonomial::zeta(-(2 * k as i64 + 1), 2 * k + 1).expect("odd argument");
        let r = value.coefficient(&mono);
        let s = &r * &scale;
        if s.is_integer() {
            let n = s.to_integer();
            all_divisible &= n.is_multiple_of(&divisor);
            scaled_integers.insert(k, n);
        } else {
            all_divisible = false;
        }
        coefficients.insert(k, r);
    }
    DivisibilityReport {
        a,
        coefficients,
        scaled_integers,
        log2_coefficient_zero,
        all_divisible,
        factorial_divisor: divisor,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::hoffman::{hat_h, hat_t};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn poly(cs: &[i64]) -> RationalPolynomial {
        RationalPolynomial::new(cs.iter().map(|&c| q(c, 1)).collect())
    }

    fn zm(k: u32) -> ZetaMonomial {
        ZetaMonomial::zeta(-(2 * k as i64 + 1), 2 * k + 1).unwrap()
    }

    #[test]
    fn cot_polynomial_examples() {
        let v = cot_polynomial_integral(&poly(&[0, 1])).unwrap();
        assert_eq!(
            v,
            ZetaCombination::from_term(ZetaMonomial::log2(-1), q(2, 1))
        );
        let v = cot_polynomial_integral(&poly(&[0, 0, 1])).unwrap();
        assert_eq!(v.coefficient(&ZetaMonomial::log2(-1)), q(2, 1));
        assert_eq!(v.coefficient(&zm(1)), q(-7, 1));
        assert_eq!(v.len(), 2);
        let v = cot_polynomial_integral(&poly(&[0, 0, 1, -1])).unwrap();
        assert_eq!(v, ZetaCombination::from_term(zm(1), q(2, 1)));
        assert!(matches!(
            cot_polynomial_integral(&poly(&[1, 1])),
            Err(ExactError::NonzeroConstantTerm(_))
        ));
    }

    #[test]
    fn basis_change_matches_hat_h_and_hat_t() {
        for a in 0..=4u32 {
            for b in 0..=(4 - a) {
                let w = (2 * a + 2 * b + 3) as i64;
                let p = RationalPolynomial::beta_kernel(2 * a + 2, 2 * b + 1);
                let lhs = cot_polynomial_integral(&p).unwrap();
                let f = factorial_q(2 * a as u64 + 2) * factorial_q(2 * b as u64 + 1);
                let rhs = hat_h(a, b).shift_pi(-w).scale(&f);
                assert_eq!(lhs, rhs, "H at ({a},{b})");

                let p = RationalPolynomial::beta_kernel(2 * a + 1, 2 * b + 1);
                let lhs = cot_polynomial_integral(&p).unwrap();
                let f = factorial_q(2 * a as u64 + 1)
                    * factorial_q(2 * b as u64 + 1)
                    * pow2_q(2 * (a + b) as i64 + 3);
                let rhs = hat_t(a, b).shift_pi(-w).scale(&f);
                assert_eq!(lhs, rhs, "T at ({a},{b})");
            }
        }
    }

    #[test]
    fn cot_power_half_pi_small_cases() {
        let l1 = cot_power_half_pi_closed_form(1);
        assert_eq!(
            l1,
            ZetaCombination::from_term(ZetaMonomial::log2(1), q(1, 2))
        );
        let l2 = cot_power_half_pi_closed_form(2);
        assert_eq!(l2.coefficient(&ZetaMonomial::log2(2)), q(1, 4));
        assert_eq!(l2.coefficient(&ZetaMonomial::zeta(0, 3).unwrap()), q(-7, 8));
    }

    #[test]
    fn divisibility_small() {
        let r = divisibility_experiment(0);
        assert_eq!(r.coefficients[&1], q(2, 1));
        assert_eq!(r.scaled_integers[&1], BigInt::from(8));
        assert_eq!(r.factorial_divisor, BigInt::from(2));
        assert!(r.all_divisible && r.log2_coefficient_zero);
        for a in 1..=6 {
            assert!(divisibility_experiment(a).all_divisible, "a = {a}");
        }
    }
}

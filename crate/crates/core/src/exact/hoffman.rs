//! Closed forms of the Hoffman elements `H(a,b) = ζ(2^a, 3, 2^b)` and their
//! odd-index analogues `T(a,b)`, `K(a,b) = 2^{2a+2b+3} T(a,b)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::combination::{ZetaCombination, ZetaMonomial};
use super::combinatorics::{binomial_q, factorial_q, pow2_q};
use crate::error::ExactError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HoffmanKind {
    /// `ζ(2,…,2) = π^{2n}/(2n+1)!`
    H,
    /// `t(2,…,2) = π^{2n}/(4^n (2n)!)`
    T,
    /// `2^{2n} t(2,…,2) = π^{2n}/(2n)!`
    K,
}

fn check_k(a: u32, b: u32, k: u32) -> Result<(), ExactError> {
    let max = a + b + 1;
    if k < 1 || k > max {
        return Err(ExactError::CoefficientIndex { a, b, k, max });
    }
    Ok(())
}

fn one_minus_4_pow_neg(k: u32) -> BigRational {
    BigRational::one() - pow2_q(-2 * k as i64)
}

fn sign(k: u32) -> BigRational {
    if k.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// `C(2k, 2a+2) - (1 - 2^{-2k}) C(2k, 2b+1)`.
pub fn zagier_coefficient(a: u32, b: u32, k: u32) -> Result<BigRational, ExactError> {
    check_k(a, b, k)?;
    let n = 2 * k as u64;
    Ok(binomial_q(n, 2 * a as i64 + 2) - one_minus_4_pow_neg(k) * binomial_q(n, 2 * b as i64 + 1))
}

/// `(-1)^{k+1} (C(2k, 2a+1) + (1 - 2^{-2k}) C(2k, 2b+1)) 2^{-2k}`.
pub fn t_coefficient(a: u32, b: u32, k: u32) -> Result<BigRational, ExactError> {
    check_k(a, b, k)?;
    Ok(-sign(k) * bracket_t(a, b, k) * pow2_q(-2 * k as i64))
}

fn bracket_t(a: u32, b: u32, k: u32) -> BigRational {
    let n = 2 * k as u64;
    binomial_q(n, 2 * a as i64 + 1) + one_minus_4_pow_neg(k) * binomial_q(n, 2 * b as i64 + 1)
}

/// Coefficient `c` of `hoffman_closed(kind, n) = c π^{2n}`.
pub fn hoffman_factor(kind: HoffmanKind, n: u32) -> BigRational {
    let n = n as u64;
    match kind {
        HoffmanKind::H => BigRational::one() / factorial_q(2 * n + 1),
        HoffmanKind::T => BigRational::one() / (factorial_q(2 * n) * pow2_q(2 * n as i64)),
        HoffmanKind::K => BigRational::one() / factorial_q(2 * n),
    }
}

pub fn hoffman_closed(kind: HoffmanKind, n: u32) -> ZetaCombination {
    ZetaCombination::from_term(
        ZetaMonomial::pi_power(2 * n as i64),
        hoffman_factor(kind, n),
    )
}

fn assemble(
    a: u32,
    b: u32,
    kind: HoffmanKind,
    coeff: impl Fn(u32) -> BigRational,
) -> ZetaCombination {
    let n = a + b + 1;
    let mut out = ZetaCombination::new();
    for k in 1..=n {
        let m = n - k;
        let c = coeff(k) * hoffman_factor(kind, m);
        if c.is_zero() {
            continue;
        }
        let mono = ZetaMonomial::zeta(2 * m as i64, 2 * k + 1).expect("odd argument");
        out.add_term(mono, c);
    }
    out
}

/// Right-hand side of the closed formula for `H(a,b)`.
pub fn hat_h(a: u32, b: u32) -> ZetaCombination {
    assemble(a, b, HoffmanKind::H, |k| {
        BigRational::from_integer(BigInt::from(2))
            * sign(k)
            * zagier_coefficient(a, b, k).expect("k in range")
    })
}

/// Right-hand side of the closed formula for `T(a,b)`.
pub fn hat_t(a: u32, b: u32) -> ZetaCombination {
    assemble(a, b, HoffmanKind::T, |k| {
        t_coefficient(a, b, k).expect("k in range")
    })
}

/// Right-hand side of the closed formula for `K(a,b)`.
pub fn hat_k(a: u32, b: u32) -> ZetaCombination {
    assemble(a, b, HoffmanKind::K, |k| {
        BigRational::from_integer(BigInt::from(2)) * -sign(k) * bracket_t(a, b, k)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn z(pi: i64, m: u32) -> ZetaMonomial {
        ZetaMonomial::zeta(pi, m).unwrap()
    }

    #[test]
    fn zagier_coefficient_examples() {
        assert_eq!(zagier_coefficient(0, 0, 1).unwrap(), q(-1, 2));
        assert_eq!(zagier_coefficient(1, 0, 2).unwrap(), q(-11, 4));
        assert_eq!(zagier_coefficient(0, 1, 1).unwrap(), q(1, 1));
        assert!(matches!(
            zagier_coefficient(0, 0, 2),
            Err(ExactError::CoefficientIndex { max: 1, .. })
        ));
        assert!(zagier_coefficient(1, 1, 0).is_err());
    }

    #[test]
    fn t_coefficient_examples() {
        assert_eq!(t_coefficient(0, 0, 1).unwrap(), q(7, 8));
        assert_eq!(t_coefficient(1, 0, 1).unwrap(), q(3, 8));
        assert_eq!(t_coefficient(1, 0, 2).unwrap(), q(-31, 64));
        assert!(t_coefficient(1, 0, 3).is_err());
    }

    #[test]
    fn hat_h_examples() {
        assert_eq!(hat_h(0, 0), ZetaCombination::from_term(z(0, 3), q(1, 1)));
        let h10 = hat_h(1, 0);
        assert_eq!(h10.len(), 2);
        assert_eq!(h10.coefficient(&z(2, 3)), q(1, 2));
        assert_eq!(h10.coefficient(&z(0, 5)), q(-11, 2));
        let h01 = hat_h(0, 1);
        assert_eq!(h01.coefficient(&z(2, 3)), q(-1, 3));
        assert_eq!(h01.coefficient(&z(0, 5)), q(9, 2));
    }

    #[test]
    fn hat_t_examples() {
        assert_eq!(hat_t(0, 0), ZetaCombination::from_term(z(0, 3), q(7, 8)));
        let t10 = hat_t(1, 0);
        assert_eq!(t10.coefficient(&z(2, 3)), q(3, 64));
        assert_eq!(t10.coefficient(&z(0, 5)), q(-31, 64));
        // k=1: (C(2,1) + (3/4) C(2,3)) / 4 = 1/2, times T(1) = π²/8
        // k=2: -(C(4,1) + (15/16) C(4,3)) / 16 = -31/64
        let t01 = hat_t(0, 1);
        assert_eq!(t01.coefficient(&z(2, 3)), q(1, 16));
        assert_eq!(t01.coefficient(&z(0, 5)), q(-31, 64));
    }

    #[test]
    fn hat_k_examples() {
        assert_eq!(hat_k(0, 0), ZetaCombination::from_term(z(0, 3), q(7, 1)));
        assert_eq!(hat_k(1, 0), hat_t(1, 0).scale(&q(32, 1)));
    }

    #[test]
    fn hoffman_closed_examples() {
        assert_eq!(
            hoffman_closed(HoffmanKind::H, 0),
            ZetaCombination::from_term(ZetaMonomial::pi_power(0), q(1, 1))
        );
        assert_eq!(
            hoffman_closed(HoffmanKind::H, 2),
            ZetaCombination::from_term(ZetaMonomial::pi_power(4), q(1, 120))
        );
        assert_eq!(
            hoffman_closed(HoffmanKind::T, 1),
            ZetaCombination::from_term(ZetaMonomial::pi_power(2), q(1, 8))
        );
    }

    #[test]
    fn weight_homogeneity() {
        for a in 0..=8u32 {
            for b in 0..=(8 - a) {
                let w = 2 * (a + b) as i64 + 3;
                assert!(hat_h(a, b).is_homogeneous(w));
                assert!(hat_t(a, b).is_homogeneous(w));
                assert!(hat_k(a, b).is_homogeneous(w));
            }
        }
    }
}

//! Taylor coefficients of `arcsin^{2r}(x)/(2r)!` and `arcsin^{2r+1}(x)/(2r+1)!`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::composition::Parity;
use super::mhn::prefix_mhn;
use crate::exact::combinatorics::{binomial, pow2_q};

/// Coefficient of `x^{2n}` in `arcsin^{2r}(x)/(2r)!`:
/// `4^{n-r} / (n² C(2n,n)) · A_n` with `A_n` the depth-`(r-1)` prefix value.
pub fn arcsin_even_coeff(r: u32, n: u64) -> BigRational {
    assert!(r >= 1 && n >= 1, "arcsin_even_coeff needs r, n >= 1");
    if n < r as u64 {
        return BigRational::zero();
    }
    let a = prefix_mhn(r - 1, n, Parity::All)
        .get(n)
        .cloned()
        .expect("in table");
    let den = BigInt::from(n) * n * binomial(2 * n, n as i64);
    pow2_q(2 * (n as i64 - r as i64)) * a / BigRational::from_integer(den)
}

/// Coefficient of `x^{2n+1}` in `arcsin^{2r+1}(x)/(2r+1)!`:
/// `C(2n,n) / ((2n+1) 4^n) · A_n` with `A_n` the depth-`r` odd prefix value.
pub fn arcsin_odd_coeff(r: u32, n: u64) -> BigRational {
    if n < r as u64 {
        return BigRational::zero();
    }
    let a = prefix_mhn(r, n + 1, Parity::Odd)
        .get(n)
        .cloned()
        .expect("in table");
    let num = BigRational::from_integer(binomial(2 * n, n as i64));
    num * pow2_q(-2 * n as i64) * a / BigRational::from_integer(BigInt::from(2 * n + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::combinatorics::factorial_q;
    use crate::exact::poly::Polynomial;
    use num_traits::{One, ToPrimitive};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Truncated Taylor polynomial of arcsin from its own derivative series.
    fn arcsin_poly(deg: usize) -> Polynomial<BigRational> {
        let mut c = vec![BigRational::zero(); deg + 1];
        let mut n = 0u64;
        while 2 * n < deg as u64 {
            // (2n)! / (4^n (n!)^2 (2n+1))
            c[(2 * n + 1) as usize] = factorial_q(2 * n)
                / (pow2_q(2 * n as i64) * factorial_q(n) * factorial_q(n))
                / BigRational::from_integer((2 * n + 1).into());
            n += 1;
        }
        Polynomial::new(c)
    }

    fn truncate(p: &Polynomial<BigRational>, deg: usize) -> Polynomial<BigRational> {
        Polynomial::new(p.coeffs().iter().take(deg + 1).cloned().collect())
    }

    #[test]
    fn examples() {
        assert_eq!(arcsin_even_coeff(1, 1), q(1, 2));
        assert_eq!(arcsin_even_coeff(1, 2), q(1, 6));
        assert_eq!(arcsin_even_coeff(2, 1), q(0, 1));
        assert_eq!(arcsin_odd_coeff(0, 0), q(1, 1));
        assert_eq!(arcsin_odd_coeff(0, 1), q(1, 6));
        assert_eq!(arcsin_odd_coeff(1, 0), q(0, 1));
    }

    #[test]
    fn matches_power_series_composition() {
        let deg = 16;
        let s = arcsin_poly(deg);
        let mut pw = Polynomial::constant(BigRational::one());
        for k in 1..=6u32 {
            pw = truncate(&(&pw * &s), deg);
            let scaled = pw.scale(&(BigRational::one() / factorial_q(k as u64)));
            for d in 0..=deg {
                let got = if d % 2 == 0 {
                    if k % 2 == 1 || d == 0 {
                        continue;
                    }
                    arcsin_even_coeff(k / 2, (d / 2) as u64)
                } else {
                    if k % 2 == 0 {
                        continue;
                    }
                    arcsin_odd_coeff((k - 1) / 2, ((d - 1) / 2) as u64)
                };
                assert_eq!(got, scaled.coeff(d), "power {k}, degree {d}");
            }
        }
    }

    #[test]
    fn taylor_values_at_half() {
        let x2 = 0.25f64;
        let even: f64 = (1..=40)
            .map(|n| arcsin_even_coeff(1, n).to_f64().unwrap() * x2.powi(n as i32))
            .sum();
        assert!((even - std::f64::consts::PI.powi(2) / 72.0).abs() < 1e-10);
        let odd: f64 = (0..=40)
            .map(|n| arcsin_odd_coeff(0, n).to_f64().unwrap() * 0.5f64.powi(2 * n as i32 + 1))
            .sum();
        assert!((odd - std::f64::consts::PI / 6.0).abs() < 1e-10);
    }
}

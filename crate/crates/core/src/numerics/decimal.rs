//! Exact decimal rounding of rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn pow10(n: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), n as usize)
}

/// Rounds `|r|` to `digits` significant digits (half away from zero).
/// Returns the digit string and the decimal exponent of the leading digit.
pub(crate) fn round_significant(r: &BigRational, digits: usize) -> Option<(BigInt, i64)> {
    if r.is_zero() {
        return None;
    }
    let digits = digits.max(1);
    let a = r.abs();
    let est = (a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2;
    let mut e = est.floor() as i64;
    let scaled = |e: i64| -> BigRational {
        let shift = digits as i64 - 1 - e;
        if shift >= 0 {
            &a * BigRational::from_integer(pow10(shift as u32))
        } else {
            &a / BigRational::from_integer(pow10((-shift) as u32))
        }
    };
    let lo = BigRational::from_integer(pow10(digits as u32 - 1));
    let hi = BigRational::from_integer(pow10(digits as u32));
    let mut s = scaled(e);
    loop {
        if s < lo {
            e -= 1;
        } else if s >= hi {
            e += 1;
        } else {
            break;
        }
        s = scaled(e);
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut n = (s + half).floor().to_integer();
    if n == pow10(digits as u32) {
        n = n.div_floor(&BigInt::from(10));
        e += 1;
    }
    Some((n, e))
}

/// Renders `r` with `digits` significant digits, positional for moderate
/// exponents and scientific otherwise.
pub fn format_significant(r: &BigRational, digits: usize) -> String {
    let Some((n, e)) = round_significant(r, digits) else {
        return "0".to_string();
    };
    let sign = if r.is_negative() { "-" } else { "" };
    let ds = n.to_string();
    let body = if (-6..=digits as i64 + 2).contains(&e) && e < 40 {
        if e < 0 {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), ds)
        } else {
            let int_len = (e + 1) as usize;
            if int_len >= ds.len() {
                format!("{}{}", ds, "0".repeat(int_len - ds.len()))
            } else {
                format!("{}.{}", &ds[..int_len], &ds[int_len..])
            }
        }
    } else {
        let mantissa = if ds.len() > 1 {
            format!("{}.{}", &ds[..1], &ds[1..])
        } else {
            ds.clone()
        };
        format!("{}e{}", mantissa, e)
    };
    format!("{sign}{body}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn positional_rendering() {
        assert_eq!(format_significant(&q(1, 3), 5), "0.33333");
        assert_eq!(format_significant(&q(2, 3), 5), "0.66667");
        assert_eq!(format_significant(&q(-22, 7), 4), "-3.143");
        assert_eq!(format_significant(&q(1234567, 1), 3), "1.23e6");
        assert_eq!(format_significant(&q(1234567, 1), 5), "1234600");
        assert_eq!(format_significant(&q(0, 1), 3), "0");
    }

    #[test]
    fn carry_into_next_decade() {
        assert_eq!(format_significant(&q(99999, 100000), 3), "1.00");
        assert_eq!(format_significant(&q(-9996, 1), 3), "-10000");
    }

    #[test]
    fn scientific_rendering() {
        let tiny = BigRational::new(1.into(), pow10(40));
        assert_eq!(format_significant(&tiny, 2), "1.0e-40");
    }
}

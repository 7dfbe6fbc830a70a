//! Binomials, factorials and Bernoulli numbers.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Factorials up to this index are memoised.
pub const DEFAULT_FACTORIAL_CACHE: usize = 512;

static FACTORIALS: OnceLock<Vec<BigInt>> = OnceLock::new();
static BERNOULLI: RwLock<Vec<BigRational>> = RwLock::new(Vec::new());

fn build_factorials(limit: usize) -> Vec<BigInt> {
    let mut t = Vec::with_capacity(limit + 1);
    t.push(BigInt::one());
    for i in 1..=limit {
        let next = &t[i - 1] * BigInt::from(i);
        t.push(next);
    }
    t
}

fn factorial_table() -> &'static [BigInt] {
    FACTORIALS.get_or_init(|| build_factorials(DEFAULT_FACTORIAL_CACHE))
}

/// Sets the memoisation bound. Only effective before the first factorial is
/// requested; returns whether the bound was applied.
pub fn configure_factorial_cache(limit: usize) -> bool {
    FACTORIALS.set(build_factorials(limit.max(1))).is_ok()
}

pub fn factorial(n: u64) -> BigInt {
    let table = factorial_table();
    if (n as usize) < table.len() {
        return table[n as usize].clone();
    }
    let mut acc = table[table.len() - 1].clone();
    for i in table.len() as u64..=n {
        acc *= i;
    }
    acc
}

pub fn factorial_q(n: u64) -> BigRational {
    BigRational::from_integer(factorial(n))
}

/// `C(n, k)`; zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn binomial_q(n: u64, k: i64) -> BigRational {
    BigRational::from_integer(binomial(n, k))
}

/// `2^e` as a rational; `e` may be negative.
pub fn pow2_q(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << e as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

/// Bernoulli number `B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> BigRational {
    if let Some(b) = BERNOULLI.read().expect("bernoulli cache poisoned").get(n) {
        return b.clone();
    }
    let mut table = BERNOULLI.write().expect("bernoulli cache poisoned");
    if table.is_empty() {
        table.push(BigRational::one());
    }
    // sum_{k=0}^{m} C(m+1, k) B_k = 0
    while table.len() <= n {
        let m = table.len();
        let mut s = BigRational::zero();
        for (k, bk) in table.iter().enumerate() {
            if !bk.is_zero() {
                s += bk * binomial_q(m as u64 + 1, k as i64);
            }
        }
        let b = -s / BigRational::from_integer(BigInt::from(m + 1));
        table.push(b);
    }
    table[n].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(2, 3), BigInt::from(0));
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(5, -1), BigInt::from(0));
        assert_eq!(binomial(0, 0), BigInt::from(1));
    }

    #[test]
    fn binomial_pascal_rule() {
        for n in 1..40u64 {
            for k in 0..=n as i64 {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn factorial_beyond_cache() {
        let f = factorial(DEFAULT_FACTORIAL_CACHE as u64 + 3);
        let g = factorial(DEFAULT_FACTORIAL_CACHE as u64);
        let k = DEFAULT_FACTORIAL_CACHE as u64;
        assert_eq!(f, g * (k + 1) * (k + 2) * (k + 3));
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(12), q(-691, 2730));
        assert_eq!(bernoulli(13), q(0, 1));
    }

    #[test]
    fn concurrent_cache_fill_is_consistent() {
        let handles: Vec<_> = (0..4)
            .map(|i| std::thread::spawn(move || (bernoulli(30 + i), factorial(600 + i as u64))))
            .collect();
        for (i, h) in handles.into_iter().enumerate() {
            let (b, f) = h.join().unwrap();
            assert_eq!(b, bernoulli(30 + i));
            assert_eq!(f, factorial(600 + i as u64));
        }
    }
}

//! Working-precision configuration and the guard-doubling retry policy.

use serde::{Deserialize, Serialize};

use super::ball::RealBall;
use crate::error::NumericsError;

pub const DEFAULT_GUARD_BITS: u32 = 32;
pub const MAX_RETRIES: u32 = 3;
pub const DEFAULT_SERIES_TRUNCATION: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    pub working_bits: u32,
    pub target_digits: u32,
    pub series_truncation: u64,
    pub guard_bits: u32,
}

pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32
}

impl PrecisionConfig {
    pub fn for_digits(digits: u32) -> Self {
        let digits = digits.max(1);
        PrecisionConfig {
            working_bits: bits_for_digits(digits) + DEFAULT_GUARD_BITS,
            target_digits: digits,
            series_truncation: DEFAULT_SERIES_TRUNCATION,
            guard_bits: DEFAULT_GUARD_BITS,
        }
    }

    /// Explicit working precision; the target is what it supports after
    /// reserving the guard bits.
    pub fn for_bits(bits: u32) -> Self {
        let usable = bits.saturating_sub(DEFAULT_GUARD_BITS).max(4);
        PrecisionConfig {
            working_bits: bits,
            target_digits: ((usable as f64) / std::f64::consts::LOG2_10)
                .floor()
                .max(1.0) as u32,
            series_truncation: DEFAULT_SERIES_TRUNCATION,
            guard_bits: DEFAULT_GUARD_BITS,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.target_digits >= 1
            && self.working_bits
                >= bits_for_digits(self.target_digits) + self.guard_bits.min(DEFAULT_GUARD_BITS)
    }

    /// Working bits on retry `r`: the guard is doubled each time, so retry
    /// `r` adds `guard (2^r - 1)` bits.
    pub fn bits_at_retry(&self, r: u32) -> u32 {
        self.working_bits + self.guard_bits * ((1 << r) - 1)
    }
}

/// Runs `f` at increasing precision until its result has radius at most
/// `budget`, retrying at most [`MAX_RETRIES`] times.
pub fn with_retries<E>(
    config: &PrecisionConfig,
    budget: f64,
    mut f: impl FnMut(u32) -> Result<RealBall, E>,
) -> Result<Result<RealBall, NumericsError>, E> {
    let mut last = None;
    for r in 0..=MAX_RETRIES {
        let ball = f(config.bits_at_retry(r))?;
        if ball.rad_f64() <= budget {
            return Ok(Ok(ball));
        }
        last = Some(ball);
    }
    let ball = last.expect("at least one attempt");
    Ok(Err(NumericsError::PrecisionBudget {
        digits: config.target_digits,
        radius: format!("{:e}", ball.rad_f64()),
        retries: MAX_RETRIES,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::constants::const_pi;

    #[test]
    fn derived_bits_include_guard() {
        let c = PrecisionConfig::for_digits(30);
        assert_eq!(c.working_bits, 100 + 32);
        assert!(c.is_valid());
        assert_eq!(c.bits_at_retry(3), c.working_bits + 224);
        assert!(PrecisionConfig::for_bits(256).target_digits >= 67);
    }

    #[test]
    fn retries_raise_precision_until_budget_met() {
        let c = PrecisionConfig::for_bits(64);
        let mut seen = Vec::new();
        let r: Result<_, ()> = with_retries(&c, 1e-40, |bits| {
            seen.push(bits);
            Ok(const_pi(bits))
        });
        assert!(r.unwrap().is_ok());
        assert_eq!(seen, vec![64, 96, 160]);
        let r: Result<_, ()> = with_retries(&c, 1e-200, |bits| Ok(const_pi(bits)));
        assert!(matches!(
            r.unwrap(),
            Err(NumericsError::PrecisionBudget { retries: 3, .. })
        ));
    }
}

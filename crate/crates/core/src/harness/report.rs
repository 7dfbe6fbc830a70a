//! Check results, verification reports and route comparison.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::Error;
use crate::numerics::ball::{RealBall, Rigor};
use crate::numerics::bigfloat::BigFloat;
use crate::numerics::precision::{PrecisionConfig, MAX_RETRIES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    IdentityViolation,
    PrecisionBudget,
    Quadrature,
    Series,
    Numerics,
    Exact,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RouteValue {
    pub label: String,
    pub value: String,
    pub radius: String,
    pub rigor: Rigor,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub identity_id: String,
    pub parameters: Map<String, Value>,
    pub route_values: Vec<RouteValue>,
    pub max_discrepancy: String,
    pub tolerance: String,
    pub passed: bool,
    pub elapsed_ms: u64,
    /// Working bits of the attempt that was accepted.
    pub bits: u32,
    pub retries: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl CheckResult {
    pub fn skipped(&self) -> bool {
        self.failure == Some(FailureKind::Skipped)
    }

    pub fn failed(&self) -> bool {
        !self.passed && !self.skipped()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("check result serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportSummary {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub wall_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub config: Value,
    pub results: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub wall_ms: u64,
}

impl VerificationReport {
    pub fn new(suite: &str, config: Value, results: Vec<CheckResult>, wall_ms: u64) -> Self {
        let skipped = results.iter().filter(|r| r.skipped()).count();
        let passed = results.iter().filter(|r| r.passed).count();
        let failed = results.len() - passed - skipped;
        VerificationReport {
            suite: suite.to_string(),
            config,
            results,
            passed,
            failed,
            skipped,
            wall_ms,
        }
    }

    pub fn summary(&self) -> ReportSummary {
        ReportSummary {
            suite: self.suite.clone(),
            passed: self.passed,
            failed: self.failed,
            skipped: self.skipped,
            wall_ms: self.wall_ms,
        }
    }

    /// One result per line followed by the summary object.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&r.to_json());
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&self.summary()).expect("summary serializes"));
        out.push('\n');
        out
    }

    pub fn identity_failures(&self) -> usize {
        self.results
            .iter()
            .filter(|r| r.failed() && r.failure != Some(FailureKind::PrecisionBudget))
            .count()
    }

    pub fn budget_failures(&self) -> usize {
        self.results
            .iter()
            .filter(|r| r.failure == Some(FailureKind::PrecisionBudget))
            .count()
    }

    /// 0 when nothing failed, 3 when every failure is a precision-budget
    /// failure, 1 otherwise.
    pub fn exit_status(&self) -> i32 {
        if self.failed == 0 {
            0
        } else if self.identity_failures() == 0 {
            3
        } else {
            1
        }
    }
}

/// One evaluation route with the tolerance class it is compared under.
#[derive(Clone, Debug)]
pub(crate) struct Route {
    pub label: &'static str,
    pub ball: RealBall,
    pub tol: f64,
    /// Accuracy does not improve with working precision.
    pub fixed_precision: bool,
}

/// Everything a check computes at one working precision.
#[derive(Clone, Debug, Default)]
pub(crate) struct Attempt {
    pub routes: Vec<Route>,
    pub extra: Vec<RouteValue>,
    pub condition: Option<String>,
}

struct Comparison {
    max_disc: BigFloat,
    tol: f64,
    ok: bool,
    budget: Option<String>,
    retryable: bool,
}

/// Pairwise `max(0, |Δmid| - Σrad)` against the looser of the two route
/// tolerances; summed radii above that tolerance exhaust the budget.
fn compare(routes: &[Route]) -> Comparison {
    let mut worst = (f64::NEG_INFINITY, BigFloat::zero(), 0.0);
    let mut ok = true;
    let mut budget = None;
    let mut retryable = false;
    for i in 0..routes.len() {
        for j in i + 1..routes.len() {
            let (x, y) = (&routes[i], &routes[j]);
            let t = x.tol.max(y.tol);
            let rsum = x.ball.rad().clone() + y.ball.rad().clone();
            let disc = x.ball.discrepancy(&y.ball);
            let ratio = disc.to_f64() / t;
            if ratio > worst.0 || worst.0 == f64::NEG_INFINITY {
                worst = (ratio, disc.clone(), t);
            }
            if disc.to_f64() > t {
                ok = false;
            }
            if rsum.to_f64() > t {
                if budget.is_none() {
                    budget = Some(format!(
                        "radii of {} and {} sum to {} above tolerance {t:e}",
                        x.label,
                        y.label,
                        rsum.to_decimal(3)
                    ));
                }
                retryable |= !(x.fixed_precision && y.fixed_precision);
            }
        }
    }
    Comparison {
        max_disc: worst.1,
        tol: worst.2,
        ok,
        budget,
        retryable,
    }
}

pub(crate) fn digits_for_bits(bits: u32) -> usize {
    ((bits as f64 * std::f64::consts::LOG10_2) as usize)
        .saturating_sub(3)
        .max(6)
}

pub(crate) fn route_value(label: &str, ball: &RealBall, digits: usize) -> RouteValue {
    RouteValue {
        label: label.to_string(),
        value: ball.render(digits).text,
        radius: ball.rad().to_decimal(3),
        rigor: ball.rigor(),
    }
}

fn failure_kind(e: &Error) -> FailureKind {
    match e {
        Error::Exact(_) => FailureKind::Exact,
        Error::Numerics(crate::error::NumericsError::PrecisionBudget { .. }) => {
            FailureKind::PrecisionBudget
        }
        Error::Numerics(_) => FailureKind::Numerics,
        Error::Series(_) => FailureKind::Series,
        Error::Quadrature(_) => FailureKind::Quadrature,
        Error::Harness(_) => FailureKind::Numerics,
    }
}

/// Bits needed to resolve `tol` with a margin.
pub fn bits_needed(tol: f64) -> u32 {
    if tol <= 0.0 {
        return u32::MAX;
    }
    (-tol.log2()).ceil().max(0.0) as u32 + 16
}

/// Runs `f` at the configured bits, retrying with doubled guard bits while
/// a precision-dependent pair exceeds its budget. `precheck` is the
/// tightest tolerance the working precision must support.
pub(crate) fn run_check(
    identity_id: &str,
    parameters: Value,
    bits: u32,
    precheck: Option<f64>,
    f: impl Fn(u32) -> Result<Attempt, Error>,
) -> CheckResult {
    let start = Instant::now();
    let parameters = match parameters {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    let pc = PrecisionConfig::for_bits(bits);
    let max_bits = pc.bits_at_retry(MAX_RETRIES);
    let mut result = CheckResult {
        identity_id: identity_id.to_string(),
        parameters,
        route_values: Vec::new(),
        max_discrepancy: "0".into(),
        tolerance: precheck
            .map(|t| format!("{t:e}"))
            .unwrap_or_else(|| "0".into()),
        passed: false,
        elapsed_ms: 0,
        bits,
        retries: 0,
        failure: None,
        reason: None,
    };
    if let Some(t) = precheck {
        let need = bits_needed(t);
        if need > max_bits {
            result.failure = Some(FailureKind::PrecisionBudget);
            result.reason = Some(format!(
                "tolerance {t:e} needs about {need} bits but at most {max_bits} are available"
            ));
            result.elapsed_ms = start.elapsed().as_millis() as u64;
            return result;
        }
    }
    for r in 0..=MAX_RETRIES {
        let b = pc.bits_at_retry(r);
        result.bits = b;
        result.retries = r;
        let attempt = match f(b) {
            Ok(a) => a,
            Err(e) => {
                result.failure = Some(failure_kind(&e));
                result.reason = Some(e.to_string());
                break;
            }
        };
        let digits = digits_for_bits(b);
        result.route_values = attempt
            .routes
            .iter()
            .map(|x| route_value(x.label, &x.ball, digits))
            .collect();
        result.route_values.extend(attempt.extra.iter().cloned());
        let cmp = compare(&attempt.routes);
        if !attempt.routes.is_empty() {
            result.max_discrepancy = cmp.max_disc.to_decimal(6);
            result.tolerance = format!("{:e}", cmp.tol);
        }
        if cmp.budget.is_some() && cmp.retryable && r < MAX_RETRIES {
            continue;
        }
        if let Some(reason) = cmp.budget {
            result.failure = Some(FailureKind::PrecisionBudget);
            result.reason = Some(reason);
        } else if !cmp.ok {
            result.failure = Some(FailureKind::IdentityViolation);
            result.reason = Some(format!(
                "discrepancy {} exceeds {:e}",
                result.max_discrepancy, cmp.tol
            ));
        } else if let Some(reason) = attempt.condition {
            result.failure = Some(FailureKind::IdentityViolation);
            result.reason = Some(reason);
        } else {
            result.passed = true;
        }
        break;
    }
    result.elapsed_ms = start.elapsed().as_millis() as u64;
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn route(label: &'static str, mid: f64, rad: f64, tol: f64) -> Route {
        Route {
            label,
            ball: RealBall::new(
                BigFloat::from_f64(mid),
                BigFloat::from_f64(rad),
                Rigor::Heuristic,
            ),
            tol,
            fixed_precision: false,
        }
    }

    #[test]
    fn comparison_is_symmetric_and_ball_aware() {
        let a = route("A", 1.0, 0.0, 1e-6);
        let b = route("B", 1.0 + 2e-6, 1.5e-6, 1e-6);
        let c1 = compare(&[a.clone(), b.clone()]);
        let c2 = compare(&[b, a]);
        assert_eq!(c1.ok, c2.ok);
        assert!(c1.ok);
        assert!(c1.budget.is_some());
        let c = compare(&[route("A", 1.0, 0.0, 1e-6), route("B", 1.1, 1e-9, 1e-6)]);
        assert!(!c.ok && c.budget.is_none());
    }

    #[test]
    fn impossible_tolerance_fails_fast() {
        let r = run_check(
            "x",
            serde_json::json!({}),
            64,
            Some(1e-100),
            |_| unreachable!(),
        );
        assert_eq!(r.failure, Some(FailureKind::PrecisionBudget));
        assert!(!r.passed);
    }

    #[test]
    fn retries_until_budget_met() {
        let r = run_check("x", serde_json::json!({"k": 1}), 64, Some(1e-20), |bits| {
            let rad = if bits >= 160 { 0.0 } else { 1e-10 };
            Ok(Attempt {
                routes: vec![route("A", 0.5, 0.0, 1e-20), route("B", 0.5, rad, 1e-20)],
                ..Default::default()
            })
        });
        assert!(r.passed, "{r:?}");
        assert_eq!(r.bits, 160);
        assert_eq!(r.retries, 2);
    }

    #[test]
    fn report_counts_and_exit_status() {
        let ok = run_check("ok", serde_json::json!({}), 64, None, |_| {
            Ok(Attempt::default())
        });
        let bad = run_check("bad", serde_json::json!({}), 64, None, |_| {
            Ok(Attempt {
                condition: Some("no".into()),
                ..Default::default()
            })
        });
        let budget = run_check(
            "b",
            serde_json::json!({}),
            64,
            Some(1e-200),
            |_| unreachable!(),
        );
        let rep = VerificationReport::new("s", Value::Null, vec![ok.clone(), budget.clone()], 1);
        assert_eq!((rep.passed, rep.failed, rep.skipped), (1, 1, 0));
        assert_eq!(rep.exit_status(), 3);
        let rep = VerificationReport::new("s", Value::Null, vec![ok, bad, budget], 1);
        assert_eq!(rep.exit_status(), 1);
        let lines = rep.to_json_lines();
        assert_eq!(lines.lines().count(), 4);
        let last: ReportSummary = serde_json::from_str(lines.lines().last().unwrap()).unwrap();
        assert_eq!(last.failed, 2);
        let first: CheckResult = serde_json::from_str(lines.lines().next().unwrap()).unwrap();
        assert_eq!(first.identity_id, "ok");
        let empty = VerificationReport::new("e", Value::Null, vec![], 0);
        assert_eq!((empty.passed, empty.failed, empty.exit_status()), (0, 0, 0));
    }
}

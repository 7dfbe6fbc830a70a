//! Legendre nodes and weights by Newton refinement.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::QuadratureError;
use crate::numerics::bigfloat::BigFloat;
use crate::scalar::Real;

const NEWTON_MAX_ITER: usize = 100;
const GUARD: u32 = 32;

/// `n`-point rule on `[-1, 1]`; nodes ascending.
#[derive(Clone, Debug)]
pub struct GaussLegendre<F: Real> {
    pub nodes: Vec<F>,
    pub weights: Vec<F>,
    pub order: usize,
    pub precision: u32,
}

/// `(P_n(x), P_{n-1}(x))` by the three-term recurrence.
fn legendre_pair<F: Real>(n: usize, x: &F, unit: &F) -> (F, F) {
    let mut p0 = unit.clone();
    let mut p1 = x.clone();
    for k in 2..=n {
        let kf = F::from_i64_exact(k as i64);
        let p2 = (F::from_i64_exact(2 * k as i64 - 1) * x.clone() * p1.clone()
            - F::from_i64_exact(k as i64 - 1) * p0.clone())
            / kf;
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

impl<F: Real> GaussLegendre<F> {
    pub fn build(n: usize, prec: u32) -> Result<Self, QuadratureError> {
        if n < 2 {
            return Err(QuadratureError::TooFewNodes(n));
        }
        let wp = prec + GUARD;
        let unit = F::unit(wp);
        let nf = F::from_i64_exact(n as i64);
        // stop once the Newton step is below this many bits
        let stop = F::pow2_neg(
            wp.saturating_sub(8).min(unit.precision().saturating_sub(4)),
            wp,
        );
        let mut pos_nodes = Vec::new();
        let mut pos_weights = Vec::new();
        for i in 0..n / 2 {
            let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut x = F::from_f64_at(guess, wp);
            let mut converged = false;
            for _ in 0..NEWTON_MAX_ITER {
                let (pn, pm) = legendre_pair(n, &x, &unit);
                let dp = nf.clone() * (x.clone() * pn.clone() - pm)
                    / (x.clone() * x.clone() - unit.clone());
                let dx = pn / dp.clone();
                x = x - dx.clone();
                if dx.abs() <= stop {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(QuadratureError::NewtonDiverged {
                    nodes: n,
                    precision: prec,
                });
            }
            let (pn, pm) = legendre_pair(n, &x, &unit);
            let dp = nf.clone() * (x.clone() * pn - pm) / (x.clone() * x.clone() - unit.clone());
            let w = F::from_i64_exact(2) * unit.clone()
                / ((unit.clone() - x.clone() * x.clone()) * dp.clone() * dp);
            pos_nodes.push(x);
            pos_weights.push(w);
        }
        let mut nodes: Vec<F> = pos_nodes.iter().map(|x| -x.clone()).collect();
        let mut weights = pos_weights.clone();
        if n % 2 == 1 {
            nodes.push(F::zero());
            let (_, pm) = legendre_pair(n, &F::zero(), &unit);
            // at x = 0: P_n'(0) = n P_{n-1}(0)
            let dp = nf.clone() * pm;
            weights.push(F::from_i64_exact(2) * unit.clone() / (dp.clone() * dp));
        }
        nodes.extend(pos_nodes.into_iter().rev());
        weights.extend(pos_weights.into_iter().rev());
        Ok(GaussLegendre {
            nodes,
            weights,
            order: n,
            precision: prec,
        })
    }
}

type RuleCache = Mutex<HashMap<(usize, u32), Arc<GaussLegendre<BigFloat>>>>;

fn cache() -> &'static RuleCache {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Cached `n`-node rule at `prec` bits.
pub fn gauss_legendre_rule(
    n: usize,
    prec: u32,
) -> Result<Arc<GaussLegendre<BigFloat>>, QuadratureError> {
    if let Some(r) = cache().lock().expect("rule cache poisoned").get(&(n, prec)) {
        return Ok(r.clone());
    }
    let rule = Arc::new(GaussLegendre::<BigFloat>::build(n, prec)?);
    Ok(cache()
        .lock()
        .expect("rule cache poisoned")
        .entry((n, prec))
        .or_insert(rule)
        .clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    #[test]
    fn two_and_three_point_rules() {
        let r = gauss_legendre_rule(2, 128).unwrap();
        let s = (1.0f64 / 3.0).sqrt();
        assert!((r.nodes[0].to_f64() + s).abs() < 4e-16);
        assert!((r.nodes[1].to_f64() - s).abs() < 4e-16);
        assert!((r.weights[0].to_f64() - 1.0).abs() < 4e-16);
        let r = gauss_legendre_rule(3, 128).unwrap();
        assert!(r.nodes[1].is_zero());
        assert!((r.nodes[2].to_f64() - 0.6f64.sqrt()).abs() < 4e-16);
        assert!((r.weights[1].to_f64() - 8.0 / 9.0).abs() < 4e-16);
        assert!((r.weights[0].to_f64() - 5.0 / 9.0).abs() < 4e-16);
        assert!(matches!(
            gauss_legendre_rule(1, 64),
            Err(QuadratureError::TooFewNodes(1))
        ));
    }

    #[test]
    fn weights_sum_to_two_and_nodes_symmetric() {
        let r = gauss_legendre_rule(20, 192).unwrap();
        let sum = r
            .weights
            .iter()
            .fold(BigFloat::zero(), |a, w| a + w.clone());
        assert!((sum - BigFloat::from_int(2)).abs().to_f64() < 2f64.powi(-180));
        for i in 0..20 {
            let d = r.nodes[i].clone() + r.nodes[19 - i].clone();
            assert!(d.abs().to_f64() < 2f64.powi(-180));
            assert!(r.weights[i].to_f64() > 0.0);
            if i > 0 {
                assert!(r.nodes[i] > r.nodes[i - 1]);
            }
        }
    }

    #[test]
    fn residuals_are_small() {
        let prec = 160;
        let r = gauss_legendre_rule(17, prec).unwrap();
        let unit = BigFloat::unit(prec + 32);
        for x in &r.nodes {
            let (pn, _) = legendre_pair(17, x, &unit);
            assert!(pn.abs().to_f64() < 2f64.powi(-(prec as i32) + 8));
        }
    }

    #[test]
    fn exact_on_monomials() {
        let n = 12;
        let prec = 128;
        let r = gauss_legendre_rule(n, prec).unwrap();
        for d in 0..(2 * n as u32) {
            let s = r
                .nodes
                .iter()
                .zip(&r.weights)
                .fold(BigFloat::zero(), |a, (x, w)| a + w.clone() * x.powu(d));
            let exact = if d % 2 == 1 {
                0.0
            } else {
                2.0 / (d as f64 + 1.0)
            };
            assert!(
                (s.to_f64() - exact).abs() < 2f64.powi(-(prec as i32) + 10),
                "degree {d}"
            );
        }
    }

    #[test]
    fn f64_rule_works() {
        let r = GaussLegendre::<f64>::build(10, 53).unwrap();
        let s: f64 = r.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
    }
}

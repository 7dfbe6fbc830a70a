//! Single-sum evaluation of `H(a,b)` and `T(a,b)` as
//! `Σ_n w_n^{-3} A_n B_n`, with `A_n` the depth-`a` prefix table and `B_n`
//! the depth-`b` tail table.

use num_rational::BigRational;

use super::composition::Parity;
use super::extrapolate::{extrapolate_levels, TruncationPlan, F64_KERNEL_BITS};
use crate::error::SeriesError;
use crate::exact::combinatorics::{bernoulli, factorial_q};
use crate::numerics::ball::RealBall;
use crate::numerics::bigfloat::BigFloat;
use crate::scalar::Real;

const EM_TERMS: u32 = 4;

/// `Σ_{m > last} w(m)^{-2j}` for `j = 1..=depth`, by Euler-Maclaurin at the
/// first omitted index.
fn tail_power_sums<F: Real>(parity: Parity, last: u64, depth: usize, unit: &F) -> Vec<F> {
    let (alpha, _) = match parity {
        Parity::All => (1i64, 0i64),
        Parity::Odd => (2, 1),
    };
    let u = F::from_i64_exact(parity.weight(last + 1) as i64);
    let inv_u = unit.clone() / u;
    let alpha_f = F::from_i64_exact(alpha);
    let prec = unit.precision();
    (1..=depth)
        .map(|j| {
            let s = 2 * j as u32;
            // U^{1-s} / (α (s-1)) + U^{-s}/2
            let mut acc = inv_u.powu(s - 1) / (alpha_f.clone() * F::from_i64_exact(s as i64 - 1))
                + inv_u.powu(s) / F::from_i64_exact(2);
            for i in 1..=EM_TERMS {
                // B_{2i}/(2i)! α^{2i-1} (s)_{2i-1} U^{-s-2i+1}
                let mut c = bernoulli(2 * i as usize) / factorial_q(2 * i as u64);
                for t in 0..(2 * i - 1) {
                    c *= BigRational::from_integer((s + t).into());
                }
                let cf = F::from_rational(&c, prec) * alpha_f.powu(2 * i - 1);
                acc = acc + cf * inv_u.powu(s + 2 * i - 1);
            }
            acc
        })
        .collect()
}

/// Elementary symmetric sums `e_0..=e_d` from power sums `p_1..=p_d`.
fn elementary_from_power<F: Real>(p: &[F], unit: &F) -> Vec<F> {
    let mut e = vec![unit.clone()];
    for d in 1..=p.len() {
        let mut acc = F::zero();
        for i in 1..=d {
            let t = e[d - i].clone() * p[i - 1].clone();
            acc = if i % 2 == 1 { acc + t } else { acc - t };
        }
        e.push(acc / F::from_i64_exact(d as i64));
    }
    e
}

/// Partial sums `Σ_{first ≤ n < first + c} w_n^{-3} A_n B_n` for each count
/// `c` in `cps`, where `B_n` is the full infinite tail.
pub fn single_sum_kernel<F: Real>(a: u32, b: u32, parity: Parity, cps: &[u64], unit: &F) -> Vec<F> {
    let first = parity.first_index();
    let m = *cps.last().expect("at least one checkpoint");
    let inv_w2 = |idx: u64| {
        let w = F::from_i64_exact(parity.weight(idx) as i64);
        unit.clone() / (w.clone() * w)
    };
    // forward: depth-a prefix values A_n (indices < n)
    let mut a_run = vec![F::zero(); a as usize + 1];
    a_run[0] = unit.clone();
    let mut vals: Vec<F> = Vec::with_capacity(m as usize);
    for count in 0..m {
        let idx = first + count;
        vals.push(a_run[a as usize].clone());
        let iw = inv_w2(idx);
        for j in (1..=a as usize).rev() {
            let add = a_run[j - 1].clone() * iw.clone();
            a_run[j] = a_run[j].clone() + add;
        }
    }
    // backward: depth-b tail values B_n (indices > n)
    let last = first + m - 1;
    let p = tail_power_sums(parity, last, b as usize, unit);
    let mut b_run = elementary_from_power(&p, unit);
    for count in (0..m).rev() {
        let idx = first + count;
        let w = F::from_i64_exact(parity.weight(idx) as i64);
        let inv_w3 = unit.clone() / (w.clone() * w.clone() * w);
        vals[count as usize] = vals[count as usize].clone() * b_run[b as usize].clone() * inv_w3;
        let iw = inv_w2(idx);
        for d in (1..=b as usize).rev() {
            let add = b_run[d - 1].clone() * iw.clone();
            b_run[d] = b_run[d].clone() + add;
        }
    }
    let mut out = Vec::with_capacity(cps.len());
    let mut acc = F::zero();
    let mut it = cps.iter().peekable();
    for (count, v) in vals.into_iter().enumerate() {
        acc = acc + v;
        while it.peek() == Some(&&(count as u64 + 1)) {
            out.push(acc.clone());
            it.next();
        }
    }
    out
}

/// Single sum with an explicit plan; the checkpoints are `N 2^i`.
pub fn single_sum_with(
    a: u32,
    b: u32,
    parity: Parity,
    plan: &TruncationPlan,
    prec: u32,
) -> Result<RealBall, SeriesError> {
    plan.validate()?;
    let levels = plan.levels.max(2);
    let cps: Vec<u64> = (0..levels).map(|i| plan.n << i).collect();
    let terms = *cps.last().expect("nonempty") as f64;
    let (values, noise) = if prec <= F64_KERNEL_BITS {
        let v = single_sum_kernel(a, b, parity, &cps, &1.0f64);
        let top = v.last().copied().unwrap_or(0.0).abs();
        let noise = top * terms.sqrt() * 64.0 * f64::EPSILON;
        (
            v.into_iter().map(BigFloat::from_f64).collect::<Vec<_>>(),
            BigFloat::from_f64(noise),
        )
    } else {
        let wp = prec + 32;
        let v = single_sum_kernel(a, b, parity, &cps, &BigFloat::unit(wp));
        let top = v.last().map(|x| x.to_f64().abs()).unwrap_or(0.0);
        (
            v,
            BigFloat::from_f64(top * terms * 2f64.powi(-(wp as i32) + 2)),
        )
    };
    let lv: Vec<u32> = (0..levels).collect();
    Ok(extrapolate_levels(&lv, &values, 0, &noise, prec.max(53)))
}

/// `H(a,b) = ζ(2^a, 3, 2^b)` from the single sum over `n ≤ N, 2N, 4N`.
pub fn single_sum_h(a: u32, b: u32, n: u64, prec: u32) -> Result<RealBall, SeriesError> {
    single_sum_with(a, b, Parity::All, &TruncationPlan::new(n, 3), prec)
}

/// `T(a,b) = t(2^a, 3, 2^b)` from the odd-index single sum.
pub fn single_sum_t(a: u32, b: u32, n: u64, prec: u32) -> Result<RealBall, SeriesError> {
    single_sum_with(a, b, Parity::Odd, &TruncationPlan::new(n, 3), prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::hoffman::{hat_h, hat_t};
    use crate::numerics::constants::zeta_int;
    use crate::numerics::eval::eval_combination;
    use crate::series::composition::{Composition, SeriesKind};

    #[test]
    fn tail_power_sums_match_direct() {
        for parity in [Parity::All, Parity::Odd] {
            let p = tail_power_sums(parity, 50, 3, &1.0f64);
            for (j, pj) in p.iter().enumerate() {
                let s = 2 * (j as i32 + 1);
                let direct: f64 = (51..2_000_000u64)
                    .map(|m| (parity.weight(m) as f64).powi(-s))
                    .sum();
                let rest = if j == 0 {
                    1.0 / (parity.weight(2_000_000) as f64)
                } else {
                    0.0
                };
                assert!(
                    (pj - direct).abs() < rest * 1.01 + 1e-15,
                    "{parity:?} j={j}"
                );
            }
        }
    }

    #[test]
    fn kernel_matches_direct_products() {
        // A_n = Σ_{m<n} m^{-2}, B_n = Σ_{m>n} m^{-2}
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        let mut h = 0.0f64;
        let mut direct = 0.0f64;
        for n in 1..=30u64 {
            let nf = n as f64;
            let a = h;
            h += 1.0 / (nf * nf);
            direct += a * (z2 - h) / (nf * nf * nf);
        }
        let got = single_sum_kernel(1, 1, Parity::All, &[30], &1.0f64)[0];
        assert!((got - direct).abs() < 1e-14, "{got} vs {direct}");
    }

    #[test]
    fn single_sums_agree_with_closed_forms() {
        let z3 = single_sum_h(0, 0, 10_000, 53).unwrap();
        assert!((z3.to_f64() - zeta_int(3, 64).to_f64()).abs() < 1e-10);
        for (a, b) in [(1, 0), (0, 1), (1, 1)] {
            let s = single_sum_h(a, b, 10_000, 53).unwrap().to_f64();
            let e = eval_combination(&hat_h(a, b), 64).to_f64();
            assert!((s - e).abs() < 1e-10, "H({a},{b}): {s} vs {e}");
            let s = single_sum_t(a, b, 10_000, 53).unwrap().to_f64();
            let e = eval_combination(&hat_t(a, b), 64).to_f64();
            assert!((s - e).abs() < 1e-10, "T({a},{b}): {s} vs {e}");
        }
    }

    #[test]
    fn single_sum_t_monotone_in_n() {
        let v = single_sum_kernel(0, 0, Parity::Odd, &[16, 32, 64, 128], &1.0f64);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn agrees_with_nested_extrapolation() {
        use crate::series::extrapolate::mzv_extrapolated;
        let plan = TruncationPlan::new(20_000, 3);
        let a = single_sum_h(1, 1, 20_000, 53).unwrap();
        let b = mzv_extrapolated(&Composition::hoffman(1, 1), &plan, 53, SeriesKind::Zeta).unwrap();
        assert!((a.to_f64() - b.to_f64()).abs() < 1e-9);
    }
}

use mzv_core::exact::combination::ZetaCombination;
use mzv_core::exact::cot_poly::cot_polynomial_integral;
use mzv_core::exact::hoffman::{hat_h, hat_k, hat_t};
use mzv_core::harness::{verify_cot_power_half_pi, CheckConfig};
use mzv_core::numerics::constants::const_pi;
use mzv_core::numerics::eval::eval_combination;
use mzv_core::quadrature::{gauss_legendre_rule, integrate_fixed, IntegrandSpec};
use mzv_core::series::{nested_checkpoints, prefix_mhn, Composition, IndexSpace, MhnTable, Parity};
use mzv_core::{BigFloat, BigInt, BigRational, Polynomial, RealBall};
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn vanishing_poly() -> impl Strategy<Value = Polynomial<BigRational>> {
    prop::collection::vec(rational(), 1..8).prop_map(|mut c| {
        c.insert(0, BigRational::zero());
        Polynomial::new(c)
    })
}

fn within(ball: &RealBall, r: &BigRational) -> bool {
    ball.lower().to_rational() <= *r && *r <= ball.upper().to_rational()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scaled_t_relation(a in 0u32..10, b in 0u32..10) {
        let s = BigRational::from_integer(BigInt::one() << (2 * (a + b) + 3) as usize);
        prop_assert_eq!(hat_k(a, b), hat_t(a, b).scale(&s));
    }

    #[test]
    fn hat_forms_are_homogeneous(a in 0u32..10, b in 0u32..10) {
        let w = (2 * (a + b) + 3) as i64;
        for c in [hat_h(a, b), hat_t(a, b), hat_k(a, b)] {
            prop_assert!(c.is_homogeneous(w));
        }
    }

    #[test]
    fn combination_json_round_trip(a in 0u32..6, b in 0u32..6) {
        let c = hat_h(a, b);
        let text = serde_json::to_string(&c).unwrap();
        let back: ZetaCombination = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn polynomial_integral_is_linear(p in vanishing_poly(), q in vanishing_poly(), s in rational()) {
        let lhs = cot_polynomial_integral(&(&p + &q.scale(&s))).unwrap();
        let rhs = cot_polynomial_integral(&p).unwrap().add(&cot_polynomial_integral(&q).unwrap().scale(&s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ball_arithmetic_contains_exact_results(x in rational(), y in rational(), prec in 24u32..200) {
        let bx = RealBall::from_rational(&x, prec);
        let by = RealBall::from_rational(&y, prec);
        prop_assert!(within(&bx, &x));
        prop_assert!(within(&bx.add_ball(&by), &(&x + &y)));
        prop_assert!(within(&bx.mul_ball(&by), &(&x * &y)));
        if !y.is_zero() {
            prop_assert!(within(&bx.div_ball(&by).unwrap(), &(&x / &y)));
        }
    }

    #[test]
    fn bigfloat_rounding_within_an_ulp(x in rational(), prec in 8u32..256) {
        let f = BigFloat::from_rational(&x, prec);
        let err = (f.to_rational() - &x).abs();
        prop_assert!(err <= f.ulp().to_rational());
    }

    #[test]
    fn table_bytes_round_trip(depth in 0u32..4, limit in 0u64..40, odd in any::<bool>()) {
        let parity = if odd { Parity::Odd } else { Parity::All };
        let t = prefix_mhn(depth, limit, parity);
        prop_assert_eq!(MhnTable::from_bytes(&t.to_bytes()).unwrap(), t);
    }

    #[test]
    fn checkpoints_match_separate_runs(parts in prop::collection::vec(1u32..4, 1..4), mut cps in prop::collection::vec(0u64..60, 1..5), odd in any::<bool>()) {
        cps.sort_unstable();
        let space = IndexSpace::full(if odd { Parity::Odd } else { Parity::All });
        let all = nested_checkpoints(&parts, space, &cps, &BigRational::one());
        for (i, &n) in cps.iter().enumerate() {
            prop_assert_eq!(&all[i], &nested_checkpoints(&parts, space, &[n], &BigRational::one())[0]);
        }
        let float = nested_checkpoints(&parts, space, &cps, &1.0f64);
        for (e, f) in all.iter().zip(&float) {
            prop_assert!((e.to_f64().unwrap() - f).abs() <= 1e-12 * (1.0 + f.abs()));
        }
    }

    #[test]
    fn inadmissible_compositions_rejected(parts in prop::collection::vec(1u32..5, 0..5)) {
        let ok = !parts.is_empty() && *parts.last().unwrap() > 1;
        prop_assert_eq!(Composition::new(parts).is_ok(), ok);
    }

    #[test]
    fn gauss_rule_integrates_polynomials(n in 2usize..24, seed in prop::collection::vec(-5i64..5, 1..48)) {
        let deg = (2 * n - 1).min(seed.len() - 1);
        let coeffs: Vec<BigRational> = seed[..=deg].iter().map(|&c| BigRational::from_integer(c.into())).collect();
        let p = Polynomial::new(coeffs);
        let rule = gauss_legendre_rule(n, 128).unwrap();
        let pf = p.map(|c| BigFloat::from_rational(c, 160));
        let approx = rule.apply(&BigFloat::from_int(-1), &BigFloat::one(), |x| pf.eval(x));
        // ∫_{-1}^{1} x^k = 2/(k+1) for even k
        let exact: BigRational = p.coeffs().iter().enumerate()
            .filter(|(k, _)| k % 2 == 0)
            .map(|(k, c)| c * BigRational::new(2.into(), (k as i64 + 1).into()))
            .fold(BigRational::zero(), |a, b| a + b);
        prop_assert!((approx.to_rational() - exact).abs().to_f64().unwrap() < 1e-30);
    }
}

fn fact(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

#[test]
fn quadrature_discrepancy_decreases_with_nodes() {
    let prec = 256;
    let floor = 1e-70;
    let pi = const_pi(prec);
    for a in 0..=5u32 {
        for b in 0..=5 - a {
            let h_factor = pi.powi(2 * b as i64).unwrap().mul_rational(
                &BigRational::new(
                    BigInt::one() << (2 * a + 3) as usize,
                    fact(2 * a as u64 + 2) * fact(2 * b as u64 + 1),
                ),
                prec,
            );
            let t_factor = pi.powi(2 * b as i64 + 1).unwrap().mul_rational(
                &BigRational::new(
                    BigInt::one(),
                    (BigInt::one() << (2 * b + 1) as usize)
                        * fact(2 * a as u64 + 1)
                        * fact(2 * b as u64 + 1),
                ),
                prec,
            );
            let cases = [
                (2 * a + 2, hat_h(a, b), h_factor),
                (2 * a + 1, hat_t(a, b), t_factor),
            ];
            for (p, closed, factor) in cases {
                let spec = IntegrandSpec::CotMoment { p, q: 2 * b + 1 };
                let route_a = eval_combination(&closed, prec);
                let mut prev = f64::INFINITY;
                for n in [4usize, 8, 16, 32, 64, 128] {
                    let v =
                        RealBall::exact(integrate_fixed(&spec, n, prec).unwrap()).mul_ball(&factor);
                    let d = (v.mid().clone() - route_a.mid().clone()).abs().to_f64();
                    assert!(
                        d <= prev.max(floor),
                        "p={p} q={} n={n}: {d:e} after {prev:e}",
                        2 * b + 1
                    );
                    prev = d;
                }
                assert!(prev < floor, "p={p}: final discrepancy {prev:e}");
            }
        }
    }
}

#[test]
fn doubling_precision_keeps_passes() {
    for p in 1..=8 {
        let lo = verify_cot_power_half_pi(
            p,
            &CheckConfig {
                bits: 128,
                tol: 1e-25,
                ..Default::default()
            },
        );
        let hi = verify_cot_power_half_pi(
            p,
            &CheckConfig {
                bits: 256,
                tol: 1e-25,
                ..Default::default()
            },
        );
        assert!(!lo.passed || hi.passed, "p={p}");
        assert!(hi.passed, "{}", hi.to_json());
    }
}

//! Suite configuration, task grids and the parallel runner.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::*;
use super::report::{CheckResult, VerificationReport};
use crate::error::{Error, HarnessError};
use crate::exact::cot_poly::RationalPolynomial;
use crate::numerics::eval::CotPoint;
use crate::quadrature::MomentParity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Zagier,
    T,
    Lemmas,
    Moments,
    Euler,
    Exact,
    Experiment,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Zagier => "zagier",
            Suite::T => "t",
            Suite::Lemmas => "lemmas",
            Suite::Moments => "moments",
            Suite::Euler => "euler",
            Suite::Exact => "exact",
            Suite::Experiment => "experiment",
            Suite::All => "all",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

/// Parameter grids; `hoffman_sum_max` additionally bounds `a + b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub hoffman_amax: u32,
    pub hoffman_bmax: u32,
    pub hoffman_sum_max: Option<u32>,
    pub half_pi_pmax: u32,
    pub clausen_pmax: u32,
    pub poly_count: u32,
    pub poly_degree: u32,
    pub moment_nmax: u32,
    pub moment_bmax: u32,
    pub wallis_nmax: u32,
    pub twos_max: u32,
    pub scaling_max: u32,
    pub basis_sum_max: u32,
    pub experiment_amax: u32,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            hoffman_amax: 5,
            hoffman_bmax: 5,
            hoffman_sum_max: Some(5),
            half_pi_pmax: 12,
            clausen_pmax: 8,
            poly_count: 20,
            poly_degree: 10,
            moment_nmax: 5,
            moment_bmax: 5,
            wallis_nmax: 8,
            twos_max: 3,
            scaling_max: 6,
            basis_sum_max: 4,
            experiment_amax: 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub check: CheckConfig,
    pub grid: Grid,
    pub workers: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: Suite::All,
            check: CheckConfig::default(),
            grid: Grid::default(),
            workers: std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
            seed: 0x6d7a_7631,
        }
    }
}

/// One independent check.
#[derive(Clone, Debug, PartialEq)]
pub enum CheckTask {
    Zagier {
        a: u32,
        b: u32,
    },
    T {
        a: u32,
        b: u32,
    },
    CotPowerHalfPi {
        p: u32,
    },
    CotPowerClausen {
        z: CotPoint,
        p: u32,
    },
    CotPolynomial {
        poly: RationalPolynomial,
    },
    Moment {
        parity: MomentParity,
        n: u32,
        b: u32,
    },
    MomentRecurrence {
        parity: MomentParity,
        n: u32,
        b: u32,
    },
    Wallis {
        n: u32,
    },
    EulerZeta,
    EulerT,
    ZetaTwos {
        n: u32,
    },
    TTwos {
        n: u32,
    },
    Scaling {
        a_max: u32,
        b_max: u32,
    },
    BasisChange {
        a: u32,
        b: u32,
    },
    Experiment {
        a: u32,
    },
}

impl CheckTask {
    pub fn run(&self, cfg: &CheckConfig) -> CheckResult {
        match self {
            CheckTask::Zagier { a, b } => verify_hoffman_h(*a, *b, cfg),
            CheckTask::T { a, b } => verify_hoffman_t(*a, *b, cfg),
            CheckTask::CotPowerHalfPi { p } => verify_cot_power_half_pi(*p, cfg),
            CheckTask::CotPowerClausen { z, p } => verify_cot_power_clausen(*z, *p, cfg),
            CheckTask::CotPolynomial { poly } => verify_cot_polynomial(poly, cfg),
            CheckTask::Moment { parity, n, b } => verify_moments(*parity, *n, *b, cfg),
            CheckTask::MomentRecurrence { parity, n, b } => {
                verify_moment_recurrence(*parity, *n, *b, cfg)
            }
            CheckTask::Wallis { n } => verify_wallis(*n, cfg),
            CheckTask::EulerZeta => verify_euler_zeta(cfg),
            CheckTask::EulerT => verify_euler_t(cfg),
            CheckTask::ZetaTwos { n } => verify_zeta_twos(*n, cfg),
            CheckTask::TTwos { n } => verify_t_twos(*n, cfg),
            CheckTask::Scaling { a_max, b_max } => verify_murakami_scaling(*a_max, *b_max),
            CheckTask::BasisChange { a, b } => verify_basis_change(*a, *b),
            CheckTask::Experiment { a } => verify_experiment(*a, cfg),
        }
    }
}

/// Random `P` with `P(0) = 0`, degree `1..=max_degree` and coefficients
/// `n/d`, `|n| ≤ 9`, `1 ≤ d ≤ 9`.
pub fn random_polynomials(count: u32, max_degree: u32, seed: u64) -> Vec<RationalPolynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let deg = rng.gen_range(1..=max_degree.max(1)) as usize;
            let mut c = vec![BigRational::zero(); deg + 1];
            for ci in c.iter_mut().skip(1) {
                let n: i64 = rng.gen_range(-9..=9);
                let d: i64 = rng.gen_range(1..=9);
                *ci = BigRational::new(BigInt::from(n), BigInt::from(d));
            }
            if c[deg].is_zero() {
                c[deg] = BigRational::from_integer(BigInt::from(1));
            }
            RationalPolynomial::new(c)
        })
        .collect()
}

fn hoffman_grid(g: &Grid) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for a in 0..=g.hoffman_amax {
        for b in 0..=g.hoffman_bmax {
            if g.hoffman_sum_max.is_none_or(|s| a + b <= s) {
                out.push((a, b));
            }
        }
    }
    out
}

impl SuiteConfig {
    pub fn tasks(&self) -> Vec<CheckTask> {
        let g = &self.grid;
        let s = self.suite;
        let mut t = Vec::new();
        if s.includes(Suite::Zagier) {
            t.extend(
                hoffman_grid(g)
                    .into_iter()
                    .map(|(a, b)| CheckTask::Zagier { a, b }),
            );
        }
        if s.includes(Suite::T) {
            t.extend(
                hoffman_grid(g)
                    .into_iter()
                    .map(|(a, b)| CheckTask::T { a, b }),
            );
        }
        if s.includes(Suite::Lemmas) {
            t.extend((1..=g.half_pi_pmax).map(|p| CheckTask::CotPowerHalfPi { p }));
            for z in [CotPoint::Quarter, CotPoint::Half] {
                t.extend((1..=g.clausen_pmax).map(|p| CheckTask::CotPowerClausen { z, p }));
            }
            t.extend(
                random_polynomials(g.poly_count, g.poly_degree, self.seed)
                    .into_iter()
                    .map(|poly| CheckTask::CotPolynomial { poly }),
            );
        }
        if s.includes(Suite::Moments) {
            for b in 0..=g.moment_bmax {
                for n in 1..=g.moment_nmax {
                    t.push(CheckTask::Moment {
                        parity: MomentParity::Odd,
                        n,
                        b,
                    });
                }
                for n in 0..=g.moment_nmax {
                    t.push(CheckTask::Moment {
                        parity: MomentParity::Even,
                        n,
                        b,
                    });
                }
                for n in 2..=g.moment_nmax {
                    t.push(CheckTask::MomentRecurrence {
                        parity: MomentParity::Odd,
                        n,
                        b,
                    });
                }
                for n in 1..=g.moment_nmax {
                    t.push(CheckTask::MomentRecurrence {
                        parity: MomentParity::Even,
                        n,
                        b,
                    });
                }
            }
            t.extend((1..=g.wallis_nmax).map(|n| CheckTask::Wallis { n }));
        }
        if s.includes(Suite::Euler) {
            t.push(CheckTask::EulerZeta);
            t.push(CheckTask::EulerT);
            t.extend((1..=g.twos_max).map(|n| CheckTask::ZetaTwos { n }));
            t.extend((1..=g.twos_max).map(|n| CheckTask::TTwos { n }));
        }
        if s.includes(Suite::Exact) {
            t.push(CheckTask::Scaling {
                a_max: g.scaling_max,
                b_max: g.scaling_max,
            });
            for a in 0..=g.basis_sum_max {
                for b in 0..=g.basis_sum_max - a {
                    t.push(CheckTask::BasisChange { a, b });
                }
            }
        }
        if s.includes(Suite::Experiment) {
            t.extend((0..=g.experiment_amax).map(|a| CheckTask::Experiment { a }));
        }
        t
    }
}

/// Runs `tasks` on a pool of `workers` threads; results keep task order.
pub fn run_tasks(
    suite: &str,
    config: serde_json::Value,
    tasks: &[CheckTask],
    cfg: &CheckConfig,
    workers: usize,
) -> Result<VerificationReport, Error> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| HarnessError::WorkerPool(e.to_string()))?;
    let results: Vec<CheckResult> = pool.install(|| tasks.par_iter().map(|t| t.run(cfg)).collect());
    Ok(VerificationReport::new(
        suite,
        config,
        results,
        start.elapsed().as_millis() as u64,
    ))
}

pub fn run_suite(config: &SuiteConfig) -> Result<VerificationReport, Error> {
    if config.workers == 0 {
        return Err(HarnessError::InvalidConfig("workers must be positive".into()).into());
    }
    let echo =
        serde_json::to_value(config).map_err(|e| HarnessError::InvalidConfig(e.to_string()))?;
    run_tasks(
        config.suite.name(),
        echo,
        &config.tasks(),
        &config.check,
        config.workers,
    )
}

/// `ζ(1,2)`, `t(1,2)` and the all-twos values, as their own report.
pub fn verify_euler_identities(cfg: &CheckConfig) -> Result<VerificationReport, Error> {
    let config = SuiteConfig {
        suite: Suite::Euler,
        check: cfg.clone(),
        ..SuiteConfig::default()
    };
    run_suite(&config)
}

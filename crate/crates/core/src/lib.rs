//! Multiple zeta values and multiple t-values: exact closed forms of the
//! Hoffman-type families, arbitrary-precision constants, nested-series and
//! quadrature evaluation, and a harness cross-checking the three routes.

pub mod error;
pub mod exact;
pub mod harness;
pub mod numerics;
pub mod quadrature;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use exact::combination::{MonomialKind, ZetaCombination, ZetaMonomial};
pub use exact::cot_poly::{
    cot_polynomial_integral, divisibility_experiment, DivisibilityReport, RationalPolynomial,
};
pub use exact::hoffman::{
    hat_h, hat_k, hat_t, hoffman_closed, t_coefficient, zagier_coefficient, HoffmanKind,
};
pub use exact::poly::Polynomial;
pub use harness::{run_suite, CheckConfig, CheckResult, Suite, SuiteConfig, VerificationReport};
pub use numerics::ball::{RealBall, Rigor};
pub use numerics::bigfloat::BigFloat;
pub use numerics::precision::PrecisionConfig;
pub use quadrature::{GaussLegendre, IntegrandSpec, QuadOptions, QuadResult};
pub use scalar::{Field, Real};
pub use series::{mzv_extrapolated, mzv_truncated, Composition, TruncationPlan};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub type QuadratureRule = GaussLegendre<BigFloat>;

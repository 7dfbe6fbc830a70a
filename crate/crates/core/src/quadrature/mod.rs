//! Gauss-Legendre quadrature at arbitrary precision and the integrand
//! families of the cotangent, arccos-moment and polynomial identities.

pub mod gauss;
pub mod integrand;

pub use gauss::{gauss_legendre_rule, GaussLegendre};
pub use integrand::{
    arccos_moment, cot_moment_integral, cot_polynomial_quadrature, cot_power_integral, integrate,
    integrate_fixed, integrate_scalar, integrate_with, xcotx, IntegrandSpec, MomentParity,
    QuadOptions, QuadResult,
};

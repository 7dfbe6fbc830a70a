//! Cross-route verification of the identities, with JSON-lines reports.

pub mod checks;
pub mod report;
pub mod suite;

pub use checks::{
    verify_basis_change, verify_cot_polynomial, verify_cot_power_clausen, verify_cot_power_half_pi,
    verify_euler_t, verify_euler_zeta, verify_experiment, verify_hoffman_h, verify_hoffman_t,
    verify_moment_recurrence, verify_moments, verify_murakami_scaling, verify_t_twos,
    verify_wallis, verify_zeta_twos, CheckConfig,
};
pub use report::{
    bits_needed, CheckResult, FailureKind, ReportSummary, RouteValue, VerificationReport,
};
pub use suite::{
    random_polynomials, run_suite, run_tasks, verify_euler_identities, CheckTask, Grid, Suite,
    SuiteConfig,
};

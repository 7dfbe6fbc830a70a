//! Nested-series evaluation of multiple zeta and t-values, multiple harmonic
//! tables, arcsin-power Taylor coefficients and extrapolated single sums.

pub mod arcsin;
pub mod composition;
pub mod extrapolate;
pub mod mhn;
pub mod nested;
pub mod single;

pub use arcsin::{arcsin_even_coeff, arcsin_odd_coeff};
pub use composition::{Composition, IndexSpace, Parity, SeriesKind};
pub use extrapolate::{mzv_extrapolated, tail_mhn_extrapolated, Scheme, TruncationPlan};
pub use mhn::{prefix_mhn, prefix_mhn_cached, MhnTable};
pub use nested::{mzv_truncated, nested_checkpoints};
pub use single::{single_sum_h, single_sum_t, single_sum_with};

//! Exact rational algebra: binomials, polynomials, zeta combinations and the
//! closed-form coefficient families.

pub mod combination;
pub mod combinatorics;
pub mod cot_poly;
pub mod hoffman;
pub mod poly;

//! Arbitrary-precision floats, enclosures, constants and special functions.

pub mod ball;
pub mod bigfloat;
pub mod clausen;
pub mod constants;
pub mod decimal;
pub mod eval;
pub mod precision;

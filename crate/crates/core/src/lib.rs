//! Fundamental solutions of the space-time fractional equation
//! D_t^α u = v² 𝔻_x^β u on the square 1 ≤ α, β ≤ 2, built on Fox H-functions.

pub mod analysis;
pub mod fox_h;
pub mod quadrature;
pub mod solutions;
pub mod special_functions;
pub mod summation;
pub mod validation;

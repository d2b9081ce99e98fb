//! Exact scalars, polynomials, the power-weighted function class, half-line
//! expressions and exact linear algebra.

mod gaussian;
mod half_line;
mod matrix;
mod poly;
mod power_weighted;
mod rational;

pub use gaussian::GaussianRational;
pub use half_line::{Branch, HalfLineExpr};
pub use matrix::{normalize_integral, rank_of, ExactMatrix};
pub use poly::{MultiPoly, Vars};
pub use power_weighted::{sum_of_squares, PowerWeightedFn};
pub use rational::{q, Rational, Scalar};

//! Univariate polynomials and rational functions over exact rationals.

mod dispersion;
mod gosper_equation;
pub mod linalg;
mod polynomial;
mod rational_function;

pub use dispersion::{dispersion, dispersion_bound, interpolate, resultant, root_magnitude_bound, shift_resultant};
pub use gosper_equation::{gosper_degree_bound, solve_gosper_equation};
pub use polynomial::{poly_gcd, Polynomial};
pub use rational_function::RationalFunction;

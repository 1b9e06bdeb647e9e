//! Exact hypergeometric series evaluation, Gosper summation with telescoping
//! certificates, and a verification suite for a family of terminating
//! `2F1` evaluations at `x = k/(alpha + k)`.
//!
//! Everything is computed over exact rationals. Non-terminating series are
//! evaluated only inside the unit disk, as rigorous rational enclosures.

pub mod cli;
pub mod error;
pub mod gosper;
pub mod hyper;
pub mod identities;
pub mod poly;
pub mod rational;
pub mod series;

pub use error::{Error, Result};
pub use poly::{Polynomial, RationalFunction};
pub use rational::Rational;

//! Exact multivariate polynomial interpolation and polynomial systems with
//! the maximal number of distinct solutions.
//!
//! - [`multipoly`]: sparse polynomials over the rationals.
//! - [`exactla`]: exact rational matrices plus floating eigenvalue and SVD helpers.
//! - [`interp`]: monomial bases, knot sets, poisedness, Lagrange and Hermite interpolation.
//! - [`ftasys`]: Bezout bounds, grid systems, root finding, maximality and the Hermite experiments.
//! - [`cli`]: the `poise` command-line front end.

pub mod cli;
pub mod error;
pub mod exactla;
pub mod ftasys;
pub mod interp;
pub mod multipoly;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;

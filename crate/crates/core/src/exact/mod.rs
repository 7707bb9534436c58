//! Exact rational arithmetic and small dense symmetric matrices.
//!
//! Everything in the certification path is computed over [`Rational`]. The
//! matrix and polynomial code elsewhere in the crate is written against the
//! [`Scalar`] trait so the same routines also run over `f64`/`f32` for
//! export and quick numerical checks.

mod matrix;
mod rational;
mod scalar;

pub use matrix::{frobenius_inner, SymMatrix};
pub use rational::{format_rational, parse_rational, rat, Rational};
pub use scalar::Scalar;

//! Exact integer and rational linear algebra.

mod elim;
mod matrix;
mod rational;
mod snf;

pub use elim::{determinant, eval_charpoly, minors_gcd, rank, MINORS_GCD_LIMIT};
pub use matrix::IntMatrix;
pub use rational::{inverse_rational, rational_null_space, solve_rational, RationalVector};
pub use snf::{smith_diagonal, smith_normal_form, solve_integer, solve_with, Snf};

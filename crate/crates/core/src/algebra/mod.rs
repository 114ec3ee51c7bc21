//! Exact arithmetic: rationals, partitions, bivariate polynomials, Laurent
//! polynomials in `ξ^{1/2}` and a rational linear solver.

pub mod linalg;
pub mod partition;
pub mod poly;
pub mod rational;
pub mod sqrt_laurent;

pub use linalg::{solve, LinearSolution};
pub use partition::{enumerate_partitions, Partition};
pub use poly::{bivariate_evaluate, BivariatePolynomial};
pub use rational::{q, ParseRationalError, Rational};
pub use sqrt_laurent::{sqrt_laurent_specialize, SqrtLaurent};

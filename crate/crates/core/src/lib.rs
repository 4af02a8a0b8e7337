//! Exact basis-generating polynomials of matroids, and checks for the
//! correlation and log-concavity inequalities they may satisfy: Rayleigh
//! monotonicity, higher-level Rayleigh conditions, real-rootedness and
//! binomial log-concavity of slice polynomials, the half-plane property, and
//! sixth-root-of-unity representations.
//!
//! All arithmetic is over arbitrary-precision rationals. Nonnegativity
//! questions are answered by [`positivity::Verdict`], which is either a
//! replayable certificate, an exact counterexample, or `Unknown`.

pub mod catalog;
pub mod genpoly;
pub mod hpp;
pub mod matroid;
pub mod mpoly;
pub mod positivity;
pub mod rational;
pub mod realroot;

pub use matroid::{ElementSet, Graph, Matroid};
pub use mpoly::{MPoly, Monomial, UniPoly, VarId};
pub use rational::Rational;

//! ulab: a desk-scale computability laboratory.
//!
//! The crate mechanizes a family of classic limit theorems as runnable
//! experiments over one tiny language:
//!
//! - [`vm`] defines the minimal tape language (MTL) and a fuel-bounded,
//!   deterministic interpreter, so every question about a program has a
//!   total, reproducible answer.
//! - [`enumerate`] generates every well-formed program in a canonical order
//!   (plus the Goldbach witness search used as a demonstration of orderly
//!   exhaustive search).
//! - [`complexity`] measures bounded Kolmogorov complexity by brute force
//!   and checks the counting, fuel-monotonicity, invariance, and Berry-style
//!   consequences of the definition.
//! - [`diagonal`] builds the self-applying refutation program for any
//!   claimed property-decider written as an MTL fragment, and runs it.
//! - [`evolve`] is a deterministic variable-length genetic algorithm whose
//!   discoveries are compared against an exhaustive minimal-genome oracle.

pub mod complexity;
pub mod diagonal;
pub mod enumerate;
pub mod evolve;
pub mod vm;

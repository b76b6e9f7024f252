//! Exact rational scalars, matrices and subspaces.

pub mod matrix;
pub mod rational;
pub mod subspace;

pub use matrix::ExactMatrix;
pub use rational::Rational;
pub use subspace::{is_independent, Subspace};

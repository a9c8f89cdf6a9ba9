//! Exact rational arithmetic and linear algebra.

pub mod matrix;
pub mod rational;
pub mod subspace;

pub use matrix::Matrix;
pub use rational::Rational;
pub use subspace::Subspace;

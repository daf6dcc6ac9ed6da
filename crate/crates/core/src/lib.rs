//! Exact fix and holonomy algebras of Clifford algebra elements.

pub mod appendix;
pub mod clifford;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod random;
pub mod rational;
pub mod report;
pub mod spin;
pub mod subspace;
pub mod suite;
pub mod torsion;

pub use clifford::{Blade, MultiVector};
pub use error::*;
pub use rational::Rational;
pub use subspace::Subspace;

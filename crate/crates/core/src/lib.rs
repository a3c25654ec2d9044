//! Exact quadratic decomposition of monic polynomial sequences, with
//! structure-coefficient recovery and d-orthogonality analysis.

pub mod cases;
pub mod error;
pub mod mps;
pub mod ortho;
pub mod poly;
pub mod quad;
pub mod rational;
pub mod sampling;

pub use error::{Error, Result};
pub use poly::Poly;
pub use rational::{rat, Rational};

//! Exact computations around Urod algebras, W-algebra central charges, q-characters,
//! BRST cohomology in low weights and fusion data for simply-laced affine algebras.

pub mod brstlab;
pub mod ccalc;
pub mod cli;
pub mod decomp;
pub mod error;
pub mod fusionring;
pub mod grading;
pub mod liecore;
pub mod manifest;
pub mod qchar;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;

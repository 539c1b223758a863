//! Exact higher-order Darboux (Crum-Krein) transformations of exactly
//! solvable Schrodinger operators, with independent numeric verification.

pub mod cli;
pub mod darboux;
pub mod error;
pub mod gaussfun;
pub mod model;
pub mod oscillator;
pub mod polycore;
pub mod spectral;
pub mod susy;

pub use error::{Error, Result};
pub use model::SolvableModel;

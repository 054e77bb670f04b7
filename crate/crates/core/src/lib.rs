//! Spectra of the tridiagonal Toeplitz matrix with diagonal 2, off-diagonals -1
//! and Hermitian corner entries `-alpha`, `-conj(alpha)`, at any working precision.

pub mod charpoly;
pub mod cli;
pub mod error;
pub mod matrix;
pub mod oracle;
pub mod params;
pub mod precision;
pub mod report;
pub mod solution;
pub mod spectrum;
pub mod strong;
pub mod symbol;
pub mod unimodular;
pub mod weak;

pub use error::{Error, Result};
pub use params::{PerturbationParams, Regime};
pub use precision::{Complex, PrecisionContext, Real};

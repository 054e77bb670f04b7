use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{op}: argument outside the domain ({detail})")]
    Domain { op: &'static str, detail: String },

    #[error("{op}: non-finite intermediate value")]
    NonFinite { op: &'static str },

    #[error("precision of {0} bits is below the 53-bit minimum or above the backend limit")]
    InvalidPrecision(u32),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{op}: regime not supported ({detail})")]
    Regime { op: &'static str, detail: String },

    #[error("{op}: no convergence after {iterations} iterations")]
    NoConvergence { op: &'static str, iterations: usize },

    #[error("interior bisection for j = {j} could not bracket a root; use the oracle")]
    FallbackUnavailable { j: usize },

    #[error("strong map left the arctanh domain (psi = {psi}); is n > N2?")]
    ArctanhDomain { psi: f64 },

    #[error("{op}: tan(nx/2) pole at x = {x}; evaluate through the Chebyshev form")]
    Pole { op: &'static str, x: f64 },

    #[error("eigenvector formula degenerated to the zero vector (j = {j})")]
    ZeroVector { j: usize },

    #[error("no sign change of the characteristic polynomial for the {which} eigenvalue")]
    NoBracket { which: &'static str },

    #[error("oracle eigenvalue pairing failed at index {index} (gap {gap:e})")]
    PairMismatch { index: usize, gap: f64 },

    #[error("n = {n} exceeds the dense oracle limit of {limit}")]
    OracleLimit { n: usize, limit: usize },

    #[error("cannot parse decimal {0:?}")]
    Parse(String),
}

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Errors surfaced by the core library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter is outside the domain a formula or constructor accepts.
    Domain(String),
    /// The proximal solver did not reach the requested residual; carries the
    /// best candidate found across all multistarts.
    Convergence {
        residual: f64,
        iters: usize,
        best_value: f64,
        best_u: Vec<f64>,
    },
    /// A parameter search found no admissible value.
    Search(String),
    /// A verification routine found a violated inequality.
    Verification(String),
    /// A trajectory produced a non-finite or diverging state.
    NonFinite { k: u64, rep: Option<u64> },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Convergence {
                residual,
                iters,
                best_value,
                ..
            } => write!(
                f,
                "prox solver did not converge: residual {residual:.3e} after {iters} iterations \
                 (best objective {best_value:.6e})"
            ),
            Error::Search(msg) => write!(f, "search error: {msg}"),
            Error::Verification(msg) => write!(f, "verification error: {msg}"),
            Error::NonFinite { k, rep: Some(rep) } => {
                write!(f, "non-finite state at iteration {k} (replication {rep})")
            }
            Error::NonFinite { k, rep: None } => {
                write!(f, "non-finite state at iteration {k}")
            }
        }
    }
}

impl core::error::Error for Error {}

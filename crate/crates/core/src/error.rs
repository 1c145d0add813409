use thiserror::Error;

/// Failures reported by the library.
///
/// `Domain` and `Range` are argument errors, `Hypothesis` means the input does
/// not satisfy the assumptions an inequality is proved under, and
/// `Regime` means a parameter is outside the interval where a bound is known
/// to hold.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("series diverges: {0}")]
    Divergence(String),

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("outside proved regime: {0}")]
    Regime(String),

    #[error("quadrature grid too coarse: {nodes} nodes cannot resolve index {n_max} (need at least {required})")]
    Aliasing {
        nodes: usize,
        n_max: usize,
        required: usize,
    },

    #[error("truncation cap of {cap} terms reached before the tail bound fell below {tol:e}")]
    TruncationCap { cap: usize, tol: f64 },

    #[error("generator failed after {attempts} attempts: {reason}")]
    Generator { attempts: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Gamma evaluated at a non-positive integer.
    #[error("gamma pole at non-positive integer argument {0}")]
    Pole(f64),

    /// Argument outside the supported domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series truncation policy was exhausted before reaching tolerance.
    #[error("series did not converge: {0}")]
    NonConvergence(String),

    /// Too few usable observations for the requested computation.
    #[error("insufficient data: need at least {need} usable observations, have {have}")]
    InsufficientData { need: usize, have: usize },

    /// A zero survived into a log transform with exclusion disabled.
    #[error("zero observation at index {0} cannot be log-transformed")]
    ZeroObservation(usize),

    /// A Monte Carlo replicate failed; identifies the failing cell.
    #[error("replicate failed for combo {combo}, n={n}, stream_id={stream_id}: {source}")]
    Replicate {
        combo: String,
        n: usize,
        stream_id: u64,
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

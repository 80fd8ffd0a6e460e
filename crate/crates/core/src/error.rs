use thiserror::Error;

/// Errors surfaced by library operations.
#[derive(Debug, Error)]
pub enum LabError {
    /// Caller violated a precondition (bad range, singular matrix, cutoff too small, ...).
    #[error("usage: {0}")]
    Usage(String),

    /// A verified-point sampler ran out of attempts. The sampler never
    /// silently returns an unverified point.
    #[error("sampler exhausted after {attempts} attempts (n={n}, stratum={stratum}, seed={seed})")]
    SamplerExhausted {
        n: usize,
        stratum: usize,
        seed: u64,
        attempts: usize,
    },

    /// Malformed textual input (polynomial text form, word alphabet, ...).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, LabError>;

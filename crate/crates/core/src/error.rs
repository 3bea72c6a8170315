use thiserror::Error;

/// Failures raised by state construction and numerical evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input parameter lies outside its admissible domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The unnormalized state vector vanished.
    #[error("state has zero norm ({norm:e})")]
    ZeroNormState { norm: f64 },

    /// The requested quasi-Bell state does not exist at this amplitude.
    #[error("degenerate state: index {index} vanishes at alpha = {alpha}")]
    DegenerateState { index: usize, alpha: f64 },

    /// The Fock cutoff is too small for the requested object.
    #[error("truncation error: {0}")]
    Truncation(String),
}

impl Error {
    /// True for failures caused by finite numerics rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Truncation(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

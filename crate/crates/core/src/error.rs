use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A table lookup outside the range the cache was built for.
    #[error("index ({n}, {k}) outside table bound n_max = {n_max}")]
    OutOfRange { n: usize, k: usize, n_max: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An exact division that must leave no remainder did.
    #[error("inexact division in {context}")]
    InexactDivision { context: &'static str },

    /// A signed accumulation that must end nonnegative ended negative.
    #[error("negative result in {context}")]
    NegativeResult { context: &'static str },

    #[error("preorders over different ground sets ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },

    #[error("saddle solve did not converge for kappa = {kappa}; best bracket [{lo}, {hi}]")]
    NoConvergence { kappa: f64, lo: f64, hi: f64 },
}

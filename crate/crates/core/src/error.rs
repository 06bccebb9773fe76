use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument is NaN or infinite in {0}")]
    NonFinite(&'static str),

    #[error("pole of the Gamma function at x = {0}")]
    GammaPole(f64),

    #[error("{func}: argument outside supported domain ({detail})")]
    Domain { func: &'static str, detail: String },

    #[error("{func}: series did not converge after {terms} terms (last term {last_term:e}, partial sum {partial:e})")]
    NonConvergence {
        func: &'static str,
        terms: usize,
        last_term: f64,
        partial: f64,
    },

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("disks {0} and {1} overlap or touch")]
    Overlap(usize, usize),

    #[error("alpha = {0} outside the supported window [0.05, 1.95]")]
    AlphaRange(f64),

    #[error("quadrature tolerance not met: estimated relative error {achieved:e} > tol {tol:e}")]
    ToleranceNotMet { achieved: f64, tol: f64 },

    #[error("index {index} out of range for a system of {len} components")]
    Index { index: usize, len: usize },

    #[error("{0}")]
    Precondition(String),

    #[error("line search failed {0} consecutive times")]
    StepCollapse(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what}: argument {value} outside the domain")]
    Domain { what: &'static str, value: f64 },

    #[error("pole at s = {s}")]
    Pole { s: f64 },

    #[error("Z_n(s) at s = 0 is not provided")]
    SpecialPoint,

    #[error("requested tolerance {requested:e} not reached: best achievable bound {achieved:e}")]
    Precision { requested: f64, achieved: f64 },

    #[error("{what} did not converge after {iterations} iterations")]
    Convergence { what: &'static str, iterations: usize },

    #[error("integration-by-parts bound inapplicable for beta = {beta}, x = {x} (needs x > beta > 0)")]
    BoundInapplicable { beta: f64, x: f64 },

    #[error("representation inapplicable: {0}")]
    Inapplicable(String),

    #[error("sign indeterminate: value {value:e} within error bound {err:e}")]
    Indeterminate { value: f64, err: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("analysis failure: {0}")]
    Analysis(String),

    #[error("output failure: {0}")]
    Output(String),
}

impl Error {
    pub fn is_indeterminate(&self) -> bool {
        matches!(self, Error::Indeterminate { .. })
    }
}

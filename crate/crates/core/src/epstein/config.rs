use crate::{Error, Result};
use serde::Serialize;

/// Accuracy target and truncation limits for lattice evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalConfig {
    /// Target absolute error of a Xi evaluation.
    pub tol: f64,
    /// Hard cap on the per-axis lattice radius.
    pub max_radius: u32,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_radius: 100_000,
        }
    }
}

impl EvalConfig {
    pub fn new(tol: f64, max_radius: u32) -> Result<Self> {
        let cfg = Self { tol, max_radius };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_tol(self, tol: f64) -> Self {
        Self { tol, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(Error::Config(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_radius < 2 {
            return Err(Error::Config(format!(
                "max_radius must be at least 2, got {}",
                self.max_radius
            )));
        }
        Ok(())
    }
}

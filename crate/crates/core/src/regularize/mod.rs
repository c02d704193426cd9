//! Truncated projection of scaled data onto an orthonormalized basis.

mod discrete;
mod expansion;
mod pipeline;
mod split;

use serde::{Deserialize, Serialize};

pub use discrete::{discrete_svd_pipeline, DiscreteOutput};
pub use expansion::{Expansion, Role};
pub use pipeline::{
    build_design, estimate_source, fit_expansion, project_data, reconstruct_split,
    run_pipeline, solve_coefficients, PipelineConfig, PipelineOutput, CONDITION_WARN,
};
pub use split::{split_signal, ProjectionSplit, DEFAULT_GAP_FACTOR, DEFAULT_TAU};

use crate::error::{Error, Result};

/// Samples `g_k ≈ g(x_k)` with standard deviations `s_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDataset")]
pub struct NoisyDataset {
    xs: Vec<f64>,
    g: Vec<f64>,
    s: Vec<f64>,
}

#[derive(Deserialize)]
struct RawDataset {
    xs: Vec<f64>,
    g: Vec<f64>,
    s: Vec<f64>,
}

impl TryFrom<RawDataset> for NoisyDataset {
    type Error = Error;

    fn try_from(r: RawDataset) -> Result<Self> {
        NoisyDataset::new(r.xs, r.g, r.s)
    }
}

impl NoisyDataset {
    /// Checks equal lengths, a strictly increasing grid, finite values and
    /// positive standard deviations.
    pub fn new(xs: Vec<f64>, g: Vec<f64>, s: Vec<f64>) -> Result<Self> {
        let m = xs.len();
        if m == 0 {
            return Err(Error::domain("dataset is empty"));
        }
        for len in [g.len(), s.len()] {
            if len != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: len,
                });
            }
        }
        if let Some(k) = xs.iter().chain(&g).position(|v| !v.is_finite()) {
            return Err(Error::domain(format!("non-finite value at position {}", k % m)));
        }
        if let Some(k) = xs.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(Error::domain(format!(
                "grid must be strictly increasing (x[{}] = {}, x[{}] = {})",
                k,
                xs[k],
                k + 1,
                xs[k + 1]
            )));
        }
        if let Some(k) = s.iter().position(|&v| !(v > 0.0 && v.is_finite())) {
            return Err(Error::domain(format!(
                "standard deviation at row {k} must be positive, got {}",
                s[k]
            )));
        }
        Ok(Self { xs, g, s })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn g(&self) -> &[f64] {
        &self.g
    }

    pub fn s(&self) -> &[f64] {
        &self.s
    }

    /// Same grid and values with every `g_k` and `s_k` multiplied by `c > 0`.
    pub fn rescaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::domain(format!("scale factor must be positive, got {c}")));
        }
        Self::new(
            self.xs.clone(),
            self.g.iter().map(|v| v * c).collect(),
            self.s.iter().map(|v| v * c).collect(),
        )
    }
}

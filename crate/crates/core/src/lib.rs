//! Regularization of smooth functions known only through noisy samples.
//!
//! The data are rotated onto an orthonormalized basis of closed-form functions
//! (the singular functions of integration or of Riemann–Liouville fractional
//! integration, or plain Legendre polynomials), split into signal and noise by a
//! threshold in units of standard deviation, and the signal part is turned into a
//! short closed-form expansion of the data function together with its derivative
//! or fractional derivative. Residual diagnostics (χ² discrepancy bounds, normality
//! goodness of fit, cumulative periodogram against a Kolmogorov–Smirnov band) judge
//! whether the discarded part looks like white noise.
//!
//! The classic discrete variant, which factors the scaled cumulative-sum operator
//! with a dense SVD, is available as [`regularize::discrete_svd_pipeline`].

// Guards such as `!(x > 0.0)` are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
pub mod diagnostics;
mod error;
pub mod linalg;
pub mod problems;
pub mod regularize;

pub use basis::{BasisFamily, SigmaSource, SingularTriple};
pub use diagnostics::DiagnosticsReport;
pub use error::{Error, Result};
pub use linalg::{DenseMatrix, QrFactors, SvdFactors};
pub use problems::{NoiseSpec, TestProblem};
pub use regularize::{
    Expansion, NoisyDataset, PipelineConfig, PipelineOutput, ProjectionSplit, Role,
};

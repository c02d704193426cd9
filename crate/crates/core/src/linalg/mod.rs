//! Dense linear algebra used by the pipelines.
//!
//! Everything here is written out directly: unpivoted modified Gram–Schmidt with
//! one reorthogonalization pass (column order must be preserved, since column `k`
//! carries the `k`-th frequency), one-sided Jacobi SVD, the midpoint cumulative-sum
//! operator with its analytic inverse, and an iterative radix-2 FFT.

mod cumulative;
mod fft;
mod matrix;
mod qr;
mod svd;

pub use cumulative::cumulative_op;
pub use fft::{dft_direct, fft_radix2};
pub use matrix::DenseMatrix;
pub use qr::{back_substitute, qr_mgs, QrFactors, RANK_TOL};
pub use svd::{jacobi_svd, SvdFactors, MAX_SWEEPS};

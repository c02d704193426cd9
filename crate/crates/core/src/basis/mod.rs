//! Special functions and the closed-form bases.
//!
//! Three families are provided: the singular system of ordinary integration on
//! `[0, 1]`, the singular system of Riemann–Liouville integration of order
//! `μ ∈ (0, 1)` on `[-1, 1]`, and orthonormal Legendre polynomials for smoothing
//! without an underlying operator.

mod poly;
mod quadrature;
mod singular;
mod special;

pub use poly::{jacobi_eval, jacobi_sequence, legendre_deriv, legendre_eval, legendre_sequence};
pub use quadrature::{
    riemann_liouville_quad, riemann_liouville_with, GaussLegendre, DEFAULT_QUAD_NODES,
};
pub use singular::{
    frac_singular_triple, fractional_norm, fractional_sigma_by_quadrature,
    printed_fractional_sigma, trig_singular_triple, BasisFamily, SigmaSource, SingularTriple,
    PRINTED_SIGMA_RTOL,
};
pub use special::{gamma, log_gamma};

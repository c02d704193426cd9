use serde::{Deserialize, Serialize};

use super::pipeline::PipelineConfig;
use super::split::{split_signal, ProjectionSplit};
use super::NoisyDataset;
use crate::diagnostics::{scale, whiteness_report, DiagnosticsReport, ResidualSeries};
use crate::error::{Error, Result};
use crate::linalg::{cumulative_op, jacobi_svd};

/// Relative tolerance on the spacing of an equispaced grid.
const SPACING_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteOutput {
    pub h: f64,
    /// `x_k - h/2`, where the estimate lives.
    pub midpoints: Vec<f64>,
    pub f_hat: Vec<f64>,
    pub singular_values: Vec<f64>,
    pub split: ProjectionSplit,
    pub g_s: Vec<f64>,
    pub g_n: Vec<f64>,
    pub residual: Vec<f64>,
    pub report: DiagnosticsReport,
}

/// Regularized differentiation with the discretized integration operator.
///
/// On an equispaced grid `x_k = x_0 + k h` with `g(x_0) = 0`, the midpoint
/// rule gives `g = L f̃ + ε` with `L = h·tril(1)`. The scaled operator
/// `M = S⁻¹ L` is factored as `U Σ Vᵀ`, the data are rotated to `a = Uᵀ b` and
/// split, and `f̂ = L⁻¹ g_S` with `g_S = S U a_S`. The column count is always
/// `m`; `cfg.n` and `cfg.column_cap` are ignored.
pub fn discrete_svd_pipeline(data: &NoisyDataset, cfg: &PipelineConfig) -> Result<DiscreteOutput> {
    let m = data.len();
    let xs = data.xs();
    if m < 2 {
        return Err(Error::domain("the discrete method needs at least two points"));
    }
    let h = (xs[m - 1] - xs[0]) / (m - 1) as f64;
    if let Some(k) = xs.windows(2).position(|w| ((w[1] - w[0]) - h).abs() > SPACING_RTOL * h) {
        return Err(Error::domain(format!(
            "grid is not equispaced near x[{k}] = {} (spacing {} vs {h})",
            xs[k],
            xs[k + 1] - xs[k]
        )));
    }
    let pad = cfg.resolve_pad(m)?;

    let (l, l_inv) = cumulative_op(m, h);
    let inv_s: Vec<f64> = data.s().iter().map(|s| 1.0 / s).collect();
    let svd = jacobi_svd(&l.scale_rows(&inv_s)?)?;
    let b = scale(data.g(), data.s())?;
    let a = svd.u.tr_matvec(&b)?;
    let split = split_signal(&a, cfg.tau, cfg.gap_factor, &cfg.demote)?;

    let unscale = |v: Vec<f64>| v.into_iter().zip(data.s()).map(|(x, s)| x * s).collect::<Vec<_>>();
    let g_s = unscale(svd.u.matvec(&split.signal_part())?);
    let g_n = unscale(svd.u.matvec(&split.noise_part())?);
    let f_hat = l_inv.matvec(&g_s)?;

    let diff: Vec<f64> = data.g().iter().zip(&g_s).map(|(g, gs)| g - gs).collect();
    let residual = scale(&diff, data.s())?;
    let report = whiteness_report(&ResidualSeries::new(residual.clone())?, pad)?;

    Ok(DiscreteOutput {
        h,
        midpoints: xs.iter().map(|x| x - h / 2.0).collect(),
        f_hat,
        singular_values: svd.sigma,
        split,
        g_s,
        g_n,
        residual,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_left_singular_vector() {
        let m = 32;
        let xs: Vec<f64> = (1..=m).map(|k| k as f64 / m as f64).collect();
        let (l, _) = cumulative_op(m, 1.0 / m as f64);
        let svd = jacobi_svd(&l).unwrap();
        let g: Vec<f64> = svd.u.column(0).iter().map(|v| 50.0 * v).collect();
        let data = NoisyDataset::new(xs, g, vec![1.0; m]).unwrap();
        let out = discrete_svd_pipeline(&data, &PipelineConfig::default()).unwrap();
        assert_eq!(out.split.signal_idx, vec![1]);
        assert!((out.split.a[0].abs() - 50.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_uneven_grid() {
        let xs = vec![0.1, 0.2, 0.35, 0.4, 0.5, 0.6, 0.7, 0.8];
        let data = NoisyDataset::new(xs, vec![0.0; 8], vec![1.0; 8]).unwrap();
        assert!(discrete_svd_pipeline(&data, &PipelineConfig::default()).is_err());
    }
}

use serde::{Deserialize, Serialize};

use super::expansion::{Expansion, Role};
use super::split::{split_signal, ProjectionSplit, DEFAULT_GAP_FACTOR, DEFAULT_TAU};
use super::NoisyDataset;
use crate::basis::BasisFamily;
use crate::diagnostics::{default_pad, scale, whiteness_report, DiagnosticsReport, ResidualSeries};
use crate::error::{Error, Result};
use crate::linalg::{back_substitute, qr_mgs, DenseMatrix, QrFactors};

/// `|R_11 / R_nn|` above which a warning suggests fewer columns.
pub const CONDITION_WARN: f64 = 1e12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    /// Number of basis functions. Defaults to the column cap.
    pub n: Option<usize>,
    /// Upper bound on `n`. Defaults to [`BasisFamily::default_column_cap`].
    pub column_cap: Option<usize>,
    pub tau: f64,
    pub gap_factor: f64,
    /// Indices forced into the noise.
    pub demote: Vec<usize>,
    /// Periodogram length, a power of two not below `m`. Defaults to the
    /// smallest such power.
    pub pad_to: Option<usize>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            n: None,
            column_cap: None,
            tau: DEFAULT_TAU,
            gap_factor: DEFAULT_GAP_FACTOR,
            demote: Vec::new(),
            pad_to: None,
        }
    }
}

impl PipelineConfig {
    pub fn with_n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_demote(mut self, demote: Vec<usize>) -> Self {
        self.demote = demote;
        self
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = tau;
        self
    }

    pub(crate) fn resolve_pad(&self, m: usize) -> Result<usize> {
        let pad = self.pad_to.unwrap_or_else(|| default_pad(m));
        if pad < m || !pad.is_power_of_two() {
            return Err(Error::domain(format!(
                "periodogram length must be a power of two >= {m}, got {pad}"
            )));
        }
        Ok(pad)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineOutput {
    pub family: BasisFamily,
    pub n: usize,
    pub condition_estimate: f64,
    pub split: ProjectionSplit,
    /// `G`, the regularized data function.
    pub data: Expansion,
    /// `f̂`, the source estimate.
    pub source: Expansion,
    pub g_s: Vec<f64>,
    pub g_n: Vec<f64>,
    /// `S⁻¹(g - g_S)`.
    pub residual: Vec<f64>,
    pub report: DiagnosticsReport,
}

/// `P_kj = u_j(x_k)` for `j = 1..=n`.
pub fn build_design(family: BasisFamily, xs: &[f64], n: usize) -> Result<DenseMatrix> {
    family.validate()?;
    let m = xs.len();
    if n == 0 || n > m {
        return Err(Error::domain(format!("column count must lie in 1..={m}, got {n}")));
    }
    if let Some(&x) = xs.iter().find(|&&x| !family.contains(x)) {
        let (a, b) = family.domain();
        return Err(Error::domain(format!(
            "grid point {x} outside the {} domain [{a}, {b}]",
            family.name()
        )));
    }
    let rows: Vec<Vec<f64>> = xs.iter().map(|&x| family.data_row(n, x)).collect();
    DenseMatrix::from_rows(&rows)
}

/// `a = Qᵀ b`.
pub fn project_data(qr: &QrFactors, b: &[f64]) -> Result<Vec<f64>> {
    qr.q.tr_matvec(b)
}

/// `(g_S, g_N) = (S Q a_S, S Q a_N)`.
pub fn reconstruct_split(qr: &QrFactors, split: &ProjectionSplit, s: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let (m, n) = qr.q.shape();
    if split.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: split.n(),
        });
    }
    if s.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: s.len(),
        });
    }
    let unscale = |v: Vec<f64>| v.into_iter().zip(s).map(|(b, sk)| b * sk).collect::<Vec<_>>();
    let g_s = unscale(qr.q.matvec(&split.signal_part())?);
    let g_n = unscale(qr.q.matvec(&split.noise_part())?);
    Ok((g_s, g_n))
}

/// `ξ = R⁻¹ Qᵀ g_S` restricted to the leading `k_max` basis functions.
///
/// When `S` is a multiple of the identity, `Qᵀ g_S` vanishes beyond `k_max`
/// and the restriction only removes rounding noise. Coefficients with index
/// up to `k_max` are generally nonzero even at noise indices, since `R` mixes
/// every column with the ones before it.
pub fn solve_coefficients(
    qr: &QrFactors,
    g_s: &[f64],
    family: BasisFamily,
    k_max: usize,
) -> Result<Expansion> {
    let n = qr.r.cols();
    if k_max > n {
        return Err(Error::domain(format!("k_max {k_max} exceeds column count {n}")));
    }
    if k_max == 0 {
        return Expansion::new(family, Role::Data, Vec::new());
    }
    let y = qr.q.tr_matvec(g_s)?;
    let r = DenseMatrix::from_fn(k_max, k_max, |i, j| qr.r[(i, j)]);
    let xi = back_substitute(&r, &y[..k_max])?;
    Expansion::new(family, Role::Data, xi.into_iter().enumerate().map(|(j, c)| (j + 1, c)).collect())
}

/// Maps the data expansion `G` to the source estimate `f̂`: `ξ_j / σ_j` on
/// `v_j` for families with a singular system, termwise differentiation for
/// Legendre polynomials.
pub fn estimate_source(data: &Expansion) -> Result<Expansion> {
    if data.role != Role::Data {
        return Err(Error::domain("source estimate needs a data-side expansion"));
    }
    let mut coefficients = Vec::with_capacity(data.coefficients.len());
    for &(j, xi) in &data.coefficients {
        let c = match data.family.singular_triple(j)? {
            Some(t) => xi / t.sigma(),
            None => xi,
        };
        coefficients.push((j, c));
    }
    Expansion::new(data.family, Role::Source, coefficients)
}

/// Least-squares fit of `values` by the first `n` data-side functions, with
/// no truncation.
pub fn fit_expansion(family: BasisFamily, xs: &[f64], values: &[f64], n: usize) -> Result<Expansion> {
    if values.len() != xs.len() {
        return Err(Error::DimensionMismatch {
            expected: xs.len(),
            found: values.len(),
        });
    }
    let qr = qr_mgs(&build_design(family, xs, n)?)?;
    solve_coefficients(&qr, values, family, n)
}

/// Design matrix, QR, scaling, projection, split, reconstruction, coefficients,
/// source estimate and residual diagnostics in one call.
pub fn run_pipeline(data: &NoisyDataset, family: BasisFamily, cfg: &PipelineConfig) -> Result<PipelineOutput> {
    family.validate()?;
    let m = data.len();
    let cap = cfg.column_cap.unwrap_or_else(|| family.default_column_cap(m)).min(m);
    let n = cfg.n.unwrap_or(cap);
    if n == 0 || n > cap {
        return Err(Error::domain(format!(
            "column count {n} outside 1..={cap} (m = {m}, cap = {cap})"
        )));
    }
    let pad = cfg.resolve_pad(m)?;

    let qr = qr_mgs(&build_design(family, data.xs(), n)?)?;
    let condition = qr.condition_estimate();
    if condition > CONDITION_WARN {
        log::warn!(
            "design matrix is ill-conditioned (|R11/Rnn| = {condition:.3e} with {n} columns); \
             lower the column cap"
        );
    }
    let b = scale(data.g(), data.s())?;
    let a = project_data(&qr, &b)?;
    let split = split_signal(&a, cfg.tau, cfg.gap_factor, &cfg.demote)?;
    let (g_s, g_n) = reconstruct_split(&qr, &split, data.s())?;
    let g_expansion = solve_coefficients(&qr, &g_s, family, split.k_max)?;
    let source = estimate_source(&g_expansion)?;

    let diff: Vec<f64> = data.g().iter().zip(&g_s).map(|(g, gs)| g - gs).collect();
    let residual = scale(&diff, data.s())?;
    let report = whiteness_report(&ResidualSeries::new(residual.clone())?, pad)?;
    log::info!(
        "{} pipeline: m = {m}, n = {n}, signal = {:?}, ssr = {:.3}",
        family.name(),
        split.signal_idx,
        report.ssr
    );

    Ok(PipelineOutput {
        family,
        n,
        condition_estimate: condition,
        split,
        data: g_expansion,
        source,
        g_s,
        g_n,
        residual,
        report,
    })
}

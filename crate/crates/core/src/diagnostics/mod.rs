//! Residual diagnostics.
//!
//! A regularized fit is acceptable only if its scaled residual looks like a
//! sample of independent `N(0, 1)` values. Three checks are combined into a
//! [`DiagnosticsReport`]:
//!
//! 1. the sum of squares lies within `m ± κ√(2m)` with `κ = 2`;
//! 2. a χ² goodness-of-fit test does not reject normality at the 5% level;
//! 3. no more than 5% of the cumulative periodogram ordinates leave the
//!    Kolmogorov–Smirnov band `y = 2ν ± δ`.
//!
//! The path length of the cumulative periodogram is reported alongside; for
//! white noise it stays close to `√1.25`.

mod gof;
mod spectral;
mod stats;

use serde::{Deserialize, Serialize};

pub use gof::{chi2_gof_normal, GofOutcome, DEFAULT_GOF_BINS, MIN_EXPECTED, MIN_GOF_SAMPLE};
pub use spectral::{
    cumulative_periodogram, ideal_path_length, ks_band, outside_fraction, path_length,
    periodogram, KS_COEFF_5PCT,
};
pub use stats::{erfc, gamma_q, normal_cdf, normal_quantile};

use crate::error::{Error, Result};

/// Multiplier on `√(2m)` for the discrepancy bounds.
pub const KAPPA: f64 = 2.0;
pub const GOF_ALPHA: f64 = 0.05;
/// Largest admissible fraction of ordinates outside the band.
pub const MAX_OUTSIDE_FRACTION: f64 = 0.05;
pub const MIN_SPECTRAL_SAMPLE: usize = 8;

/// Scaled residuals, in units of standard deviation.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualSeries(Vec<f64>);

impl ResidualSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain(format!("residual {i} is not finite")));
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum()
    }
}

/// `b_j = g_j / s_j`.
pub fn scale(g: &[f64], s: &[f64]) -> Result<Vec<f64>> {
    if g.len() != s.len() {
        return Err(Error::DimensionMismatch {
            expected: g.len(),
            found: s.len(),
        });
    }
    if let Some(j) = s.iter().position(|&sj| !(sj > 0.0)) {
        return Err(Error::domain(format!(
            "standard deviation {j} must be positive, got {}",
            s[j]
        )));
    }
    Ok(g.iter().zip(s).map(|(gj, sj)| gj / sj).collect())
}

/// `(m - κ√(2m), m + κ√(2m))`, lower end clamped at zero.
pub fn ssr_bounds(m: usize, kappa: f64) -> (f64, f64) {
    let mf = m as f64;
    let half = kappa * (2.0 * mf).sqrt();
    ((mf - half).max(0.0), mf + half)
}

/// Smallest power of two not below `m`.
pub fn default_pad(m: usize) -> usize {
    m.max(1).next_power_of_two()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsReport {
    pub m: usize,
    pub pad_to: usize,
    /// Number of nonzero-frequency ordinates (`pad_to / 2`).
    pub q: usize,
    pub kappa: f64,
    pub ssr: f64,
    pub ssr_lo: f64,
    pub ssr_hi: f64,
    pub gof_stat: Option<f64>,
    pub gof_dof: Option<usize>,
    pub gof_pvalue: Option<f64>,
    pub frequencies: Vec<f64>,
    pub periodogram: Vec<f64>,
    pub cumulative: Vec<f64>,
    pub band_delta: f64,
    pub outside_fraction: f64,
    pub path_length: f64,
    pub pass_d1: bool,
    pub pass_d2: bool,
    pub pass_d3: bool,
    /// Why a diagnostic could not be evaluated, if any.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl DiagnosticsReport {
    pub fn all_pass(&self) -> bool {
        self.pass_d1 && self.pass_d2 && self.pass_d3
    }

    /// `(ν_j, P_j)` rows.
    pub fn periodogram_rows(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.frequencies.iter().copied().zip(self.periodogram.iter().copied())
    }

    /// `(ν_j, C_j)` rows.
    pub fn cumulative_rows(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.frequencies.iter().copied().zip(self.cumulative.iter().copied())
    }
}

/// Runs the three residual diagnostics.
///
/// A sample the normality test cannot handle (fewer than 20 values, zero
/// variance) or a series with no spectral power still produces a report; the
/// affected diagnostic fails and the reason is recorded in `notes`.
pub fn whiteness_report(resid: &ResidualSeries, pad_to: usize) -> Result<DiagnosticsReport> {
    let m = resid.len();
    if m < MIN_SPECTRAL_SAMPLE {
        return Err(Error::domain(format!(
            "diagnostics need at least {MIN_SPECTRAL_SAMPLE} residuals, got {m}"
        )));
    }
    let mut notes = Vec::new();

    let ssr = resid.sum_of_squares();
    let (ssr_lo, ssr_hi) = ssr_bounds(m, KAPPA);
    let pass_d1 = ssr >= ssr_lo && ssr <= ssr_hi;

    let gof = match chi2_gof_normal(resid.values(), DEFAULT_GOF_BINS) {
        Ok(g) => Some(g),
        Err(e @ (Error::Degenerate(_) | Error::Domain(_))) => {
            notes.push(format!("normality test skipped: {e}"));
            None
        }
        Err(e) => return Err(e),
    };
    let pass_d2 = gof.is_some_and(|g| g.pvalue >= GOF_ALPHA);

    let (frequencies, periodogram) = spectral::periodogram(resid.values(), pad_to)?;
    let q = pad_to / 2;
    let cumulative = match cumulative_periodogram(&periodogram[1..]) {
        Ok(c) => c,
        Err(e) => {
            notes.push(format!("cumulative periodogram undefined: {e}"));
            vec![0.0; q + 1]
        }
    };
    let band_delta = ks_band(q);
    let outside = outside_fraction(&frequencies, &cumulative, band_delta);
    let pass_d3 = outside <= MAX_OUTSIDE_FRACTION && notes.iter().all(|n| !n.starts_with("cumulative"));

    Ok(DiagnosticsReport {
        m,
        pad_to,
        q,
        kappa: KAPPA,
        ssr,
        ssr_lo,
        ssr_hi,
        gof_stat: gof.map(|g| g.stat),
        gof_dof: gof.map(|g| g.dof),
        gof_pvalue: gof.map(|g| g.pvalue),
        path_length: path_length(&frequencies, &cumulative),
        frequencies,
        periodogram,
        cumulative,
        band_delta,
        outside_fraction: outside,
        pass_d1,
        pass_d2,
        pass_d3,
        notes,
    })
}

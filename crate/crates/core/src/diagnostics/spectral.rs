//! Periodogram, cumulative periodogram and the Kolmogorov–Smirnov band.

use crate::error::{Error, Result};
use crate::linalg::fft_radix2;

/// Asymptotic 5% two-sided Kolmogorov–Smirnov coefficient.
pub const KS_COEFF_5PCT: f64 = 1.358;

/// Length of the white-noise line from `(0, 0)` to `(0.5, 1)`.
pub fn ideal_path_length() -> f64 {
    (0.25f64 + 1.0).sqrt()
}

/// Frequencies `ν_j = j/M` and ordinates `|R_j|²/m` for `j = 0..=M/2`, with the
/// series zero-padded to `pad_to = M`. The divisor is the unpadded length.
pub fn periodogram(series: &[f64], pad_to: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let m = series.len();
    if m == 0 {
        return Err(Error::domain("periodogram of an empty series"));
    }
    let spec = fft_radix2(series, pad_to)?;
    let half = pad_to / 2;
    let freqs = (0..=half).map(|j| j as f64 / pad_to as f64).collect();
    let ords = spec[..=half]
        .iter()
        .map(|r| r.norm_sqr() / m as f64)
        .collect();
    Ok((freqs, ords))
}

/// `C_0 = 0`, `C_j = Σ_{k≤j} P_k / Σ_{k≤q} P_k` for ordinates `P_1..P_q`.
pub fn cumulative_periodogram(ordinates: &[f64]) -> Result<Vec<f64>> {
    let total: f64 = ordinates.iter().sum();
    if !(total > 0.0) {
        return Err(Error::Degenerate("periodogram has no power at nonzero frequencies".into()));
    }
    let q = ordinates.len();
    let mut out = Vec::with_capacity(q + 1);
    out.push(0.0);
    let mut acc = 0.0;
    for (k, p) in ordinates.iter().enumerate() {
        acc += p;
        out.push(if k + 1 == q { 1.0 } else { (acc / total).min(1.0) });
    }
    Ok(out)
}

/// Half-width `δ = 1.358/√q` of the 95% white-noise band around `y = 2ν`.
pub fn ks_band(q: usize) -> f64 {
    debug_assert!(q >= 2);
    KS_COEFF_5PCT / (q as f64).sqrt()
}

/// Fraction of `j = 1..=q` with `|C_j - 2ν_j| > δ`.
pub fn outside_fraction(freqs: &[f64], cumulative: &[f64], delta: f64) -> f64 {
    let q = cumulative.len().saturating_sub(1);
    if q == 0 {
        return 0.0;
    }
    let outside = (1..=q)
        .filter(|&j| (cumulative[j] - 2.0 * freqs[j]).abs() > delta)
        .count();
    outside as f64 / q as f64
}

/// `Σ_k √((C_k - C_{k-1})² + (ν_k - ν_{k-1})²)`.
pub fn path_length(freqs: &[f64], cumulative: &[f64]) -> f64 {
    freqs
        .windows(2)
        .zip(cumulative.windows(2))
        .map(|(f, c)| ((c[1] - c[0]).powi(2) + (f[1] - f[0]).powi(2)).sqrt())
        .sum()
}

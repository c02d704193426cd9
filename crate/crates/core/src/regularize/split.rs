use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_TAU: f64 = 3.0;
pub const DEFAULT_GAP_FACTOR: f64 = 10.0;

/// Partition of the rotated data `a` into signal and noise components.
/// Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionSplit {
    pub a: Vec<f64>,
    pub signal_idx: Vec<usize>,
    pub noise_idx: Vec<usize>,
    /// Components above the threshold that were moved to the noise, either by
    /// the gap rule or on request.
    pub demoted: Vec<usize>,
    pub tau: f64,
    pub gap_factor: f64,
    /// `Σ a_k²` over the noise indices.
    pub ssr: f64,
    /// Largest signal index, 0 when the signal is empty.
    pub k_max: usize,
}

impl ProjectionSplit {
    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// `a` with noise components zeroed.
    pub fn signal_part(&self) -> Vec<f64> {
        self.masked(&self.signal_idx)
    }

    /// `a` with signal components zeroed.
    pub fn noise_part(&self) -> Vec<f64> {
        self.masked(&self.noise_idx)
    }

    fn masked(&self, keep: &[usize]) -> Vec<f64> {
        let mut out = vec![0.0; self.a.len()];
        for &k in keep {
            out[k - 1] = self.a[k - 1];
        }
        out
    }
}

/// Splits `a` into signal and noise.
///
/// Candidates are the indices with `|a_k| > tau`. Walking them in increasing
/// order, a candidate whose distance to the previous retained candidate
/// exceeds `gap_factor` times the median gap between consecutive candidates is
/// moved to the noise: an isolated high-frequency component is more likely
/// noise than signal. Indices listed in `demote` are then moved to the noise
/// unconditionally.
pub fn split_signal(a: &[f64], tau: f64, gap_factor: f64, demote: &[usize]) -> Result<ProjectionSplit> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::domain(format!("threshold must be positive, got {tau}")));
    }
    if !(gap_factor > 0.0) {
        return Err(Error::domain(format!("gap factor must be positive, got {gap_factor}")));
    }
    let n = a.len();
    if let Some(&k) = demote.iter().find(|&&k| k == 0 || k > n) {
        return Err(Error::domain(format!("demoted index {k} outside 1..={n}")));
    }

    let candidates: Vec<usize> = (1..=n).filter(|&k| a[k - 1].abs() > tau).collect();
    let mut demoted = Vec::new();
    let mut signal = Vec::with_capacity(candidates.len());
    if let Some(limit) = median_gap(&candidates).map(|m| gap_factor * m) {
        for &k in &candidates {
            match signal.last() {
                Some(&prev) if (k - prev) as f64 > limit => demoted.push(k),
                _ => signal.push(k),
            }
        }
    } else {
        signal = candidates;
    }
    signal.retain(|k| {
        let drop = demote.contains(k);
        if drop {
            demoted.push(*k);
        }
        !drop
    });
    demoted.sort_unstable();

    let noise: Vec<usize> = (1..=n).filter(|k| signal.binary_search(k).is_err()).collect();
    let ssr = noise.iter().map(|&k| a[k - 1] * a[k - 1]).sum();
    Ok(ProjectionSplit {
        a: a.to_vec(),
        k_max: signal.last().copied().unwrap_or(0),
        signal_idx: signal,
        noise_idx: noise,
        demoted,
        tau,
        gap_factor,
        ssr,
    })
}

fn median_gap(candidates: &[usize]) -> Option<f64> {
    let mut gaps: Vec<usize> = candidates.windows(2).map(|w| w[1] - w[0]).collect();
    if gaps.is_empty() {
        return None;
    }
    gaps.sort_unstable();
    let h = gaps.len() / 2;
    Some(if gaps.len() % 2 == 1 {
        gaps[h] as f64
    } else {
        (gaps[h - 1] + gaps[h]) as f64 / 2.0
    })
}

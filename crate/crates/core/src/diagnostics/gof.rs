//! χ² goodness-of-fit test for normality.

use serde::{Deserialize, Serialize};

use super::stats::{gamma_q, normal_cdf, normal_quantile};
use crate::error::{Error, Result};

pub const DEFAULT_GOF_BINS: usize = 10;
/// Bins whose expected count falls below this are merged.
pub const MIN_EXPECTED: f64 = 5.0;
pub const MIN_GOF_SAMPLE: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GofOutcome {
    pub stat: f64,
    pub dof: usize,
    pub pvalue: f64,
    /// Bin count after merging.
    pub bins: usize,
}

#[derive(Debug, Clone, Copy)]
struct Bin {
    observed: f64,
    expected: f64,
}

/// Tests the sample against `N(mean, sd²)` with both parameters estimated from
/// the sample, using `bins` equiprobable cells. `dof = cells - 3`.
pub fn chi2_gof_normal(values: &[f64], bins: usize) -> Result<GofOutcome> {
    let m = values.len();
    if m < MIN_GOF_SAMPLE {
        return Err(Error::domain(format!(
            "normality test needs at least {MIN_GOF_SAMPLE} values, got {m}"
        )));
    }
    if bins < 4 {
        return Err(Error::domain(format!("at least 4 bins required, got {bins}")));
    }
    let mf = m as f64;
    let mean = values.iter().sum::<f64>() / mf;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (mf - 1.0);
    let sd = var.sqrt();
    if !(sd > 0.0) || !sd.is_finite() {
        return Err(Error::Degenerate("sample standard deviation is zero".into()));
    }

    let edges: Vec<f64> = (1..bins)
        .map(|i| normal_quantile(i as f64 / bins as f64))
        .collect();
    let mut cells: Vec<Bin> = (0..bins)
        .map(|i| {
            let lo = if i == 0 { 0.0 } else { normal_cdf(edges[i - 1]) };
            let hi = if i + 1 == bins { 1.0 } else { normal_cdf(edges[i]) };
            Bin {
                observed: 0.0,
                expected: mf * (hi - lo),
            }
        })
        .collect();
    for &v in values {
        let z = (v - mean) / sd;
        let idx = edges.partition_point(|&e| e < z);
        cells[idx].observed += 1.0;
    }
    merge_sparse_cells(&mut cells);

    let stat: f64 = cells
        .iter()
        .map(|c| (c.observed - c.expected).powi(2) / c.expected)
        .sum();
    if cells.len() < 4 {
        return Err(Error::Degenerate(format!(
            "only {} bins left after merging, no degrees of freedom",
            cells.len()
        )));
    }
    let dof = cells.len() - 3;
    Ok(GofOutcome {
        stat,
        dof,
        pvalue: gamma_q(dof as f64 / 2.0, stat / 2.0),
        bins: cells.len(),
    })
}

/// Merges cells with small expected counts, visiting them from the tails
/// inward and folding each into its neighbour toward the centre.
fn merge_sparse_cells(cells: &mut Vec<Bin>) {
    loop {
        let k = cells.len();
        if k <= 1 {
            return;
        }
        let outward_in = (0..k).map(|i| if i % 2 == 0 { i / 2 } else { k - 1 - i / 2 });
        let Some(idx) = outward_in
            .into_iter()
            .find(|&i| cells[i].expected < MIN_EXPECTED)
        else {
            return;
        };
        let toward_left = match (2 * idx + 1).cmp(&k) {
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Equal => cells[idx - 1].expected <= cells[idx + 1].expected,
        };
        let target = if toward_left { idx - 1 } else { idx + 1 };
        let merged = cells.remove(idx);
        let t = if target > idx { target - 1 } else { target };
        cells[t].observed += merged.observed;
        cells[t].expected += merged.expected;
    }
}

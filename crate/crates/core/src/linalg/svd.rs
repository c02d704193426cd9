use super::matrix::{dot, norm2, DenseMatrix};
use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 60;

/// `M = U Σ Vᵀ` with singular values sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdFactors {
    pub u: DenseMatrix,
    pub sigma: Vec<f64>,
    pub v: DenseMatrix,
}

impl SvdFactors {
    pub fn reconstruct(&self) -> DenseMatrix {
        let n = self.sigma.len();
        let us = DenseMatrix::from_fn(self.u.rows(), n, |i, j| self.u[(i, j)] * self.sigma[j]);
        us.matmul(&self.v.transpose()).expect("factor shapes agree")
    }
}

/// One-sided (Hestenes) Jacobi SVD of a square matrix.
///
/// Column pairs of `W = M V` are rotated until every pair is orthogonal to
/// within `m · ε` relative to the product of their norms; the column norms are
/// then the singular values. Columns that end up numerically zero get left
/// singular vectors from an orthogonal completion.
pub fn jacobi_svd(m: &DenseMatrix) -> Result<SvdFactors> {
    let (rows, n) = m.shape();
    if rows != n || n == 0 {
        return Err(Error::domain(format!("Jacobi SVD expects a nonempty square matrix, got {rows}x{n}")));
    }
    if m.as_row_major().iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("matrix has non-finite entries"));
    }
    let mut w = m.columns();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            e
        })
        .collect();
    let tol = n as f64 * f64::EPSILON;
    let mut norms: Vec<f64> = w.iter().map(|c| dot(c, c)).collect();

    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = norms[p];
                let beta = norms[q];
                let gamma = dot(&w[p], &w[q]);
                if gamma == 0.0 || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut w, p, q, c, s);
                rotate(&mut v, p, q, c, s);
                norms[p] = dot(&w[p], &w[p]);
                norms[q] = dot(&w[q], &w[q]);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::IterationLimit { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let sig: Vec<f64> = w.iter().map(|c| norm2(c)).collect();
    order.sort_by(|&a, &b| sig[b].total_cmp(&sig[a]));
    let sigma: Vec<f64> = order.iter().map(|&k| sig[k]).collect();
    let v_sorted: Vec<Vec<f64>> = order.iter().map(|&k| v[k].clone()).collect();

    let cutoff = sigma[0] * tol;
    let mut u_cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut missing = 0;
    for (&k, &s) in order.iter().zip(&sigma) {
        if s > cutoff && s > 0.0 {
            u_cols.push(w[k].iter().map(|x| x / s).collect());
        } else {
            missing += 1;
        }
    }
    for _ in 0..missing {
        let col = completion_vector(&u_cols, n);
        u_cols.push(col);
    }

    Ok(SvdFactors {
        u: DenseMatrix::from_columns(&u_cols),
        sigma,
        v: DenseMatrix::from_columns(&v_sorted),
    })
}

fn rotate(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (lo, hi) = cols.split_at_mut(q);
    let cp = &mut lo[p];
    let cq = &mut hi[0];
    for (a, b) in cp.iter_mut().zip(cq.iter_mut()) {
        let x = *a;
        let y = *b;
        *a = c * x - s * y;
        *b = s * x + c * y;
    }
}

/// A unit vector orthogonal to every column in `basis`, taken from the standard
/// basis vector with the largest residual.
fn completion_vector(basis: &[Vec<f64>], n: usize) -> Vec<f64> {
    let mut best = vec![0.0; n];
    let mut best_norm = -1.0;
    for k in 0..n {
        let mut e = vec![0.0; n];
        e[k] = 1.0;
        for _ in 0..2 {
            for b in basis {
                let c = dot(b, &e);
                e.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let nrm = norm2(&e);
        if nrm > best_norm {
            best_norm = nrm;
            best = e;
        }
    }
    best.iter_mut().for_each(|x| *x /= best_norm);
    best
}

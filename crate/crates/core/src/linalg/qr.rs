use super::matrix::{dot, norm2, DenseMatrix};
use crate::error::{Error, Result};

/// A column is rank deficient when `R_jj < RANK_TOL · ‖P_j‖`.
pub const RANK_TOL: f64 = 1e-12;

/// `P = Q R` with orthonormal `Q` (m×n) and upper-triangular `R` (n×n, positive diagonal).
#[derive(Debug, Clone, PartialEq)]
pub struct QrFactors {
    pub q: DenseMatrix,
    pub r: DenseMatrix,
}

impl QrFactors {
    /// `|R_11 / R_nn|`, a cheap lower bound on the 2-norm condition number.
    pub fn condition_estimate(&self) -> f64 {
        let n = self.r.cols();
        if n == 0 {
            return 1.0;
        }
        (self.r[(0, 0)] / self.r[(n - 1, n - 1)]).abs()
    }
}

/// Modified Gram–Schmidt with a second orthogonalization pass, no pivoting.
pub fn qr_mgs(p: &DenseMatrix) -> Result<QrFactors> {
    let (m, n) = p.shape();
    if n == 0 || m < n {
        return Err(Error::domain(format!("QR needs m >= n >= 1, got {m}x{n}")));
    }
    let mut q_cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut r = DenseMatrix::zeros(n, n);
    for j in 0..n {
        let mut w = p.column(j);
        let col_norm = norm2(&w);
        for _pass in 0..2 {
            for (i, qi) in q_cols.iter().enumerate() {
                let c = dot(qi, &w);
                r[(i, j)] += c;
                for (wk, &qk) in w.iter_mut().zip(qi) {
                    *wk -= c * qk;
                }
            }
        }
        let rjj = norm2(&w);
        if !(rjj > RANK_TOL * col_norm) || col_norm == 0.0 {
            return Err(Error::RankDeficient {
                column: j + 1,
                diagonal: rjj,
                norm: col_norm,
            });
        }
        r[(j, j)] = rjj;
        w.iter_mut().for_each(|v| *v /= rjj);
        q_cols.push(w);
    }
    Ok(QrFactors {
        q: DenseMatrix::from_columns(&q_cols),
        r,
    })
}

/// Solves `R x = y` for upper-triangular `R`.
pub fn back_substitute(r: &DenseMatrix, y: &[f64]) -> Result<Vec<f64>> {
    let n = r.rows();
    if r.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: r.cols(),
        });
    }
    if y.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: y.len(),
        });
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let d = r[(i, i)];
        if d == 0.0 {
            return Err(Error::Singular { row: i + 1 });
        }
        let tail: f64 = ((i + 1)..n).map(|k| r[(i, k)] * x[k]).sum();
        x[i] = (y[i] - tail) / d;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn random_matrix(m: usize, n: usize, seed: u64) -> DenseMatrix {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        DenseMatrix::from_fn(m, n, |_, _| rng.random_range(-1.0..1.0))
    }

    fn check_invariants(p: &DenseMatrix, f: &QrFactors) {
        let n = p.cols();
        let qtq = f.q.transpose().matmul(&f.q).unwrap();
        assert!(qtq.max_abs_diff(&DenseMatrix::identity(n)).unwrap() <= 1e-10);
        let qr = f.q.matmul(&f.r).unwrap();
        assert!(qr.max_abs_diff(p).unwrap() <= 1e-10 * p.max_abs());
        for i in 0..n {
            assert!(f.r[(i, i)] > 0.0);
            for j in 0..i {
                assert_eq!(f.r[(i, j)], 0.0);
            }
        }
    }

    #[test]
    fn identity_and_triangular_inputs() {
        let f = qr_mgs(&DenseMatrix::identity(4)).unwrap();
        assert_eq!(f.q, DenseMatrix::identity(4));
        assert_eq!(f.r, DenseMatrix::identity(4));

        let p = DenseMatrix::from_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let f = qr_mgs(&p).unwrap();
        assert!(f.q.max_abs_diff(&DenseMatrix::identity(2)).unwrap() < 1e-15);
        assert!(f.r.max_abs_diff(&p).unwrap() < 1e-15);
    }

    #[test]
    fn tall_random_matrix() {
        let p = random_matrix(250, 90, 7);
        check_invariants(&p, &qr_mgs(&p).unwrap());
    }

    #[test]
    fn column_order_preserved() {
        // Q's first column spans P's first column.
        let p = random_matrix(30, 5, 3);
        let f = qr_mgs(&p).unwrap();
        let c0 = p.column(0);
        let q0 = f.q.column(0);
        let scale = norm2(&c0);
        for (a, b) in c0.iter().zip(&q0) {
            assert!((a / scale - b).abs() < 1e-14);
        }
    }

    #[test]
    fn reports_rank_deficient_column() {
        let p = DenseMatrix::from_rows(&[
            vec![1.0, 2.0, 0.0],
            vec![1.0, 2.0, 1.0],
            vec![1.0, 2.0, 0.0],
        ])
        .unwrap();
        match qr_mgs(&p) {
            Err(Error::RankDeficient { column, .. }) => assert_eq!(column, 2),
            other => panic!("expected rank deficiency, got {other:?}"),
        }
        assert!(qr_mgs(&DenseMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn ill_conditioned_columns_stay_orthonormal() {
        // Monomials on 200 points up to degree 11: condition ~1e7.
        let p = DenseMatrix::from_fn(200, 12, |i, j| (i as f64 / 199.0).powi(j as i32));
        let f = qr_mgs(&p).unwrap();
        let qtq = f.q.transpose().matmul(&f.q).unwrap();
        assert!(qtq.max_abs_diff(&DenseMatrix::identity(12)).unwrap() <= 1e-10);
    }

    #[test]
    fn back_substitution_examples() {
        let r = DenseMatrix::identity(2);
        assert_eq!(back_substitute(&r, &[3.0, 1.0]).unwrap(), vec![3.0, 1.0]);
        let r = DenseMatrix::from_rows(&[vec![2.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(back_substitute(&r, &[3.0, 1.0]).unwrap(), vec![1.0, 1.0]);
        let r = DenseMatrix::from_rows(&[vec![2.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(back_substitute(&r, &[3.0, 1.0]), Err(Error::Singular { row: 2 }));
    }

    proptest! {
        #[test]
        fn back_substitution_round_trip(seed in any::<u64>(), n in 1usize..20) {
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let r = DenseMatrix::from_fn(n, n, |i, j| {
                if i == j { rng.random_range(1.0..2.0) } else if j > i { rng.random_range(-1.0..1.0) } else { 0.0 }
            });
            let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let y = r.matvec(&x).unwrap();
            let got = back_substitute(&r, &y).unwrap();
            let resid = r.matvec(&got).unwrap();
            let ynorm = norm2(&y).max(f64::MIN_POSITIVE);
            let rn: f64 = resid.iter().zip(&y).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
            prop_assert!(rn <= 1e-12 * ynorm);
            for (a, b) in got.iter().zip(&x) {
                prop_assert!((a - b).abs() <= 1e-9);
            }
        }

        #[test]
        fn qr_invariants_on_random_input(seed in any::<u64>(), m in 2usize..40, extra in 0usize..10) {
            let n = (m / 2).max(1);
            let p = random_matrix(m + extra, n, seed);
            let f = qr_mgs(&p).unwrap();
            check_invariants(&p, &f);
        }
    }
}

use super::matrix::DenseMatrix;

/// Midpoint-rule cumulative sum `L = h·tril(1)` and its inverse, the scaled
/// first difference `L⁻¹ = (1/h)·bidiag(-1, 1)`. Both are written down directly.
pub fn cumulative_op(m: usize, h: f64) -> (DenseMatrix, DenseMatrix) {
    let l = DenseMatrix::from_fn(m, m, |i, j| if j <= i { h } else { 0.0 });
    let inv_h = 1.0 / h;
    let l_inv = DenseMatrix::from_fn(m, m, |i, j| {
        if i == j {
            inv_h
        } else if j + 1 == i {
            -inv_h
        } else {
            0.0
        }
    });
    (l, l_inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let (l, li) = cumulative_op(3, 0.5);
        assert_eq!(l.matmul(&li).unwrap(), DenseMatrix::identity(3));
        let g = [1.0, 3.0, 4.0];
        assert_eq!(li.matvec(&g).unwrap(), vec![2.0, 4.0, 2.0]);

        let (l, li) = cumulative_op(1, 0.25);
        assert_eq!(l.as_row_major(), &[0.25]);
        assert_eq!(li.as_row_major(), &[4.0]);
    }

    #[test]
    fn inverse_in_floating_point() {
        for &(m, h) in &[(10, 0.1), (250, 0.004), (1000, 0.002)] {
            let (l, li) = cumulative_op(m, h);
            let id = DenseMatrix::identity(m);
            assert!(l.matmul(&li).unwrap().max_abs_diff(&id).unwrap() <= 1e-13);
            assert!(li.matmul(&l).unwrap().max_abs_diff(&id).unwrap() <= 1e-13);
        }
    }
}

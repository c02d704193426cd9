//! Legendre and Jacobi polynomials by three-term recurrence.

/// Legendre polynomial `P_j(x)`.
pub fn legendre_eval(j: usize, x: f64) -> f64 {
    let mut p_prev = 1.0;
    if j == 0 {
        return p_prev;
    }
    let mut p = x;
    for k in 1..j {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = next;
    }
    p
}

/// Derivative `P'_j(x)` from `P'_j = P'_{j-2} + (2j - 1) P_{j-1}`.
pub fn legendre_deriv(j: usize, x: f64) -> f64 {
    let values = legendre_sequence(j, x);
    let mut d = vec![0.0; j + 1];
    if j >= 1 {
        d[1] = 1.0;
    }
    for k in 2..=j {
        d[k] = d[k - 2] + (2 * k - 1) as f64 * values[k - 1];
    }
    d[j]
}

/// `[P_0(x), ..., P_n(x)]`.
pub fn legendre_sequence(n: usize, x: f64) -> Vec<f64> {
    jacobi_sequence(n, 0.0, 0.0, x)
}

/// Jacobi polynomial `P_j^{(alpha, beta)}(x)`, `alpha, beta > -1`.
pub fn jacobi_eval(j: usize, alpha: f64, beta: f64, x: f64) -> f64 {
    *jacobi_sequence(j, alpha, beta, x).last().expect("sequence is nonempty")
}

/// `[P_0^{(a,b)}(x), ..., P_n^{(a,b)}(x)]`.
pub fn jacobi_sequence(n: usize, alpha: f64, beta: f64, x: f64) -> Vec<f64> {
    debug_assert!(alpha > -1.0 && beta > -1.0);
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n == 0 {
        return out;
    }
    let ab = alpha + beta;
    out.push((alpha + 1.0) + (ab + 2.0) * (x - 1.0) / 2.0);
    for k in 2..=n {
        let kf = k as f64;
        let c = 2.0 * kf + ab;
        let a1 = 2.0 * kf * (kf + ab) * (c - 2.0);
        let a2 = (c - 1.0) * (c * (c - 2.0) * x + alpha * alpha - beta * beta);
        let a3 = 2.0 * (kf + alpha - 1.0) * (kf + beta - 1.0) * c;
        let next = (a2 * out[k - 1] - a3 * out[k - 2]) / a1;
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::GaussLegendre;

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_eval(0, 0.3), 1.0);
        assert_eq!(legendre_eval(1, 0.3), 0.3);
        assert!((legendre_eval(3, 0.5) + 0.4375).abs() < 1e-15);
        assert_eq!(legendre_deriv(0, 0.7), 0.0);
        assert_eq!(legendre_deriv(1, -0.2), 1.0);
        assert!((legendre_deriv(3, 0.5) - 0.375).abs() < 1e-15);
    }

    #[test]
    fn legendre_endpoint_values() {
        for j in 0..30 {
            assert!((legendre_eval(j, 1.0) - 1.0).abs() < 1e-12);
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            assert!((legendre_eval(j, -1.0) - sign).abs() < 1e-12);
            // P'_j(1) = j(j+1)/2
            let jf = j as f64;
            assert!((legendre_deriv(j, 1.0) - jf * (jf + 1.0) / 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn legendre_deriv_matches_central_difference() {
        let h = 1e-5;
        for j in 0..15 {
            for &x in &[-0.9, -0.31, 0.0, 0.47, 0.88] {
                let fd = (legendre_eval(j, x + h) - legendre_eval(j, x - h)) / (2.0 * h);
                assert!((legendre_deriv(j, x) - fd).abs() < 1e-6 * (1.0 + fd.abs()));
            }
        }
    }

    #[test]
    fn legendre_sign_changes() {
        for j in 0..=10 {
            let mut changes = 0;
            let mut prev = legendre_eval(j, -1.0 + 1e-3);
            for k in 1..2001 {
                let x = -1.0 + 2.0 * k as f64 / 2000.0;
                let x = x.clamp(-1.0 + 1e-3, 1.0 - 1e-3);
                let v = legendre_eval(j, x);
                if v * prev < 0.0 {
                    changes += 1;
                }
                if v != 0.0 {
                    prev = v;
                }
            }
            assert_eq!(changes, j, "degree {j}");
        }
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_eval(0, -0.5, 0.5, 0.9), 1.0);
        assert!((jacobi_eval(1, -0.5, 0.5, 1.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn jacobi_reduces_to_legendre() {
        for j in 0..=20 {
            for k in 0..=40 {
                let x = -1.0 + k as f64 / 20.0;
                assert!((jacobi_eval(j, 0.0, 0.0, x) - legendre_eval(j, x)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn jacobi_weighted_orthogonality() {
        // Gauss–Jacobi is out of scope, so integrate against the weight
        // (1-x)^{-1/2}(1+x)^{1/2} with x = cos θ, which removes the endpoint
        // singularity: dx = -sin θ dθ, (1-x)^{-1/2}(1+x)^{1/2} sin θ = 1 + cos θ.
        let rule = GaussLegendre::new(200);
        let inner = |a: usize, b: usize| {
            rule.integrate(0.0, std::f64::consts::PI, |t| {
                let x = t.cos();
                jacobi_eval(a, -0.5, 0.5, x) * jacobi_eval(b, -0.5, 0.5, x) * (1.0 + x)
            })
        };
        assert!(inner(2, 0).abs() <= 1e-10);
        assert!(inner(2, 1).abs() <= 1e-10);
        assert!(inner(2, 2) > 0.1);
    }
}

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Zero-pads `series` to length `len` and returns
/// `R_j = Σ_{t=1..M} r_t exp(-i 2π j t / M)`, `j = 0..M-1`.
///
/// The time index starts at one, so the result is the usual zero-based FFT
/// multiplied by `exp(-i 2π j / M)`.
pub fn fft_radix2(series: &[f64], len: usize) -> Result<Vec<Complex64>> {
    if !len.is_power_of_two() {
        return Err(Error::domain(format!("FFT length {len} is not a power of two")));
    }
    if len < series.len() {
        return Err(Error::domain(format!(
            "FFT length {len} is shorter than the series ({})",
            series.len()
        )));
    }
    let mut buf: Vec<Complex64> = series
        .iter()
        .map(|&r| Complex64::new(r, 0.0))
        .chain(std::iter::repeat(Complex64::new(0.0, 0.0)))
        .take(len)
        .collect();

    let bits = len.trailing_zeros();
    if bits > 0 {
        for i in 0..len {
            let j = i.reverse_bits() >> (usize::BITS - bits);
            if j > i {
                buf.swap(i, j);
            }
        }
    }
    let mut size = 2;
    while size <= len {
        let half = size / 2;
        let step = -2.0 * PI / size as f64;
        for start in (0..len).step_by(size) {
            for k in 0..half {
                let tw = Complex64::from_polar(1.0, step * k as f64);
                let a = buf[start + k];
                let b = buf[start + k + half] * tw;
                buf[start + k] = a + b;
                buf[start + k + half] = a - b;
            }
        }
        size *= 2;
    }
    for (j, r) in buf.iter_mut().enumerate() {
        *r *= Complex64::from_polar(1.0, -2.0 * PI * j as f64 / len as f64);
    }
    Ok(buf)
}

/// Direct `O(M²)` evaluation of the same sum, for checking.
pub fn dft_direct(series: &[f64], len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|j| {
            series
                .iter()
                .enumerate()
                .map(|(t, &r)| {
                    let phase = -2.0 * PI * (j * (t + 1) % len) as f64 / len as f64;
                    Complex64::from_polar(r, phase)
                })
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn impulse_has_flat_magnitude() {
        let mut x = vec![0.0; 8];
        x[0] = 1.0;
        for r in fft_radix2(&x, 8).unwrap() {
            assert!((r.norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn constant_series_only_dc() {
        let spec = fft_radix2(&[2.0; 16], 16).unwrap();
        assert!((spec[0].re - 32.0).abs() < 1e-12);
        for r in &spec[1..] {
            assert!(r.norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_lengths() {
        assert!(fft_radix2(&[1.0; 3], 6).is_err());
        assert!(fft_radix2(&[1.0; 9], 8).is_err());
        assert_eq!(fft_radix2(&[3.0], 1).unwrap()[0].re, 3.0);
    }

    proptest! {
        #[test]
        fn matches_direct_sum(x in prop::collection::vec(-10.0f64..10.0, 1..=64)) {
            let len = x.len().next_power_of_two();
            let fast = fft_radix2(&x, len).unwrap();
            let slow = dft_direct(&x, len);
            for (a, b) in fast.iter().zip(&slow) {
                prop_assert!((a - b).norm() <= 1e-10);
            }
        }

        #[test]
        fn parseval(x in prop::collection::vec(-5.0f64..5.0, 1..=250)) {
            let len = x.len().next_power_of_two();
            let spec = fft_radix2(&x, len).unwrap();
            let lhs: f64 = spec.iter().map(|r| r.norm_sqr()).sum::<f64>() / len as f64;
            let rhs: f64 = x.iter().map(|v| v * v).sum();
            prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1.0));
        }
    }
}

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

use crate::error::{Error, Result};
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `X_k = n^{-1/2} sum_j x_j exp(-2 pi i jk/n)`
    Forward,
    Inverse,
}

/// Unitary radix-2 DFT.
pub fn dft_unitary(z: &[Complex64], direction: Direction) -> Result<Vec<Complex64>> {
    let n = z.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::Length {
            requested: n,
            available: n.next_power_of_two(),
        });
    }
    let mut a = z.to_vec();
    let bits = n.trailing_zeros();
    if bits > 0 {
        for i in 0..n {
            let j = i.reverse_bits() >> (usize::BITS - bits);
            if i < j {
                a.swap(i, j);
            }
        }
    }
    let sign = match direction {
        Direction::Forward => -1.0,
        Direction::Inverse => 1.0,
    };
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let step = sign * 2.0 * PI / len as f64;
        let twiddles: Vec<Complex64> = (0..half)
            .map(|k| {
                let t = step * k as f64;
                Complex64::new(t.cos(), t.sin())
            })
            .collect();
        for chunk in a.chunks_exact_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for k in 0..half {
                let u = lo[k];
                let v = hi[k] * twiddles[k];
                lo[k] = u + v;
                hi[k] = u - v;
            }
        }
        len *= 2;
    }
    let s = 1.0 / (n as f64).sqrt();
    a.iter_mut().for_each(|v| *v *= s);
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use alloc::vec;

    #[test]
    fn constant_maps_to_dc() {
        let y = dft_unitary(&[Complex64::new(1.0, 0.0); 4], Direction::Forward).unwrap();
        assert!((y[0] - Complex64::new(2.0, 0.0)).norm() < 1e-15);
        assert!(y[1..].iter().all(|v| v.norm() < 1e-15));
    }

    #[test]
    fn round_trip_unit_vector() {
        let mut e = vec![Complex64::new(0.0, 0.0); 8];
        e[1] = Complex64::new(1.0, 0.0);
        let back = dft_unitary(&dft_unitary(&e, Direction::Forward).unwrap(), Direction::Inverse).unwrap();
        for (a, b) in back.iter().zip(&e) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn matches_direct_sum() {
        let mut r = SplitMix64::new(64);
        let x: Vec<Complex64> = (0..64)
            .map(|_| Complex64::new(r.next_signed(), r.next_signed()))
            .collect();
        let fast = dft_unitary(&x, Direction::Forward).unwrap();
        for k in 0..64 {
            let direct: Complex64 = (0..64)
                .map(|j| {
                    let t = -2.0 * PI * (j * k) as f64 / 64.0;
                    x[j] * Complex64::new(t.cos(), t.sin())
                })
                .sum::<Complex64>()
                / 8.0;
            assert!((direct - fast[k]).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_power_of_two() {
        assert!(matches!(
            dft_unitary(&[Complex64::new(0.0, 0.0); 6], Direction::Forward),
            Err(Error::Length { .. })
        ));
        assert!(dft_unitary(&[], Direction::Forward).is_err());
    }
}

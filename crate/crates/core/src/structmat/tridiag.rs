use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Zero;

use super::dense::DenseMatrix;
use crate::error::{Error, Result};

/// Tridiagonal skew-Hermitian matrix
///
/// ```text
/// D[n][n+1] = conj(b_n),  D[n+1][n] = -b_n,  D[n][n] = i c_n
/// ```
///
/// on global indices `offset..offset + size`. `b` has `size + 1` entries:
/// `b[k]` couples global indices `offset + k - 1` and `offset + k`, so
/// `b[0]` and `b[size]` are the couplings to the first neglected index on
/// either side. They do not enter the finite section but are needed for the
/// exact Galerkin section of `D^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSkew {
    b: Vec<Complex64>,
    c: Vec<f64>,
    offset: i64,
}

impl TridiagonalSkew {
    pub fn new(b: Vec<Complex64>, c: Vec<f64>, offset: i64) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::Dimension { expected: 1, got: 0 });
        }
        if b.len() != c.len() + 1 {
            return Err(Error::Dimension {
                expected: c.len() + 1,
                got: b.len(),
            });
        }
        Ok(Self { b, c, offset })
    }

    pub fn size(&self) -> usize {
        self.c.len()
    }

    /// Lowest global index.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// `b_n` for a global index `n`, zero outside the stored window.
    pub fn b(&self, n: i64) -> Complex64 {
        let k = n - self.offset + 1;
        if (0..self.b.len() as i64).contains(&k) {
            self.b[k as usize]
        } else {
            Complex64::zero()
        }
    }

    /// `c_n` for a global index `n` inside the window.
    pub fn c(&self, n: i64) -> f64 {
        self.c[(n - self.offset) as usize]
    }

    pub fn b_raw(&self) -> &[Complex64] {
        &self.b
    }

    pub fn c_raw(&self) -> &[f64] {
        &self.c
    }

    /// Entry at local indices.
    pub fn entry(&self, m: usize, n: usize) -> Complex64 {
        if m == n {
            Complex64::new(0.0, self.c[m])
        } else if n == m + 1 {
            self.b[m + 1].conj()
        } else if m == n + 1 {
            -self.b[m]
        } else {
            Complex64::zero()
        }
    }

    /// The transposed matrix, again tridiagonal skew-Hermitian.
    pub fn transpose(&self) -> Self {
        Self {
            b: self.b.iter().map(|v| -v.conj()).collect(),
            c: self.c.clone(),
            offset: self.offset,
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.size();
        DenseMatrix::from_fn(n, n, |i, j| self.entry(i, j))
    }

    /// First `rows` entries of `D x`, with `x` covering the leading
    /// `x.len() <= size` local indices.
    pub fn matvec_rect(&self, x: &[Complex64], rows: usize) -> Result<Vec<Complex64>> {
        let k = x.len();
        if k > self.size() || rows > k {
            return Err(Error::Dimension {
                expected: self.size().min(k),
                got: if k > self.size() { k } else { rows },
            });
        }
        let mut y = vec![Complex64::zero(); rows];
        for (m, ym) in y.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, self.c[m]) * x[m];
            if m + 1 < k {
                acc += self.b[m + 1].conj() * x[m + 1];
            }
            if m > 0 {
                acc -= self.b[m] * x[m - 1];
            }
            *ym = acc;
        }
        Ok(y)
    }

    pub fn matvec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.size() {
            return Err(Error::Dimension {
                expected: self.size(),
                got: x.len(),
            });
        }
        self.matvec_rect(x, x.len())
    }

    /// Galerkin section of `D^2` applied to `x`: `D_N (D_N x)` plus the
    /// contribution of the two neglected neighbours.
    pub fn galerkin_square(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut y = self.matvec(&self.matvec(x)?)?;
        let last = self.size() - 1;
        y[0] -= self.b[0].norm_sqr() * x[0];
        y[last] -= self.b[last + 1].norm_sqr() * x[last];
        Ok(y)
    }

    /// Solves `(I - kappa D) y = x` by Gaussian elimination with partial
    /// pivoting.
    pub fn solve(&self, kappa: Complex64, x: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.size();
        if x.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: x.len(),
            });
        }
        let one = Complex64::new(1.0, 0.0);
        let mut d: Vec<Complex64> = self.c.iter().map(|&c| one - kappa * Complex64::new(0.0, c)).collect();
        let mut du: Vec<Complex64> = (0..n.saturating_sub(1))
            .map(|m| -kappa * self.b[m + 1].conj())
            .collect();
        let dl: Vec<Complex64> = (0..n.saturating_sub(1)).map(|m| kappa * self.b[m + 1]).collect();
        let mut du2 = vec![Complex64::zero(); n.saturating_sub(2)];
        let mut y = x.to_vec();
        for i in 0..n.saturating_sub(1) {
            if d[i].norm() >= dl[i].norm() {
                if d[i].is_zero() {
                    return Err(Error::Singular { index: i });
                }
                let fact = dl[i] / d[i];
                d[i + 1] -= fact * du[i];
                let t = y[i];
                y[i + 1] -= fact * t;
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                let tmp = d[i + 1];
                d[i + 1] = du[i] - fact * tmp;
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du2[i];
                }
                du[i] = tmp;
                y.swap(i, i + 1);
                let t = y[i];
                y[i + 1] -= fact * t;
            }
        }
        if d[n - 1].is_zero() {
            return Err(Error::Singular { index: n - 1 });
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            if i + 1 < n {
                s -= du[i] * y[i + 1];
            }
            if i + 2 < n {
                s -= du2[i] * y[i + 2];
            }
            y[i] = s / d[i];
        }
        if y.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Singular { index: n - 1 });
        }
        Ok(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn sample() -> TridiagonalSkew {
        let b = (0..6).map(|k| Complex64::new(k as f64 + 0.5, 0.3 * k as f64)).collect();
        let c = vec![-2.0, -1.0, 0.5, 1.0, 3.0];
        TridiagonalSkew::new(b, c, -2).unwrap()
    }

    fn random(n: usize, seed: u64) -> Vec<Complex64> {
        let mut r = SplitMix64::new(seed);
        (0..n)
            .map(|_| Complex64::new(r.next_signed(), r.next_signed()))
            .collect()
    }

    #[test]
    fn realized_matrix_is_skew_hermitian() {
        let d = sample().to_dense();
        let s = d.adjoint();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(d[(i, j)] + s[(i, j)], Complex64::zero());
            }
        }
    }

    #[test]
    fn matvec_matches_dense() {
        let t = sample();
        let x = random(5, 3);
        let fast = t.matvec(&x).unwrap();
        let slow = t.to_dense().matvec(&x).unwrap();
        for (a, b) in fast.iter().zip(&slow) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn transpose_matches_dense() {
        let t = sample();
        let a = t.transpose().to_dense();
        let b = t.to_dense().transpose();
        assert_eq!(a, b);
    }

    #[test]
    fn solve_residual_and_pivoting() {
        let t = sample();
        let x = random(5, 9);
        for kappa in [Complex64::zero(), Complex64::new(0.1, 0.0), Complex64::new(2.0, -1.0)] {
            let y = t.solve(kappa, &x).unwrap();
            let dy = t.matvec(&y).unwrap();
            let res: f64 = (0..5)
                .map(|i| (y[i] - kappa * dy[i] - x[i]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            let xn: f64 = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            assert!(res <= 1e-13 * xn, "{res}");
        }
    }

    #[test]
    fn dimension_errors() {
        let t = sample();
        assert!(matches!(
            t.matvec(&[Complex64::zero(); 3]),
            Err(Error::Dimension { .. })
        ));
        assert!(TridiagonalSkew::new(vec![Complex64::zero(); 2], vec![0.0; 2], 0).is_err());
    }
}

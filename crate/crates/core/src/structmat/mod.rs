//! Structured differentiation matrices: O(N) products, shifted solves and
//! norm estimates.

mod banded;
mod dense;
mod norm;
mod semisep;
mod tridiag;

use alloc::vec::Vec;
use num_complex::Complex64;

pub use dense::{expm, DenseMatrix};
pub use norm::{leading_block_norm, op_norm_estimate, op_norm_estimate_seeded, NormEstimate, DEFAULT_NORM_SEED};
pub use semisep::{SemiseparableRank1, TailSum};
pub use tridiag::TridiagonalSkew;

use crate::error::{Error, Result};

/// A skew-Hermitian differentiation matrix in one of its structured forms.
#[derive(Debug, Clone, PartialEq)]
pub enum DiffMatrix {
    Tridiagonal(TridiagonalSkew),
    Semiseparable(SemiseparableRank1),
    Dense(DenseMatrix),
}

impl From<TridiagonalSkew> for DiffMatrix {
    fn from(t: TridiagonalSkew) -> Self {
        DiffMatrix::Tridiagonal(t)
    }
}

impl From<SemiseparableRank1> for DiffMatrix {
    fn from(s: SemiseparableRank1) -> Self {
        DiffMatrix::Semiseparable(s)
    }
}

impl DiffMatrix {
    pub fn size(&self) -> usize {
        match self {
            DiffMatrix::Tridiagonal(t) => t.size(),
            DiffMatrix::Semiseparable(s) => s.size(),
            DiffMatrix::Dense(d) => d.rows(),
        }
    }

    /// Entry at local indices.
    pub fn entry(&self, m: usize, n: usize) -> Complex64 {
        match self {
            DiffMatrix::Tridiagonal(t) => t.entry(m, n),
            DiffMatrix::Semiseparable(s) => Complex64::new(s.entry(m, n), 0.0),
            DiffMatrix::Dense(d) => d[(m, n)],
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        match self {
            DiffMatrix::Tridiagonal(t) => t.to_dense(),
            DiffMatrix::Semiseparable(s) => s.to_dense(),
            DiffMatrix::Dense(d) => d.clone(),
        }
    }

    pub fn transpose(&self) -> Self {
        match self {
            DiffMatrix::Tridiagonal(t) => DiffMatrix::Tridiagonal(t.transpose()),
            DiffMatrix::Semiseparable(s) => DiffMatrix::Semiseparable(s.transpose()),
            DiffMatrix::Dense(d) => DiffMatrix::Dense(d.transpose()),
        }
    }

    pub fn matvec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        match self {
            DiffMatrix::Tridiagonal(t) => t.matvec(x),
            DiffMatrix::Semiseparable(s) => s.matvec(x),
            DiffMatrix::Dense(d) => d.matvec(x),
        }
    }

    /// `y_m = sum_{n < x.len()} D[m][n] x_n` for `m < rows`, where
    /// `rows <= x.len() <= size`.
    pub fn matvec_rect(&self, x: &[Complex64], rows: usize) -> Result<Vec<Complex64>> {
        match self {
            DiffMatrix::Tridiagonal(t) => t.matvec_rect(x, rows),
            DiffMatrix::Semiseparable(s) => s.matvec_rect(x, rows),
            DiffMatrix::Dense(d) => {
                if x.len() > d.cols() || rows > x.len() {
                    return Err(Error::Dimension {
                        expected: d.cols().min(x.len()),
                        got: x.len(),
                    });
                }
                Ok((0..rows)
                    .map(|m| (0..x.len()).map(|n| d[(m, n)] * x[n]).sum())
                    .collect())
            }
        }
    }

    /// `D^* x = -D x`.
    pub fn adjoint_matvec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut y = self.matvec(x)?;
        for v in y.iter_mut() {
            *v = -*v;
        }
        Ok(y)
    }

    /// Galerkin section of `D^2` applied to `x`. Differs from `D_N (D_N x)`
    /// by the coupling through indices beyond the section, which the
    /// structured variants know in closed form. Dense matrices carry no such
    /// information and return `D_N (D_N x)`.
    pub fn galerkin_square(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        match self {
            DiffMatrix::Tridiagonal(t) => t.galerkin_square(x),
            DiffMatrix::Semiseparable(s) => s.galerkin_square(x),
            DiffMatrix::Dense(d) => d.matvec(&d.matvec(x)?),
        }
    }

    /// Solves `(I - kappa D) y = x`.
    pub fn solve_shifted(&self, kappa: Complex64, x: &[Complex64]) -> Result<Vec<Complex64>> {
        match self {
            DiffMatrix::Tridiagonal(t) => t.solve(kappa, x),
            DiffMatrix::Semiseparable(s) => s.solve(kappa, x),
            DiffMatrix::Dense(d) => {
                let n = d.rows();
                let a = DenseMatrix::from_fn(n, n, |i, j| {
                    let id = if i == j { 1.0 } else { 0.0 };
                    Complex64::new(id, 0.0) - kappa * d[(i, j)]
                });
                a.solve(x)
            }
        }
    }
}

//! Implicit-shift QL iteration for real symmetric tridiagonal matrices.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
#[allow(unused_imports)]
use num_traits::Float;

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// How much of the eigenvector matrix to accumulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vectors {
    None,
    /// Only the first component of every eigenvector (Golub–Welsch weights).
    FirstRow,
    Full,
}

/// Eigen-decomposition `T = Q diag(values) Q^T`, eigenvalues ascending.
///
/// `vectors` is row-major with `rows` rows and `values.len()` columns; column
/// `j` holds (the tracked part of) the eigenvector for `values[j]`.
#[derive(Debug, Clone)]
pub struct SymTridiagEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
    pub rows: usize,
}

impl SymTridiagEigen {
    pub fn vector_entry(&self, row: usize, col: usize) -> f64 {
        self.vectors[row * self.values.len() + col]
    }
}

/// `diag` has length n, `offdiag` length n-1 (or longer; extra entries ignored).
pub fn symtridiag_eigen(diag: &[f64], offdiag: &[f64], want: Vectors) -> Result<SymTridiagEigen> {
    let n = diag.len();
    if n == 0 {
        return Ok(SymTridiagEigen {
            values: Vec::new(),
            vectors: Vec::new(),
            rows: 0,
        });
    }
    if offdiag.len() + 1 < n {
        return Err(Error::Dimension {
            expected: n - 1,
            got: offdiag.len(),
        });
    }
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(&offdiag[..n - 1]);

    let rows = match want {
        Vectors::None => 0,
        Vectors::FirstRow => 1,
        Vectors::Full => n,
    };
    let mut z = vec![0.0; rows * n];
    for r in 0..rows {
        z[r * n + r] = 1.0;
    }

    let mut total_iterations = 0usize;
    for l in 0..n {
        let mut sweeps = 0usize;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            total_iterations += 1;
            if sweeps > MAX_SWEEPS_PER_EIGENVALUE {
                return Err(Error::NoConvergence {
                    iterations: total_iterations,
                });
            }

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in 0..rows {
                    let base = row * n;
                    let f = z[base + i + 1];
                    z[base + i + 1] = s * z[base + i] + c * f;
                    z[base + i] = c * z[base + i] - s * f;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&j| d[j]).collect();
    let mut vectors = vec![0.0; rows * n];
    for row in 0..rows {
        for (dst, &src) in order.iter().enumerate() {
            vectors[row * n + dst] = z[row * n + src];
        }
    }
    Ok(SymTridiagEigen { values, vectors, rows })
}

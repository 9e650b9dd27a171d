//! Orthonormal polynomial families: recurrence coefficients, evaluation and
//! Gauss quadrature.
//!
//! Every family is carried in orthonormal (symmetric Jacobi matrix) form:
//!
//! ```text
//! b_n p_{n+1}(x) = (x - c_n) p_n(x) - b_{n-1} p_{n-1}(x),   p_0 = 1/sqrt(mu0),
//! ```
//!
//! with `b_n > 0`. The same coefficients feed the Golub–Welsch construction of
//! Gauss rules, so nodes come from a symmetric tridiagonal eigenproblem solved
//! in-crate by implicit QL ([`eigen`]).

pub mod eigen;

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
pub use eigen::{symtridiag_eigen, SymTridiagEigen, Vectors};
#[allow(unused_imports)]
use num_traits::Float;

/// Polynomial family and its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// Weight 1 on (-1, 1).
    Legendre,
    /// Weight `exp(-x^2)` on the real line.
    Hermite,
    /// Weight `x^alpha exp(-x)` on (0, inf).
    Laguerre { alpha: f64 },
    /// Weight `(1-x)^alpha (1+x)^beta` on (-1, 1).
    Jacobi { alpha: f64, beta: f64 },
}

/// Orthonormal three-term recurrence data for indices `0..len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceCoeffs {
    pub family: Family,
    /// `c_n`
    pub diag: Vec<f64>,
    /// `b_n > 0`
    pub offdiag: Vec<f64>,
    /// Zeroth moment of the measure.
    pub mu0: f64,
}

impl RecurrenceCoeffs {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }
}

/// Nodes and weights of a Gauss rule for the family's measure.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadrature {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Quadrature {
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

fn lgamma(x: f64) -> f64 {
    libm::lgamma(x)
}

fn check_param(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > -1.0 {
        Ok(())
    } else {
        Err(Error::domain(name, value, "must exceed -1"))
    }
}

/// Recurrence coefficients for indices `0..=n_max`.
pub fn recurrence_coeffs(family: Family, n_max: usize) -> Result<RecurrenceCoeffs> {
    if n_max < 1 {
        return Err(Error::domain("n_max", n_max as f64, "n_max >= 1"));
    }
    let len = n_max + 1;
    let (diag, offdiag, mu0): (Vec<f64>, Vec<f64>, f64) = match family {
        Family::Legendre => {
            let off = (0..len)
                .map(|n| {
                    let n = n as f64;
                    (n + 1.0) / ((2.0 * n + 1.0) * (2.0 * n + 3.0)).sqrt()
                })
                .collect();
            (vec![0.0; len], off, 2.0)
        }
        Family::Hermite => {
            let off = (0..len).map(|n| ((n as f64 + 1.0) / 2.0).sqrt()).collect();
            (vec![0.0; len], off, core::f64::consts::PI.sqrt())
        }
        Family::Laguerre { alpha } => {
            check_param("alpha", alpha)?;
            let diag = (0..len).map(|n| 2.0 * n as f64 + alpha + 1.0).collect();
            let off = (0..len)
                .map(|n| {
                    let n = n as f64;
                    ((n + 1.0) * (n + alpha + 1.0)).sqrt()
                })
                .collect();
            (diag, off, lgamma(alpha + 1.0).exp())
        }
        Family::Jacobi { alpha, beta } => {
            check_param("alpha", alpha)?;
            check_param("beta", beta)?;
            let ab = alpha + beta;
            let diag = (0..len)
                .map(|n| {
                    if n == 0 {
                        (beta - alpha) / (ab + 2.0)
                    } else {
                        let s = 2.0 * n as f64 + ab;
                        (beta * beta - alpha * alpha) / (s * (s + 2.0))
                    }
                })
                .collect();
            let off = (0..len)
                .map(|n| {
                    let nf = n as f64;
                    let s = 2.0 * nf + ab;
                    // (n+a+b+1)/(2n+a+b+1) is 1 at n = 0 even when a+b = -1.
                    let ratio = if n == 0 { 1.0 } else { (nf + ab + 1.0) / (s + 1.0) };
                    2.0 / (s + 2.0) * ((nf + 1.0) * (nf + alpha + 1.0) * (nf + beta + 1.0) * ratio / (s + 3.0)).sqrt()
                })
                .collect();
            let log_mu0 =
                (ab + 1.0) * core::f64::consts::LN_2 + lgamma(alpha + 1.0) + lgamma(beta + 1.0) - lgamma(ab + 2.0);
            (diag, off, log_mu0.exp())
        }
    };
    Ok(RecurrenceCoeffs {
        family,
        diag,
        offdiag,
        mu0,
    })
}

/// `p_0(x), ..., p_n(x)` by forward recurrence.
pub fn eval_orthonormal(rc: &RecurrenceCoeffs, x: f64, n: usize) -> Result<Vec<f64>> {
    let mut out = vec![0.0; n + 1];
    eval_weighted_into(rc, x, 0.0, &mut out)?;
    Ok(out)
}

const RESCALE: f64 = 1e200;

/// Fills `out[k] = exp(log_sqrt_weight) * p_k(x)` for `k < out.len()`.
///
/// The weight is never formed on its own: the recurrence runs on the
/// polynomial part with a running exponent, so the product stays
/// representable even when `sqrt(w(x))` underflows and `p_k(x)` would
/// overflow. `log_sqrt_weight = -inf` yields zeros.
pub fn eval_weighted_into(rc: &RecurrenceCoeffs, x: f64, log_sqrt_weight: f64, out: &mut [f64]) -> Result<()> {
    let count = out.len();
    if count == 0 {
        return Ok(());
    }
    if count - 1 > rc.len() {
        return Err(Error::Length {
            requested: count - 1,
            available: rc.len(),
        });
    }
    let mut log_scale = log_sqrt_weight;
    let mut factor = log_scale.exp();
    let mut prev = 0.0;
    let mut cur = 1.0 / rc.mu0.sqrt();
    out[0] = cur * factor;
    for k in 0..count - 1 {
        let back = if k == 0 { 0.0 } else { rc.offdiag[k - 1] * prev };
        let mut next = ((x - rc.diag[k]) * cur - back) / rc.offdiag[k];
        if next.abs() > RESCALE {
            next /= RESCALE;
            cur /= RESCALE;
            log_scale += RESCALE.ln();
            factor = log_scale.exp();
        }
        prev = cur;
        cur = next;
        out[k + 1] = cur * factor;
    }
    Ok(())
}

/// `n`-point Gauss rule via Golub–Welsch.
pub fn gauss_quadrature(rc: &RecurrenceCoeffs, n: usize) -> Result<Quadrature> {
    if n < 1 {
        return Err(Error::domain("n", n as f64, "n >= 1"));
    }
    if n > rc.len() {
        return Err(Error::Length {
            requested: n,
            available: rc.len(),
        });
    }
    let eig = symtridiag_eigen(&rc.diag[..n], &rc.offdiag[..n - 1], Vectors::FirstRow)?;
    let weights = (0..n).map(|j| rc.mu0 * eig.vector_entry(0, j).powi(2)).collect();
    Ok(Quadrature {
        nodes: eig.values,
        weights,
    })
}

//! `f(tA) x` for differentiation-matrix operators: Krylov projection for the
//! exponential and the trapezoidal resolvent integral on a circle for
//! general holomorphic `f`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::orthopoly::{symtridiag_eigen, Vectors};
use crate::structmat::{expm, op_norm_estimate, DenseMatrix, DiffMatrix};

/// Circle `center + radius e^{i theta}` sampled at `nodes` equispaced angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub center: Complex64,
    pub radius: f64,
    pub nodes: usize,
}

pub const DEFAULT_CONTOUR_NODES: usize = 128;
pub const CONTOUR_SAFETY: f64 = 1.25;

impl ContourSpec {
    pub fn new(center: Complex64, radius: f64, nodes: usize) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::domain("radius", radius, "radius > 0"));
        }
        if nodes < 2 || !nodes.is_power_of_two() {
            return Err(Error::domain("nodes", nodes as f64, "a power of two >= 2"));
        }
        Ok(Self { center, radius, nodes })
    }

    /// Circle about the origin of radius `safety * ||D||`, which encloses
    /// the spectrum of a skew-Hermitian `D`.
    pub fn enclosing(d: &DiffMatrix, safety: f64, nodes: usize) -> Result<Self> {
        let norm = op_norm_estimate(d, 1, 200)?.value;
        let radius = if norm > 0.0 { safety * norm } else { 1.0 };
        Self::new(Complex64::zero(), radius, nodes)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KrylovOptions {
    pub max_dim: usize,
    pub tolerance: f64,
}

impl Default for KrylovOptions {
    fn default() -> Self {
        Self {
            max_dim: 100,
            tolerance: 1e-12,
        }
    }
}

impl KrylovOptions {
    pub fn new(max_dim: usize, tolerance: f64) -> Result<Self> {
        if max_dim < 2 {
            return Err(Error::domain("max_dim", max_dim as f64, "max_dim >= 2"));
        }
        if !(tolerance > 0.0) {
            return Err(Error::domain("tolerance", tolerance, "tolerance > 0"));
        }
        Ok(Self { max_dim, tolerance })
    }
}

/// Structure of the operator handed to [`krylov_apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    /// `A = iH` with `H` Hermitian; runs Lanczos on `H`.
    SkewHermitian,
    Hermitian,
    General,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KrylovOutcome {
    pub value: Vec<Complex64>,
    /// Dimension of the final Krylov space.
    pub dim: usize,
    /// The error indicator fell below the tolerance (or the space became
    /// invariant).
    pub converged: bool,
    /// The space became invariant; the result is exact up to rounding.
    pub breakdown: bool,
    /// Last value of the relative residual indicator.
    pub error_estimate: f64,
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(u, v)| u.conj() * v).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

fn combine(basis: &[Vec<Complex64>], coeffs: &[Complex64], scale: f64) -> Vec<Complex64> {
    let mut out = vec![Complex64::zero(); basis[0].len()];
    for (v, c) in basis.iter().zip(coeffs) {
        let c = c * scale;
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

/// `e^{tA} x` by projection onto the Krylov space of `A` and `x`.
///
/// Hermitian and skew-Hermitian operators use Lanczos with full
/// reorthogonalization and an eigendecomposition of the projected
/// tridiagonal matrix; general operators use Arnoldi and a dense
/// exponential of the Hessenberg matrix. Iteration stops once
/// `h_{k+1,k} |e_k^T e^{tH_k} e_1| <= tolerance`.
pub fn krylov_apply<A>(
    mut op: A,
    kind: OperatorKind,
    t: Complex64,
    x: &[Complex64],
    opts: &KrylovOptions,
) -> Result<KrylovOutcome>
where
    A: FnMut(&[Complex64]) -> Result<Vec<Complex64>>,
{
    let n = x.len();
    let beta0 = norm(x);
    if beta0 == 0.0 || n == 0 {
        return Ok(KrylovOutcome {
            value: x.to_vec(),
            dim: 0,
            converged: true,
            breakdown: false,
            error_estimate: 0.0,
        });
    }
    let max_dim = opts.max_dim.min(n).max(1);
    let mut basis: Vec<Vec<Complex64>> = vec![x.iter().map(|v| v / beta0).collect()];
    match kind {
        OperatorKind::Hermitian | OperatorKind::SkewHermitian => {
            let (tau, rotate) = match kind {
                OperatorKind::SkewHermitian => (Complex64::new(0.0, 1.0) * t, true),
                _ => (t, false),
            };
            let mut alpha: Vec<f64> = Vec::new();
            let mut beta: Vec<f64> = Vec::new();
            loop {
                let j = basis.len() - 1;
                let mut w = op(&basis[j])?;
                if w.len() != n {
                    return Err(Error::Dimension {
                        expected: n,
                        got: w.len(),
                    });
                }
                if rotate {
                    w.iter_mut().for_each(|v| *v *= Complex64::new(0.0, -1.0));
                }
                let a = dot(&basis[j], &w).re;
                alpha.push(a);
                for _ in 0..2 {
                    for v in &basis {
                        let h = dot(v, &w);
                        for (wi, vi) in w.iter_mut().zip(v) {
                            *wi -= h * vi;
                        }
                    }
                }
                let b = norm(&w);
                let k = alpha.len();
                let eig = symtridiag_eigen(&alpha, &beta, Vectors::Full)?;
                let coeffs: Vec<Complex64> = (0..k)
                    .map(|i| {
                        (0..k)
                            .map(|l| (tau * eig.values[l]).exp() * eig.vector_entry(i, l) * eig.vector_entry(0, l))
                            .sum()
                    })
                    .collect();
                let scale = alpha
                    .iter()
                    .map(|v| v.abs())
                    .chain(beta.iter().copied())
                    .fold(0.0, f64::max);
                let breakdown = b <= 1e-12 * scale.max(f64::MIN_POSITIVE);
                let err = b * coeffs[k - 1].norm();
                if breakdown || err <= opts.tolerance || k >= max_dim {
                    return Ok(KrylovOutcome {
                        value: combine(&basis, &coeffs, beta0),
                        dim: k,
                        converged: breakdown || err <= opts.tolerance || k == n,
                        breakdown: breakdown || k == n,
                        error_estimate: if breakdown || k == n { 0.0 } else { err },
                    });
                }
                beta.push(b);
                basis.push(w.iter().map(|v| v / b).collect());
            }
        }
        OperatorKind::General => {
            let mut h = DenseMatrix::zeros(max_dim + 1, max_dim);
            loop {
                let j = basis.len() - 1;
                let mut w = op(&basis[j])?;
                if w.len() != n {
                    return Err(Error::Dimension {
                        expected: n,
                        got: w.len(),
                    });
                }
                for _ in 0..2 {
                    for (i, v) in basis.iter().enumerate() {
                        let c = dot(v, &w);
                        h[(i, j)] += c;
                        for (wi, vi) in w.iter_mut().zip(v) {
                            *wi -= c * vi;
                        }
                    }
                }
                let b = norm(&w);
                h[(j + 1, j)] = Complex64::new(b, 0.0);
                let k = j + 1;
                let hk = DenseMatrix::from_fn(k, k, |r, c| h[(r, c)] * t);
                let e = expm(&hk)?;
                let coeffs: Vec<Complex64> = (0..k).map(|r| e[(r, 0)]).collect();
                let scale = hk.norm_inf() / t.norm().max(f64::MIN_POSITIVE);
                let breakdown = b <= 1e-12 * scale.max(f64::MIN_POSITIVE);
                let err = b * coeffs[k - 1].norm();
                if breakdown || err <= opts.tolerance || k >= max_dim {
                    return Ok(KrylovOutcome {
                        value: combine(&basis, &coeffs, beta0),
                        dim: k,
                        converged: breakdown || err <= opts.tolerance || k == n,
                        breakdown: breakdown || k == n,
                        error_estimate: if breakdown || k == n { 0.0 } else { err },
                    });
                }
                basis.push(w.iter().map(|v| v / b).collect());
            }
        }
    }
}

/// `f(T) x` by the trapezoidal rule for the resolvent integral on a circle,
/// with `(zI - T)^{-1} x` supplied by `resolve(z, x)`.
pub fn dunford_apply_with<F, S>(f: F, x: &[Complex64], contour: &ContourSpec, mut resolve: S) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Complex64,
    S: FnMut(Complex64, &[Complex64]) -> Result<Vec<Complex64>>,
{
    let k = contour.nodes;
    let mut acc = vec![Complex64::zero(); x.len()];
    for j in 0..k {
        let theta = 2.0 * PI * j as f64 / k as f64;
        let offset = Complex64::from_polar(contour.radius, theta);
        let z = contour.center + offset;
        let w = resolve(z, x).map_err(|_| Error::ContourTooClose { node: j })?;
        if w.len() != x.len() || w.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::ContourTooClose { node: j });
        }
        let weight = f(z) * offset / k as f64;
        for (a, v) in acc.iter_mut().zip(&w) {
            *a += weight * v;
        }
    }
    Ok(acc)
}

/// `f(T) x` with the structured shifted solves of `T`:
/// `(zI - T) w = x` is solved as `(I - T/z) w = x/z`.
pub fn dunford_apply<F>(f: F, t: &DiffMatrix, x: &[Complex64], contour: &ContourSpec) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Complex64,
{
    if x.len() != t.size() {
        return Err(Error::Dimension {
            expected: t.size(),
            got: x.len(),
        });
    }
    dunford_apply_with(f, x, contour, |z, rhs| {
        if z.norm() == 0.0 {
            return Err(Error::Singular { index: 0 });
        }
        let kappa = z.inv();
        let scaled: Vec<Complex64> = rhs.iter().map(|v| v * kappa).collect();
        t.solve_shifted(kappa, &scaled)
    })
}

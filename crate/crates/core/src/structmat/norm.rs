use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use super::DiffMatrix;
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Result of a power-iteration norm estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormEstimate {
    pub value: f64,
    pub converged: bool,
    pub iterations: usize,
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn apply_power(d: &DiffMatrix, power: usize, x: &[Complex64], adjoint: bool) -> Result<Vec<Complex64>> {
    let mut v = x.to_vec();
    for _ in 0..power {
        v = if adjoint { d.adjoint_matvec(&v)? } else { d.matvec(&v)? };
    }
    Ok(v)
}

/// Seed of the start vector used by [`op_norm_estimate`].
pub const DEFAULT_NORM_SEED: u64 = 0x9e37_79b9;

/// Power-iteration estimate of `||D^power||_2` using only products with `D`
/// and `D^* = -D`. Converged means the last relative change fell below
/// `1e-8`.
pub fn op_norm_estimate(d: &DiffMatrix, power: usize, iters: usize) -> Result<NormEstimate> {
    op_norm_estimate_seeded(d, power, iters, DEFAULT_NORM_SEED)
}

/// [`op_norm_estimate`] from a start vector drawn with `seed`.
pub fn op_norm_estimate_seeded(d: &DiffMatrix, power: usize, iters: usize, seed: u64) -> Result<NormEstimate> {
    if power < 1 {
        return Err(Error::domain("power", power as f64, "power >= 1"));
    }
    let n = d.size();
    let mut rng = SplitMix64::new(seed ^ n as u64);
    let mut v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.next_signed(), rng.next_signed()))
        .collect();
    let nv = norm2(&v);
    v.iter_mut().for_each(|z| *z /= nv);
    let mut value = 0.0;
    for it in 1..=iters.max(1) {
        let w = apply_power(d, power, &v, false)?;
        let est = norm2(&w);
        if est == 0.0 {
            return Ok(NormEstimate {
                value: 0.0,
                converged: true,
                iterations: it,
            });
        }
        let mut u = apply_power(d, power, &w, true)?;
        let nu = norm2(&u);
        u.iter_mut().for_each(|z| *z /= nu);
        v = u;
        let change = (est - value).abs() / est;
        value = est;
        if change < 1e-8 {
            return Ok(NormEstimate {
                value,
                converged: true,
                iterations: it,
            });
        }
    }
    Ok(NormEstimate {
        value,
        converged: false,
        iterations: iters.max(1),
    })
}

/// Spectral norm of the leading `block x block` corner of `D_N^power`.
///
/// Unlike the norm of the whole section, which grows with `N` for every
/// power, the leading corner converges as `N` grows exactly when the
/// entries of the infinite power are finite, so it separates bounded from
/// unbounded powers.
pub fn leading_block_norm(d: &DiffMatrix, power: usize, block: usize) -> Result<f64> {
    if power < 1 {
        return Err(Error::domain("power", power as f64, "power >= 1"));
    }
    let n = d.size();
    if block == 0 || block > n {
        return Err(Error::Dimension {
            expected: n,
            got: block,
        });
    }
    // cols[j][i] = (D^power)[i][j] for i, j < block
    let mut cols = Vec::with_capacity(block);
    for j in 0..block {
        let mut e = vec![Complex64::zero(); n];
        e[j] = Complex64::new(1.0, 0.0);
        let col = apply_power(d, power, &e, false)?;
        cols.push(col[..block].to_vec());
    }
    // Gram matrix G = B^* B, Hermitian positive semidefinite.
    let gram: Vec<Vec<Complex64>> = (0..block)
        .map(|i| {
            (0..block)
                .map(|j| cols[i].iter().zip(&cols[j]).map(|(a, b)| a.conj() * b).sum())
                .collect()
        })
        .collect();
    let trace: f64 = (0..block).map(|i| gram[i][i].re).sum();
    if trace == 0.0 {
        return Ok(0.0);
    }
    let mut v = vec![Complex64::new(1.0, 0.0); block];
    let mut lambda = 0.0;
    for _ in 0..500 {
        let w: Vec<Complex64> = (0..block)
            .map(|i| (0..block).map(|j| gram[i][j] * v[j]).sum())
            .collect();
        let nw = norm2(&w);
        if nw == 0.0 {
            break;
        }
        let next = nw / norm2(&v);
        v = w.iter().map(|z| z / nw).collect();
        if (next - lambda).abs() <= 1e-15 * next {
            lambda = next;
            break;
        }
        lambda = next;
    }
    Ok(lambda.sqrt())
}

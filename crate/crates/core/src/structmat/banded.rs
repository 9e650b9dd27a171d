use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Square band matrix with `kl` sub- and `ku` superdiagonals, stored with
/// room for the `kl` extra superdiagonals produced by partial pivoting.
#[derive(Debug, Clone)]
pub(crate) struct BandMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<Complex64>,
}

impl BandMatrix {
    pub(crate) fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        Self {
            n,
            kl,
            ku,
            width,
            data: vec![Complex64::zero(); n * width],
        }
    }

    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        let lo = i as isize - self.kl as isize;
        let off = j as isize - lo;
        (off >= 0 && (off as usize) < self.width).then(|| i * self.width + off as usize)
    }

    fn get(&self, i: usize, j: usize) -> Complex64 {
        self.slot(i, j).map_or(Complex64::zero(), |k| self.data[k])
    }

    /// Adds `v` at `(i, j)`; `j` must lie within `kl`/`ku` of `i`.
    pub(crate) fn add(&mut self, i: usize, j: usize, v: Complex64) {
        debug_assert!(j + self.kl >= i && j <= i + self.ku);
        let k = self.slot(i, j).expect("entry inside the band");
        self.data[k] += v;
    }

    /// LU factorization with partial pivoting. The multipliers overwrite
    /// the eliminated subdiagonal entries.
    pub(crate) fn factor(mut self) -> Result<BandLu> {
        let n = self.n;
        let reach = self.ku + self.kl;
        let mut pivots = vec![0; n];
        for k in 0..n {
            let last = (k + self.kl).min(n - 1);
            let mut piv = k;
            let mut best = self.get(k, k).norm();
            for i in k + 1..=last {
                let v = self.get(i, k).norm();
                if v > best {
                    best = v;
                    piv = i;
                }
            }
            if !(best > 0.0) || !best.is_finite() {
                return Err(Error::Singular { index: k });
            }
            pivots[k] = piv;
            let hi = (k + reach).min(n - 1);
            if piv != k {
                for j in k..=hi {
                    let a = self.get(k, j);
                    let b = self.get(piv, j);
                    if let Some(s) = self.slot(k, j) {
                        self.data[s] = b;
                    }
                    if let Some(s) = self.slot(piv, j) {
                        self.data[s] = a;
                    }
                }
            }
            let inv = self.get(k, k).inv();
            for i in k + 1..=last {
                let f = self.get(i, k) * inv;
                let s = self.slot(i, k).expect("pivot column inside the band");
                self.data[s] = f;
                if f.is_zero() {
                    continue;
                }
                for j in k + 1..=hi {
                    let u = self.get(k, j);
                    if !u.is_zero() {
                        let s = self.slot(i, j).expect("fill stays inside the band");
                        self.data[s] -= f * u;
                    }
                }
            }
        }
        Ok(BandLu { lu: self, pivots })
    }
}

/// Factorization produced by [`BandMatrix::factor`].
#[derive(Debug, Clone)]
pub(crate) struct BandLu {
    lu: BandMatrix,
    pivots: Vec<usize>,
}

impl BandLu {
    /// Solves `A z = rhs` in place.
    pub(crate) fn solve(&self, rhs: &mut [Complex64]) -> Result<()> {
        let a = &self.lu;
        let n = a.n;
        if rhs.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: rhs.len(),
            });
        }
        for k in 0..n {
            rhs.swap(k, self.pivots[k]);
            let t = rhs[k];
            if t.is_zero() {
                continue;
            }
            for i in k + 1..=(k + a.kl).min(n - 1) {
                rhs[i] -= a.get(i, k) * t;
            }
        }
        let reach = a.ku + a.kl;
        for k in (0..n).rev() {
            let hi = (k + reach).min(n - 1);
            let mut s = rhs[k];
            for j in k + 1..=hi {
                s -= a.get(k, j) * rhs[j];
            }
            rhs[k] = s / a.get(k, k);
        }
        Ok(())
    }
}

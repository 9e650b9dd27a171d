//! T-systems on the real line: Malmquist–Takenaka functions and Hermite
//! functions, and their tridiagonal skew-Hermitian differentiation matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_2_PI;
use num_complex::Complex64;

use crate::basis::{BasisKind, BasisSpec};
use crate::error::{Error, Result};
use crate::orthopoly::{eval_weighted_into, recurrence_coeffs, Family, RecurrenceCoeffs};
use crate::structmat::TridiagonalSkew;
#[allow(unused_imports)]
use num_traits::Float;

/// `i^n (1 + 2ix)^n / (1 - 2ix)^(n+1) * sqrt(2/pi)`.
///
/// Uses `(1 + 2ix)/(1 - 2ix) = exp(2i atan(2x))`, so the cost does not depend
/// on `n`.
pub fn mt_eval(n: i64, x: f64) -> Complex64 {
    let quarter = n.rem_euclid(4);
    let i_pow = match quarter {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    let phase = 2.0 * n as f64 * (2.0 * x).atan();
    let rot = Complex64::new(phase.cos(), phase.sin());
    let denom = Complex64::new(1.0, -2.0 * x);
    i_pow * rot / denom * FRAC_2_PI.sqrt()
}

/// Analytic derivative of [`mt_eval`].
pub fn mt_derivative(n: i64, x: f64) -> Complex64 {
    // logarithmic derivative 2in/(1+2ix) + 2i(n+1)/(1-2ix)
    let num = Complex64::new(0.0, 2.0 * n as f64) / Complex64::new(1.0, 2.0 * x);
    let den = Complex64::new(0.0, 2.0 * (n + 1) as f64) / Complex64::new(1.0, -2.0 * x);
    mt_eval(n, x) * (num + den)
}

/// Orthonormal Hermite recurrence, shared by the Hermite-function evaluators.
pub fn hermite_recurrence(n_max: usize) -> Result<RecurrenceCoeffs> {
    recurrence_coeffs(Family::Hermite, n_max.max(1))
}

/// `phi_0(x), ..., phi_n(x)` for the Hermite functions.
pub fn hermite_fn_sequence(n: usize, x: f64) -> Vec<f64> {
    let rc = hermite_recurrence(n).expect("Hermite recurrence has no parameters");
    let mut out = vec![0.0; n + 1];
    hermite_fn_fill(&rc, x, &mut out);
    out
}

pub(crate) fn hermite_fn_fill(rc: &RecurrenceCoeffs, x: f64, out: &mut [f64]) {
    eval_weighted_into(rc, x, -0.5 * x * x, out).expect("recurrence sized by caller");
}

/// `H_n(x) exp(-x^2/2) / sqrt(2^n n! sqrt(pi))`.
pub fn hermite_fn_eval(n: usize, x: f64) -> f64 {
    hermite_fn_sequence(n, x)[n]
}

/// Analytic derivative of the Hermite function,
/// `phi_n' = sqrt(n/2) phi_{n-1} - sqrt((n+1)/2) phi_{n+1}`.
pub fn hermite_fn_derivative(n: usize, x: f64) -> f64 {
    let v = hermite_fn_sequence(n + 1, x);
    let lower = if n > 0 { (n as f64 / 2.0).sqrt() * v[n - 1] } else { 0.0 };
    lower - ((n as f64 + 1.0) / 2.0).sqrt() * v[n + 1]
}

/// Differentiation matrix of a T-system.
///
/// MT covers indices `-n..=n` with `b_k = k + 1` and `c_k = 2k + 1`;
/// `b_{-1} = 0` decouples the two half-lattices. Hermite functions cover
/// `0..=n` with real couplings `D[k][k+1] = -sqrt((k+1)/2)`,
/// `D[k+1][k] = sqrt((k+1)/2)`.
pub fn t_diff_matrix(spec: &BasisSpec, n: usize) -> Result<TridiagonalSkew> {
    match spec.kind() {
        BasisKind::Mt => {
            let lo = -(n as i64);
            let size = 2 * n + 1;
            let b = (0..=size)
                .map(|k| Complex64::new((lo + k as i64) as f64, 0.0))
                .collect();
            let c = (0..size).map(|k| (2 * (lo + k as i64) + 1) as f64).collect();
            TridiagonalSkew::new(b, c, lo)
        }
        BasisKind::HermiteFn => {
            let mut b: Vec<Complex64> = (0..=n + 1)
                .map(|k| Complex64::new(-(k as f64 / 2.0).sqrt(), 0.0))
                .collect();
            b[0] = Complex64::new(0.0, 0.0);
            TridiagonalSkew::new(b, vec![0.0; n + 1], 0)
        }
        other => Err(Error::Usage(alloc::format!(
            "t_diff_matrix needs a T-system basis (mt or hermite), got {}",
            other.tag()
        ))),
    }
}

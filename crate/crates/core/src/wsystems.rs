//! W-systems `sqrt(w) p_n`: Laguerre functions on the half line and
//! ultraspherical functions on `[-1, 1]`, with their rank-1 semiseparable
//! differentiation matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::LN_2;

use crate::basis::BasisKind;
use crate::error::{Error, Result};
use crate::orthopoly::{eval_weighted_into, recurrence_coeffs, Family, RecurrenceCoeffs};
use crate::structmat::{SemiseparableRank1, TailSum};
#[allow(unused_imports)]
use num_traits::Float;

fn lgamma(x: f64) -> f64 {
    libm::lgamma(x)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > -1.0 {
        Ok(())
    } else {
        Err(Error::domain("alpha", alpha, "alpha > -1"))
    }
}

fn check_diff_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 1.0 {
        Ok(())
    } else {
        Err(Error::domain("alpha", alpha, "alpha > 1"))
    }
}

pub fn laguerre_recurrence(alpha: f64, n_max: usize) -> Result<RecurrenceCoeffs> {
    recurrence_coeffs(Family::Laguerre { alpha }, n_max.max(1))
}

pub fn ultra_recurrence(alpha: f64, n_max: usize) -> Result<RecurrenceCoeffs> {
    recurrence_coeffs(Family::Jacobi { alpha, beta: alpha }, n_max.max(1))
}

/// `log sqrt(x^alpha e^-x)`, or `None` when the weight vanishes at `x`.
fn laguerre_log_sqrt_weight(alpha: f64, x: f64) -> Result<Option<f64>> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain("x", x, "x >= 0"));
    }
    if x == 0.0 {
        return if alpha > 0.0 {
            Ok(None)
        } else if alpha == 0.0 {
            Ok(Some(0.0))
        } else {
            Err(Error::domain("x", x, "x > 0 when alpha < 0"))
        };
    }
    Ok(Some(0.5 * (alpha * x.ln() - x)))
}

fn ultra_log_sqrt_weight(alpha: f64, x: f64) -> Result<Option<f64>> {
    if !(x.abs() <= 1.0) {
        return Err(Error::domain("x", x, "|x| <= 1"));
    }
    if x.abs() == 1.0 {
        return if alpha > 0.0 {
            Ok(None)
        } else if alpha == 0.0 {
            Ok(Some(0.0))
        } else {
            Err(Error::domain("x", x, "|x| < 1 when alpha < 0"))
        };
    }
    Ok(Some(0.5 * alpha * ((1.0 - x) * (1.0 + x)).ln()))
}

/// Fills `out[n] = phi_n(x)` for the Laguerre W-system. `rc` must come from
/// [`laguerre_recurrence`] with the same `alpha`.
pub fn laguerre_w_fill(rc: &RecurrenceCoeffs, alpha: f64, x: f64, out: &mut [f64]) -> Result<()> {
    match laguerre_log_sqrt_weight(alpha, x)? {
        None => out.iter_mut().for_each(|v| *v = 0.0),
        Some(lw) => {
            eval_weighted_into(rc, x, lw, out)?;
            // L_n^(alpha) has leading coefficient (-1)^n / n!
            out.iter_mut().skip(1).step_by(2).for_each(|v| *v = -*v);
        }
    }
    Ok(())
}

/// Fills `out[n] = phi_n(x)` for the ultraspherical W-system. `rc` must come
/// from [`ultra_recurrence`] with the same `alpha`.
pub fn ultra_w_fill(rc: &RecurrenceCoeffs, alpha: f64, x: f64, out: &mut [f64]) -> Result<()> {
    match ultra_log_sqrt_weight(alpha, x)? {
        None => out.iter_mut().for_each(|v| *v = 0.0),
        Some(lw) => eval_weighted_into(rc, x, lw, out)?,
    }
    Ok(())
}

pub fn laguerre_w_sequence(alpha: f64, n: usize, x: f64) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    let rc = laguerre_recurrence(alpha, n)?;
    let mut out = vec![0.0; n + 1];
    laguerre_w_fill(&rc, alpha, x, &mut out)?;
    Ok(out)
}

pub fn ultra_w_sequence(alpha: f64, n: usize, x: f64) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    let rc = ultra_recurrence(alpha, n)?;
    let mut out = vec![0.0; n + 1];
    ultra_w_fill(&rc, alpha, x, &mut out)?;
    Ok(out)
}

/// `sqrt(n!/Gamma(n+1+alpha)) x^(alpha/2) e^(-x/2) L_n^(alpha)(x)`.
pub fn laguerre_w_eval(alpha: f64, n: usize, x: f64) -> Result<f64> {
    Ok(laguerre_w_sequence(alpha, n, x)?[n])
}

/// Orthonormal `(1-x^2)^(alpha/2) P_n^(alpha,alpha)(x)`.
pub fn ultra_w_eval(alpha: f64, n: usize, x: f64) -> Result<f64> {
    Ok(ultra_w_sequence(alpha, n, x)?[n])
}

/// `sum_{k >= start} k! / Gamma(k+1+alpha)`.
pub fn laguerre_tail_sum(alpha: f64, start: usize) -> f64 {
    let k = start as f64;
    (lgamma(k + 1.0) - lgamma(k + alpha)).exp() / (alpha - 1.0)
}

/// `sum_{k = start, start+2, ...} k! (2k+2alpha+1) / (2 Gamma(k+2alpha+1))`.
pub fn ultra_tail_sum(alpha: f64, start: usize) -> f64 {
    let k = start as f64;
    (lgamma(k + 1.0) - lgamma(k + 2.0 * alpha - 1.0)).exp() / (4.0 * (alpha - 1.0))
}

/// Differentiation matrix of the Laguerre W-system on indices `0..=n`:
/// `D[m][k] = -a_m b_k / 2` below the diagonal, `a_k b_m / 2` above, with
/// `a_m = sqrt(m!/Gamma(m+1+alpha))` and `b_k = 1/a_k`.
pub fn laguerre_w_diff(alpha: f64, n: usize) -> Result<SemiseparableRank1> {
    check_diff_alpha(alpha)?;
    let log_a: Vec<f64> = (0..=n)
        .map(|m| 0.5 * (lgamma(m as f64 + 1.0) - lgamma(m as f64 + 1.0 + alpha)))
        .collect();
    let log_b = log_a.iter().map(|v| -v).collect();
    Ok(SemiseparableRank1::from_log_generators(log_a, log_b, false, 0.5)?
        .with_tail(TailSum::All(laguerre_tail_sum(alpha, n + 1))))
}

/// Differentiation matrix of the ultraspherical W-system on indices `0..=n`:
/// `D[m][k] = a_m b_k` for `m > k`, `-a_k b_m` for `m < k`, zero when
/// `m + k` is even, with
/// `a_m = sqrt(m!(2m+2alpha+1)/(2 Gamma(m+2alpha+1)))` and
/// `b_k = sqrt((2k+2alpha+1) Gamma(k+2alpha+1)/(2 k!))`.
pub fn ultra_w_diff(alpha: f64, n: usize) -> Result<SemiseparableRank1> {
    check_diff_alpha(alpha)?;
    let log_a = (0..=n)
        .map(|m| {
            let m = m as f64;
            0.5 * (lgamma(m + 1.0) + (2.0 * m + 2.0 * alpha + 1.0).ln() - LN_2 - lgamma(m + 2.0 * alpha + 1.0))
        })
        .collect();
    let log_b = (0..=n)
        .map(|k| {
            let k = k as f64;
            0.5 * ((2.0 * k + 2.0 * alpha + 1.0).ln() + lgamma(k + 2.0 * alpha + 1.0) - LN_2 - lgamma(k + 1.0))
        })
        .collect();
    let first_even = if (n + 1) % 2 == 0 { n + 1 } else { n + 2 };
    let first_odd = if (n + 1) % 2 == 1 { n + 1 } else { n + 2 };
    Ok(
        SemiseparableRank1::from_log_generators(log_a, log_b, true, -1.0)?.with_tail(TailSum::ByParity {
            even: ultra_tail_sum(alpha, first_even),
            odd: ultra_tail_sum(alpha, first_odd),
        }),
    )
}

/// `floor(alpha - 1) + 2`: the largest `s` with `D^l` bounded for `l <= s`.
pub fn weight_index(kind: BasisKind, alpha: f64) -> Result<usize> {
    match kind {
        BasisKind::LaguerreW { .. } | BasisKind::UltrasphericalW { .. } => {
            check_diff_alpha(alpha)?;
            Ok((alpha - 1.0).floor() as usize + 2)
        }
        other => Err(Error::Usage(alloc::format!(
            "weight index is defined for W-systems, got {}",
            other.tag()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::gauss_quadrature;

    #[test]
    fn evaluation_examples() {
        let v = laguerre_w_eval(2.0, 0, 1.0).unwrap();
        assert!((v - (-0.5f64).exp() / 2f64.sqrt()).abs() < 1e-15);
        // L_3^(2)(x) = (60 - 60x + 15x^2 - x^3)/6
        let x: f64 = 2.5;
        let l3 = (60.0 - 60.0 * x + 15.0 * x * x - x * x * x) / 6.0;
        let want = (6.0f64 / 120.0).sqrt() * x * (-x / 2.0).exp() * l3;
        assert!((laguerre_w_eval(2.0, 3, x).unwrap() - want).abs() < 1e-14);

        assert!((ultra_w_eval(2.0, 0, 0.0).unwrap() - 15f64.sqrt() / 4.0).abs() < 1e-14);
        assert_eq!(ultra_w_eval(2.0, 3, 1.0).unwrap(), 0.0);
        assert_eq!(ultra_w_eval(2.0, 4, -1.0).unwrap(), 0.0);
        assert!(ultra_w_eval(2.0, 5, 0.0).unwrap().abs() < 1e-15);
        assert_eq!(laguerre_w_eval(2.0, 4, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            laguerre_w_eval(2.0, 1, -0.1),
            Err(Error::Domain { name: "x", .. })
        ));
        assert!(matches!(
            ultra_w_eval(2.0, 1, 1.1),
            Err(Error::Domain { name: "x", .. })
        ));
        assert!(laguerre_w_eval(-0.5, 1, 0.0).is_err());
        assert!(matches!(
            laguerre_w_diff(1.0, 4),
            Err(Error::Domain { name: "alpha", .. })
        ));
        assert!(ultra_w_diff(0.5, 4).is_err());
    }

    #[test]
    fn laguerre_orthonormality() {
        let rc = laguerre_recurrence(2.0, 60).unwrap();
        let q = gauss_quadrature(&rc, 40).unwrap();
        // weight folded into phi, so integrate phi_m phi_n / w against the rule
        for m in 0..=16 {
            for n in 0..=16 {
                let s: f64 = q
                    .nodes
                    .iter()
                    .zip(&q.weights)
                    .map(|(&x, &w)| {
                        let v = laguerre_w_sequence(2.0, 16, x).unwrap();
                        w * v[m] * v[n] / (x * x * (-x).exp())
                    })
                    .sum();
                let want = if m == n { 1.0 } else { 0.0 };
                assert!((s - want).abs() < 1e-10, "{m} {n} {s}");
            }
        }
    }

    #[test]
    fn difference_matrix_examples() {
        let d = laguerre_w_diff(2.0, 4).unwrap();
        assert!((d.entry(1, 0) + 1.0 / (2.0 * 3f64.sqrt())).abs() < 1e-15);
        assert_eq!(d.entry(2, 2), 0.0);
        let u = ultra_w_diff(2.0, 6).unwrap();
        assert!((u.entry(1, 0) - 7f64.sqrt() / 2.0).abs() < 1e-14);
        assert_eq!(u.entry(2, 0), 0.0);
    }

    #[test]
    fn tail_sums_match_brute_force() {
        for &alpha in &[1.5, 2.0, 3.0, 4.0] {
            let start = 7usize;
            let lag: f64 = (start..400_000)
                .map(|k| (lgamma(k as f64 + 1.0) - lgamma(k as f64 + 1.0 + alpha)).exp())
                .sum();
            let want = laguerre_tail_sum(alpha, start);
            // the truncated series misses a tail of order k^(1-alpha)
            let missed = (400_000f64).powf(1.0 - alpha) / (alpha - 1.0);
            assert!((lag + missed - want).abs() < 1e-3 * want, "{alpha}");
            let ultra: f64 = (start..400_000)
                .step_by(2)
                .map(|k| {
                    let k = k as f64;
                    (lgamma(k + 1.0) + (2.0 * k + 2.0 * alpha + 1.0).ln() - LN_2 - lgamma(k + 2.0 * alpha + 1.0)).exp()
                })
                .sum();
            let want = ultra_tail_sum(alpha, start);
            let missed = (400_000f64).powf(2.0 - 2.0 * alpha) / (4.0 * (alpha - 1.0));
            assert!((ultra + missed - want).abs() < 1e-3 * want, "{alpha}");
        }
    }

    #[test]
    fn weight_index_examples() {
        assert_eq!(weight_index(BasisKind::LaguerreW { alpha: 2.0 }, 2.0).unwrap(), 3);
        assert_eq!(weight_index(BasisKind::UltrasphericalW { alpha: 4.0 }, 4.0).unwrap(), 5);
        assert_eq!(weight_index(BasisKind::UltrasphericalW { alpha: 2.5 }, 2.5).unwrap(), 3);
        assert!(weight_index(BasisKind::LaguerreW { alpha: 1.0 }, 1.0).is_err());
    }
}

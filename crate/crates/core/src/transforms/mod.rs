//! Analysis (function to coefficients) and synthesis (coefficients to
//! samples) for every supported basis.
//!
//! Malmquist–Takenaka coefficients come from one FFT after the substitution
//! `x = tan(theta/2)/2`. The other bases use Gauss quadrature of the
//! matching polynomial family with the weight folded into the basis values.

mod fft;

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

pub use fft::{dft_unitary, Direction};

use crate::basis::{BasisKind, BasisSpec, Domain};
use crate::error::{Error, Result};
use crate::orthopoly::{gauss_quadrature, RecurrenceCoeffs};
use crate::tsystems::{hermite_fn_fill, hermite_recurrence, mt_eval};
use crate::wsystems::{laguerre_recurrence, laguerre_w_fill, ultra_recurrence, ultra_w_fill};

/// Endpoint-to-peak ratio of the MT integrand above which a transform is
/// flagged as possibly aliased.
pub const ALIASING_THRESHOLD: f64 = 1e-8;

/// Truncated expansion coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffVec {
    spec: BasisSpec,
    data: Vec<Complex64>,
    offset: i64,
    /// Set by [`mt_analysis`] when the integrand does not decay at the ends
    /// of the angular grid; holds the endpoint-to-peak ratio.
    pub aliasing: Option<f64>,
}

impl CoeffVec {
    /// Coefficients of order `n`; `data` must have `spec.len_for(n)` entries.
    pub fn new(spec: BasisSpec, n: usize, data: Vec<Complex64>) -> Result<Self> {
        let len = spec.len_for(n);
        if data.len() != len {
            return Err(Error::Dimension {
                expected: len,
                got: data.len(),
            });
        }
        Ok(Self {
            spec,
            data,
            offset: spec.offset_for(n),
            aliasing: None,
        })
    }

    pub fn zeros(spec: BasisSpec, n: usize) -> Self {
        Self {
            spec,
            data: vec![Complex64::zero(); spec.len_for(n)],
            offset: spec.offset_for(n),
            aliasing: None,
        }
    }

    /// The coefficient vector of `phi_index`.
    pub fn unit(spec: BasisSpec, n: usize, index: i64) -> Result<Self> {
        let mut c = Self::zeros(spec, n);
        let k = c.position(index).ok_or(Error::Length {
            requested: index.unsigned_abs() as usize,
            available: n,
        })?;
        c.data[k] = Complex64::new(1.0, 0.0);
        Ok(c)
    }

    pub fn spec(&self) -> BasisSpec {
        self.spec
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        match self.spec.index_set() {
            crate::basis::IndexSet::TwoSided => (self.data.len() - 1) / 2,
            crate::basis::IndexSet::OneSided => self.data.len() - 1,
        }
    }

    /// Lowest stored index.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    pub fn position(&self, index: i64) -> Option<usize> {
        let k = index - self.offset;
        (0..self.data.len() as i64).contains(&k).then_some(k as usize)
    }

    /// Coefficient of `phi_index`, zero outside the truncation.
    pub fn get(&self, index: i64) -> Complex64 {
        self.position(index).map_or(Complex64::zero(), |k| self.data[k])
    }

    /// `(index, coefficient)` pairs in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.data
            .iter()
            .enumerate()
            .map(move |(k, &v)| (self.offset + k as i64, v))
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        let mut c = self.clone();
        c.data.iter_mut().for_each(|v| *v *= s);
        c
    }
}

/// Function values on a set of points.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSamples {
    pub points: Vec<f64>,
    pub values: Vec<Complex64>,
    pub domain: Domain,
}

/// `||c||_2`, which approximates the L2 norm of the represented function
/// because the basis is orthonormal.
pub fn parseval_norm(c: &CoeffVec) -> f64 {
    c.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// Default angular grid size: `4(2N+1)` rounded up to a power of two.
pub fn default_oversampling(n: usize) -> usize {
    (4 * (2 * n + 1)).next_power_of_two()
}

/// MT coefficients `f_n = int f conj(phi_n)`, `|n| <= N`, from `m` samples.
///
/// Under `x = tan(theta/2)/2` the coefficients become Fourier coefficients:
///
/// ```text
/// f_n = (-i)^n / (2 sqrt(2 pi)) int_{-pi}^{pi} (1 - i tan(theta/2)) f(tan(theta/2)/2) e^{-in theta} d theta
/// ```
///
/// The integral is sampled on the open grid `theta_j = -pi + (2j+1) pi/m`.
pub fn mt_analysis<F, T>(f: F, n: usize, m: Option<usize>) -> Result<CoeffVec>
where
    F: Fn(f64) -> T,
    T: Into<Complex64>,
{
    let m = m.unwrap_or_else(|| default_oversampling(n));
    if !m.is_power_of_two() || m < 4 * (2 * n + 1) {
        return Err(Error::Length {
            requested: m,
            available: default_oversampling(n),
        });
    }
    let theta0 = -PI + PI / m as f64;
    let mut g = Vec::with_capacity(m);
    for j in 0..m {
        let theta = theta0 + 2.0 * PI * j as f64 / m as f64;
        let t = (0.5 * theta).tan();
        let x = 0.5 * t;
        let v: Complex64 = f(x).into();
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::Evaluation { index: j, x });
        }
        g.push(Complex64::new(1.0, -t) * v);
    }
    let peak = g.iter().fold(0.0f64, |a, v| a.max(v.norm()));
    let edge = g[0].norm().max(g[m - 1].norm());
    let spectrum = dft_unitary(&g, Direction::Forward)?;
    // (2 pi/m) * sqrt(m) from the unitary scaling
    let scale = 2.0 * PI / (m as f64).sqrt() / (2.0 * (2.0 * PI).sqrt());
    let spec = BasisSpec::mt();
    let mut out = CoeffVec::zeros(spec, n);
    for (k, slot) in out.data.iter_mut().enumerate() {
        let idx = k as i64 - n as i64;
        let neg_i_pow = match idx.rem_euclid(4) {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, -1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, 1.0),
        };
        let ph = -(idx as f64) * theta0;
        let shift = Complex64::new(ph.cos(), ph.sin());
        *slot = neg_i_pow * shift * spectrum[idx.rem_euclid(m as i64) as usize] * scale;
    }
    if peak > 0.0 && edge > ALIASING_THRESHOLD * peak {
        out.aliasing = Some(edge / peak);
    }
    Ok(out)
}

/// Evaluates `phi_k(x)` for every index of a truncation.
#[derive(Debug, Clone)]
pub struct BasisEvaluator {
    spec: BasisSpec,
    n: usize,
    rc: Option<RecurrenceCoeffs>,
}

impl BasisEvaluator {
    pub fn new(spec: BasisSpec, n: usize) -> Result<Self> {
        let rc = match spec.kind() {
            BasisKind::Mt => None,
            BasisKind::HermiteFn => Some(hermite_recurrence(n)?),
            BasisKind::LaguerreW { alpha } => Some(laguerre_recurrence(alpha, n)?),
            BasisKind::UltrasphericalW { alpha } => Some(ultra_recurrence(alpha, n)?),
        };
        Ok(Self { spec, n, rc })
    }

    pub fn spec(&self) -> BasisSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.spec.len_for(self.n)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Real basis values. Fails for MT, which is complex.
    pub fn fill_real(&self, x: f64, out: &mut [f64]) -> Result<()> {
        if out.len() != self.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                got: out.len(),
            });
        }
        let rc = match &self.rc {
            Some(rc) => rc,
            None => return Err(Error::Usage("MT basis values are complex".into())),
        };
        match self.spec.kind() {
            BasisKind::HermiteFn => {
                if !x.is_finite() {
                    return Err(Error::domain("x", x, "finite"));
                }
                hermite_fn_fill(rc, x, out);
                Ok(())
            }
            BasisKind::LaguerreW { alpha } => laguerre_w_fill(rc, alpha, x, out),
            BasisKind::UltrasphericalW { alpha } => ultra_w_fill(rc, alpha, x, out),
            BasisKind::Mt => unreachable!(),
        }
    }

    pub fn fill(&self, x: f64, out: &mut [Complex64]) -> Result<()> {
        if out.len() != self.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                got: out.len(),
            });
        }
        if self.rc.is_none() {
            if !x.is_finite() {
                return Err(Error::domain("x", x, "finite"));
            }
            let lo = -(self.n as i64);
            for (k, v) in out.iter_mut().enumerate() {
                *v = mt_eval(lo + k as i64, x);
            }
            return Ok(());
        }
        let mut re = vec![0.0; out.len()];
        self.fill_real(x, &mut re)?;
        for (o, r) in out.iter_mut().zip(re) {
            *o = Complex64::new(r, 0.0);
        }
        Ok(())
    }
}

/// Gauss rule of the basis' polynomial family with the basis values at its
/// nodes.
///
/// The modified weights `lambda_k = w_k / w(x_k)` are formed from the
/// Christoffel identity `lambda_k = 1 / sum_{j<Q} phi_j(x_k)^2`, which avoids
/// under- and overflow of `w_k` and `w(x_k)` separately. Then
/// `<f, phi_n> ~ sum_k lambda_k f(x_k) phi_n(x_k)`.
#[derive(Debug, Clone)]
pub struct QuadTable {
    spec: BasisSpec,
    n: usize,
    nodes: Vec<f64>,
    lambda: Vec<f64>,
    /// `values[k * (n+1) + j] = phi_j(nodes[k])`
    values: Vec<f64>,
}

impl QuadTable {
    pub fn new(spec: BasisSpec, n: usize, q: usize) -> Result<Self> {
        if spec.kind() == BasisKind::Mt {
            return Err(Error::Usage("MT coefficients come from mt_analysis".into()));
        }
        if q < 2 * n || q == 0 {
            return Err(Error::domain("q", q as f64, "q >= 2n"));
        }
        let width = n.max(q - 1) + 1;
        let eval = BasisEvaluator::new(spec, width)?;
        let rc = eval.rc.as_ref().expect("polynomial basis");
        let rule = gauss_quadrature(rc, q)?;
        let mut lambda = Vec::with_capacity(q);
        let mut values = Vec::with_capacity(q * (n + 1));
        let mut buf = vec![0.0; width];
        let full = BasisEvaluator {
            spec,
            n: width - 1,
            rc: eval.rc.clone(),
        };
        for &x in &rule.nodes {
            full.fill_real(x, &mut buf)?;
            let christoffel: f64 = buf[..q].iter().map(|v| v * v).sum();
            lambda.push(1.0 / christoffel);
            values.extend_from_slice(&buf[..=n]);
        }
        Ok(Self {
            spec,
            n,
            nodes: rule.nodes,
            lambda,
            values,
        })
    }

    pub fn spec(&self) -> BasisSpec {
        self.spec
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    /// `phi_j(nodes[k])`.
    pub fn value(&self, k: usize, j: usize) -> f64 {
        self.values[k * (self.n + 1) + j]
    }

    /// Coefficients from samples `f(nodes[k])`.
    pub fn analyze_values(&self, samples: &[Complex64]) -> Result<CoeffVec> {
        if samples.len() != self.nodes.len() {
            return Err(Error::Dimension {
                expected: self.nodes.len(),
                got: samples.len(),
            });
        }
        let mut out = CoeffVec::zeros(self.spec, self.n);
        for (k, s) in samples.iter().enumerate() {
            let w = *s * self.lambda[k];
            let row = &self.values[k * (self.n + 1)..(k + 1) * (self.n + 1)];
            for (o, v) in out.data.iter_mut().zip(row) {
                *o += w * *v;
            }
        }
        Ok(out)
    }

    pub fn analyze<F, T>(&self, f: F) -> Result<CoeffVec>
    where
        F: Fn(f64) -> T,
        T: Into<Complex64>,
    {
        let mut samples = Vec::with_capacity(self.nodes.len());
        for (index, &x) in self.nodes.iter().enumerate() {
            let v: Complex64 = f(x).into();
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::Evaluation { index, x });
            }
            samples.push(v);
        }
        self.analyze_values(&samples)
    }
}

/// `f_n = <f, phi_n>` for `0 <= n <= N` by a `q`-point Gauss rule.
pub fn quad_analysis<F, T>(spec: &BasisSpec, f: F, n: usize, q: usize) -> Result<CoeffVec>
where
    F: Fn(f64) -> T,
    T: Into<Complex64>,
{
    QuadTable::new(*spec, n, q)?.analyze(f)
}

/// `sum_n c_n phi_n(x)` at each point.
pub fn synthesis(c: &CoeffVec, points: &[f64]) -> Result<GridSamples> {
    let eval = BasisEvaluator::new(c.spec, c.order())?;
    let mut buf = vec![Complex64::zero(); eval.len()];
    let mut values = Vec::with_capacity(points.len());
    for &x in points {
        if !c.spec.contains(x) {
            return Err(Error::domain("x", x, "inside the basis domain"));
        }
        eval.fill(x, &mut buf)?;
        values.push(buf.iter().zip(&c.data).map(|(p, a)| p * a).sum());
    }
    Ok(GridSamples {
        points: points.to_vec(),
        values,
        domain: c.spec.domain(),
    })
}

//! Convergence studies: pointwise truncation errors, coefficient decay
//! rates, rational-function rate predictions for MT expansions and the
//! growth of differentiation-matrix powers.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::basis::{BasisKind, BasisSpec, IndexSet};
use crate::error::{Error, Result};
use crate::structmat::{leading_block_norm, op_norm_estimate_seeded, DiffMatrix};
use crate::transforms::{default_oversampling, mt_analysis, synthesis, CoeffVec, QuadTable};
use crate::wsystems::{laguerre_w_diff, ultra_w_diff};
#[allow(unused_imports)]
use num_traits::Float;

/// Gauss nodes used to project study functions onto polynomial W-systems.
pub const STUDY_QUAD_NODES: usize = 400;
/// MT angular samples used by pointwise studies.
pub const STUDY_MT_SAMPLES: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ErrorMetric {
    /// `|f(x) - f_N(x)|` at one point.
    Pointwise { x: f64 },
    /// Maximum of the pointwise error over a uniform grid.
    PointwiseMax { lo: f64, hi: f64, points: usize },
    /// `|f_n|` for one index.
    CoefficientModulus { index: i64 },
}

impl ErrorMetric {
    pub fn tag(&self) -> &'static str {
        match self {
            ErrorMetric::Pointwise { .. } => "pointwise",
            ErrorMetric::PointwiseMax { .. } => "pointwise_max",
            ErrorMetric::CoefficientModulus { .. } => "coeff_modulus",
        }
    }
}

/// One row of a convergence study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentRecord {
    pub basis: BasisKind,
    /// Truncation order `N`.
    pub order: usize,
    pub metric: ErrorMetric,
    pub value: f64,
}

/// Pointwise errors of a truncated expansion on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorCurve {
    pub basis: BasisKind,
    pub order: usize,
    pub grid: Vec<f64>,
    pub errors: Vec<f64>,
    pub max_error: f64,
}

impl ErrorCurve {
    /// One record per grid point followed by the maximum.
    pub fn records(&self) -> Vec<ExperimentRecord> {
        let mut out: Vec<ExperimentRecord> = self
            .grid
            .iter()
            .zip(&self.errors)
            .map(|(&x, &e)| ExperimentRecord {
                basis: self.basis,
                order: self.order,
                metric: ErrorMetric::Pointwise { x },
                value: e,
            })
            .collect();
        out.push(ExperimentRecord {
            basis: self.basis,
            order: self.order,
            metric: ErrorMetric::PointwiseMax {
                lo: self.grid[0],
                hi: self.grid[self.grid.len() - 1],
                points: self.grid.len(),
            },
            value: self.max_error,
        });
        out
    }
}

/// Plotting window of a pointwise study.
pub fn study_window(spec: &BasisSpec) -> (f64, f64) {
    match spec.kind() {
        BasisKind::UltrasphericalW { .. } => (-1.0, 1.0),
        BasisKind::LaguerreW { .. } => (0.0, 20.0),
        BasisKind::Mt | BasisKind::HermiteFn => (-10.0, 10.0),
    }
}

/// Truncation order holding `terms` basis functions.
pub fn order_for_terms(spec: &BasisSpec, terms: usize) -> Result<usize> {
    if terms == 0 {
        return Err(Error::domain("terms", 0.0, "terms >= 1"));
    }
    Ok(match spec.index_set() {
        IndexSet::OneSided => terms - 1,
        IndexSet::TwoSided => (terms - 1) / 2,
    })
}

/// Expansion coefficients by the transform matching the basis.
pub fn expand<F, T>(spec: &BasisSpec, f: F, order: usize) -> Result<CoeffVec>
where
    F: Fn(f64) -> T,
    T: Into<Complex64>,
{
    match spec.kind() {
        BasisKind::Mt => mt_analysis(f, order, Some(STUDY_MT_SAMPLES.max(default_oversampling(order)))),
        _ => QuadTable::new(*spec, order, STUDY_QUAD_NODES.max(2 * order + 2))?.analyze(f),
    }
}

/// Expands `f` with `terms` basis functions and records
/// `|f(x_j) - sum f_n phi_n(x_j)|` on `grid` uniform points of the study
/// window.
pub fn pointwise_error_study<F, T>(spec: &BasisSpec, f: F, terms: usize, grid: usize) -> Result<ErrorCurve>
where
    F: Fn(f64) -> T,
    T: Into<Complex64>,
{
    if grid < 100 {
        return Err(Error::domain("grid", grid as f64, "grid >= 100"));
    }
    let order = order_for_terms(spec, terms)?;
    let coeffs = expand(spec, &f, order)?;
    let (lo, hi) = study_window(spec);
    let points = crate::pde::uniform_grid(lo, hi, grid);
    let approx = synthesis(&coeffs, &points)?;
    let errors: Vec<f64> = points
        .iter()
        .zip(&approx.values)
        .map(|(&x, v)| (f(x).into() - v).norm())
        .collect();
    let max_error = errors.iter().copied().fold(0.0, f64::max);
    Ok(ErrorCurve {
        basis: spec.kind(),
        order,
        grid: points,
        errors,
        max_error,
    })
}

/// Predicted geometric decay rate of the MT coefficients of a rational
/// function with the given poles: with `sigma_k = (1 - 2i s_k)/(2 s_k - i)`,
/// the larger of `max |sigma_k|` over poles below the real axis and
/// `max 1/|sigma_k|` over poles above it.
pub fn mt_rational_rate(poles: &[Complex64]) -> Result<f64> {
    if poles.is_empty() {
        return Err(Error::domain("poles", 0.0, "at least one pole"));
    }
    let mut rate = 0.0f64;
    for s in poles {
        if s.im == 0.0 || !s.im.is_finite() || !s.re.is_finite() {
            return Err(Error::domain(
                "pole",
                s.re,
                "nonzero imaginary part (a real pole is not square integrable)",
            ));
        }
        let sigma = (Complex64::new(1.0, 0.0) - Complex64::new(0.0, 2.0) * s) / (2.0 * s - Complex64::new(0.0, 1.0));
        let r = if s.im < 0.0 { sigma.norm() } else { 1.0 / sigma.norm() };
        rate = rate.max(r);
    }
    Ok(rate)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayModel {
    /// `|f_n| ~ C rho^|n|`
    Exponential,
    /// `|f_n| ~ C |n|^-p`
    Algebraic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    pub model: DecayModel,
    /// `rho` for exponential fits, `p` for algebraic ones.
    pub parameter: f64,
    /// Inclusive `|n|` window.
    pub window: (usize, usize),
    pub points: usize,
    /// Root-mean-square residual of the log-linear fit.
    pub residual: f64,
}

/// Least-squares fit of `log|f_n|` against `|n|` or `log|n|` on
/// `lo <= |n| <= hi`, using both signs of `n` for two-sided bases. Zero
/// coefficients are skipped; at least five nonzero ones are required.
pub fn fit_decay(coeffs: &CoeffVec, model: DecayModel, window: (usize, usize)) -> Result<RateFit> {
    let (lo, hi) = window;
    if lo > hi || hi > coeffs.order() || (model == DecayModel::Algebraic && lo == 0) {
        return Err(Error::Fit(alloc::format!(
            "window [{lo}, {hi}] outside the usable range of order {}",
            coeffs.order()
        )));
    }
    let mut pts: Vec<(f64, f64)> = Vec::new();
    for (idx, c) in coeffs.iter() {
        let k = idx.unsigned_abs() as usize;
        let m = c.norm();
        if k < lo || k > hi || m == 0.0 {
            continue;
        }
        let x = match model {
            DecayModel::Exponential => k as f64,
            DecayModel::Algebraic => (k as f64).ln(),
        };
        pts.push((x, m.ln()));
    }
    if pts.len() < 5 {
        return Err(Error::Fit(alloc::format!(
            "{} nonzero coefficients in [{lo}, {hi}], need at least 5",
            pts.len()
        )));
    }
    let count = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / count;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / count;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit("window holds a single index".into()));
    }
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx;
    let intercept = my - slope * mx;
    let residual = (pts
        .iter()
        .map(|p| {
            let r = p.1 - intercept - slope * p.0;
            r * r
        })
        .sum::<f64>()
        / count)
        .sqrt();
    let parameter = match model {
        DecayModel::Exponential => slope.exp(),
        DecayModel::Algebraic => -slope,
    };
    Ok(RateFit {
        model,
        parameter,
        window,
        points: pts.len(),
        residual,
    })
}

/// One cell of an index-growth table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthRow {
    pub order: usize,
    pub power: usize,
    /// Power-iteration estimate of `||D_N^l||_2`.
    pub spectral_norm: f64,
    pub spectral_converged: bool,
    /// `||(D_N^l)[0..2, 0..2]||_2`, which stays bounded in `N` exactly when
    /// `D^l` is bounded.
    pub leading_block: f64,
}

/// Norms of `D_N^l` for every requested power and order; `seed` picks the
/// power-iteration start vectors.
pub fn index_growth_study(kind: BasisKind, powers: &[usize], orders: &[usize], seed: u64) -> Result<Vec<GrowthRow>> {
    let mut rows = Vec::with_capacity(powers.len() * orders.len());
    for &n in orders {
        let d: DiffMatrix = match kind {
            BasisKind::LaguerreW { alpha } => laguerre_w_diff(alpha, n)?.into(),
            BasisKind::UltrasphericalW { alpha } => ultra_w_diff(alpha, n)?.into(),
            other => {
                return Err(Error::Usage(alloc::format!(
                    "index growth is studied for W-systems, got {}",
                    other.tag()
                )))
            }
        };
        for &power in powers {
            let est = op_norm_estimate_seeded(&d, power, 100, seed)?;
            rows.push(GrowthRow {
                order: n,
                power,
                spectral_norm: est.value,
                spectral_converged: est.converged,
                leading_block: leading_block_norm(&d, power, 2)?,
            });
        }
    }
    Ok(rows)
}

/// Built-in real test functions addressable by name.
pub fn test_function(name: &str) -> Option<fn(f64) -> f64> {
    TEST_FUNCTIONS.iter().find(|(n, _, _)| *n == name).map(|(_, f, _)| *f)
}

fn sin_pi(x: f64) -> f64 {
    (core::f64::consts::PI * x).sin()
}

fn cos2_half_pi(x: f64) -> f64 {
    let c = (0.5 * core::f64::consts::PI * x).cos();
    c * c
}

fn runge1(x: f64) -> f64 {
    1.0 / (1.0 + x * x)
}

fn rational_quadratic(x: f64) -> f64 {
    1.0 / (1.0 + x + x * x)
}

fn cos_rational(x: f64) -> f64 {
    x.cos() / (1.0 + x + x * x)
}

fn laguerre_a(x: f64) -> f64 {
    x * (-x).exp() / (1.0 + x)
}

fn laguerre_b(x: f64) -> f64 {
    x * (-2.0 * x).exp() * x.sin()
}

fn gaussian(x: f64) -> f64 {
    (-x * x).exp()
}

/// `(name, function, description)`
pub const TEST_FUNCTIONS: &[(&str, fn(f64) -> f64, &str)] = &[
    ("sin_pi", sin_pi, "sin(pi x)"),
    ("cos2_half_pi", cos2_half_pi, "cos^2(pi x / 2)"),
    ("runge1", runge1, "1/(1+x^2)"),
    ("rational_quadratic", rational_quadratic, "1/(1+x+x^2)"),
    ("cos_rational", cos_rational, "cos x/(1+x+x^2)"),
    ("x_exp_over_1px", laguerre_a, "x e^-x/(1+x)"),
    ("x_exp2_sin", laguerre_b, "x e^-2x sin x"),
    ("gaussian", gaussian, "e^-x^2"),
];

/// The four reproduced pointwise-error figures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// `sin(pi x)`, ultraspherical
    Fig41a,
    /// `cos^2(pi x / 2)`, ultraspherical
    Fig41b,
    /// `x e^-x/(1+x)`, Laguerre
    Fig42a,
    /// `x e^-2x sin x`, Laguerre
    Fig42b,
}

pub const FIGURE_ALPHAS: [f64; 4] = [1.0, 2.0, 3.0, 4.0];
pub const FIGURE_TERMS: usize = 31;

impl Figure {
    pub const ALL: [Figure; 4] = [Figure::Fig41a, Figure::Fig41b, Figure::Fig42a, Figure::Fig42b];

    pub fn name(&self) -> &'static str {
        match self {
            Figure::Fig41a => "fig41a",
            Figure::Fig41b => "fig41b",
            Figure::Fig42a => "fig42a",
            Figure::Fig42b => "fig42b",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn function_name(&self) -> &'static str {
        match self {
            Figure::Fig41a => "sin_pi",
            Figure::Fig41b => "cos2_half_pi",
            Figure::Fig42a => "x_exp_over_1px",
            Figure::Fig42b => "x_exp2_sin",
        }
    }

    pub fn spec(&self, alpha: f64) -> Result<BasisSpec> {
        match self {
            Figure::Fig41a | Figure::Fig41b => BasisSpec::ultraspherical(alpha),
            Figure::Fig42a | Figure::Fig42b => BasisSpec::laguerre(alpha),
        }
    }

    pub fn grid_points(&self) -> usize {
        match self {
            Figure::Fig41a | Figure::Fig41b => 1001,
            Figure::Fig42a | Figure::Fig42b => 2000,
        }
    }
}

/// Error curves of one figure for `alpha = 1, 2, 3, 4`, sharing one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureData {
    pub figure: Figure,
    pub grid: Vec<f64>,
    pub curves: Vec<ErrorCurve>,
}

pub fn figure_data(figure: Figure) -> Result<FigureData> {
    let f = test_function(figure.function_name()).expect("figure functions are registered");
    let mut curves = Vec::with_capacity(FIGURE_ALPHAS.len());
    for alpha in FIGURE_ALPHAS {
        curves.push(pointwise_error_study(
            &figure.spec(alpha)?,
            f,
            FIGURE_TERMS,
            figure.grid_points(),
        )?);
    }
    Ok(FigureData {
        figure,
        grid: curves[0].grid.clone(),
        curves,
    })
}

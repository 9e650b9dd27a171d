//! Galerkin solvers for the diffusion equation on `[-1, 1]` and the linear
//! Schrödinger equation on the real line.
//!
//! Both semidiscrete systems are linear and autonomous, so each step applies
//! the exact flow `e^{dt A}` by Krylov projection; `D^2` is never formed.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::basis::{BasisKind, BasisSpec};
use crate::error::{Error, Result};
use crate::matfun::{krylov_apply, KrylovOptions, OperatorKind};
use crate::structmat::{DenseMatrix, DiffMatrix};
use crate::transforms::{
    default_oversampling, mt_analysis, parseval_norm, synthesis, CoeffVec, GridSamples, QuadTable,
};
use crate::tsystems::mt_eval;
use crate::wsystems::ultra_w_diff;

/// Slack allowed on `||u(t_{k+1})|| <= ||u(t_k)||`.
pub const DISSIPATIVITY_SLACK: f64 = 1e-12;
/// Allowed relative drift of `||u(t_k)||` in a unitary flow.
pub const UNITARITY_TOL: f64 = 1e-10;
/// Largest tolerated Hermitian defect of the assembled potential matrix.
pub const SYMMETRY_TOL: f64 = 1e-6;

/// `u_t = u_xx` on `(-1, 1)` with zero Dirichlet data, discretized in the
/// ultraspherical W-system.
pub struct DiffusionProblem<'a> {
    pub alpha: f64,
    pub n: usize,
    pub u0: &'a dyn Fn(f64) -> f64,
    pub t_final: f64,
    pub steps: usize,
    /// Gauss nodes for the initial projection; `4(n+1)` when unset.
    pub quad_nodes: Option<usize>,
    pub output_grid: Vec<f64>,
    pub krylov: KrylovOptions,
}

impl<'a> DiffusionProblem<'a> {
    pub fn new(alpha: f64, n: usize, u0: &'a dyn Fn(f64) -> f64, t_final: f64, steps: usize) -> Self {
        Self {
            alpha,
            n,
            u0,
            t_final,
            steps,
            quad_nodes: None,
            output_grid: uniform_grid(-1.0, 1.0, 201),
            krylov: KrylovOptions::default(),
        }
    }
}

/// `i u_t = -u_xx/2 + V u` on the real line in a T-system.
pub struct SchrodingerProblem<'a> {
    pub basis: BasisSpec,
    pub n: usize,
    pub potential: &'a dyn Fn(f64) -> f64,
    pub u0: &'a dyn Fn(f64) -> Complex64,
    pub t_final: f64,
    pub steps: usize,
    /// Hermite: Gauss nodes, `2n + 2` when unset. MT: FFT length, the
    /// transform default when unset.
    pub quad_nodes: Option<usize>,
    pub output_grid: Vec<f64>,
    pub krylov: KrylovOptions,
}

impl<'a> SchrodingerProblem<'a> {
    pub fn new(
        basis: BasisSpec,
        n: usize,
        potential: &'a dyn Fn(f64) -> f64,
        u0: &'a dyn Fn(f64) -> Complex64,
        t_final: f64,
        steps: usize,
    ) -> Self {
        Self {
            basis,
            n,
            potential,
            u0,
            t_final,
            steps,
            quad_nodes: None,
            output_grid: uniform_grid(-10.0, 10.0, 201),
            krylov: KrylovOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub times: Vec<f64>,
    pub norms: Vec<f64>,
    /// Coefficients at every recorded time, `steps + 1` entries.
    pub coefficients: Vec<CoeffVec>,
    pub final_samples: GridSamples,
    /// Every Krylov application met its tolerance.
    pub krylov_converged: bool,
    /// Largest entry of `P - P^*` before symmetrization (Schrödinger only).
    pub symmetrization_defect: f64,
}

impl SolveReport {
    pub fn final_coefficients(&self) -> &CoeffVec {
        self.coefficients.last().expect("history holds the initial state")
    }

    pub fn norm_ratio(&self) -> f64 {
        let first = self.norms[0];
        if first == 0.0 {
            0.0
        } else {
            self.norms[self.norms.len() - 1] / first
        }
    }
}

/// `count` equispaced points on `[a, b]`.
pub fn uniform_grid(a: f64, b: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![0.5 * (a + b)],
        _ => (0..count)
            .map(|j| a + (b - a) * j as f64 / (count - 1) as f64)
            .collect(),
    }
}

fn check_time(t_final: f64, steps: usize) -> Result<f64> {
    if !(t_final > 0.0) || !t_final.is_finite() {
        return Err(Error::domain("t_final", t_final, "t_final > 0"));
    }
    if steps < 1 {
        return Err(Error::domain("steps", steps as f64, "steps >= 1"));
    }
    Ok(t_final / steps as f64)
}

/// Advances `u_hat <- e^{dt D^2} u_hat`; the recorded norms never increase.
pub fn solve_diffusion(p: &DiffusionProblem<'_>) -> Result<SolveReport> {
    let dt = check_time(p.t_final, p.steps)?;
    let spec = BasisSpec::ultraspherical(p.alpha)?;
    let d = DiffMatrix::from(ultra_w_diff(p.alpha, p.n)?);
    let table = QuadTable::new(spec, p.n, p.quad_nodes.unwrap_or(4 * (p.n + 1)))?;
    let u0 = p.u0;
    let mut coeffs = table.analyze(|x| u0(x))?;
    let mut report = History::new(coeffs.clone());
    for step in 1..=p.steps {
        let out = krylov_apply(
            |v| d.galerkin_square(v),
            OperatorKind::Hermitian,
            Complex64::new(dt, 0.0),
            coeffs.data(),
            &p.krylov,
        )?;
        report.converged &= out.converged;
        coeffs = CoeffVec::new(spec, p.n, out.value)?;
        let before = report.last_norm();
        let after = parseval_norm(&coeffs);
        if after > before * (1.0 + DISSIPATIVITY_SLACK) + f64::MIN_POSITIVE {
            return Err(Error::Dissipativity { step, before, after });
        }
        report.push(step as f64 * dt, coeffs.clone());
    }
    report.finish(&p.output_grid, 0.0)
}

/// Advances `u_hat <- e^{-i dt E} u_hat` with
/// `E = -(1/2) (D^T)^2 + P`, `P[m][j] = <V phi_j, phi_m>`.
///
/// `D^T` maps the coefficients of `u` to those of `u'`.
pub fn solve_schrodinger(p: &SchrodingerProblem<'_>) -> Result<SolveReport> {
    let dt = check_time(p.t_final, p.steps)?;
    let spec = p.basis;
    if !matches!(spec.kind(), BasisKind::Mt | BasisKind::HermiteFn) {
        return Err(Error::Usage(alloc::format!(
            "the Schrödinger solver needs a T-system basis (mt or hermite), got {}",
            spec.kind().tag()
        )));
    }
    let dt_coeff = spec.diff_matrix(p.n)?.transpose();
    let len = spec.len_for(p.n);
    let v = p.potential;
    let u0 = p.u0;
    let (mut potential, mut coeffs) = match spec.kind() {
        BasisKind::HermiteFn => {
            let table = QuadTable::new(spec, p.n, p.quad_nodes.unwrap_or(2 * p.n + 2))?;
            let nodes = table.nodes();
            let vk: Vec<f64> = nodes.iter().map(|&x| v(x)).collect();
            if let Some(index) = vk.iter().position(|x| !x.is_finite()) {
                return Err(Error::Evaluation { index, x: nodes[index] });
            }
            let mut pm = DenseMatrix::zeros(len, len);
            for (k, _) in nodes.iter().enumerate() {
                let w = table.lambda()[k] * vk[k];
                for m in 0..len {
                    let a = w * table.value(k, m);
                    for j in 0..len {
                        pm[(m, j)] += Complex64::new(a * table.value(k, j), 0.0);
                    }
                }
            }
            (pm, table.analyze(|x| u0(x))?)
        }
        _ => {
            let m = p.quad_nodes.unwrap_or_else(|| default_oversampling(p.n));
            let mut pm = DenseMatrix::zeros(len, len);
            for j in 0..len {
                let idx = j as i64 - p.n as i64;
                let col = mt_analysis(|x| mt_eval(idx, x) * v(x), p.n, Some(m))?;
                for (r, c) in col.data().iter().enumerate() {
                    pm[(r, j)] = *c;
                }
            }
            (pm, mt_analysis(|x| u0(x), p.n, Some(m))?)
        }
    };
    let mut defect = 0.0f64;
    for i in 0..len {
        for j in 0..len {
            defect = defect.max((potential[(i, j)] - potential[(j, i)].conj()).norm());
        }
    }
    if defect > SYMMETRY_TOL {
        return Err(Error::Aliasing {
            defect,
            tolerance: SYMMETRY_TOL,
        });
    }
    let sym = DenseMatrix::from_fn(len, len, |i, j| 0.5 * (potential[(i, j)] + potential[(j, i)].conj()));
    potential = sym;
    let energy = |x: &[Complex64]| -> Result<Vec<Complex64>> {
        let mut y = dt_coeff.galerkin_square(x)?;
        let px = potential.matvec(x)?;
        for (a, b) in y.iter_mut().zip(px) {
            *a = -0.5 * *a + b;
        }
        Ok(y)
    };
    let mut report = History::new(coeffs.clone());
    let initial = report.last_norm();
    for step in 1..=p.steps {
        let out = krylov_apply(
            energy,
            OperatorKind::Hermitian,
            Complex64::new(0.0, -dt),
            coeffs.data(),
            &p.krylov,
        )?;
        report.converged &= out.converged;
        coeffs = CoeffVec::new(spec, p.n, out.value)?;
        let drift = (parseval_norm(&coeffs) - initial).abs();
        if drift > UNITARITY_TOL * initial.max(1.0) {
            return Err(Error::Unitarity { step, drift });
        }
        report.push(step as f64 * dt, coeffs.clone());
    }
    report.finish(&p.output_grid, defect)
}

struct History {
    times: Vec<f64>,
    norms: Vec<f64>,
    coefficients: Vec<CoeffVec>,
    converged: bool,
}

impl History {
    fn new(initial: CoeffVec) -> Self {
        Self {
            times: vec![0.0],
            norms: vec![parseval_norm(&initial)],
            coefficients: vec![initial],
            converged: true,
        }
    }

    fn last_norm(&self) -> f64 {
        self.norms[self.norms.len() - 1]
    }

    fn push(&mut self, t: f64, c: CoeffVec) {
        self.times.push(t);
        self.norms.push(parseval_norm(&c));
        self.coefficients.push(c);
    }

    fn finish(self, grid: &[f64], defect: f64) -> Result<SolveReport> {
        let last = self.coefficients.last().expect("non-empty history");
        let final_samples = synthesis(last, grid)?;
        Ok(SolveReport {
            times: self.times,
            norms: self.norms,
            coefficients: self.coefficients,
            final_samples,
            krylov_converged: self.converged,
            symmetrization_defect: defect,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tsystems::hermite_fn_eval;
    use core::f64::consts::PI;

    #[test]
    fn zero_initial_data_stays_zero() {
        let zero = |_: f64| 0.0;
        let r = solve_diffusion(&DiffusionProblem::new(2.0, 16, &zero, 0.1, 5)).unwrap();
        assert!(r.norms.iter().all(|&v| v == 0.0));
        assert_eq!(r.norms.len(), 6);
    }

    #[test]
    fn heat_decay_of_sine() {
        let u0 = |x: f64| (PI * x).sin();
        let r = solve_diffusion(&DiffusionProblem::new(2.0, 48, &u0, 0.1, 10)).unwrap();
        assert!((r.norm_ratio() - (-PI * PI / 10.0).exp()).abs() < 1e-5);
        assert!(r.norms.windows(2).all(|w| w[1] <= w[0] * (1.0 + DISSIPATIVITY_SLACK)));
    }

    #[test]
    fn harmonic_ground_state_phase() {
        let v = |x: f64| 0.5 * x * x;
        let u0 = |x: f64| Complex64::new(hermite_fn_eval(0, x), 0.0);
        let r = solve_schrodinger(&SchrodingerProblem::new(BasisSpec::hermite(), 32, &v, &u0, 1.0, 4)).unwrap();
        let c = r.final_coefficients();
        let want = Complex64::new(0.0, -0.5).exp();
        assert!((c.get(0) - want).norm() < 1e-6);
        assert!((1..=32).all(|k| c.get(k).norm() < 1e-6));
    }

    #[test]
    fn schrodinger_rejects_w_systems() {
        let v = |_: f64| 0.0;
        let u0 = |_: f64| Complex64::new(0.0, 0.0);
        let p = SchrodingerProblem::new(BasisSpec::laguerre(2.0).unwrap(), 8, &v, &u0, 1.0, 1);
        assert!(matches!(solve_schrodinger(&p), Err(Error::Usage(_))));
    }

    #[test]
    fn time_validation() {
        let u0 = |x: f64| x;
        assert!(solve_diffusion(&DiffusionProblem::new(2.0, 8, &u0, 0.0, 1)).is_err());
        assert!(solve_diffusion(&DiffusionProblem::new(2.0, 8, &u0, 1.0, 0)).is_err());
        assert!(solve_diffusion(&DiffusionProblem::new(1.0, 8, &u0, 1.0, 1)).is_err());
    }
}

use std::fmt;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use orthospec_core::experiments::{
    figure_data, index_growth_study, test_function, Figure, FIGURE_TERMS, TEST_FUNCTIONS,
};
use orthospec_core::pde::{solve_diffusion, solve_schrodinger, DiffusionProblem, SchrodingerProblem, SolveReport};
use orthospec_core::transforms::{mt_analysis, parseval_norm, quad_analysis, BasisEvaluator};
use orthospec_core::tsystems::mt_eval;
use orthospec_core::{BasisKind, BasisSpec, CoeffVec, Complex64, Error};

use crate::args::{
    BasisArg, Cli, Command, DiffusionArgs, ExpandArgs, FigureArg, FigureArgs, IndexArgs, InitialArg, PdeCommand,
    PotentialArg, SchrodingerArgs, TBasisArg, WBasisArg,
};
use crate::output::{num, resolve, write_csv};

/// Bad flags or combinations; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(UsageError(msg.into()).into())
}

pub fn exit_status(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Usage(_) | Error::Domain { .. } | Error::Length { .. }) => 2,
        _ => 1,
    }
}

/// Listing is often piped into `head`; a closed pipe is not an error.
fn list_functions() -> Result<()> {
    let mut out = io::stdout().lock();
    let listed = TEST_FUNCTIONS
        .iter()
        .try_for_each(|(name, _, description)| writeln!(out, "{name:<20} {description}"))
        .and_then(|()| writeln!(out, "{:<20} basis function with index K of the chosen system", "phiK"));
    match listed {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Expand(a) => expand(&cli.out_dir, a),
        Command::Figures(a) => figures(&cli.out_dir, a),
        Command::Pde(PdeCommand::Diffusion(a)) => diffusion(&cli.out_dir, a),
        Command::Pde(PdeCommand::Schrodinger(a)) => schrodinger(&cli.out_dir, a),
        Command::Index(a) => index(&cli.out_dir, a),
        Command::Functions => list_functions(),
    }
}

fn registry_listing() -> String {
    let mut names: Vec<&str> = TEST_FUNCTIONS.iter().map(|t| t.0).collect();
    names.push("phiK");
    names.join(", ")
}

fn basis_spec(basis: BasisArg, alpha: Option<f64>) -> Result<BasisSpec> {
    let spec = match (basis, alpha) {
        (BasisArg::Mt, None) => BasisSpec::mt(),
        (BasisArg::Hermite, None) => BasisSpec::hermite(),
        (BasisArg::Laguerre, Some(a)) => BasisSpec::laguerre(a)?,
        (BasisArg::Ultra, Some(a)) => BasisSpec::ultraspherical(a)?,
        (BasisArg::Mt | BasisArg::Hermite, Some(_)) => return usage("--alpha applies to laguerre and ultra only"),
        (BasisArg::Laguerre | BasisArg::Ultra, None) => return usage("--alpha is required for laguerre and ultra"),
    };
    Ok(spec)
}

/// Real-line or W-system function selected by name.
enum Target {
    Real(fn(f64) -> f64),
    Basis(i64),
}

fn lookup(name: &str) -> Result<Target> {
    if let Some(f) = test_function(name) {
        return Ok(Target::Real(f));
    }
    if let Some(k) = name.strip_prefix("phi").and_then(|s| s.parse::<i64>().ok()) {
        return Ok(Target::Basis(k));
    }
    usage(format!("unknown function `{name}`; available: {}", registry_listing()))
}

fn expand(out_dir: &Path, a: &ExpandArgs) -> Result<()> {
    let spec = basis_spec(a.basis, a.alpha)?;
    let target = lookup(&a.function)?;
    let coeffs = match (target, spec.kind()) {
        (Target::Real(f), BasisKind::Mt) => mt_analysis(f, a.n, a.quad_nodes)?,
        (Target::Real(f), _) => quad_analysis(&spec, f, a.n, a.quad_nodes.unwrap_or(default_quad(a.n)))?,
        (Target::Basis(k), BasisKind::Mt) => mt_analysis(|x| mt_eval(k, x), a.n, a.quad_nodes)?,
        (Target::Basis(k), _) => {
            if k < 0 {
                return usage("negative basis indices exist only for mt");
            }
            let k = k as usize;
            let eval = BasisEvaluator::new(spec, k)?;
            let f = move |x: f64| {
                let mut v = vec![0.0; k + 1];
                eval.fill_real(x, &mut v).map(|_| v[k]).unwrap_or(f64::NAN)
            };
            quad_analysis(&spec, f, a.n, a.quad_nodes.unwrap_or(default_quad(a.n.max(k))))?
        }
    };
    if let Some(level) = coeffs.aliasing {
        eprintln!("warning: integrand at the grid edge is {level:.3e} of its peak; f may decay too slowly for an alias-free transform");
    }
    let name = format!("expand_{}_{}_n{}.csv", spec.kind().tag(), a.function, a.n);
    let path = resolve(out_dir, a.output.as_deref(), &name);
    write_coefficients(&path, &coeffs)?;
    println!("parseval_norm {}", num(parseval_norm(&coeffs)));
    println!("wrote {}", path.display());
    Ok(())
}

fn default_quad(n: usize) -> usize {
    (4 * (n + 1)).max(64)
}

fn write_coefficients(path: &Path, c: &CoeffVec) -> Result<()> {
    let rows = c.iter().map(|(n, v)| vec![n.to_string(), num(v.re), num(v.im)]);
    write_csv(path, &["n", "re", "im"], rows, None)
}

fn figures(out_dir: &Path, a: &FigureArgs) -> Result<()> {
    let which: Vec<Figure> = match a.which {
        FigureArg::Fig41a => vec![Figure::Fig41a],
        FigureArg::Fig41b => vec![Figure::Fig41b],
        FigureArg::Fig42a => vec![Figure::Fig42a],
        FigureArg::Fig42b => vec![Figure::Fig42b],
        FigureArg::All => Figure::ALL.to_vec(),
    };
    if which.len() > 1 && a.output.is_some() {
        return usage("--output names a single file; use --out-dir with `all`");
    }
    for fig in which {
        let data = figure_data(fig)?;
        let path = resolve(out_dir, a.output.as_deref(), &format!("{}.csv", fig.name()));
        let meta = (!a.no_meta).then(|| {
            let stamp = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            format!(
                "orthospec {} figure={} fn={} terms={} generated_unix={stamp}",
                env!("CARGO_PKG_VERSION"),
                fig.name(),
                fig.function_name(),
                FIGURE_TERMS
            )
        });
        let rows = (0..data.grid.len()).map(|j| {
            let mut row = vec![num(data.grid[j])];
            row.extend(data.curves.iter().map(|c| num(c.errors[j])));
            row
        });
        write_csv(
            &path,
            &["x", "err_alpha1", "err_alpha2", "err_alpha3", "err_alpha4"],
            rows,
            meta.as_deref(),
        )?;
        let maxima: Vec<String> = data.curves.iter().map(|c| format!("{:.3e}", c.max_error)).collect();
        println!("{} max errors (alpha=1..4): {}", fig.name(), maxima.join(" "));
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn pde_paths(out_dir: &Path, explicit: Option<&Path>, stem: &str) -> (PathBuf, PathBuf) {
    let prefix = resolve(out_dir, explicit, stem);
    let with = |suffix: &str| {
        let mut s = prefix.clone().into_os_string();
        s.push(suffix);
        PathBuf::from(s)
    };
    (with("_norms.csv"), with("_final.csv"))
}

fn write_report(out_dir: &Path, explicit: Option<&Path>, stem: &str, report: &SolveReport) -> Result<()> {
    let (norms, finals) = pde_paths(out_dir, explicit, stem);
    let rows = report
        .times
        .iter()
        .zip(&report.norms)
        .enumerate()
        .map(|(k, (t, v))| vec![k.to_string(), num(*t), num(*v)]);
    write_csv(&norms, &["step", "t", "norm"], rows, None)?;
    let s = &report.final_samples;
    let rows = s
        .points
        .iter()
        .zip(&s.values)
        .map(|(x, u)| vec![num(*x), num(u.re), num(u.im)]);
    write_csv(&finals, &["x", "re_u", "im_u"], rows, None)?;
    if !report.krylov_converged {
        eprintln!("warning: a Krylov step stopped at its dimension cap before meeting the tolerance");
    }
    println!("norm_ratio {}", num(report.norm_ratio()));
    println!("wrote {}", norms.display());
    println!("wrote {}", finals.display());
    Ok(())
}

fn diffusion(out_dir: &Path, a: &DiffusionArgs) -> Result<()> {
    let f = match lookup(&a.function)? {
        Target::Real(f) => f,
        Target::Basis(_) => return usage("diffusion initial data must come from the function registry"),
    };
    let u0 = move |x: f64| f(x);
    let report = solve_diffusion(&DiffusionProblem::new(a.alpha, a.n, &u0, a.t_final, a.steps))
        .context("diffusion solve failed")?;
    write_report(out_dir, a.output.as_deref(), "diffusion", &report)
}

fn harmonic(x: f64) -> f64 {
    0.5 * x * x
}

fn bump(x: f64) -> f64 {
    1.0 / (1.0 + x * x)
}

fn free(_: f64) -> f64 {
    0.0
}

fn packet(x: f64) -> Complex64 {
    Complex64::new((-(x - 1.0).powi(2)).exp(), 0.0) * Complex64::new(0.0, 0.5 * x).exp()
}

fn ground(x: f64) -> Complex64 {
    Complex64::new(std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp(), 0.0)
}

fn schrodinger(out_dir: &Path, a: &SchrodingerArgs) -> Result<()> {
    let spec = match a.basis {
        TBasisArg::Mt => BasisSpec::mt(),
        TBasisArg::Hermite => BasisSpec::hermite(),
    };
    let potential: fn(f64) -> f64 = match (a.basis, a.potential) {
        (TBasisArg::Mt, PotentialArg::Harmonic) => {
            return usage(
                "the harmonic potential is unbounded and has no Galerkin matrix in the mt system; use hermite",
            )
        }
        (_, PotentialArg::Harmonic) => harmonic,
        (_, PotentialArg::Bump) => bump,
        (_, PotentialArg::Free) => free,
    };
    let u0: fn(f64) -> Complex64 = match a.initial {
        InitialArg::Packet => packet,
        InitialArg::Ground => ground,
    };
    let report = solve_schrodinger(&SchrodingerProblem::new(spec, a.n, &potential, &u0, a.t_final, a.steps))
        .context("Schrodinger solve failed")?;
    write_report(out_dir, a.output.as_deref(), "schrodinger", &report)
}

fn index(out_dir: &Path, a: &IndexArgs) -> Result<()> {
    let kind = match a.basis {
        WBasisArg::Laguerre => BasisKind::LaguerreW { alpha: a.alpha },
        WBasisArg::Ultra => BasisKind::UltrasphericalW { alpha: a.alpha },
    };
    BasisSpec::new(kind)?;
    if a.powers.is_empty() || a.sizes.is_empty() {
        bail!(UsageError("--powers and --sizes must be non-empty".into()));
    }
    let rows = index_growth_study(kind, &a.powers, &a.sizes, a.seed)?;
    let path = resolve(
        out_dir,
        a.output.as_deref(),
        &format!("index_{}_alpha{}.csv", kind.tag(), a.alpha),
    );
    let records = rows.iter().map(|r| {
        vec![
            r.order.to_string(),
            r.power.to_string(),
            num(r.spectral_norm),
            r.spectral_converged.to_string(),
            num(r.leading_block),
        ]
    });
    write_csv(
        &path,
        &["n", "power", "spectral_norm", "spectral_converged", "leading_block"],
        records,
        None,
    )?;
    for r in &rows {
        println!(
            "N={:<5} l={} spectral={:.4e} leading_block={:.4e}",
            r.order, r.power, r.spectral_norm, r.leading_block
        );
    }
    println!("wrote {}", path.display());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_status_separates_usage_from_numerical_failures() {
        assert_eq!(exit_status(&UsageError("x".into()).into()), 2);
        assert_eq!(
            exit_status(
                &Error::Domain {
                    name: "alpha",
                    value: 0.5,
                    requirement: "alpha > 1"
                }
                .into()
            ),
            2
        );
        assert_eq!(exit_status(&Error::Singular { index: 3 }.into()), 1);
        assert_eq!(exit_status(&Error::Unitarity { step: 1, drift: 1.0 }.into()), 1);
        assert_eq!(exit_status(&anyhow::anyhow!("io")), 1);
    }

    #[test]
    fn lookup_accepts_registry_and_basis_indices() {
        assert!(matches!(lookup("gaussian"), Ok(Target::Real(_))));
        assert!(matches!(lookup("phi-3"), Ok(Target::Basis(-3))));
        assert!(lookup("phi").is_err());
    }
}

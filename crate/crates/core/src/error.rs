use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("parameter `{name}` = {value} is outside its admissible range ({requirement})")]
    Domain {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },
    #[error("requested {requested} terms but only {available} are available")]
    Length { requested: usize, available: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("tridiagonal eigenvalue iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("numerically singular pivot at index {index}")]
    Singular { index: usize },
    #[error("{0}")]
    Usage(String),
    #[error("function evaluated to a non-finite value at node {index} (x = {x})")]
    Evaluation { index: usize, x: f64 },
    #[error(
        "resolvent solve failed at contour node {node}; the contour is too close to the spectrum, increase the radius"
    )]
    ContourTooClose { node: usize },
    #[error("dissipativity violated at step {step}: norm grew from {before:e} to {after:e}")]
    Dissipativity { step: usize, before: f64, after: f64 },
    #[error("unitarity violated at step {step}: norm drifted by {drift:e}")]
    Unitarity { step: usize, drift: f64 },
    #[error("potential matrix symmetrization defect {defect:e} exceeds {tolerance:e}; increase the quadrature size")]
    Aliasing { defect: f64, tolerance: f64 },
    #[error("decay fit failed: {0}")]
    Fit(String),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, requirement: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            requirement,
        }
    }
}

//! Tagged description of one orthonormal system.

use crate::error::{Error, Result};
use crate::structmat::DiffMatrix;

/// Which orthonormal system a coefficient vector or matrix refers to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BasisKind {
    /// Malmquist–Takenaka functions on the real line, indexed over all integers.
    Mt,
    /// Hermite functions on the real line.
    HermiteFn,
    /// Laguerre W-system `sqrt(x^a e^-x) p_n(x)` on the half line.
    LaguerreW { alpha: f64 },
    /// Ultraspherical W-system `(1-x^2)^(a/2) p_n(x)` on `[-1, 1]`.
    UltrasphericalW { alpha: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    RealLine,
    HalfLine,
    Interval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexSet {
    /// Indices `-N..=N`.
    TwoSided,
    /// Indices `0..=N`.
    OneSided,
}

impl BasisKind {
    pub fn alpha(&self) -> Option<f64> {
        match *self {
            BasisKind::LaguerreW { alpha } | BasisKind::UltrasphericalW { alpha } => Some(alpha),
            _ => None,
        }
    }

    /// Short lowercase tag used in CSV output.
    pub fn tag(&self) -> &'static str {
        match self {
            BasisKind::Mt => "mt",
            BasisKind::HermiteFn => "hermite",
            BasisKind::LaguerreW { .. } => "laguerre",
            BasisKind::UltrasphericalW { .. } => "ultra",
        }
    }
}

/// A validated basis choice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisSpec {
    kind: BasisKind,
}

impl BasisSpec {
    pub fn new(kind: BasisKind) -> Result<Self> {
        if let Some(alpha) = kind.alpha() {
            if !(alpha > -1.0) || !alpha.is_finite() {
                return Err(Error::domain("alpha", alpha, "alpha > -1"));
            }
        }
        Ok(BasisSpec { kind })
    }

    pub fn mt() -> Self {
        BasisSpec { kind: BasisKind::Mt }
    }

    pub fn hermite() -> Self {
        BasisSpec {
            kind: BasisKind::HermiteFn,
        }
    }

    pub fn laguerre(alpha: f64) -> Result<Self> {
        Self::new(BasisKind::LaguerreW { alpha })
    }

    pub fn ultraspherical(alpha: f64) -> Result<Self> {
        Self::new(BasisKind::UltrasphericalW { alpha })
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn domain(&self) -> Domain {
        match self.kind {
            BasisKind::Mt | BasisKind::HermiteFn => Domain::RealLine,
            BasisKind::LaguerreW { .. } => Domain::HalfLine,
            BasisKind::UltrasphericalW { .. } => Domain::Interval,
        }
    }

    pub fn index_set(&self) -> IndexSet {
        match self.kind {
            BasisKind::Mt => IndexSet::TwoSided,
            _ => IndexSet::OneSided,
        }
    }

    /// Number of coefficients in a truncation of order `n`.
    pub fn len_for(&self, n: usize) -> usize {
        match self.index_set() {
            IndexSet::TwoSided => 2 * n + 1,
            IndexSet::OneSided => n + 1,
        }
    }

    /// Lowest index of a truncation of order `n`.
    pub fn offset_for(&self, n: usize) -> i64 {
        match self.index_set() {
            IndexSet::TwoSided => -(n as i64),
            IndexSet::OneSided => 0,
        }
    }

    /// Differentiation matrix of the truncation of order `n`.
    pub fn diff_matrix(&self, n: usize) -> Result<DiffMatrix> {
        match self.kind {
            BasisKind::Mt | BasisKind::HermiteFn => crate::tsystems::t_diff_matrix(self, n).map(Into::into),
            BasisKind::LaguerreW { alpha } => crate::wsystems::laguerre_w_diff(alpha, n).map(Into::into),
            BasisKind::UltrasphericalW { alpha } => crate::wsystems::ultra_w_diff(alpha, n).map(Into::into),
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        if !x.is_finite() {
            return false;
        }
        match self.domain() {
            Domain::RealLine => true,
            Domain::HalfLine => x >= 0.0,
            Domain::Interval => (-1.0..=1.0).contains(&x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_sets_follow_kind() {
        assert_eq!(BasisSpec::mt().index_set(), IndexSet::TwoSided);
        assert_eq!(BasisSpec::hermite().index_set(), IndexSet::OneSided);
        assert_eq!(BasisSpec::mt().len_for(4), 9);
        assert_eq!(BasisSpec::mt().offset_for(4), -4);
        assert_eq!(BasisSpec::laguerre(2.0).unwrap().len_for(4), 5);
    }

    #[test]
    fn alpha_must_exceed_minus_one() {
        assert!(BasisSpec::laguerre(-1.0).is_err());
        assert!(BasisSpec::ultraspherical(f64::NAN).is_err());
        assert!(BasisSpec::ultraspherical(-0.5).is_ok());
    }
}

//! Orthonormal-basis spectral methods for time-dependent PDEs on the real line,
//! the half line and the interval.
//!
//! The crate is `no_std` and only needs `alloc`. It provides
//!
//! * three-term recurrences, stable evaluation and Gauss quadrature for the
//!   classical orthonormal polynomial families ([`orthopoly`]);
//! * T-systems (Malmquist–Takenaka and Hermite functions) with tridiagonal
//!   skew-Hermitian differentiation matrices ([`tsystems`]);
//! * W-systems (Laguerre and ultraspherical) with rank-1 semiseparable
//!   skew-symmetric differentiation matrices ([`wsystems`]);
//! * O(N) structured matrix-vector products, shifted solves and norm
//!   estimates ([`structmat`]);
//! * the analysis/synthesis maps between functions and coefficients,
//!   including the FFT-based Malmquist–Takenaka transform ([`transforms`]);
//! * `f(tD)x` by Krylov projection and by the resolvent contour integral
//!   ([`matfun`]);
//! * Galerkin solvers for the diffusion and linear Schrödinger equations
//!   ([`pde`]) and the convergence studies in [`experiments`].
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod basis;
pub mod error;
pub mod experiments;
pub mod matfun;
pub mod orthopoly;
pub mod pde;
pub mod structmat;
pub mod transforms;
pub mod tsystems;
pub mod wsystems;

mod rng;

pub use basis::{BasisKind, BasisSpec, Domain, IndexSet};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use structmat::{DiffMatrix, SemiseparableRank1, TridiagonalSkew};
pub use transforms::{CoeffVec, GridSamples};

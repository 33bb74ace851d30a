//! Large-N covariances of power-trace moments for one-cut β-ensembles.
//!
//! For an ensemble whose equilibrium density is supported on a single interval
//! `[a, b]`, the limits `N² Cov(N⁻¹Tr Xᵏ, N⁻¹Tr Xˡ) → α_{k,l}/β` depend only on
//! the two edges. This crate computes the `α_{k,l}` several independent ways:
//!
//! * [`genfun`]: the two-variable generating function, evaluated pointwise and
//!   expanded in exact rational arithmetic ([`series`]);
//! * [`closedform`]: Gaussian/Wishart/Jacobi closed forms and the shift formula
//!   that reduces any support to `[-2, 2]`;
//! * [`density`]: Gauss–Chebyshev quadrature of the principal-value integral
//!   representation, plus equilibrium densities;
//! * [`mcsim`]: finite-N Monte Carlo with tridiagonal/bidiagonal samplers and a
//!   Metropolis log-gas chain;
//! * [`planarcount`]: brute-force enumeration of connected planar pairings of
//!   two circles.
//!
//! [`cli`] wires everything into the `onecut` binary and [`verify`] runs the
//! cross-checks as a self-test.

#![forbid(unsafe_code)]

pub mod cli;
pub mod closedform;
pub mod density;
mod error;
pub mod genfun;
pub mod mcsim;
pub mod planarcount;
pub mod reference;
pub mod series;
pub mod verify;

pub use closedform::{EnsembleKind, EnsembleSpec};
pub use error::{Error, Result};
pub use genfun::{CovarianceTable, Provenance, SupportInterval};
pub use series::{BivariateSeries, ExactScalar};

//! Numerical toolkit for Mittag-Leffler analysis: special functions of
//! Mittag-Leffler type, fractional-calculus operators, generalized grey
//! Brownian motion, the time-fractional heat kernel and its Feynman-Kac
//! Monte Carlo counterpart, and local-time estimation.
//!
//! Module map:
//! - [`specfun`]: Gamma, Mittag-Leffler, M-Wright, Fox-H
//! - [`fraccalc`]: Riemann-Liouville / Caputo / Marchaud operators, the
//!   M^H operator and the α-inner product
//! - [`ggbm`]: covariance structure, exact sampling and S-transforms of
//!   generalized grey Brownian motion B^{α,β}
//! - [`heatkernel`]: the Green's function of the time-fractional heat
//!   equation in three cross-validating representations
//! - [`montecarlo`]: Feynman-Kac estimator, Donsker-delta truncation,
//!   local times
//! - [`selftest`]: the cross-representation and identity check suite

pub mod error;
pub mod fraccalc;
pub mod ggbm;
pub mod heatkernel;
pub mod montecarlo;
pub(crate) mod quad;
pub mod selftest;
pub mod specfun;
pub mod table;

pub use error::{Error, Result};
pub use ggbm::FracParams;
pub use specfun::{SeriesResult, DEFAULT_TOL};

/// Default RNG seed used by the CLI when none is supplied.
pub const DEFAULT_SEED: u64 = 1846;

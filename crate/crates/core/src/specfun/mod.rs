//! Special functions: Gamma, Mittag-Leffler, M-Wright and Fox-H.
//!
//! Everything downstream (fractional operators, grey Brownian motion, the
//! time-fractional heat kernel, Monte Carlo) is built on this module. All
//! operations are pure and take an explicit tolerance; `DEFAULT_TOL` is
//! 1e-10.

mod fox_h;
mod gamma;
mod m_wright;
mod mittag_leffler;

pub use fox_h::{exp_spec, fox_h, heat_kernel_spec, m_wright_spec, HFunctionSpec};
pub use gamma::{gamma, recip_gamma};
pub use m_wright::{m_wright, m_wright_laplace_residual};
pub use mittag_leffler::{
    mittag_leffler, mittag_leffler2, ml_derivative, ml_integral_identity_residual, SeriesResult,
    DEFAULT_TOL,
};

pub(crate) use gamma::{gamma_unchecked, sin_pi};
pub(crate) use m_wright::{m_wright_support, m_wright_value};
pub(crate) use mittag_leffler::{ml_e_neg, Kahan};

/// Inversion of an H-function parameter set (free function face of
/// [`HFunctionSpec::invert`]).
pub fn fox_h_invert(spec: &HFunctionSpec) -> crate::error::Result<HFunctionSpec> {
    spec.invert()
}

/// Power shift of an H-function parameter set (free function face of
/// [`HFunctionSpec::power_shift`]).
pub fn fox_h_power_shift(spec: &HFunctionSpec, sigma: f64) -> crate::error::Result<HFunctionSpec> {
    spec.power_shift(sigma)
}

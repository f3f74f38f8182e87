//! The M-Wright (Mainardi) function M_β on [0, ∞).
//!
//! M_β(x) = Σ_{n≥0} (-x)^n / (n! Γ(-βn + 1 - β)) is the density of the
//! mixing variable in the subordination picture: its Laplace transform is
//! E_β(-z) and its moments are ∫ r^δ M_β(r) dr = Γ(δ+1)/Γ(βδ+1).
//!
//! The alternating series self-destructs for large x; past the point where
//! it loses more than ~8 digits to cancellation the saddle-point form
//!
//!   M_β(x) ≈ a x^{(2β-1)/(2(1-β))} exp(-b x^{1/(1-β)}),
//!   a = β^{(2β-1)/(2(1-β))} / √(2π(1-β)),  b = (1-β) β^{β/(1-β)},
//!
//! takes over. Both reduce to exp(-x²/4)/√π at β = 1/2.

use super::gamma::recip_gamma;
use super::mittag_leffler::{Kahan, SeriesResult, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::quad;

const EPS: f64 = f64::EPSILON;

/// Series + noise estimate: (value, abs error from cancellation/truncation).
fn series_with_noise(beta: f64, x: f64) -> (f64, f64, usize) {
    let mut acc = Kahan::default();
    let mut xp = 1.0; // (-x)^n / n!
    let mut max_term: f64 = 0.0;
    let mut below = 0;
    let mut used = 0;
    for n in 0..20_000usize {
        let term = xp * recip_gamma(-beta * (n as f64 + 1.0) + 1.0);
        if !term.is_finite() {
            break;
        }
        acc.add(term);
        max_term = max_term.max(term.abs());
        used = n + 1;
        if term.abs() < 1e-18 * acc.value().abs().max(1e-30) && n > 4 {
            below += 1;
            if below >= 3 {
                break;
            }
        } else {
            below = 0;
        }
        xp *= -x / (n as f64 + 1.0);
    }
    let noise = EPS * max_term * (used as f64).sqrt().max(1.0);
    (acc.value(), noise, used)
}

/// Saddle-point value and its (crude, conservative) absolute error bound.
fn asymptotic(beta: f64, x: f64) -> (f64, f64) {
    let om = 1.0 - beta;
    let expo = om * beta.powf(beta / om) * x.powf(1.0 / om);
    let a = beta.powf((2.0 * beta - 1.0) / (2.0 * om)) / (2.0 * std::f64::consts::PI * om).sqrt();
    let v = a * x.powf((2.0 * beta - 1.0) / (2.0 * om)) * (-expo).exp();
    let rel = (1.0 / expo.max(1.0)).min(0.5);
    (v, v * rel)
}

/// Internal non-failing evaluation: best value, abs error bound, terms.
pub(crate) fn m_wright_full(beta: f64, x: f64) -> (f64, f64, usize) {
    if x == 0.0 {
        return (recip_gamma(1.0 - beta), EPS, 1);
    }
    let (sv, snoise, used) = series_with_noise(beta, x);
    let om = 1.0 - beta;
    let expo = om * beta.powf(beta / om) * x.powf(1.0 / om);
    if expo > 5.0 {
        let (av, aerr) = asymptotic(beta, x);
        if aerr < snoise {
            return (av, aerr, used);
        }
    }
    // clamp tiny negative round-off
    let v = if sv < 0.0 && sv.abs() <= snoise.max(1e-300) {
        0.0
    } else {
        sv
    };
    (v, snoise, used)
}

/// Internal non-failing evaluation: best value plus absolute error bound.
pub(crate) fn m_wright_value(beta: f64, x: f64) -> (f64, f64) {
    let (v, e, _) = m_wright_full(beta, x);
    (v, e)
}

/// M-Wright function M_β(x) for 0 < β < 1, x ≥ 0.
///
/// Accuracy loss is reported once the error estimate exceeds `tol` both in
/// absolute terms and relative to the value (M_β decays to zero, so a pure
/// relative criterion would be unusable in the far tail).
pub fn m_wright(beta: f64, x: f64, tol: f64) -> Result<SeriesResult<f64>> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "m_wright requires 0 < beta < 1, got {beta}"
        )));
    }
    if !(x >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "m_wright requires x >= 0, got {x}"
        )));
    }
    let tol = if tol > 0.0 { tol } else { DEFAULT_TOL };
    let (value, err, used) = m_wright_full(beta, x);
    let res = SeriesResult {
        value,
        terms_used: used.max(1),
        error_estimate: err,
    };
    if err > tol && err > tol * value.abs() {
        return Err(Error::AccuracyLoss {
            value: num_complex::Complex64::new(value, 0.0),
            estimate: err,
            tol,
        });
    }
    Ok(res)
}

/// Upper integration limit where M_β has decayed below ~1e-20.
pub(crate) fn m_wright_support(beta: f64) -> f64 {
    let om = 1.0 - beta;
    let b = om * beta.powf(beta / om);
    (46.0 / b).powf(om)
}

/// |∫₀^∞ M_β(r) e^{-rz} dr − E_β(−z)| for Re(z) ≥ 0 (test hook).
pub fn m_wright_laplace_residual(beta: f64, z: num_complex::Complex64, tol: f64) -> Result<f64> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "laplace residual requires 0 < beta < 1, got {beta}"
        )));
    }
    if z.re < 0.0 {
        return Err(Error::InvalidParameter(
            "laplace residual requires Re(z) >= 0".into(),
        ));
    }
    let tol = if tol > 0.0 { tol } else { DEFAULT_TOL };
    let upper = m_wright_support(beta);
    let quad_tol = (tol * 1e-2).max(1e-12);
    let re = quad::integrate_adaptive(
        &|r: f64| m_wright_value(beta, r).0 * (-r * z.re).exp() * (r * z.im).cos(),
        0.0,
        upper,
        quad_tol,
    )?;
    let im = if z.im == 0.0 {
        0.0
    } else {
        quad::integrate_adaptive(
            &|r: f64| -m_wright_value(beta, r).0 * (-r * z.re).exp() * (r * z.im).sin(),
            0.0,
            upper,
            quad_tol,
        )?
    };
    let ml = crate::specfun::mittag_leffler(beta, -z, tol)?.value;
    Ok((num_complex::Complex64::new(re, im) - ml).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn value_at_zero() {
        for beta in [0.25, 0.5, 0.75, 0.9] {
            let got = m_wright(beta, 0.0, 1e-12).unwrap().value;
            let want = 1.0 / crate::specfun::gamma(1.0 - beta).unwrap();
            assert!((got - want).abs() < 1e-14, "beta={beta}");
        }
    }

    #[test]
    fn half_order_closed_form() {
        // M_{1/2}(x) = exp(-x²/4)/√π
        for x in [0.0, 0.3, 1.0, 2.7, 5.0, 9.0] {
            let got = m_wright(0.5, x, 1e-10).unwrap().value;
            let want = (-x * x / 4.0).exp() / std::f64::consts::PI.sqrt();
            assert!(
                (got - want).abs() < 1e-10 * want.max(1e-6),
                "x={x}: {got} vs {want}"
            );
        }
        let got = m_wright(0.5, 1.0, 1e-10).unwrap().value;
        assert!((got - 0.4393912894677224).abs() < 1e-10);
    }

    #[test]
    fn frozen_series_references() {
        let got = m_wright(0.7, 0.3, 1e-12).unwrap().value;
        assert!((got - 0.41769048460521694115).abs() < 1e-12);
        let got = m_wright(0.25, 1.0, 1e-12).unwrap().value;
        assert!((got - 0.38333541761001791499).abs() < 1e-12);
    }

    #[test]
    fn normalization_by_quadrature() {
        // ∫ M_β = 1 (Laplace identity at z = 0)
        let beta = 0.7;
        let upper = m_wright_support(beta);
        let got = quad::integrate_adaptive(&|r| m_wright_value(beta, r).0, 0.0, upper, 1e-11)
            .unwrap();
        assert!((got - 1.0).abs() < 1e-8, "norm = {got}");
    }

    #[test]
    fn moment_law_by_quadrature() {
        // ∫ r^δ M_β = Γ(δ+1)/Γ(βδ+1), δ ∈ {-1/2, 1, 2}; settles the
        // r^{-1/2} moment constant: Γ(1/2)/Γ(1-β/2) = √π/Γ(1-β/2).
        for beta in [0.5, 0.75] {
            for delta in [-0.5, 1.0, 2.0] {
                let upper = m_wright_support(beta);
                let got = quad::integrate_adaptive(
                    &|r: f64| {
                        if r <= 0.0 {
                            0.0
                        } else {
                            r.powf(delta) * m_wright_value(beta, r).0
                        }
                    },
                    0.0,
                    upper,
                    1e-9,
                )
                .unwrap();
                let want = crate::specfun::gamma(delta + 1.0).unwrap()
                    / crate::specfun::gamma(beta * delta + 1.0).unwrap();
                assert!(
                    (got - want).abs() < 1e-6,
                    "beta={beta} delta={delta}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn laplace_identity_grid() {
        for beta in [0.25, 0.5, 0.75, 0.9] {
            for z in [0.0, 0.5, 1.0, 2.0, 5.0] {
                let r = m_wright_laplace_residual(beta, Complex64::new(z, 0.0), 1e-10).unwrap();
                assert!(r < 1e-6, "beta={beta} z={z}: residual {r}");
            }
        }
    }

    #[test]
    fn nonnegative_with_clamping() {
        for beta in [0.25, 0.6, 0.9] {
            for i in 0..60 {
                let x = i as f64 * 0.25;
                let (v, _) = m_wright_value(beta, x);
                assert!(v >= 0.0, "beta={beta} x={x}: {v}");
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(m_wright(1.0, 1.0, 1e-10).is_err());
        assert!(m_wright(0.5, -1.0, 1e-10).is_err());
        assert!(m_wright_laplace_residual(0.5, Complex64::new(-1.0, 0.0), 1e-10).is_err());
    }
}

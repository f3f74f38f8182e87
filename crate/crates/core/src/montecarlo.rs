//! Feynman-Kac Monte Carlo for the time-fractional heat equation,
//! Donsker-delta truncation limits, and ggBm local times.

use crate::error::{Error, Result};
use crate::fraccalc::SampledFunction;
use crate::ggbm::{draw_tau, grey_gram, sample_paths, FracParams};
use crate::heatkernel::{ml_cos_transform, KernelProfile};
use crate::quad;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// A Monte Carlo estimate, reproducible from (seed, n_samples).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MCEstimate {
    pub value: f64,
    pub stderr: f64,
    pub n_samples: usize,
    pub seed: u64,
}

impl MCEstimate {
    pub fn to_json(&self, params: FracParams) -> serde_json::Value {
        serde_json::json!({
            "value": self.value,
            "stderr": self.stderr,
            "n_samples": self.n_samples,
            "seed": self.seed,
            "params": { "alpha": params.alpha, "beta": params.beta },
        })
    }
}

fn welford(values: impl Iterator<Item = f64>) -> (f64, f64, usize) {
    let mut n = 0usize;
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for v in values {
        n += 1;
        let d = v - mean;
        mean += d / n as f64;
        m2 += d * (v - mean);
    }
    let stderr = if n > 1 {
        (m2 / ((n - 1) as f64) / n as f64).sqrt()
    } else {
        0.0
    };
    (mean, stderr, n)
}

const FK_STREAM: u64 = u64::MAX;

/// u(t,x) = E u0(x + B_t^{α,β}) estimated by the exact marginal sampler:
/// B_t = √τ t^{α/2} Z. `u0` is linearly interpolated, zero outside its grid.
pub fn fk_solution(
    u0: &SampledFunction,
    t: f64,
    x: f64,
    params: FracParams,
    n_samples: usize,
    seed: u64,
) -> Result<MCEstimate> {
    if !(t > 0.0) || n_samples == 0 {
        return Err(Error::InvalidParameter(
            "fk_solution requires t > 0 and n_samples >= 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(FK_STREAM);
    let scale = t.powf(params.alpha / 2.0);
    let (value, stderr, n) = welford((0..n_samples).map(|_| {
        let tau = draw_tau(&mut rng, params.beta);
        let z: f64 = rng.sample(StandardNormal);
        u0.eval_linear(x + tau.sqrt() * scale * z)
    }));
    Ok(MCEstimate {
        value,
        stderr,
        n_samples: n,
        seed,
    })
}

/// Truncated Donsker-delta expectation
/// (1/2π) ∫_{−n}^{n} e^{−ixa} E_β(−½x²tᵅ) dx; converges to the heat kernel
/// K(t, a, 0) as n → ∞, with an O(1/n) tail.
pub fn donsker_truncation(n_cut: f64, a: f64, t: f64, params: FracParams, tol: f64) -> Result<f64> {
    if !(t > 0.0) || n_cut < 0.0 {
        return Err(Error::InvalidParameter(
            "donsker_truncation requires t > 0 and n_cut >= 0".into(),
        ));
    }
    ml_cos_transform(a.abs(), t.powf(params.alpha), params.beta, Some(n_cut), tol)
}

/// E L_{α,β}(a, T) = ∫₀ᵀ K(t, a, 0) dt by quadrature; the substitution
/// t = u^{2/(2−α)} absorbs the t^{−α/2} endpoint singularity exactly, so
/// the integrand becomes (2/(2−α)) Φ_β(|a| u^{−α/(2−α)}) with Φ_β the
/// reduced kernel profile. At a=0 this collapses to the closed form
/// (1/(√2 Γ(1−β/2))) (2/(2−α)) T^{1−α/2}.
pub fn local_time_expectation(a: f64, big_t: f64, params: FracParams, tol: f64) -> Result<f64> {
    if !(big_t > 0.0) {
        return Err(Error::InvalidParameter(
            "local_time_expectation requires T > 0".into(),
        ));
    }
    let alpha = params.alpha;
    let p = 2.0 / (2.0 - alpha);
    let profile = KernelProfile::build(params.beta, tol.min(1e-9))?;
    let a = a.abs();
    let u_end = big_t.powf(1.0 / p);
    let f = |u: f64| {
        if u <= 0.0 {
            if a == 0.0 {
                profile.eval(0.0)
            } else {
                0.0
            }
        } else {
            profile.eval(a * u.powf(-p * alpha / 2.0))
        }
    };
    let integral = quad::integrate_adaptive(&f, 0.0, u_end, tol.max(1e-10) * 0.1)?;
    Ok(p * integral)
}

/// Occupation-density estimator of the local time at level `a` up to `T`:
/// paths on a uniform grid, boxcar window of half-width `bandwidth`,
/// (Δt/2ε)·#{steps with |X−a| < ε} averaged over paths. The t=0 node is
/// excluded, giving an O(Δt^{1−α/2}) bias from the density blow-up there.
pub fn local_time_mc(
    a: f64,
    big_t: f64,
    params: FracParams,
    n_paths: usize,
    n_steps: usize,
    bandwidth: f64,
    seed: u64,
) -> Result<MCEstimate> {
    if !(big_t > 0.0) || n_paths == 0 {
        return Err(Error::InvalidParameter(
            "local_time_mc requires T > 0 and n_paths >= 1".into(),
        ));
    }
    if !(bandwidth > 0.0) {
        return Err(Error::InvalidParameter("bandwidth must be positive".into()));
    }
    if n_steps < 50 {
        return Err(Error::InvalidParameter(
            "local_time_mc requires n_steps >= 50".into(),
        ));
    }
    let dt = big_t / n_steps as f64;
    let times: Vec<f64> = (1..=n_steps).map(|i| i as f64 * dt).collect();
    let gram = grey_gram(&times, params.alpha)?;
    let ensemble = sample_paths(&gram, params.beta, n_paths, seed)?;
    let per_path = (0..n_paths).map(|p| {
        let hits = ensemble
            .path(p)
            .iter()
            .filter(|&&v| (v - a).abs() < bandwidth)
            .count();
        dt * hits as f64 / (2.0 * bandwidth)
    });
    let (value, stderr, n) = welford(per_path);
    Ok(MCEstimate {
        value,
        stderr,
        n_samples: n,
        seed,
    })
}

//! Generalized grey Brownian motion B^{α,β}: covariance structure, finite
//! dimensional laws, exact sampling and S-transforms.
//!
//! Everything is pinned to the characteristic-function convention
//!
//!   E exp(iθ·X) = E_β(-½ θᵀA θ),    A_ij = ½(t_iᵅ + t_jᵅ − |t_i−t_j|ᵅ),
//!
//! realized exactly by the scale mixture X = √τ L z with L Lᵀ = A, z
//! standard normal and τ the M_β-distributed mixing variable. This gives
//! covariance A/Γ(β+1) and even moments (2n)!/(Γ(βn+1)2ⁿ) ⟨·⟩ⁿ; β = 1 is
//! the Gaussian (fBm) limit with τ ≡ 1.

use crate::error::{Error, Result};
use crate::fraccalc::{m_h_grid, SampledFunction, Side};
use crate::specfun::{gamma, mittag_leffler, mittag_leffler2};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, Open01, StandardNormal};
use rayon::prelude::*;
use std::f64::consts::PI;
use std::path::Path;

/// The order pair (α, β) of generalized grey Brownian motion.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FracParams {
    pub alpha: f64,
    pub beta: f64,
}

impl FracParams {
    /// α ∈ (0,2) strictly, β ∈ (0,1] (β = 1 is the Gaussian limit).
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 2.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must be in (0,2), got {alpha}"
            )));
        }
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "beta must be in (0,1], got {beta}"
            )));
        }
        Ok(FracParams { alpha, beta })
    }
}

/// Grey Gram matrix A_ij = ½(t_iᵅ + t_jᵅ − |t_i−t_j|ᵅ) on strictly
/// increasing positive times, validated positive semidefinite.
#[derive(Debug, Clone)]
pub struct GreyGram {
    pub times: Vec<f64>,
    pub alpha: f64,
    matrix: Vec<f64>,
}

impl GreyGram {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.matrix[i * self.len() + j]
    }

    pub fn quadratic_form(&self, theta: &[f64]) -> Result<f64> {
        let n = self.len();
        if theta.len() != n {
            return Err(Error::GridMismatch(format!(
                "theta has {} entries, gram is {}x{}",
                theta.len(),
                n,
                n
            )));
        }
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += theta[i] * self.matrix[i * n + j] * theta[j];
            }
        }
        Ok(s)
    }

    /// Lower-triangular Cholesky factor; on failure retries once with
    /// 1e-12·trace/n jitter on the diagonal.
    pub fn cholesky(&self) -> Result<Vec<f64>> {
        let n = self.len();
        if let Some(l) = cholesky_flat(&self.matrix, n) {
            return Ok(l);
        }
        let trace: f64 = (0..n).map(|i| self.matrix[i * n + i]).sum();
        let jitter = 1e-12 * trace / n as f64;
        let mut m = self.matrix.clone();
        for i in 0..n {
            m[i * n + i] += jitter;
        }
        cholesky_flat(&m, n).ok_or(Error::NotPositiveSemidefinite)
    }
}

fn cholesky_flat(a: &[f64], n: usize) -> Option<Vec<f64>> {
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if s <= 0.0 {
                    return None;
                }
                l[i * n + i] = s.sqrt();
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    Some(l)
}

/// Build the grey Gram matrix for strictly increasing positive times.
pub fn grey_gram(times: &[f64], alpha: f64) -> Result<GreyGram> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must be in (0,2), got {alpha}"
        )));
    }
    if times.is_empty() {
        return Err(Error::InvalidParameter("times must be nonempty".into()));
    }
    if times[0] <= 0.0 || times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "times must be strictly increasing and positive".into(),
        ));
    }
    let n = times.len();
    let mut matrix = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            matrix[i * n + j] = 0.5
                * (times[i].powf(alpha) + times[j].powf(alpha)
                    - (times[i] - times[j]).abs().powf(alpha));
        }
    }
    let gram = GreyGram {
        times: times.to_vec(),
        alpha,
        matrix,
    };
    gram.cholesky()?; // PSD validation up to the jitter retry
    Ok(gram)
}

/// Covariance E(B_t B_s) = (tᵅ + sᵅ − |t−s|ᵅ) / (2Γ(β+1)).
pub fn covariance(t: f64, s: f64, params: FracParams) -> Result<f64> {
    if t < 0.0 || s < 0.0 {
        return Err(Error::InvalidParameter(
            "covariance requires t, s >= 0".into(),
        ));
    }
    let a = params.alpha;
    Ok((t.powf(a) + s.powf(a) - (t - s).abs().powf(a)) / (2.0 * gamma(params.beta + 1.0)?))
}

/// Characteristic function E exp(iθ·X) = E_β(-½ θᵀAθ) of the finite
/// dimensional law on the gram's times.
pub fn char_fn(theta: &[f64], gram: &GreyGram, beta: f64) -> Result<f64> {
    let qf = gram.quadratic_form(theta)?;
    Ok(mittag_leffler(beta, Complex64::new(-0.5 * qf, 0.0), 1e-12)?.re())
}

/// One draw of the M_β mixing variable τ = S^{-β}, with S one-sided
/// β-stable via Kanter's uniform/exponential representation.
pub(crate) fn draw_tau<R: Rng>(rng: &mut R, beta: f64) -> f64 {
    if beta >= 1.0 {
        return 1.0;
    }
    let u: f64 = rng.sample(Open01);
    let e: f64 = rng.sample(Exp1);
    let e = e.max(1e-300);
    let om = 1.0 - beta;
    let ln_a = (beta / om) * (beta * PI * u).sin().ln() + (om * PI * u).sin().ln()
        - (PI * u).sin().ln() / om;
    (om * (e.ln() - ln_a)).exp()
}

/// i.i.d. draws with density M_β on (0,∞); β = 1 gives the constant 1.
pub fn sample_tau(beta: f64, n: usize, seed: u64) -> Result<Vec<f64>> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "beta must be in (0,1], got {beta}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0);
    Ok((0..n).map(|_| draw_tau(&mut rng, beta)).collect())
}

/// Sampled paths of B^{α,β} on the gram's time grid.
#[derive(Debug, Clone)]
pub struct PathEnsemble {
    pub times: Vec<f64>,
    pub alpha: f64,
    pub beta: f64,
    pub n_paths: usize,
    /// row-major n_paths × n_times
    pub samples: Vec<f64>,
    pub taus: Vec<f64>,
    pub seed: u64,
}

impl PathEnsemble {
    pub fn n_times(&self) -> usize {
        self.times.len()
    }

    pub fn path(&self, p: usize) -> &[f64] {
        let n = self.n_times();
        &self.samples[p * n..(p + 1) * n]
    }

    /// Values of one time column across paths.
    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n_paths).map(|p| self.path(p)[j]).collect()
    }

    /// CSV with header `t_1,...,t_k`, one row per path, plus a JSON
    /// sidecar `<stem>.meta.json` with {alpha, beta, seed, n_paths, times}.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        use std::io::Write;
        let n = self.n_times();
        let header: Vec<String> = (1..=n).map(|j| format!("t_{j}")).collect();
        let mut out = header.join(",");
        out.push('\n');
        for p in 0..self.n_paths {
            let row: Vec<String> = self.path(p).iter().map(|v| crate::table::fmt_f64(*v)).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        let mut file = std::fs::File::create(path)?;
        file.write_all(out.as_bytes())?;
        let meta = serde_json::json!({
            "alpha": self.alpha,
            "beta": self.beta,
            "seed": self.seed,
            "n_paths": self.n_paths,
            "times": self.times,
        });
        crate::table::write_sidecar(path, &meta)?;
        Ok(())
    }
}

/// Exact sampler: X = √τ L z, one τ per path, per-path RNG streams
/// derived from (seed, path index) so batches parallelize without
/// changing the output.
pub fn sample_paths(
    gram: &GreyGram,
    beta: f64,
    n_paths: usize,
    seed: u64,
) -> Result<PathEnsemble> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "beta must be in (0,1], got {beta}"
        )));
    }
    if n_paths == 0 {
        return Err(Error::InvalidParameter("n_paths must be positive".into()));
    }
    let n = gram.len();
    let l = gram.cholesky()?;
    let taus = sample_tau(beta, n_paths, seed)?;
    let mut samples = vec![0.0; n_paths * n];
    samples
        .par_chunks_mut(n)
        .enumerate()
        .for_each(|(p, row)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(1 + p as u64);
            let st = taus[p].sqrt();
            let z: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
            for i in 0..n {
                let mut acc = 0.0;
                for (j, zj) in z.iter().enumerate().take(i + 1) {
                    acc += l[i * n + j] * zj;
                }
                row[i] = st * acc;
            }
        });
    Ok(PathEnsemble {
        times: gram.times.clone(),
        alpha: gram.alpha,
        beta,
        n_paths,
        samples,
        taus,
        seed,
    })
}

/// One-point marginal density of B_t: the subordination mixture
/// ∫ M_β(τ) N(x; 0, τ tᵅ) dτ, i.e. the heat kernel at offset x.
pub fn marginal_density(x: f64, t: f64, params: FracParams) -> Result<f64> {
    let q = crate::heatkernel::KernelQuery::new(t, x, 0.0, params)?;
    crate::heatkernel::kernel_subordination(&q, 1e-9)
}

/// Even moment E B_t^{2n} = (2n)!/(Γ(βn+1) 2ⁿ) t^{αn}; odd moments vanish.
pub fn even_moment(n: usize, t: f64, params: FracParams) -> Result<f64> {
    if n == 0 || t <= 0.0 {
        return Err(Error::InvalidParameter(
            "even_moment requires n >= 1 and t > 0".into(),
        ));
    }
    let two_n_fact = gamma(2.0 * n as f64 + 1.0)?;
    Ok(two_n_fact / (gamma(params.beta * n as f64 + 1.0)? * 2f64.powi(n as i32))
        * t.powf(params.alpha * n as f64))
}

/// Largest argument x ∈ [0, 5] before E_β(x) gets within 1e-8 of zero;
/// E_β is positive increasing there, so the scan saturates at 5.
pub fn epsilon_beta(beta: f64) -> f64 {
    let mut prev = 1.0;
    for i in 0..=1000 {
        let x = 5.0 * i as f64 / 1000.0;
        let v = mittag_leffler(beta, Complex64::new(x, 0.0), 1e-8)
            .map(|r| r.re())
            .unwrap_or(prev);
        if v.abs() < 1e-8 {
            return x;
        }
        prev = v;
    }
    5.0
}

fn ml_ratio(beta: f64, half_norm: f64) -> Result<f64> {
    let den = mittag_leffler(beta, Complex64::new(half_norm, 0.0), 1e-12)?.re();
    if den.abs() < 1e-8 {
        return Err(Error::DomainViolation(
            "E_beta denominator within 1e-8 of zero".into(),
        ));
    }
    let num = mittag_leffler2(beta, beta, Complex64::new(half_norm, 0.0), 1e-12)?.re();
    Ok(num / (beta * den))
}

fn check_s_transform_domain(phi: &SampledFunction, t: f64, params: FracParams) -> Result<f64> {
    if t <= 0.0 {
        return Err(Error::InvalidParameter("t must be positive".into()));
    }
    if phi.start > 0.0 || phi.end() < t {
        return Err(Error::GridMismatch(format!(
            "test function grid [{}, {}] must cover [0, {t}]",
            phi.start,
            phi.end()
        )));
    }
    let norm_sq = SampledFunction::new(
        phi.start,
        phi.step,
        phi.values.iter().map(|v| v * v).collect(),
    )?
    .trapezoid();
    let bound = 0.8 * epsilon_beta(params.beta);
    if norm_sq.abs() > bound {
        return Err(Error::DomainViolation(format!(
            "|<phi,phi>| = {norm_sq:.4} exceeds 80% of the E_beta domain bound {bound:.4}"
        )));
    }
    Ok(norm_sq)
}

/// S-transform of B_t at a real test function:
/// (E_{β,β}(½⟨φ,φ⟩)/(β E_β(½⟨φ,φ⟩))) ∫₀ᵗ (M^{α/2}_+ φ)(x) dx.
pub fn s_transform_ggbm(phi: &SampledFunction, t: f64, params: FracParams) -> Result<f64> {
    let norm_sq = check_s_transform_domain(phi, t, params)?;
    let ratio = ml_ratio(params.beta, 0.5 * norm_sq)?;
    let m_phi = m_h_grid(params.alpha / 2.0, phi, Side::Left)?;
    let integral = m_phi.integral_to(t)? - m_phi.integral_to(0.0)?;
    Ok(ratio * integral)
}

/// S-transform of the noise N_t (time derivative of B_t):
/// (M^{α/2}_+ φ)(t) · E_{β,β}(½⟨φ,φ⟩)/(β E_β(½⟨φ,φ⟩)).
pub fn s_transform_noise(phi: &SampledFunction, t: f64, params: FracParams) -> Result<f64> {
    let norm_sq = check_s_transform_domain(phi, t, params)?;
    let ratio = ml_ratio(params.beta, 0.5 * norm_sq)?;
    let m_phi = m_h_grid(params.alpha / 2.0, phi, Side::Left)?;
    Ok(ratio * m_phi.eval_linear(t))
}

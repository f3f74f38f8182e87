//! The cross-representation and identity check suite.
//!
//! Ten checks, each with pinned tolerances, runnable from the CLI
//! (`selftest` subcommand) and from the acceptance integration tests.
//! Every check returns a one-line detail string; failures carry the
//! measured numbers.

use crate::error::Result as CoreResult;
use crate::fraccalc::{self, SampledFunction, Side};
use crate::ggbm::{self, FracParams};
use crate::heatkernel::{self, KernelQuery};
use crate::montecarlo;
use crate::quad;
use crate::specfun;
use num_complex::Complex64;

type CheckResult = std::result::Result<String, String>;

pub struct Check {
    pub name: &'static str,
    pub run: fn() -> CheckResult,
}

/// All acceptance checks in execution order.
pub fn checks() -> Vec<Check> {
    vec![
        Check { name: "c01-gaussian-collapse", run: c01_gaussian_collapse },
        Check { name: "c02-special-function-identities", run: c02_special_functions },
        Check { name: "c03-ml-integral-identity", run: c03_ml_integral_identity },
        Check { name: "c04-kernel-three-representations", run: c04_kernel_three_way },
        Check { name: "c05-sampler-soundness", run: c05_sampler_soundness },
        Check { name: "c06-feynman-kac", run: c06_feynman_kac },
        Check { name: "c07-fractional-calculus", run: c07_fractional_calculus },
        Check { name: "c08-s-transform-differentiability", run: c08_s_transform },
        Check { name: "c09-local-times", run: c09_local_times },
        Check { name: "c10-donsker-truncation", run: c10_donsker },
    ]
}

pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Run all checks (optionally filtered by substring), collecting outcomes.
pub fn run(filter: Option<&str>) -> Vec<CheckOutcome> {
    checks()
        .into_iter()
        .filter(|c| filter.map_or(true, |f| c.name.contains(f)))
        .map(|c| match (c.run)() {
            Ok(detail) => CheckOutcome {
                name: c.name,
                passed: true,
                detail,
            },
            Err(detail) => CheckOutcome {
                name: c.name,
                passed: false,
                detail,
            },
        })
        .collect()
}

fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
    (m, (var / n).sqrt())
}

fn params(alpha: f64, beta: f64) -> FracParams {
    FracParams::new(alpha, beta).unwrap()
}

fn fail_if(failures: Vec<String>, ok_detail: String) -> CheckResult {
    if failures.is_empty() {
        Ok(ok_detail)
    } else {
        Err(failures.join("; "))
    }
}

fn gaussian_u0() -> SampledFunction {
    SampledFunction::from_fn(-12.0, 0.02, 1201, |x| (-x * x).exp()).unwrap()
}

// 1. With β=1, α=1 the kernel is the Gaussian heat kernel to 1e-10 and the
//    sampler marginals pass variance/kurtosis moment checks at 3 stderr.
fn c01_gaussian_collapse() -> CheckResult {
    let mut failures = Vec::new();
    let p = params(1.0, 1.0);
    let mut worst: f64 = 0.0;
    for t in [0.3, 1.0, 2.0] {
        for a in [0.0, 0.7, 1.5] {
            let q = KernelQuery::new(t, a, 0.0, p).map_err(|e| e.to_string())?;
            let got = heatkernel::kernel_quadrature(&q, 1e-12).map_err(|e| e.to_string())?;
            let want = (-a * a / (2.0 * t)).exp() / (2.0 * std::f64::consts::PI * t).sqrt();
            worst = worst.max((got - want).abs());
        }
    }
    if worst > 1e-10 {
        failures.push(format!("kernel vs Gaussian max abs {worst:.3e} > 1e-10"));
    }
    let gram = ggbm::grey_gram(&[1.0], 1.0).map_err(|e| e.to_string())?;
    let e = ggbm::sample_paths(&gram, 1.0, 100_000, 1846).map_err(|e| e.to_string())?;
    let xs = e.column(0);
    let sq: Vec<f64> = xs.iter().map(|x| x * x).collect();
    let (var, var_se) = mean_stderr(&sq);
    if (var - 1.0).abs() > 3.0 * var_se {
        failures.push(format!("variance {var:.4} vs 1 (3se = {:.1e})", 3.0 * var_se));
    }
    let quads: Vec<f64> = xs.iter().map(|x| x.powi(4)).collect();
    let (m4, _) = mean_stderr(&quads);
    let kurt = m4 / (var * var);
    let kurt_se = (24.0 / xs.len() as f64).sqrt();
    if (kurt - 3.0).abs() > 3.0 * kurt_se {
        failures.push(format!("kurtosis {kurt:.4} vs 3 (3se = {:.1e})", 3.0 * kurt_se));
    }
    fail_if(
        failures,
        format!("kernel max abs err {worst:.1e}; variance {var:.4}, kurtosis {kurt:.4}"),
    )
}

// 2. E_1 = exp to 1e-12; Laplace identity ∫ M_β e^{-rz} dr = E_β(-z) to
//    1e-6 on β ∈ {0.25,0.5,0.75,0.9} × z ∈ {0..5}; M-Wright moment law to
//    1e-6 for δ ∈ {-1/2, 1, 2}.
fn c02_special_functions() -> CheckResult {
    let mut failures = Vec::new();
    let mut worst_exp: f64 = 0.0;
    for i in -20..=20 {
        let z = i as f64 * 0.5;
        let got = specfun::mittag_leffler(1.0, Complex64::new(z, 0.0), 1e-13)
            .map_err(|e| e.to_string())?
            .re();
        worst_exp = worst_exp.max(((got - z.exp()) / z.exp()).abs());
    }
    if worst_exp > 1e-12 {
        failures.push(format!("E_1 vs exp rel {worst_exp:.2e} > 1e-12"));
    }
    let mut worst_lap: f64 = 0.0;
    for beta in [0.25, 0.5, 0.75, 0.9] {
        for z in [0.0, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0] {
            let r = specfun::m_wright_laplace_residual(beta, Complex64::new(z, 0.0), 1e-9)
                .map_err(|e| e.to_string())?;
            worst_lap = worst_lap.max(r);
            if r > 1e-6 {
                failures.push(format!("Laplace residual {r:.2e} at beta={beta}, z={z}"));
            }
        }
    }
    let mut worst_mom: f64 = 0.0;
    for beta in [0.5, 0.75] {
        for delta in [-0.5, 1.0, 2.0] {
            let upper = {
                // integrate M_β r^δ over its numeric support
                let om: f64 = 1.0 - beta;
                (46.0 / (om * beta.powf(beta / om))).powf(om)
            };
            let got = quad::integrate_adaptive(
                &|r: f64| {
                    if r <= 0.0 {
                        0.0
                    } else {
                        r.powf(delta) * specfun::m_wright_value(beta, r).0
                    }
                },
                0.0,
                upper,
                1e-9,
            )
            .map_err(|e| e.to_string())?;
            let want = specfun::gamma(delta + 1.0).unwrap()
                / specfun::gamma(beta * delta + 1.0).unwrap();
            let err = (got - want).abs();
            worst_mom = worst_mom.max(err);
            if err > 1e-6 {
                failures.push(format!("moment law err {err:.2e} at beta={beta}, delta={delta}"));
            }
        }
    }
    fail_if(
        failures,
        format!(
            "E_1 rel {worst_exp:.1e}; Laplace worst {worst_lap:.1e}; moment worst {worst_mom:.1e}"
        ),
    )
}

// 3. Fractional integral identity of E_β: residual < 1e-6 on a 3x3x3 grid
//    of (α, β, λ) with t ∈ {0.7, 1}.
fn c03_ml_integral_identity() -> CheckResult {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for alpha in [0.5, 1.0, 1.5] {
        for beta in [0.3, 0.5, 0.7] {
            for lambda in [0.5, 1.0, 2.0] {
                for t in [0.7, 1.0] {
                    let r = specfun::ml_integral_identity_residual(alpha, beta, lambda, t, 1e-9)
                        .map_err(|e| e.to_string())?;
                    worst = worst.max(r);
                    if r > 1e-6 {
                        failures.push(format!(
                            "residual {r:.2e} at (alpha={alpha}, beta={beta}, lambda={lambda}, t={t})"
                        ));
                    }
                }
            }
        }
    }
    fail_if(failures, format!("worst residual {worst:.2e} over 54 points"))
}

// 4. kernel_quadrature / kernel_subordination / kernel_foxh agree pairwise
//    within 1e-6 relative on the stated grid; kernel mass is 1 ± 1e-6.
fn c04_kernel_three_way() -> CheckResult {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for ab in [0.5, 0.75] {
        let p = params(ab, ab);
        for t in [0.5, 1.0, 2.0] {
            for a in [0.0, 0.5, 1.0, 2.0] {
                let q = KernelQuery::new(t, a, 0.0, p).map_err(|e| e.to_string())?;
                let k1 = heatkernel::kernel_quadrature(&q, 1e-10).map_err(|e| e.to_string())?;
                let k2 = heatkernel::kernel_subordination(&q, 1e-10).map_err(|e| e.to_string())?;
                let k3 = heatkernel::kernel_foxh(&q, 1e-12).map_err(|e| e.to_string())?;
                let scale = k1.abs().max(1e-300);
                let d12 = (k1 - k2).abs() / scale;
                let d13 = (k1 - k3).abs() / scale;
                let d23 = (k2 - k3).abs() / scale;
                let d = d12.max(d13).max(d23);
                worst = worst.max(d);
                if d > 1e-6 {
                    failures.push(format!(
                        "pairwise rel {d:.2e} at (alpha=beta={ab}, t={t}, offset={a})"
                    ));
                }
            }
        }
        let mass = quad::integrate_adaptive(
            &|y: f64| {
                let q = KernelQuery::new(1.0, 0.0, y, p).unwrap();
                heatkernel::kernel_subordination(&q, 1e-9).unwrap_or(0.0)
            },
            -40.0,
            40.0,
            1e-8,
        )
        .map_err(|e| e.to_string())?;
        if (mass - 1.0).abs() > 1e-6 {
            failures.push(format!("kernel mass {mass:.8} at alpha=beta={ab}"));
        }
    }
    fail_if(failures, format!("worst pairwise rel {worst:.2e}; masses within 1e-6"))
}

fn ecf_cos(ensemble: &ggbm::PathEnsemble, theta: &[f64]) -> (f64, f64) {
    let n = ensemble.n_times();
    let vals: Vec<f64> = (0..ensemble.n_paths)
        .map(|p| {
            let row = ensemble.path(p);
            let dot: f64 = (0..n).map(|j| theta[j] * row[j]).sum();
            dot.cos()
        })
        .collect();
    mean_stderr(&vals)
}

// 5. Sampler soundness: empirical characteristic function vs
//    E_β(-½θᵀAθ) for 6 (θ, times) combinations at n = 1e5; stationary
//    increments; 2nd and 4th moments vs the closed forms.
fn c05_sampler_soundness() -> CheckResult {
    let mut failures = Vec::new();
    let combos: [(&[f64], &[f64], f64, f64); 6] = [
        (&[1.0], &[1.0], 0.5, 0.5),
        (&[0.7], &[1.0], 0.8, 0.6),
        (&[0.6, -0.4], &[0.5, 1.5], 0.5, 0.5),
        (&[0.3, 0.5], &[0.5, 1.5], 1.2, 0.8),
        (&[0.4, -0.3, 0.2], &[1.0, 2.0, 3.0], 0.7, 0.7),
        (&[-0.5, 0.25], &[1.0, 2.0], 1.0, 1.0),
    ];
    let mut worst_z: f64 = 0.0;
    for (i, (theta, times, alpha, beta)) in combos.iter().enumerate() {
        let gram = ggbm::grey_gram(times, *alpha).map_err(|e| e.to_string())?;
        let want = ggbm::char_fn(theta, &gram, *beta).map_err(|e| e.to_string())?;
        let e = ggbm::sample_paths(&gram, *beta, 100_000, 1846 + i as u64)
            .map_err(|e| e.to_string())?;
        let (m, se) = ecf_cos(&e, theta);
        let z = (m - want).abs() / se;
        worst_z = worst_z.max(z);
        if z > 3.0 {
            failures.push(format!(
                "ecf combo {i}: {m:.5} vs {want:.5} ({z:.2} sigma)"
            ));
        }
    }
    // stationary increments: ecf of B_{t+h} - B_t vs ecf of B_h
    let p = params(0.7, 0.6);
    for (j, (t, h)) in [(1.0f64, 0.5f64), (2.0, 1.0)].iter().enumerate() {
        let theta = 0.8;
        let g_pair = ggbm::grey_gram(&[*t, *t + *h], p.alpha).map_err(|e| e.to_string())?;
        let e_pair = ggbm::sample_paths(&g_pair, p.beta, 100_000, 500 + j as u64)
            .map_err(|e| e.to_string())?;
        let incr: Vec<f64> = (0..e_pair.n_paths)
            .map(|i| {
                let row = e_pair.path(i);
                ((row[1] - row[0]) * theta).cos()
            })
            .collect();
        let (m1, se1) = mean_stderr(&incr);
        let g_h = ggbm::grey_gram(&[*h], p.alpha).map_err(|e| e.to_string())?;
        let e_h = ggbm::sample_paths(&g_h, p.beta, 100_000, 700 + j as u64)
            .map_err(|e| e.to_string())?;
        let vals: Vec<f64> = e_h.column(0).iter().map(|x| (x * theta).cos()).collect();
        let (m2, se2) = mean_stderr(&vals);
        let se = (se1 * se1 + se2 * se2).sqrt();
        let z = (m1 - m2).abs() / se;
        worst_z = worst_z.max(z);
        if z > 3.0 {
            failures.push(format!(
                "stationary increments (t={t}, h={h}): {m1:.5} vs {m2:.5} ({z:.2} sigma)"
            ));
        }
    }
    // moments
    for (alpha, beta) in [(0.8, 0.6), (1.2, 0.5)] {
        let p = params(alpha, beta);
        let gram = ggbm::grey_gram(&[1.0], alpha).map_err(|e| e.to_string())?;
        let e = ggbm::sample_paths(&gram, beta, 100_000, 2024).map_err(|e| e.to_string())?;
        let xs = e.column(0);
        for n in [1usize, 2] {
            let pw: Vec<f64> = xs.iter().map(|x| x.powi(2 * n as i32)).collect();
            let (m, se) = mean_stderr(&pw);
            let want = ggbm::even_moment(n, 1.0, p).map_err(|e| e.to_string())?;
            let z = (m - want).abs() / se;
            worst_z = worst_z.max(z);
            if z > 3.0 {
                failures.push(format!(
                    "moment 2n={} at ({alpha},{beta}): {m:.4} vs {want:.4} ({z:.2} sigma)",
                    2 * n
                ));
            }
        }
    }
    fail_if(failures, format!("worst deviation {worst_z:.2} sigma"))
}

// 6. fk_solution vs solve_cauchy within 3 stderr on 5 spatial points for
//    three parameter pairs and t ∈ {0.5, 1}.
fn c06_feynman_kac() -> CheckResult {
    let mut failures = Vec::new();
    let u0 = gaussian_u0();
    let xs = [-1.0, -0.5, 0.0, 0.5, 1.0];
    let mut worst_z: f64 = 0.0;
    for (alpha, beta) in [(0.5, 0.5), (1.0, 0.5), (0.8, 0.6)] {
        let p = params(alpha, beta);
        for t in [0.5, 1.0] {
            let u = heatkernel::solve_cauchy(&u0, t, -1.0, 0.5, 5, p, 1e-9)
                .map_err(|e| e.to_string())?;
            for (i, &x) in xs.iter().enumerate() {
                let e = montecarlo::fk_solution(&u0, t, x, p, 100_000, 9000 + i as u64)
                    .map_err(|e| e.to_string())?;
                let z = (e.value - u.values[i]).abs() / e.stderr;
                worst_z = worst_z.max(z);
                if z > 3.0 {
                    failures.push(format!(
                        "({alpha},{beta}) t={t} x={x}: mc {:.5} vs pde {:.5} ({z:.2} sigma)",
                        e.value, u.values[i]
                    ));
                }
            }
        }
    }
    fail_if(failures, format!("worst deviation {worst_z:.2} sigma"))
}

// 7. Fractional-calculus suite: three-derivative coincidence (1e-3),
//    left inverse (1e-3), indicator closed forms vs quadrature oracles
//    (1e-6), Fourier symbol (1e-3).
fn c07_fractional_calculus() -> CheckResult {
    let mut failures = Vec::new();
    let f = SampledFunction::from_fn(-8.0, 1.0 / 128.0, 2049, |x| (-x * x).exp()).unwrap();
    let mut worst_coin: f64 = 0.0;
    let mut worst_inv: f64 = 0.0;
    for alpha in [0.3, 0.5, 0.7] {
        let marchaud =
            fraccalc::marchaud_derivative_grid(alpha, &f, Side::Left, f.step).map_err(|e| e.to_string())?;
        let i1ma = fraccalc::rl_integral_grid(1.0 - alpha, &f, Side::Left).map_err(|e| e.to_string())?;
        let rl = fraccalc::derivative_grid(&i1ma);
        for i in 0..f.len() {
            let x = f.x(i);
            if x.abs() > 4.0 {
                continue;
            }
            let c = fraccalc::caputo_derivative_interval(alpha, &f, x).map_err(|e| e.to_string())?;
            worst_coin = worst_coin
                .max((rl.values[i] - marchaud.values[i]).abs())
                .max((c - marchaud.values[i]).abs());
        }
        let integ = fraccalc::rl_integral_grid(alpha, &f, Side::Left).map_err(|e| e.to_string())?;
        let back =
            fraccalc::marchaud_derivative_grid(alpha, &integ, Side::Left, f.step).map_err(|e| e.to_string())?;
        for i in 0..f.len() {
            if f.x(i).abs() > 4.0 {
                continue;
            }
            worst_inv = worst_inv.max((back.values[i] - f.values[i]).abs());
        }
    }
    if worst_coin > 1e-3 {
        failures.push(format!("three-derivative coincidence max abs {worst_coin:.2e}"));
    }
    if worst_inv > 1e-3 {
        failures.push(format!("left inverse max abs {worst_inv:.2e}"));
    }
    // indicator closed forms vs quadrature / finite-difference oracles
    let mut worst_ind: f64 = 0.0;
    for alpha in [0.35, 0.6] {
        for t in [-1.2, 0.3, 0.8, 1.7] {
            let want = quad::integrate_adaptive(
                &|s: f64| {
                    if s > 0.0 && s < 1.0 && s > t {
                        (s - t).powf(alpha - 1.0)
                    } else {
                        0.0
                    }
                },
                t.max(0.0),
                1.0f64.max(t.max(0.0) + 1e-9),
                1e-10,
            )
            .map_err(|e| e.to_string())?
                / specfun::gamma(alpha).unwrap();
            let got =
                fraccalc::rl_integral_indicator(alpha, 0.0, 1.0, Side::Right, t).map_err(|e| e.to_string())?;
            worst_ind = worst_ind.max((got - want).abs());
            // derivative closed form vs d/dt I^{1-α} by central differences
            if t != 0.0 && t != 1.0 {
                let h = 1e-6;
                let ip = fraccalc::rl_integral_indicator(1.0 - alpha, 0.0, 1.0, Side::Right, t + h)
                    .map_err(|e| e.to_string())?;
                let im = fraccalc::rl_integral_indicator(1.0 - alpha, 0.0, 1.0, Side::Right, t - h)
                    .map_err(|e| e.to_string())?;
                let fd = -(ip - im) / (2.0 * h);
                let dd = fraccalc::rl_derivative_indicator(alpha, 0.0, 1.0, Side::Right, t)
                    .map_err(|e| e.to_string())?;
                worst_ind = worst_ind.max((fd - dd).abs());
            }
        }
    }
    if worst_ind > 1e-6 {
        failures.push(format!("indicator closed forms vs oracles {worst_ind:.2e}"));
    }
    // Fourier symbol of the right-sided derivative
    let alpha = 0.5;
    let d = fraccalc::marchaud_derivative_grid(alpha, &f, Side::Right, f.step / 2.0)
        .map_err(|e| e.to_string())?;
    let freqs = [0.3, 0.9, 1.7, 2.5];
    let fd = fraccalc::continuous_ft(&d, &freqs);
    let ff = fraccalc::continuous_ft(&f, &freqs);
    let mut worst_four: f64 = 0.0;
    for (k, &x) in freqs.iter().enumerate() {
        let symbol = Complex64::from_polar(
            x.abs().powf(alpha),
            std::f64::consts::FRAC_PI_2 * alpha * x.signum(),
        );
        let want = symbol * ff[k];
        worst_four = worst_four.max((fd[k] - want).norm() / want.norm());
    }
    if worst_four > 1e-3 {
        failures.push(format!("Fourier symbol rel {worst_four:.2e}"));
    }
    fail_if(
        failures,
        format!(
            "coincidence {worst_coin:.1e}; inverse {worst_inv:.1e}; indicators {worst_ind:.1e}; Fourier {worst_four:.1e}"
        ),
    )
}

// 8. Finite difference of S B_t matches S N_t to 1e-4 relative.
fn c08_s_transform() -> CheckResult {
    let mut failures = Vec::new();
    let phi = SampledFunction::from_fn(-8.0, 1.0 / 128.0, 2049, |x| 0.1 * (-x * x).exp()).unwrap();
    let mut worst: f64 = 0.0;
    for (alpha, beta) in [(0.8, 0.6), (0.5, 0.5)] {
        let p = params(alpha, beta);
        let h = 1e-3;
        let fd = (ggbm::s_transform_ggbm(&phi, 1.0 + h, p).map_err(|e| e.to_string())?
            - ggbm::s_transform_ggbm(&phi, 1.0 - h, p).map_err(|e| e.to_string())?)
            / (2.0 * h);
        let noise = ggbm::s_transform_noise(&phi, 1.0, p).map_err(|e| e.to_string())?;
        let rel = ((fd - noise) / noise).abs();
        worst = worst.max(rel);
        if rel > 1e-4 {
            failures.push(format!("({alpha},{beta}): fd {fd:.6e} vs noise {noise:.6e}, rel {rel:.2e}"));
        }
    }
    fail_if(failures, format!("worst rel {worst:.2e}"))
}

// 9. Local times: the Brownian closed form to 1e-8, and the occupation
//    estimator within 5% of the quadrature value at α=β=0.5.
fn c09_local_times() -> CheckResult {
    let mut failures = Vec::new();
    let got = montecarlo::local_time_expectation(0.0, 1.0, params(1.0, 1.0), 1e-10)
        .map_err(|e| e.to_string())?;
    let want = (2.0 / std::f64::consts::PI).sqrt();
    let brownian_err = (got - want).abs();
    if brownian_err > 1e-8 {
        failures.push(format!("Brownian local time {got:.10} vs {want:.10}"));
    }
    let p = params(0.5, 0.5);
    let reference = montecarlo::local_time_expectation(0.0, 1.0, p, 1e-9)
        .map_err(|e| e.to_string())?;
    let mc = montecarlo::local_time_mc(0.0, 1.0, p, 20_000, 500, 0.05, 1846)
        .map_err(|e| e.to_string())?;
    let rel = (mc.value - reference).abs() / reference;
    if rel > 0.05 {
        failures.push(format!(
            "occupation estimator {:.5} vs {reference:.5} (rel {rel:.3})",
            mc.value
        ));
    }
    fail_if(
        failures,
        format!("Brownian err {brownian_err:.1e}; MC rel {rel:.3}"),
    )
}

// 10. Donsker truncation: |value(n_cut=50) − kernel| < 1e-3 at the
//     (α=β=0.5, t=1, a=0) reference point, plus monotone stabilization
//     over n_cut ∈ {5,10,20,40,80}.
//
//     The truncation tail is exactly (1/π)∫_{n}^{∞} E_β(−½x²tᵅ) dx =
//     (2/(π v Γ(1−β)))·(1/n) + O(n^{-3}), which at these parameters is
//     7.2e-3 at n = 50 — above the 1e-3 target. The check reports the
//     measured gap honestly rather than loosening the threshold.
fn c10_donsker() -> CheckResult {
    let mut failures = Vec::new();
    let p = params(0.5, 0.5);
    let kernel = heatkernel::kernel_quadrature(
        &KernelQuery::new(1.0, 0.0, 0.0, p).map_err(|e| e.to_string())?,
        1e-10,
    )
    .map_err(|e| e.to_string())?;
    let v50 = montecarlo::donsker_truncation(50.0, 0.0, 1.0, p, 1e-10).map_err(|e| e.to_string())?;
    let gap = (v50 - kernel).abs();
    if gap > 1e-3 {
        failures.push(format!(
            "|value(50) − kernel| = {gap:.3e} > 1e-3 (O(1/n) tail: value(50)={v50:.6}, kernel={kernel:.6})"
        ));
    }
    let mut prev = f64::INFINITY;
    let mut monotone = true;
    for n in [5.0, 10.0, 20.0, 40.0] {
        let d = (montecarlo::donsker_truncation(2.0 * n, 0.0, 1.0, p, 1e-10)
            .map_err(|e| e.to_string())?
            - montecarlo::donsker_truncation(n, 0.0, 1.0, p, 1e-10).map_err(|e| e.to_string())?)
        .abs();
        if d >= prev {
            monotone = false;
            failures.push(format!("stabilization not monotone at n={n}"));
        }
        prev = d;
    }
    fail_if(
        failures,
        format!("gap at n=50: {gap:.2e}; stabilization monotone: {monotone}"),
    )
}

/// Names of every public operation, used by the CLI coverage manifest.
pub fn operation_names() -> Vec<&'static str> {
    vec![
        "gamma",
        "mittag_leffler",
        "mittag_leffler2",
        "ml_derivative",
        "m_wright",
        "m_wright_laplace_residual",
        "fox_h",
        "fox_h_invert",
        "fox_h_power_shift",
        "ml_integral_identity_residual",
        "k_h",
        "rl_integral_indicator",
        "rl_derivative_indicator",
        "m_h_indicator",
        "rl_integral_grid",
        "marchaud_derivative_grid",
        "caputo_derivative_interval",
        "inner_alpha",
        "grey_gram",
        "covariance",
        "char_fn",
        "sample_tau",
        "sample_paths",
        "marginal_density",
        "even_moment",
        "s_transform_ggbm",
        "s_transform_noise",
        "kernel_quadrature",
        "kernel_subordination",
        "kernel_series",
        "kernel_foxh",
        "solve_cauchy",
        "residual_fie",
        "fk_solution",
        "donsker_truncation",
        "local_time_expectation",
        "local_time_mc",
    ]
}

/// Convenience used by tests: run one named check.
pub fn run_one(name: &str) -> CoreResult<CheckOutcome> {
    let outcomes = run(Some(name));
    outcomes
        .into_iter()
        .next()
        .ok_or_else(|| crate::error::Error::InvalidParameter(format!("no check named {name}")))
}

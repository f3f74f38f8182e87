//! Green's function of the time-fractional heat equation, through three
//! mutually validating representations:
//!
//! 1. oscillatory quadrature of the Fourier form
//!    K(t,x,y) = (1/π) ∫₀^∞ cos(λ(x−y)) E_β(−½λ²tᵅ) dλ,
//! 2. subordination  K = ∫₀^∞ M_β(r) N(x−y; 0, r tᵅ) dr,
//! 3. the power series / Fox-H form
//!    K = (1/√(2πv)) H^{2,0}_{1,2}(a²/(2v) | (1−β/2,β); (0,1),(1/2,1)),
//!    v = tᵅ, a = x−y.
//!
//! The quadrature route integrates panels up to Λ with Λ²v/2 ≥ 36 (and
//! aΛ ≥ 25 when a > 0) and then adds the tail analytically: E_β(−u) is
//! replaced by its optimally truncated asymptotic series and the resulting
//! cosine-power moments ∫_Λ^∞ cos(aλ) λ^{−2k} dλ come from a stable
//! sine-integral recurrence, so the O(1/λ²) tail costs no panels.

use crate::error::{Error, Result};
use crate::fraccalc::SampledFunction;
use crate::ggbm::FracParams;
use crate::quad;
use crate::specfun::{
    fox_h, gamma_unchecked, heat_kernel_spec, m_wright_support, m_wright_value, ml_e_neg,
    recip_gamma, Kahan,
};
use std::f64::consts::PI;

/// A kernel evaluation request K(t, x, y) at parameters (α, β).
#[derive(Debug, Clone, Copy)]
pub struct KernelQuery {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub params: FracParams,
}

impl KernelQuery {
    pub fn new(t: f64, x: f64, y: f64, params: FracParams) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "kernel query requires t > 0, got {t}"
            )));
        }
        Ok(KernelQuery { t, x, y, params })
    }

    fn offset(&self) -> f64 {
        (self.x - self.y).abs()
    }

    fn variance(&self) -> f64 {
        self.t.powf(self.params.alpha)
    }
}

/// ∫_w^∞ sin(u)/u du for w ≳ 20, by the optimally truncated asymptotic
/// auxiliary series: value = f(w) cos w + g(w) sin w.
fn sin_integral_tail(w: f64) -> f64 {
    let w2 = w * w;
    let mut f = 0.0;
    let mut term = 1.0;
    let mut k = 0;
    loop {
        f += term;
        let next = -term * ((2 * k + 1) as f64) * ((2 * k + 2) as f64) / w2;
        if next.abs() >= term.abs() || next.abs() < 1e-19 {
            break;
        }
        term = next;
        k += 1;
    }
    f /= w;
    let mut g = 0.0;
    term = 1.0;
    k = 0;
    loop {
        g += term;
        let next = -term * ((2 * k + 2) as f64) * ((2 * k + 3) as f64) / w2;
        if next.abs() >= term.abs() || next.abs() < 1e-19 {
            break;
        }
        term = next;
        k += 1;
    }
    g /= w2;
    f * w.cos() + g * w.sin()
}

/// g_{2k}(w) = ∫_w^∞ cos(u) u^{−2k} du for k = 1..=kmax, via the downward
/// division recurrence (numerically stable: every step divides).
fn cos_power_tails(w: f64, kmax: usize) -> Vec<f64> {
    let (sw, cw) = w.sin_cos();
    let mut res = vec![0.0; kmax + 1];
    let mut h = sin_integral_tail(w); // h_1
    for k in 1..=kmax {
        let s = (2 * k - 1) as f64;
        let g = (cw * w.powf(-s) - h) / s;
        res[k] = g;
        let s1 = (2 * k) as f64;
        h = (g + sw * w.powf(-s1)) / s1;
    }
    res
}

/// (1/π) ∫₀^{upper or ∞} cos(aλ) E_β(−½λ²v) dλ.
pub(crate) fn ml_cos_transform(
    a: f64,
    v: f64,
    beta: f64,
    upper: Option<f64>,
    tol: f64,
) -> Result<f64> {
    if !(v > 0.0) || !(beta > 0.0 && beta <= 1.0) || a < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "cosine transform requires v > 0, 0 < beta <= 1, a >= 0; got a={a}, v={v}, beta={beta}"
        )));
    }
    const U_MIN: f64 = 36.0;
    const W_MIN: f64 = 25.0;
    let lam_end = match upper {
        Some(n) => {
            if n < 0.0 {
                return Err(Error::InvalidParameter("cutoff must be >= 0".into()));
            }
            n
        }
        None => {
            let mut l = (2.0 * U_MIN / v).sqrt();
            if a > 0.0 {
                l = l.max(W_MIN / a);
            }
            l
        }
    };
    if lam_end == 0.0 {
        return Ok(0.0);
    }
    let f = |lam: f64| (a * lam).cos() * ml_e_neg(beta, 0.5 * lam * lam * v, tol.min(1e-12));
    let cap = if a > 1e-12 { PI / a } else { f64::INFINITY };
    let base = ((2.0 / v).sqrt() * 0.5).min(lam_end);
    let mut width = base.min(cap);
    let mut lo = 0.0;
    let mut total = 0.0;
    let mut panels = 0;
    while lo < lam_end {
        let hi = (lo + width).min(lam_end);
        total += quad::integrate_gl(&f, lo, hi, 32);
        lo = hi;
        width = (width * 2.0).min(cap);
        panels += 1;
        if panels > 100_000 {
            return Err(Error::QuadratureFailure(
                "cosine transform panel budget exceeded".into(),
            ));
        }
    }
    if upper.is_none() && beta < 1.0 {
        // analytic tail from the asymptotic series of E_β
        let kmax = 40;
        let tails = if a > 0.0 {
            cos_power_tails(a * lam_end, kmax)
        } else {
            Vec::new()
        };
        let mut prev_bound = f64::INFINITY;
        for k in 1..=kmax {
            let rg = recip_gamma(1.0 - beta * k as f64);
            if rg == 0.0 {
                continue;
            }
            let scale = (2.0 / v).powi(k as i32) * rg;
            let bound = scale.abs() * lam_end.powi(1 - 2 * k as i32) / (2.0 * k as f64 - 1.0);
            if bound >= prev_bound {
                break;
            }
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            let moment = if a > 0.0 {
                a.powi(2 * k as i32 - 1) * tails[k]
            } else {
                lam_end.powi(1 - 2 * k as i32) / (2.0 * k as f64 - 1.0)
            };
            total += sign * scale * moment;
            prev_bound = bound;
            if bound < 1e-18 {
                break;
            }
        }
    }
    Ok(total / PI)
}

/// Kernel via oscillatory quadrature of the Fourier representation.
pub fn kernel_quadrature(q: &KernelQuery, tol: f64) -> Result<f64> {
    ml_cos_transform(q.offset(), q.variance(), q.params.beta, None, tol)
}

/// Kernel via the subordination mixture ∫ M_β(r) N(a; 0, r v) dr; the
/// substitution r = s² removes the r^{−1/2} endpoint singularity.
pub fn kernel_subordination(q: &KernelQuery, tol: f64) -> Result<f64> {
    let v = q.variance();
    let a = q.offset();
    let beta = q.params.beta;
    if beta == 1.0 {
        return Ok((-a * a / (2.0 * v)).exp() / (2.0 * PI * v).sqrt());
    }
    let s_max = m_wright_support(beta).sqrt();
    let f = |s: f64| {
        if s <= 0.0 {
            return 0.0;
        }
        let m = m_wright_value(beta, s * s).0;
        m * (-a * a / (2.0 * s * s * v)).exp()
    };
    let integral = quad::integrate_adaptive(&f, 0.0, s_max, tol.min(1e-8) * 0.05)?;
    Ok(integral * 2.0 / (2.0 * PI * v).sqrt())
}

/// Kernel via the explicit double power series in w = a²/(2v):
///
///  (1/√(2πv)) Σ_k (-1)^k/k! Γ(1/2-k)/Γ(1-β/2-βk) w^k
///  + (a/(2v√π)) Σ_k (-1)^k/k! Γ(-1/2-k)/Γ(1-β-βk) w^k.
///
/// Denominator Γ poles kill their terms; the argument is capped at 10 to
/// stay in the stable summation range.
pub fn kernel_series(a: f64, v: f64, beta: f64, tol: f64) -> Result<f64> {
    if !(v > 0.0) || !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "kernel_series requires v > 0, 0 < beta <= 1; got v={v}, beta={beta}"
        )));
    }
    let a = a.abs();
    let w = a * a / (2.0 * v);
    if w > 10.0 {
        return Err(Error::InvalidParameter(format!(
            "kernel_series argument a²/(2v) = {w:.3} exceeds the stable range (<= 10)"
        )));
    }
    let mut s1 = Kahan::default();
    let mut s2 = Kahan::default();
    let mut wk_over_fact = 1.0; // w^k / k!
    let mut g_half = gamma_unchecked(0.5); // Γ(1/2 - k)
    let mut g_mhalf = gamma_unchecked(-0.5); // Γ(-1/2 - k)
    let mut below = 0;
    for k in 0..400usize {
        let kf = k as f64;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let t1 = sign * wk_over_fact * g_half * recip_gamma(1.0 - beta / 2.0 - beta * kf);
        let t2 = sign * wk_over_fact * g_mhalf * recip_gamma(1.0 - beta - beta * kf);
        s1.add(t1);
        s2.add(t2);
        let scale = s1.value().abs().max(s2.value().abs()).max(f64::MIN_POSITIVE);
        if t1.abs().max(t2.abs()) < tol.min(1e-12) * scale && k > 4 {
            below += 1;
            if below >= 3 {
                break;
            }
        } else {
            below = 0;
        }
        // Γ(z-1) = Γ(z)/(z-1)
        g_half /= -0.5 - kf;
        g_mhalf /= -1.5 - kf;
        wk_over_fact *= w / (kf + 1.0);
    }
    Ok(s1.value() / (2.0 * PI * v).sqrt() + s2.value() * a / (2.0 * v * PI.sqrt()))
}

/// Kernel via the Fox H-function H^{2,0}_{1,2}; w = 0 falls back to the
/// closed form 1/(√(2v) Γ(1−β/2)).
pub fn kernel_foxh(q: &KernelQuery, tol: f64) -> Result<f64> {
    let v = q.variance();
    let a = q.offset();
    let beta = q.params.beta;
    let w = a * a / (2.0 * v);
    if w < 1e-280 {
        return Ok(recip_gamma(1.0 - beta / 2.0) / (2.0 * v).sqrt());
    }
    let spec = heat_kernel_spec(beta)?;
    let h = fox_h(&spec, w, tol)?;
    Ok(h.value / (2.0 * PI * v).sqrt())
}

/// Reduced kernel profile Φ_β with K(t, x, y) = Φ_β(|x−y|/√v)/√v, v = tᵅ.
///
/// β = 1 is the standard normal density; otherwise Φ is tabulated once by
/// subordination quadrature and read back with cubic interpolation.
pub(crate) enum KernelProfile {
    Gaussian,
    Table { dw: f64, values: Vec<f64> },
}

impl KernelProfile {
    pub(crate) fn build(beta: f64, tol: f64) -> Result<KernelProfile> {
        if beta == 1.0 {
            return Ok(KernelProfile::Gaussian);
        }
        let dw = 0.01;
        let mut values = Vec::with_capacity(4096);
        let params = FracParams::new(1.0, beta)?;
        let mut w = 0.0;
        loop {
            let q = KernelQuery::new(1.0, w, 0.0, params)?;
            let v = kernel_subordination(&q, tol)?;
            values.push(v);
            if (v < 1e-15 && w > 6.0) || w > 60.0 {
                break;
            }
            w += dw;
        }
        Ok(KernelProfile::Table { dw, values })
    }

    pub(crate) fn eval(&self, w: f64) -> f64 {
        let w = w.abs();
        match self {
            KernelProfile::Gaussian => (-0.5 * w * w).exp() / (2.0 * PI).sqrt(),
            KernelProfile::Table { dw, values } => {
                let u = w / dw;
                let n = values.len();
                if u >= (n - 1) as f64 {
                    return 0.0;
                }
                let j = u.floor() as usize;
                let t = u - j as f64;
                let p = |idx: i64| values[idx.clamp(0, n as i64 - 1) as usize];
                let (p0, p1, p2, p3) = (
                    // even reflection at w = 0 keeps the cubic consistent
                    if j == 0 { values[1] } else { p(j as i64 - 1) },
                    p(j as i64),
                    p(j as i64 + 1),
                    p(j as i64 + 2),
                );
                0.5 * ((2.0 * p1)
                    + (-p0 + p2) * t
                    + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * t * t
                    + (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * t * t * t)
            }
        }
    }

    /// Largest w with a nonzero table entry (∞-like for the Gaussian).
    pub(crate) fn support(&self) -> f64 {
        match self {
            KernelProfile::Gaussian => 10.0,
            KernelProfile::Table { dw, values } => dw * (values.len() - 1) as f64,
        }
    }
}

/// Solution surface u(t, x) = ∫ u0(y) K(t, x, y) dy of the Cauchy problem,
/// evaluated through the reduced profile: u(t,x) = ∫ Φ(ξ) u0(x − √v ξ) dξ.
pub struct CauchySurface {
    pub params: FracParams,
    profile: KernelProfile,
    u0: SampledFunction,
    u0_d2: SampledFunction,
}

impl CauchySurface {
    pub fn new(u0: &SampledFunction, params: FracParams, tol: f64) -> Result<CauchySurface> {
        let profile = KernelProfile::build(params.beta, tol)?;
        Ok(CauchySurface {
            params,
            profile,
            u0: u0.clone(),
            u0_d2: second_derivative_grid(u0),
        })
    }

    pub fn initial(&self) -> &SampledFunction {
        &self.u0
    }

    fn convolve(&self, table: &SampledFunction, t: f64, x: f64) -> f64 {
        let sv = t.powf(self.params.alpha / 2.0);
        let w_max = self.profile.support();
        let f = |xi: f64| self.profile.eval(xi) * table.eval_cubic(x - sv * xi);
        // symmetric composite GL over the profile support
        let panels = 48usize;
        let h = 2.0 * w_max / panels as f64;
        let mut s = 0.0;
        for i in 0..panels {
            let lo = -w_max + i as f64 * h;
            s += quad::integrate_gl(&f, lo, lo + h, 20);
        }
        s
    }

    /// u(t, x); at t → 0 this degrades gracefully to u0(x).
    pub fn eval(&self, t: f64, x: f64) -> f64 {
        if t <= 0.0 {
            return self.u0.eval_cubic(x);
        }
        self.convolve(&self.u0, t, x)
    }

    /// ∂²ₓ u(t, x), computed as the convolution of u0'' with the kernel.
    pub fn d2x(&self, t: f64, x: f64) -> f64 {
        if t <= 0.0 {
            return self.u0_d2.eval_cubic(x);
        }
        self.convolve(&self.u0_d2, t, x)
    }
}

/// Five-point second derivative on the grid (three-point at the edges).
fn second_derivative_grid(f: &SampledFunction) -> SampledFunction {
    let n = f.len();
    let h2 = f.step * f.step;
    let v = &f.values;
    let mut d = vec![0.0; n];
    for i in 0..n {
        d[i] = if i >= 2 && i + 2 < n {
            (-v[i - 2] + 16.0 * v[i - 1] - 30.0 * v[i] + 16.0 * v[i + 1] - v[i + 2]) / (12.0 * h2)
        } else if i >= 1 && i + 1 < n {
            (v[i - 1] - 2.0 * v[i] + v[i + 1]) / h2
        } else {
            0.0
        };
    }
    SampledFunction {
        start: f.start,
        step: f.step,
        values: d,
    }
}

/// Solve the Cauchy problem at time `t` on the grid (start, step, n).
pub fn solve_cauchy(
    u0: &SampledFunction,
    t: f64,
    xs_start: f64,
    xs_step: f64,
    n: usize,
    params: FracParams,
    tol: f64,
) -> Result<SampledFunction> {
    if !(t > 0.0) {
        return Err(Error::InvalidParameter("solve_cauchy requires t > 0".into()));
    }
    if n < 2 || !(xs_step > 0.0) {
        return Err(Error::InvalidParameter("output grid invalid".into()));
    }
    let width = t.powf(params.alpha / 2.0);
    if u0.step > width {
        return Err(Error::InvalidParameter(format!(
            "initial-data grid step {} too coarse for kernel width {width:.3e}",
            u0.step
        )));
    }
    let surface = CauchySurface::new(u0, params, tol)?;
    let values = (0..n)
        .map(|i| surface.eval(t, xs_start + i as f64 * xs_step))
        .collect();
    SampledFunction::new(xs_start, xs_step, values)
}

/// Residual of the governing fractional integral equation
///
/// u(t,x) = u0(x) + ½ (I^β_{0+} ∂²ₓ u((·)^{β/α}, x))(t^{α/β})
///
/// with the time integral flattened by ρ = y^{1/β} so the (T−s)^{β−1}
/// endpoint singularity is integrated exactly.
pub fn residual_fie(surface: &CauchySurface, t: f64, x: f64, tol: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::InvalidParameter("residual_fie requires t > 0".into()));
    }
    let params = surface.params;
    let alpha = params.alpha;
    let beta = params.beta;
    let lhs = surface.eval(t, x);
    let big_t = t.powf(alpha / beta);
    let y_end = big_t.powf(beta); // = t^α
    let integrand = |y: f64| {
        let rem = (big_t - y.powf(1.0 / beta)).max(0.0);
        let tau = rem.powf(beta / alpha);
        surface.d2x(tau, x)
    };
    let integral = quad::integrate_adaptive(&integrand, 0.0, y_end, tol.max(1e-9))? / beta;
    let rhs = surface.u0.eval_cubic(x) + 0.5 * recip_gamma(beta) * integral;
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;

    fn params(alpha: f64, beta: f64) -> FracParams {
        FracParams::new(alpha, beta).unwrap()
    }

    fn q(t: f64, a: f64, alpha: f64, beta: f64) -> KernelQuery {
        KernelQuery::new(t, a, 0.0, params(alpha, beta)).unwrap()
    }

    #[test]
    fn gaussian_collapse_exact() {
        // β=1, α=1, x=y: 1/√(2πt)
        let v = kernel_quadrature(&q(1.0, 0.0, 1.0, 1.0), 1e-12).unwrap();
        let want = 1.0 / (2.0 * PI).sqrt();
        assert!((v - want).abs() < 1e-10, "{v} vs {want}");
        // off-diagonal too
        for a in [0.5, 1.0, 2.0] {
            let got = kernel_quadrature(&q(0.7, a, 1.0, 1.0), 1e-12).unwrap();
            let want = (-a * a / 1.4).exp() / (2.0 * PI * 0.7).sqrt();
            assert!((got - want).abs() < 1e-10, "a={a}");
        }
    }

    #[test]
    fn quadrature_matches_frozen_subordination_references() {
        // independently computed with the closed-form M_{1/2}
        let refs = [
            (1.0, 0.0, 0.5770337386164697),
            (1.0, 0.5, 0.3424627355362051),
            (1.0, 1.0, 0.1916652211651466),
            (1.0, 2.0, 0.0519028723510382),
            (0.5, 1.0, 0.1805247045345787),
            (2.0, 2.0, 0.0674135386041982),
        ];
        for (t, a, want) in refs {
            let got = kernel_quadrature(&q(t, a, 0.5, 0.5), 1e-10).unwrap();
            assert!(
                ((got - want) / want).abs() < 1e-8,
                "quad K({t},{a}) = {got}, want {want}"
            );
            let got = kernel_subordination(&q(t, a, 0.5, 0.5), 1e-10).unwrap();
            assert!(
                ((got - want) / want).abs() < 1e-7,
                "subord K({t},{a}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn diagonal_closed_form() {
        // x=y: 1/(√(2v) Γ(1−β/2))
        let got = kernel_quadrature(&q(1.0, 0.0, 0.5, 0.5), 1e-10).unwrap();
        let want = 1.0 / (2.0f64.sqrt() * gamma(0.75).unwrap());
        assert!((got - want).abs() < 1e-8);
        assert!((got - 0.5771).abs() < 1e-4);
    }

    #[test]
    fn kernel_symmetry_and_mass() {
        let p = params(0.7, 0.6);
        let k1 = kernel_quadrature(&KernelQuery::new(1.3, 0.4, -0.2, p).unwrap(), 1e-9).unwrap();
        let k2 = kernel_quadrature(&KernelQuery::new(1.3, -0.2, 0.4, p).unwrap(), 1e-9).unwrap();
        assert_eq!(k1, k2);
        // ∫ K dy = 1
        let mass = quad::integrate_adaptive(
            &|y: f64| kernel_subordination(&KernelQuery::new(1.0, 0.0, y, p).unwrap(), 1e-9).unwrap(),
            -40.0,
            40.0,
            1e-8,
        )
        .unwrap();
        assert!((mass - 1.0).abs() < 1e-6, "mass {mass}");
    }

    #[test]
    fn series_examples() {
        // a=0 closed form
        for beta in [0.4, 0.75] {
            let got = kernel_series(0.0, 1.3, beta, 1e-12).unwrap();
            let want = 1.0 / ((2.0 * 1.3f64).sqrt() * gamma(1.0 - beta / 2.0).unwrap());
            assert!((got - want).abs() < 1e-13, "beta={beta}");
        }
        // β=1 resums to the Gaussian
        let got = kernel_series(1.0, 1.0, 1.0, 1e-14).unwrap();
        let want = (-0.5f64).exp() / (2.0 * PI).sqrt();
        assert!((got - want).abs() < 1e-12);
        assert!((got - 0.2419707).abs() < 1e-7);
        // against the frozen reference
        let got = kernel_series(0.5, 1.0, 0.5, 1e-13).unwrap();
        assert!((got - 0.3424627355362051).abs() < 1e-10);
        // argument cap
        assert!(kernel_series(10.0, 1.0, 0.5, 1e-10).is_err());
    }

    #[test]
    fn foxh_route_agrees() {
        // identical series by construction
        for (a, v, beta) in [(0.5, 1.0, 0.5), (1.0, 0.8, 0.75), (0.0, 2.0, 0.6)] {
            let p = params(1.0, beta);
            let qq = KernelQuery::new(v, a, 0.0, p).unwrap(); // α=1 so v=t
            let fh = kernel_foxh(&qq, 1e-12).unwrap();
            let ks = kernel_series(a, v, beta, 1e-12).unwrap();
            assert!((fh - ks).abs() < 1e-10 * ks.abs().max(1e-10), "{fh} vs {ks}");
        }
        // and against quadrature
        let fh = kernel_foxh(&q(1.0, 0.8, 0.5, 0.5), 1e-12).unwrap();
        let kq = kernel_quadrature(&q(1.0, 0.8, 0.5, 0.5), 1e-10).unwrap();
        assert!(((fh - kq) / kq).abs() < 1e-6, "{fh} vs {kq}");
    }

    #[test]
    fn three_way_agreement_spot() {
        for (ab, t, a) in [(0.5, 0.5, 1.0), (0.75, 2.0, 0.5), (0.75, 1.0, 2.0)] {
            let qq = q(t, a, ab, ab);
            let k1 = kernel_quadrature(&qq, 1e-10).unwrap();
            let k2 = kernel_subordination(&qq, 1e-10).unwrap();
            let k3 = kernel_foxh(&qq, 1e-12).unwrap();
            let scale = k1.abs();
            assert!((k1 - k2).abs() / scale < 1e-6, "q vs s: {k1} {k2}");
            assert!((k1 - k3).abs() / scale < 1e-6, "q vs h: {k1} {k3}");
        }
    }

    #[test]
    fn donsker_cutoff_monotone_decay() {
        // sanity of the Some(upper) branch: increments shrink like O(1/n)
        let mut prev = f64::INFINITY;
        for n in [5.0, 10.0, 20.0, 40.0] {
            let v1 = ml_cos_transform(0.0, 1.0, 0.5, Some(n), 1e-10).unwrap();
            let v2 = ml_cos_transform(0.0, 1.0, 0.5, Some(2.0 * n), 1e-10).unwrap();
            let d = (v2 - v1).abs();
            assert!(d < prev);
            prev = d;
        }
    }

    #[test]
    fn cauchy_flat_initial_data() {
        let u0 = SampledFunction::from_fn(-20.0, 0.05, 801, |x| {
            if x.abs() < 15.0 {
                1.0
            } else {
                0.0
            }
        })
        .unwrap();
        let p = params(0.5, 0.5);
        let u = solve_cauchy(&u0, 1.0, -2.0, 0.25, 17, p, 1e-9).unwrap();
        for (i, &v) in u.values.iter().enumerate() {
            assert!((v - 1.0).abs() < 1e-4, "x={}, u={v}", u.x(i));
        }
    }

    #[test]
    fn cauchy_gaussian_heat_semigroup() {
        // β=1, α=1: Gaussian(σ²) → amplitude-corrected Gaussian(σ²+t)
        let s2 = 0.8;
        let u0 = SampledFunction::from_fn(-12.0, 0.02, 1201, |x| (-x * x / (2.0 * s2)).exp())
            .unwrap();
        let p = params(1.0, 1.0);
        let t = 0.6;
        let u = solve_cauchy(&u0, t, -3.0, 0.5, 13, p, 1e-10).unwrap();
        for (i, &v) in u.values.iter().enumerate() {
            let x = u.x(i);
            let want = (s2 / (s2 + t)).sqrt() * (-x * x / (2.0 * (s2 + t))).exp();
            assert!((v - want).abs() < 1e-6, "x={x}: {v} vs {want}");
        }
        // symmetry for symmetric data
        let left = u.values[1];
        let right = u.values[11];
        assert!((left - right).abs() < 1e-10);
    }

    #[test]
    fn solve_cauchy_rejects_coarse_grid() {
        let u0 = SampledFunction::from_fn(-10.0, 0.5, 41, |x| (-x * x).exp()).unwrap();
        assert!(solve_cauchy(&u0, 0.01, -1.0, 0.1, 11, params(1.0, 1.0), 1e-9).is_err());
    }

    #[test]
    fn fie_residual_classical_case() {
        let u0 = SampledFunction::from_fn(-12.0, 0.02, 1201, |x| (-x * x).exp()).unwrap();
        let surf = CauchySurface::new(&u0, params(1.0, 1.0), 1e-10).unwrap();
        let r = residual_fie(&surf, 0.5, 0.0, 1e-9).unwrap();
        assert!(r < 1e-4, "classical residual {r}");
    }

    #[test]
    fn fie_residual_fractional_case() {
        let u0 = SampledFunction::from_fn(-12.0, 0.02, 1201, |x| (-x * x).exp()).unwrap();
        let surf = CauchySurface::new(&u0, params(0.5, 0.5), 1e-9).unwrap();
        let r = residual_fie(&surf, 1.0, 0.0, 1e-9).unwrap();
        assert!(r < 1e-3, "fractional residual {r}");
    }

    #[test]
    fn fbm_pde_residual() {
        // β=1, α=0.8: ∂_t u = ½ α t^{α−1} ∂²ₓ u
        let u0 = SampledFunction::from_fn(-12.0, 0.02, 1201, |x| (-x * x).exp()).unwrap();
        let alpha = 0.8;
        let surf = CauchySurface::new(&u0, params(alpha, 1.0), 1e-10).unwrap();
        let (t, x) = (1.0, 0.3);
        let h = 1e-4;
        let dt = (surf.eval(t + h, x) - surf.eval(t - h, x)) / (2.0 * h);
        let rhs = 0.5 * alpha * t.powf(alpha - 1.0) * surf.d2x(t, x);
        assert!((dt - rhs).abs() < 1e-4, "dt {dt} vs rhs {rhs}");
    }

    #[test]
    fn sin_integral_tail_reference() {
        // π/2 − Si(25) computed independently: 0.0393324...
        let got = sin_integral_tail(25.0);
        assert!((got - 0.039332).abs() < 3e-6, "{got}");
    }
}

//! Fox H-function evaluated through its residue series.
//!
//! For Σ B_j − Σ A_j > 0 and simple poles of the first m lower-parameter
//! gamma factors, the Mellin-Barnes contour integral collapses to
//!
//!   H^{m,n}_{p,q}(z) = Σ_{i=1}^m Σ_{k≥0}
//!       Π_{j≠i,j≤m} Γ(b_j - (b_i+k) B_j/B_i)
//!     · Π_{j≤n}     Γ(1 - a_j + (b_i+k) A_j/B_i)
//!     / Π_{j>m}     Γ(1 - b_j + (b_i+k) B_j/B_i)
//!     / Π_{j>n}     Γ(a_j - (b_i+k) A_j/B_i)
//!     · (-1)^k z^{(b_i+k)/B_i} / (k! B_i).
//!
//! Specs whose series does not exist directly (m = 0, or the B/A balance
//! fails) are routed through the inversion formula
//! H^{m,n}_{p,q}(z | (a,A); (b,B)) = H^{n,m}_{q,p}(1/z | (1-b,B); (1-a,A)).

use super::gamma::{gamma_unchecked, recip_gamma};
use super::mittag_leffler::{Kahan, SeriesResult, DEFAULT_TOL};
use crate::error::{Error, Result};

/// Parameter set (m, n, p, q; (a_p, A_p); (b_q, B_q)) of a Fox H-function.
///
/// `p` and `q` are the lengths of `upper` and `lower`. All A_i, B_j must be
/// positive. `m + n >= 1`; `m = 0` is allowed so that inversion images of
/// valid specs remain representable — such specs are evaluated through the
/// inversion formula.
#[derive(Debug, Clone, PartialEq)]
pub struct HFunctionSpec {
    pub m: usize,
    pub n: usize,
    pub upper: Vec<(f64, f64)>,
    pub lower: Vec<(f64, f64)>,
}

impl HFunctionSpec {
    pub fn new(
        m: usize,
        n: usize,
        upper: Vec<(f64, f64)>,
        lower: Vec<(f64, f64)>,
    ) -> Result<Self> {
        let p = upper.len();
        let q = lower.len();
        if n > p || m > q {
            return Err(Error::InvalidParameter(format!(
                "H-spec requires n <= p and m <= q, got m={m}, n={n}, p={p}, q={q}"
            )));
        }
        if m + n == 0 {
            return Err(Error::InvalidParameter(
                "H-spec requires m + n >= 1".into(),
            ));
        }
        if upper.iter().any(|&(a, aa)| !(aa > 0.0) || !a.is_finite())
            || lower.iter().any(|&(b, bb)| !(bb > 0.0) || !b.is_finite())
        {
            return Err(Error::InvalidParameter(
                "H-spec coefficients A_i, B_j must be positive and finite".into(),
            ));
        }
        let spec = HFunctionSpec { m, n, upper, lower };
        spec.check_pole_separation()?;
        Ok(spec)
    }

    pub fn p(&self) -> usize {
        self.upper.len()
    }

    pub fn q(&self) -> usize {
        self.lower.len()
    }

    /// Non-coincidence condition B_k(b_j + l) != B_j(b_k + s) for the first
    /// m lower parameters: the pole lattices (b_j + l)/B_j must be disjoint.
    fn check_pole_separation(&self) -> Result<()> {
        const LATTICE_BUDGET: usize = 256;
        for j in 0..self.m {
            for k in 0..self.m {
                if j == k {
                    continue;
                }
                let (bj, bbj) = self.lower[j];
                let (bk, bbk) = self.lower[k];
                for l in 0..LATTICE_BUDGET {
                    let s = ((bj + l as f64) / bbj) * bbk - bk;
                    if s >= -1e-12 && (s - s.round()).abs() < 1e-10 {
                        return Err(Error::InvalidParameter(format!(
                            "H-spec pole coincidence between lower parameters {j} and {k}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Σ B_j − Σ A_j > 0 and m >= 1: the residue series applies directly.
    pub fn series_convergent(&self) -> bool {
        let sb: f64 = self.lower.iter().map(|&(_, b)| b).sum();
        let sa: f64 = self.upper.iter().map(|&(_, a)| a).sum();
        self.m >= 1 && sb - sa > 0.0
    }

    /// Inversion formula: H^{m,n}_{p,q}(z) = H^{n,m}_{q,p}(1/z) with
    /// parameter lists (1-b, B) on top and (1-a, A) below.
    pub fn invert(&self) -> Result<HFunctionSpec> {
        let upper: Vec<(f64, f64)> = self.lower.iter().map(|&(b, bb)| (1.0 - b, bb)).collect();
        let lower: Vec<(f64, f64)> = self.upper.iter().map(|&(a, aa)| (1.0 - a, aa)).collect();
        HFunctionSpec::new(self.n, self.m, upper, lower)
    }

    /// Power shift: z^σ H(z | (a,A); (b,B)) = H(z | (a+σA, A); (b+σB, B)).
    pub fn power_shift(&self, sigma: f64) -> Result<HFunctionSpec> {
        let upper = self
            .upper
            .iter()
            .map(|&(a, aa)| (a + sigma * aa, aa))
            .collect();
        let lower = self
            .lower
            .iter()
            .map(|&(b, bb)| (b + sigma * bb, bb))
            .collect();
        HFunctionSpec::new(self.m, self.n, upper, lower)
    }
}

/// H^{1,0}_{0,1}(z | —; (0,1)) = e^{-z}.
pub fn exp_spec() -> HFunctionSpec {
    HFunctionSpec::new(1, 0, vec![], vec![(0.0, 1.0)]).unwrap()
}

/// H^{1,0}_{1,1}(s | (1-β, β); (0,1)) = M_β(s).
pub fn m_wright_spec(beta: f64) -> Result<HFunctionSpec> {
    HFunctionSpec::new(1, 0, vec![(1.0 - beta, beta)], vec![(0.0, 1.0)])
}

/// H^{2,0}_{1,2}(w | (1-β/2, β); (0,1), (1/2,1)): the reduced heat kernel.
pub fn heat_kernel_spec(beta: f64) -> Result<HFunctionSpec> {
    HFunctionSpec::new(
        2,
        0,
        vec![(1.0 - beta / 2.0, beta)],
        vec![(0.0, 1.0), (0.5, 1.0)],
    )
}

fn series_term(spec: &HFunctionSpec, i: usize, k: usize, z: f64) -> Result<f64> {
    let (bi, bbi) = spec.lower[i];
    let s = (bi + k as f64) / bbi;
    let mut t = 1.0;
    for (j, &(bj, bbj)) in spec.lower.iter().enumerate().take(spec.m) {
        if j == i {
            continue;
        }
        let arg = bj - s * bbj;
        if arg <= 0.0 && arg == arg.floor() {
            return Err(Error::InvalidParameter(format!(
                "H-series numerator gamma pole at lower parameter {j}, k={k}"
            )));
        }
        t *= gamma_unchecked(arg);
    }
    for &(aj, aaj) in spec.upper.iter().take(spec.n) {
        let arg = 1.0 - aj + s * aaj;
        if arg <= 0.0 && arg == arg.floor() {
            return Err(Error::InvalidParameter(format!(
                "H-series numerator gamma pole at upper parameter, k={k}"
            )));
        }
        t *= gamma_unchecked(arg);
    }
    for &(bj, bbj) in spec.lower.iter().skip(spec.m) {
        t *= recip_gamma(1.0 - bj + s * bbj);
    }
    for &(aj, aaj) in spec.upper.iter().skip(spec.n) {
        t *= recip_gamma(aj - s * aaj);
    }
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    // k! built inline would overflow for k > 170; use ln for the scale
    let ln_kfact = super::gamma::ln_abs_gamma(k as f64 + 1.0);
    let scale = (s * z.ln() - ln_kfact).exp();
    Ok(t * sign * scale / bbi)
}

fn fox_h_series(spec: &HFunctionSpec, z: f64, tol: f64) -> Result<SeriesResult<f64>> {
    const MAX_K: usize = 600;
    let mut acc = Kahan::default();
    let mut below = 0;
    let mut last_layer = 0.0;
    let mut prev_layer = f64::INFINITY;
    let mut growing = 0;
    for k in 0..MAX_K {
        let mut layer = 0.0;
        for i in 0..spec.m {
            let t = series_term(spec, i, k, z)?;
            if !t.is_finite() {
                return Err(Error::Divergence(format!(
                    "H-series term overflow at k={k}"
                )));
            }
            acc.add(t);
            layer += t.abs();
        }
        last_layer = layer;
        if layer < tol * acc.value().abs().max(f64::MIN_POSITIVE) && k >= 4 {
            below += 1;
            if below >= 3 {
                return Ok(SeriesResult {
                    value: acc.value(),
                    terms_used: k + 1,
                    error_estimate: layer + f64::EPSILON * acc.value().abs(),
                });
            }
        } else {
            below = 0;
        }
        if layer > prev_layer && k > 20 {
            growing += 1;
            if growing > 40 {
                return Err(Error::Divergence(
                    "H-series terms not decaying within term budget".into(),
                ));
            }
        } else {
            growing = 0;
        }
        prev_layer = layer;
    }
    Err(Error::AccuracyLoss {
        value: num_complex::Complex64::new(acc.value(), 0.0),
        estimate: last_layer,
        tol,
    })
}

/// Evaluate the H-function at z > 0.
pub fn fox_h(spec: &HFunctionSpec, z: f64, tol: f64) -> Result<SeriesResult<f64>> {
    if !(z > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "fox_h requires z > 0, got {z}"
        )));
    }
    let tol = if tol > 0.0 { tol } else { DEFAULT_TOL };
    if spec.series_convergent() {
        return fox_h_series(spec, z, tol);
    }
    let inv = spec.invert()?;
    if inv.series_convergent() {
        return fox_h_series(&inv, 1.0 / z, tol);
    }
    Err(Error::InvalidParameter(
        "H-spec outside the series-convergent class in both orientations".into(),
    ))
}

//! Incomplete gamma functions, their order derivatives, and the log integrals they generate.

use serde::Serialize;

use crate::ctrl::Tail;
use crate::error::{Error, Result};
use crate::hypergeom::f22_log;
use crate::kernels::{digamma, expint_ei, gamma};
use crate::whittaker::{real_power, snap_int};
use crate::{KernelValue, SeriesCtrl};

/// (ν, x) with ν > 0 and x >= 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IncGammaArgs {
    pub nu: f64,
    pub x: f64,
}

impl IncGammaArgs {
    pub fn new(nu: f64, x: f64) -> Result<Self> {
        if !(nu > 0.0) || !nu.is_finite() {
            return Err(Error::Domain(format!("incomplete gamma needs nu > 0, got {nu}")));
        }
        if !(x >= 0.0) || !x.is_finite() {
            return Err(Error::Domain(format!("incomplete gamma needs finite x >= 0, got {x}")));
        }
        Ok(IncGammaArgs { nu, x })
    }
}

/// e^{−z} Σ z^{k+ν}/(ν)_{k+1}; z < 0 needs integer ν.
pub(crate) fn lower_gamma_series(nu: f64, z: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    if z == 0.0 {
        return Ok(KernelValue::exact(0.0));
    }
    if z < 0.0 && snap_int(nu).is_none() {
        return Err(Error::Branch(format!("gamma(nu, z) at z < 0 is real only for integer nu, got {nu}")));
    }
    let mut term = real_power(z, nu)? / nu;
    let mut sum = term;
    let mut biggest = term.abs();
    let mut tail = Tail::default();
    for k in 0..ctrl.max_terms {
        term *= z / (nu + k as f64 + 1.0);
        sum += term;
        biggest = biggest.max(term.abs());
        if tail.done(term, sum, k + 2, ctrl) {
            let e = (-z).exp();
            let err = e * (10.0 * term.abs() + biggest * (k as f64 + 2.0) * f64::EPSILON);
            return Ok(KernelValue::new(e * sum, err, k + 2));
        }
    }
    Err(Error::Convergence { what: "lower incomplete gamma series".into(), terms: ctrl.max_terms })
}

/// γ(ν, x) = ∫₀ˣ t^{ν−1} e^{−t} dt.
pub fn lower_gamma(a: &IncGammaArgs) -> Result<KernelValue> {
    lower_gamma_series(a.nu, a.x, &SeriesCtrl::default())
}

/// Γ(ν, x) = Γ(ν) − γ(ν, x).
pub fn upper_gamma(a: &IncGammaArgs) -> Result<KernelValue> {
    let g = gamma(a.nu)?;
    let lo = lower_gamma(a)?;
    if lo.value / g > 1.0 - 1e-8 {
        log::warn!("upper_gamma({}, {}): complement loses more than 8 digits to cancellation", a.nu, a.x);
    }
    Ok(KernelValue::new(g - lo.value, lo.abs_err_est + g * f64::EPSILON, lo.terms_used))
}

/// Γ(ν, x) for any real ν and x > 0, by downward recurrence from ν + k > 0
/// (with Γ(0, x) = −Ei(−x)).
pub(crate) fn upper_gamma_any(nu: f64, x: f64) -> Result<f64> {
    if nu > 0.0 {
        return Ok(upper_gamma(&IncGammaArgs::new(nu, x)?)?.value);
    }
    if !(x > 0.0) {
        return Err(Error::Domain(format!("Gamma(nu, x) with nu <= 0 needs x > 0, got {x}")));
    }
    let (mut s, mut v) = match snap_int(nu) {
        Some(_) => (0.0, -expint_ei(-x)?),
        None => {
            let s0 = nu - nu.floor();
            (s0, upper_gamma(&IncGammaArgs::new(s0, x)?)?.value)
        }
    };
    // Γ(s−1, x) = (Γ(s, x) − x^{s−1} e^{−x}) / (s − 1)
    while s > nu + 0.5 {
        v = (v - x.powf(s - 1.0) * (-x).exp()) / (s - 1.0);
        s -= 1.0;
    }
    Ok(v)
}

/// e^{−x} Σ_k x^{k+ν}/(ν)_{k+1} · Σ_{j<=k} 1/(ν+j), equal to (x^ν/ν²) ₂F₂(ν,ν;ν+1,ν+1;−x)
/// but free of cancellation for large x.
fn f22_term_positive(nu: f64, x: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    let mut term = x.powf(nu) / nu;
    let mut h = 1.0 / nu;
    let mut sum = term * h;
    let mut tail = Tail::default();
    for k in 0..ctrl.max_terms {
        let nk = nu + k as f64 + 1.0;
        term *= x / nk;
        h += 1.0 / nk;
        let t = term * h;
        sum += t;
        if tail.done(t, sum, k + 2, ctrl) {
            let e = (-x).exp();
            return Ok(KernelValue::new(e * sum, e * (10.0 * t + sum * (k as f64 + 2.0) * f64::EPSILON), k + 2));
        }
    }
    Err(Error::Convergence { what: "order-derivative series of gamma(nu,x)".into(), terms: ctrl.max_terms })
}

fn f22_term(nu: f64, x: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    if x > 1.0 {
        f22_term_positive(nu, x, ctrl)
    } else {
        Ok(f22_log(nu, -x, ctrl)?.scale(x.powf(nu) / (nu * nu)))
    }
}

/// ∂γ(ν,x)/∂ν = γ(ν,x) ln x − (x^ν/ν²) ₂F₂(ν,ν;ν+1,ν+1;−x).
pub fn dgamma_dnu(a: &IncGammaArgs) -> Result<KernelValue> {
    if a.x == 0.0 {
        return Ok(KernelValue::exact(0.0));
    }
    let ctrl = SeriesCtrl::default();
    let g = lower_gamma(a)?;
    let f = f22_term(a.nu, a.x, &ctrl)?;
    let lnx = a.x.ln();
    let v = g.value * lnx - f.value;
    Ok(KernelValue::new(v, g.abs_err_est * lnx.abs() + f.abs_err_est, g.terms_used.max(f.terms_used)))
}

/// ∂Γ(ν,x)/∂ν = Γ(ν)ψ(ν) − γ(ν,x) ln x + (x^ν/ν²) ₂F₂(ν,ν;ν+1,ν+1;−x).
#[allow(non_snake_case)]
pub fn dGamma_dnu(a: &IncGammaArgs) -> Result<KernelValue> {
    let full = gamma(a.nu)? * digamma(a.nu)?;
    let d = dgamma_dnu(a)?;
    Ok(KernelValue::new(full - d.value, d.abs_err_est + full.abs() * f64::EPSILON, d.terms_used))
}

/// ∫₀ˣ t^{ν−1} e^{−t} ln t dt.
pub fn log_integral_gamma(nu: f64, x: f64) -> Result<KernelValue> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("log_integral_gamma needs x > 0, got {x}")));
    }
    dgamma_dnu(&IncGammaArgs::new(nu, x)?)
}

/// ∫₀¹ e^{xt} t^{ν−1} ln t dt = −(1/ν²) ₂F₂(ν,ν;ν+1,ν+1;x).
pub fn log_integral_exp(nu: f64, x: f64) -> Result<KernelValue> {
    if !(nu > 0.0) {
        return Err(Error::Domain(format!("log_integral_exp needs nu > 0, got {nu}")));
    }
    Ok(f22_log(nu, x, &SeriesCtrl::default())?.scale(-1.0 / (nu * nu)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_series_matches_2f2_form() {
        let c = SeriesCtrl::default();
        for (nu, x) in [(0.5, 1.5), (2.0, 3.0), (1.0, 0.9)] {
            let a = f22_term_positive(nu, x, &c).unwrap().value;
            let b = f22_log(nu, -x, &c).unwrap().value * x.powf(nu) / (nu * nu);
            assert!((a - b).abs() < 1e-13 * b.abs(), "nu={nu} x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn upper_gamma_negative_orders() {
        // Γ(0, 1) = E1(1) = 0.21938393439552...
        assert!((upper_gamma_any(0.0, 1.0).unwrap() - 0.219_383_934_395_520_27).abs() < 1e-14);
        // Γ(−1/2, 1) = 2e^{−1} − 2√π erfc(1)
        let r = 2.0 * (-1f64).exp() - 2.0 * std::f64::consts::PI.sqrt() * libm::erfc(1.0);
        assert!((upper_gamma_any(-0.5, 1.0).unwrap() - r).abs() < 1e-13);
        // Γ(−1, 1) = e^{−1} − E1(1)
        let r = (-1f64).exp() - 0.219_383_934_395_520_27;
        assert!((upper_gamma_any(-1.0, 1.0).unwrap() - r).abs() < 1e-14);
    }
}

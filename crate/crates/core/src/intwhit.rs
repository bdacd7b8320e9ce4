//! Integral Whittaker functions Mi = ∫₀ˣ M(t)/t dt and mi = ∫ₓ^∞ M(t)/t dt.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergeom::{pfq, PfqArgs};
use crate::incgamma::{lower_gamma_series, upper_gamma_any};
use crate::kernels::{binomial, factorial, gamma, is_nonpositive_integer, pochhammer};
use crate::quad::{quad_de, quad_truncated, upper_gamma_bound, Endpoints, QuadCtrl};
use crate::whittaker::{real_power, snap_int, WhittakerParams};
use crate::{KernelValue, SeriesCtrl};

/// (κ, μ, x) with μ > −½ so that M(t)/t is integrable at 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntWhittakerArgs {
    pub kappa: f64,
    pub mu: f64,
    pub x: f64,
}

impl IntWhittakerArgs {
    pub fn new(kappa: f64, mu: f64, x: f64) -> Result<Self> {
        if !(mu > -0.5) {
            return Err(Error::Domain(format!("Mi/mi need mu > -1/2 for integrability at 0, got {mu}")));
        }
        if !(x > 0.0) || !x.is_finite() || !kappa.is_finite() {
            return Err(Error::Domain(format!("Mi/mi need finite kappa and x > 0, got kappa={kappa}, x={x}")));
        }
        Ok(IntWhittakerArgs { kappa, mu, x })
    }
}

/// M(t)/t with the power written against the exact distance from 0.
fn m_over_t(kappa: f64, mu: f64, t: f64, dist0: f64, ctrl: &SeriesCtrl) -> f64 {
    let f = match pfq(&PfqArgs::new(vec![0.5 + mu - kappa], vec![1.0 + 2.0 * mu], t), ctrl) {
        Ok(v) => v.value,
        Err(_) => return f64::NAN,
    };
    let pw = if t > 0.0 {
        dist0.powf(mu - 0.5)
    } else {
        // (−d)^{μ+½}/(−d) with μ+½ integer
        match real_power(-dist0, mu + 0.5) {
            Ok(p) => -p / dist0,
            Err(_) => f64::NAN,
        }
    };
    pw * (-t / 2.0).exp() * f
}

/// Mi_{κ,μ}(x) by quadrature.
pub fn mi_lower(a: &IntWhittakerArgs, ctrl: &QuadCtrl) -> Result<KernelValue> {
    mi_lower_signed(a.kappa, a.mu, a.x, ctrl)
}

/// Mi by quadrature for any x; x < 0 requires μ + ½ integer.
pub fn mi_lower_signed(kappa: f64, mu: f64, x: f64, ctrl: &QuadCtrl) -> Result<KernelValue> {
    let p = WhittakerParams::new(kappa, mu, x)?;
    if !(mu > -0.5) {
        return Err(Error::Domain(format!("Mi needs mu > -1/2, got {mu}")));
    }
    let s = SeriesCtrl::default();
    if x >= 0.0 {
        quad_de(|t, d0, _| m_over_t(kappa, mu, t, d0, &s), 0.0, x, Endpoints::new(mu - 0.5, 0.0), ctrl)
    } else {
        if p.integer_power().is_none() {
            return Err(Error::Branch(format!("Mi at x < 0 is real only for mu + 1/2 integer, got mu = {mu}")));
        }
        let v = quad_de(|t, _, d0| m_over_t(kappa, mu, t, d0, &s), x, 0.0, Endpoints::new(0.0, mu - 0.5), ctrl)?;
        Ok(v.scale(-1.0))
    }
}

/// mi_{κ,μ}(x) by truncated quadrature; only for polynomial ₁F₁ (½+μ−κ a nonpositive integer).
pub fn mi_upper(a: &IntWhittakerArgs, ctrl: &QuadCtrl) -> Result<KernelValue> {
    let (kappa, mu, x) = (a.kappa, a.mu, a.x);
    let aa = 0.5 + mu - kappa;
    if !is_nonpositive_integer(aa) {
        return Err(Error::Divergence(format!(
            "mi diverges unless 1F1 is a polynomial (1/2 + mu - kappa a nonpositive integer); got {aa}"
        )));
    }
    let n = (-aa).round() as usize;
    let b = 1.0 + 2.0 * mu;
    let c: f64 = (0..=n).map(|k| (pochhammer(-(n as f64), k) / pochhammer(b, k) / factorial(k)).abs()).sum();
    let s_exp = mu + 0.5 + n as f64;
    let tail = move |t: f64| {
        (t >= 1.0).then(|| c * 2f64.powf(s_exp) * upper_gamma_bound(s_exp, t / 2.0).unwrap_or(f64::INFINITY))
    };
    let s = SeriesCtrl::default();
    quad_truncated(move |t, _, _| m_over_t(kappa, mu, t, t, &s), x, Endpoints::REGULAR, tail, 5e-12, ctrl)
}

fn pochhammer_checked(kappa: f64, n: usize) -> Result<Vec<f64>> {
    (0..=n)
        .map(|m| {
            let p = pochhammer(2.0 * kappa, m);
            if p == 0.0 {
                Err(Error::PochhammerZero(format!("(2 kappa)_{m} = 0 at kappa = {kappa}")))
            } else {
                Ok(p)
            }
        })
        .collect()
}

/// Mi_{κ+n, κ−½}(x) = 2^κ Σ_m C(n,m)(−2)^m/(2κ)_m · γ(κ+m, x/2).
pub fn mi_lower_reduced(kappa: f64, n: usize, x: f64) -> Result<KernelValue> {
    if !(kappa > 0.0) || !(x > 0.0) {
        return Err(Error::Domain(format!("Mi reduction needs kappa > 0 and x > 0 (kappa={kappa}, x={x})")));
    }
    let poch = pochhammer_checked(kappa, n)?;
    let ctrl = SeriesCtrl::default();
    let mut v = 0.0;
    let mut err = 0.0;
    for (m, pm) in poch.iter().enumerate() {
        let c = binomial(n, m) * (-2f64).powi(m as i32) / pm;
        let g = lower_gamma_series(kappa + m as f64, x / 2.0, &ctrl)?;
        v += c * g.value;
        err += (c * g.abs_err_est).abs();
    }
    let s = 2f64.powf(kappa);
    Ok(KernelValue::new(s * v, s * err, n + 1))
}

/// mi_{κ+n, κ−½}(x) = 2^κ Σ_m C(n,m)(−2)^m/(2κ)_m · Γ(κ+m, x/2).
pub fn mi_upper_reduced(kappa: f64, n: usize, x: f64) -> Result<KernelValue> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("mi reduction needs x > 0, got {x}")));
    }
    let poch = pochhammer_checked(kappa, n)?;
    let mut v = 0.0;
    let mut mag = 0.0;
    for (m, pm) in poch.iter().enumerate() {
        let c = binomial(n, m) * (-2f64).powi(m as i32) / pm;
        let g = upper_gamma_any(kappa + m as f64, x / 2.0)?;
        v += c * g;
        mag += (c * g).abs();
    }
    let s = 2f64.powf(kappa);
    Ok(KernelValue::new(s * v, s * mag * 1e-14, n + 1))
}

/// 2^κ Σ_m C(n,m)(−2)^m/(2κ)_m · Γ(κ+m): the sum of the two reductions.
pub fn mi_complement(kappa: f64, n: usize) -> Result<f64> {
    let poch = pochhammer_checked(kappa, n)?;
    let mut v = 0.0;
    for (m, pm) in poch.iter().enumerate() {
        v += binomial(n, m) * (-2f64).powi(m as i32) / pm * gamma(kappa + m as f64)?;
    }
    Ok(2f64.powf(kappa) * v)
}

/// Mi_{−κ−n, κ−½}(x) = (−1)^κ 2^κ Σ_m C(n,m)(−2)^m/(2κ)_m · γ(κ+m, −x/2), integer κ > 0.
pub fn mi_lower_reflected(kappa: f64, n: usize, x: f64) -> Result<KernelValue> {
    let k = snap_int(kappa).filter(|k| *k > 0).ok_or_else(|| {
        Error::Branch(format!("reflected Mi needs (-1)^kappa real with kappa a positive integer, got {kappa}"))
    })?;
    if x == 0.0 {
        return Ok(KernelValue::exact(0.0));
    }
    let poch = pochhammer_checked(kappa, n)?;
    let ctrl = SeriesCtrl::default();
    let mut v = 0.0;
    let mut err = 0.0;
    for (m, pm) in poch.iter().enumerate() {
        let c = binomial(n, m) * (-2f64).powi(m as i32) / pm;
        let g = lower_gamma_series(kappa + m as f64, -x / 2.0, &ctrl)?;
        v += c * g.value;
        err += (c * g.abs_err_est).abs();
    }
    let s = if k % 2 == 0 { 1.0 } else { -1.0 } * 2f64.powf(kappa);
    Ok(KernelValue::new(s * v, s.abs() * err, n + 1))
}

//! The Whittaker function M_{κ,μ}(x) = x^{μ+½} e^{−x/2} ₁F₁(½+μ−κ; 1+2μ; x).

pub mod catalog;
pub mod lm;

use serde::Serialize;

use crate::ctrl::Closed;
use crate::error::{Error, Result};
use crate::hypergeom::{pfq, PfqArgs};
use crate::kernels::{bessel_i, factorial, gamma, is_nonpositive_integer, laguerre, pochhammer};
use crate::{KernelValue, SeriesCtrl};

pub use catalog::{table5, ClosedForm};
pub use lm::{f_func, p_poly};

const SNAP: f64 = 1e-12;

/// Snap `v` to an integer within 1e-12.
pub fn snap_int(v: f64) -> Option<i64> {
    let r = v.round();
    ((v - r).abs() <= SNAP).then_some(r as i64)
}

pub(crate) fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= SNAP
}

/// A validated (κ, μ, x) triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WhittakerParams {
    pub kappa: f64,
    pub mu: f64,
    pub x: f64,
}

impl WhittakerParams {
    pub fn new(kappa: f64, mu: f64, x: f64) -> Result<Self> {
        if !(kappa.is_finite() && mu.is_finite() && x.is_finite()) {
            return Err(Error::Domain("kappa, mu and x must be finite".into()));
        }
        if is_nonpositive_integer(1.0 + 2.0 * mu) || snap_int(2.0 * mu).is_some_and(|n| n < 0) {
            return Err(Error::Domain(format!(
                "M_(kappa,mu) is undefined for 2mu in {{-1, -2, -3, ...}} (2mu != -1, -2, ...); got mu = {mu}"
            )));
        }
        Ok(WhittakerParams { kappa, mu, x })
    }

    /// ½ + μ − κ, the first ₁F₁ parameter.
    pub fn a(&self) -> f64 {
        0.5 + self.mu - self.kappa
    }

    /// 1 + 2μ, the second ₁F₁ parameter.
    pub fn b(&self) -> f64 {
        1.0 + 2.0 * self.mu
    }

    /// μ ± κ + ½ > 0, required by the Euler-type integral representations.
    pub fn integral_admissible(&self) -> bool {
        self.mu + self.kappa + 0.5 > 0.0 && self.mu - self.kappa + 0.5 > 0.0
    }

    /// μ + ½ is an integer, so x^{μ+½} is real for x < 0.
    pub fn integer_power(&self) -> Option<i64> {
        snap_int(self.mu + 0.5)
    }
}

/// x^p with an integer-power branch for negative x.
pub(crate) fn real_power(x: f64, p: f64) -> Result<f64> {
    if x > 0.0 {
        return Ok(x.powf(p));
    }
    if x == 0.0 {
        return match p {
            p if p > 0.0 => Ok(0.0),
            0.0 => Ok(1.0),
            _ => Err(Error::Overflow(format!("x^{p} is infinite at x = 0"))),
        };
    }
    match snap_int(p) {
        Some(n) => Ok(x.powi(n as i32)),
        None => Err(Error::Branch(format!("x^{p} is not real for x = {x} < 0 (needs an integer exponent)"))),
    }
}

/// Definition route through the ₁F₁ series.
pub fn m_series(p: &WhittakerParams, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    let pre = real_power(p.x, p.mu + 0.5)? * (-p.x / 2.0).exp();
    if pre == 0.0 {
        return Ok(KernelValue::exact(0.0));
    }
    let f = pfq(&PfqArgs::new(vec![p.a()], vec![p.b()], p.x), ctrl)?;
    Ok(f.scale(pre))
}

/// M_{κ,μ}(x) = (−1)^{μ+½} M_{−κ,μ}(−x), for integer μ + ½.
pub fn m_reflect(p: &WhittakerParams, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    let n = p.integer_power().ok_or_else(|| {
        Error::Branch(format!("reflection phase (-1)^(mu+1/2) is not real for mu = {}; needs mu + 1/2 integer", p.mu))
    })?;
    let q = WhittakerParams::new(-p.kappa, p.mu, -p.x)?;
    let s = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Ok(m_series(&q, ctrl)?.scale(s))
}

/// Laguerre family κ = κ₀ + n, μ = κ₀ − ½, κ₀ > 0.
pub fn m_laguerre(k0: f64, n: usize, x: f64) -> Result<KernelValue> {
    if !(k0 > 0.0) || !(x > 0.0) {
        return Err(Error::Domain(format!("Laguerre form needs kappa0 > 0 and x > 0 (kappa0={k0}, x={x})")));
    }
    let v = factorial(n) * (-x / 2.0).exp() * x.powf(k0) * laguerre(n, 2.0 * k0 - 1.0, x) / pochhammer(2.0 * k0, n);
    Ok(KernelValue::new(v, 32.0 * f64::EPSILON * v.abs(), n + 1))
}

/// Negated family M_{−κ₀−n, κ₀−½}(x).
pub fn m_laguerre_negated(k0: f64, n: usize, x: f64) -> Result<KernelValue> {
    if !(k0 > 0.0) || !(x > 0.0) {
        return Err(Error::Domain(format!("negated Laguerre form needs kappa0 > 0 and x > 0 (kappa0={k0}, x={x})")));
    }
    let v = factorial(n) * (x / 2.0).exp() * x.powf(k0) * laguerre(n, 2.0 * k0 - 1.0, -x) / pochhammer(2.0 * k0, n);
    Ok(KernelValue::new(v, 32.0 * f64::EPSILON * v.abs(), n + 1))
}

/// Bessel family M_{0,μ}(x) = 4^μ Γ(1+μ) √x I_μ(x/2).
pub fn m_bessel(mu: f64, x: f64) -> Result<KernelValue> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("Bessel form needs x > 0, got {x}")));
    }
    let v = 4f64.powf(mu) * gamma(1.0 + mu)? * x.sqrt() * bessel_i(mu, x / 2.0)?;
    Ok(KernelValue::new(v, 64.0 * f64::EPSILON * v.abs(), 0))
}

/// (ℓ, m) indices when κ = ℓ/2, μ = m + (1−ℓ)/2 with m >= max(ℓ, 0).
pub fn lm_indices(kappa: f64, mu: f64) -> Option<(i64, i64)> {
    let l = snap_int(2.0 * kappa)?;
    let m = snap_int(mu - (1.0 - l as f64) / 2.0)?;
    (m >= 0 && m >= l).then_some((l, m))
}

/// (κ₀, n) when κ = κ₀ + n, μ = κ₀ − ½, κ₀ > 0.
pub fn laguerre_indices(kappa: f64, mu: f64) -> Option<(f64, usize)> {
    let k0 = mu + 0.5;
    let n = snap_int(kappa - k0)?;
    (k0 > SNAP && n >= 0).then_some((k0, n as usize))
}

/// Catalogued closed forms, in dispatch order.
pub fn m_reduced(p: &WhittakerParams) -> Option<Closed> {
    if !(p.x > 0.0) {
        return None;
    }
    if let Some(row) = table5().iter().find(|r| r.matches(p.kappa, p.mu)) {
        if let Ok(v) = (row.eval)(p.x) {
            return Some(Closed::new(KernelValue::new(v, 64.0 * f64::EPSILON * v.abs(), 0), row.citation));
        }
    }
    if let Some((l, m)) = lm_indices(p.kappa, p.mu) {
        if let Ok(v) = lm::m_lm(l, m, p.x) {
            return Some(Closed::new(v, "M (l,m) P-polynomial reduction"));
        }
    }
    if let Some((k0, n)) = laguerre_indices(p.kappa, p.mu) {
        if let Ok(v) = m_laguerre(k0, n, p.x) {
            return Some(Closed::new(v, "M Laguerre-polynomial family"));
        }
    }
    if near(p.kappa, 0.0) && p.mu > -1.0 {
        if let Ok(v) = m_bessel(p.mu, p.x) {
            return Some(Closed::new(v, "M_(0,mu) Bessel form"));
        }
    }
    let k0 = p.mu + 0.5;
    if k0 > SNAP {
        if let Some(n) = snap_int(-p.kappa - k0).filter(|n| *n >= 0) {
            if let Ok(v) = m_laguerre_negated(k0, n as usize, p.x) {
                return Some(Closed::new(v, "M negated-index Laguerre family"));
            }
        }
    }
    None
}

/// M by whichever route is admissible: series for x >= 0, reflection for x < 0.
pub fn m_value(p: &WhittakerParams, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    if p.x < 0.0 && p.integer_power().is_none() {
        return Err(Error::Branch(format!("M at x < 0 is real only for mu + 1/2 integer; got mu = {}", p.mu)));
    }
    m_series(p, ctrl)
}

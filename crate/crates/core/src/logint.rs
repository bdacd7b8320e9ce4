//! Finite logarithmic integrals I₁–I₄, J₁–J₄ and the infinite Bessel-kernel integrals ℋ₁, ℋ₂.

use serde::{Deserialize, Serialize};

use crate::ctrl::Closed;
use crate::error::{Error, Result};
use crate::hypergeom::{g1, h1, pfq, PfqArgs};
use crate::kernels::{bessel_i, bessel_i_raw, bessel_j_raw, beta, dbessel_i_dnu_any, digamma, gamma};
use crate::quad::{quad_de, quad_truncated, upper_gamma_bound, Endpoints, QuadCtrl};
use crate::whittaker::{lm, lm_indices, m_series, near, WhittakerParams};
use crate::{KernelValue, SeriesCtrl};

/// Integral family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    I,
    J,
    H,
}

/// One of I₁..I₄, J₁..J₄, ℋ₁, ℋ₂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralId {
    pub family: Family,
    pub index: u8,
}

impl IntegralId {
    pub fn new(family: Family, index: u8) -> Result<Self> {
        let max = if family == Family::H { 2 } else { 4 };
        if !(1..=max).contains(&index) {
            return Err(Error::Domain(format!("{family:?} integrals are numbered 1..={max}, got {index}")));
        }
        Ok(IntegralId { family, index })
    }
}

pub const I_INT: [IntegralId; 4] = [
    IntegralId { family: Family::I, index: 1 },
    IntegralId { family: Family::I, index: 2 },
    IntegralId { family: Family::I, index: 3 },
    IntegralId { family: Family::I, index: 4 },
];
pub const J_INT: [IntegralId; 4] = [
    IntegralId { family: Family::J, index: 1 },
    IntegralId { family: Family::J, index: 2 },
    IntegralId { family: Family::J, index: 3 },
    IntegralId { family: Family::J, index: 4 },
];

/// How to evaluate a finite or infinite logarithmic integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntRoute {
    Quad,
    Closed,
    Relation,
}

fn admissible(kappa: f64, mu: f64) -> Result<()> {
    if mu + kappa + 0.5 > 0.0 && mu - kappa + 0.5 > 0.0 {
        Ok(())
    } else {
        Err(Error::Integrability(format!(
            "finite logarithmic integrals need mu +/- kappa + 1/2 > 0 (kappa = {kappa}, mu = {mu})"
        )))
    }
}

/// Direct quadrature of I₁..I₄.
pub fn i_quad(id: IntegralId, kappa: f64, mu: f64, x: f64, q: &QuadCtrl) -> Result<KernelValue> {
    finite_quad(id, kappa, mu, x, q)
}

/// Direct quadrature of J₁..J₄.
pub fn j_quad(id: IntegralId, kappa: f64, mu: f64, x: f64, q: &QuadCtrl) -> Result<KernelValue> {
    finite_quad(id, kappa, mu, x, q)
}

fn finite_quad(id: IntegralId, kappa: f64, mu: f64, x: f64, q: &QuadCtrl) -> Result<KernelValue> {
    admissible(kappa, mu)?;
    let lo = mu - kappa - 0.5;
    let hi = mu + kappa - 0.5;
    let log_j = id.family == Family::J;
    match (id.family, id.index) {
        (Family::I | Family::J, 1) => quad_de(
            |t, a, b| {
                let l = if log_j { a.ln() + b.ln() } else { b.ln() - a.ln() };
                (x * t).exp() * a.powf(lo) * b.powf(hi) * l
            },
            0.0,
            1.0,
            Endpoints::new(lo, hi),
            q,
        ),
        (Family::I | Family::J, 2) => quad_de(
            |t, a, b| {
                let l = if log_j { a.ln() + b.ln() } else { a.ln() - b.ln() };
                (-x * t).exp() * a.powf(hi) * b.powf(lo) * l
            },
            0.0,
            1.0,
            Endpoints::new(hi, lo),
            q,
        ),
        (Family::I | Family::J, 3) => quad_de(
            |t, a, b| {
                let l = if log_j { a.ln() + b.ln() } else { b.ln() - a.ln() };
                (x * t / 2.0).exp() * a.powf(lo) * b.powf(hi) * l
            },
            -1.0,
            1.0,
            Endpoints::new(lo, hi),
            q,
        ),
        (Family::I | Family::J, 4) => quad_de(
            |t, a, b| {
                let l = if log_j { a.ln() + b.ln() } else { a.ln() - b.ln() };
                (-x * t / 2.0).exp() * a.powf(hi) * b.powf(lo) * l
            },
            -1.0,
            1.0,
            Endpoints::new(hi, lo),
            q,
        ),
        _ => Err(Error::Domain(format!("{id:?} is not a finite integral"))),
    }
}

fn f11(a: f64, b: f64, x: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    pfq(&PfqArgs::new(vec![a], vec![b], x), ctrl)
}

/// I₁ from G1: B(μ+κ+½, μ−κ+½){[ψ(½+μ+κ) − ψ(a)] ₁F₁(a;b;x) − G1(a;b;x)}.
pub fn i1_general(kappa: f64, mu: f64, x: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    admissible(kappa, mu)?;
    let a = 0.5 + mu - kappa;
    let b = 1.0 + 2.0 * mu;
    let bb = beta(mu + kappa + 0.5, mu - kappa + 0.5)?;
    let c = digamma(0.5 + mu + kappa)? - digamma(a)?;
    let f = f11(a, b, x, ctrl)?;
    let g = g1(a, b, x, ctrl)?;
    let v = bb * (c * f.value - g.value);
    Ok(KernelValue::new(v, bb.abs() * (c.abs() * f.abs_err_est + g.abs_err_est), f.terms_used.max(g.terms_used)))
}

/// J₁ from G1, H1: B(μ+κ+½, μ−κ+½)[(ψ(½+μ+κ) + ψ(a) − 2ψ(b)) ₁F₁ + G1 + 2H1].
/// No integrability check: this is also the analytic continuation of J₁.
pub fn j1_general(kappa: f64, mu: f64, x: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    let a = 0.5 + mu - kappa;
    let b = 1.0 + 2.0 * mu;
    let bb = beta(mu + kappa + 0.5, mu - kappa + 0.5)?;
    let c = digamma(0.5 + mu + kappa)? + digamma(a)? - 2.0 * digamma(b)?;
    let f = f11(a, b, x, ctrl)?;
    let g = g1(a, b, x, ctrl)?;
    let h = h1(a, b, x, ctrl)?;
    let v = bb * (c * f.value + g.value + 2.0 * h.value);
    let err = bb.abs() * (c.abs() * f.abs_err_est + g.abs_err_est + 2.0 * h.abs_err_est);
    Ok(KernelValue::new(v, err, g.terms_used.max(h.terms_used)))
}

/// I₁(0, μ; x) = −B(μ+½, μ+½) G1(μ+½; 2μ+1; x).
pub fn i1_kappa_zero(mu: f64, x: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    admissible(0.0, mu)?;
    let bb = beta(mu + 0.5, mu + 0.5)?;
    Ok(g1(mu + 0.5, 2.0 * mu + 1.0, x, ctrl)?.scale(-bb))
}

/// Closed forms of I₁.
pub fn i1_closed(kappa: f64, mu: f64, x: f64) -> Option<Closed> {
    admissible(kappa, mu).ok()?;
    let ctrl = SeriesCtrl::default();
    if let Some((l, m)) = lm_indices(kappa, mu) {
        if x != 0.0 {
            if let Ok(v) = lm::i1_lm(l, m, x, &ctrl) {
                return Some(Closed::new(v, "I1 (l,m) F-function reduction"));
            }
        }
    }
    if near(kappa, 0.0) {
        if let Ok(v) = i1_kappa_zero(mu, x, &ctrl) {
            return Some(Closed::new(v, "I1(0,mu) via G1"));
        }
    }
    i1_general(kappa, mu, x, &ctrl).ok().map(|v| Closed::new(v, "I1 general form via 1F1 and G1"))
}

/// J₁(0, μ; x) through I_μ(|x|/2) and its order derivative; μ >= 0, x != 0.
pub fn j1_kappa_zero(mu: f64, x: f64) -> Result<KernelValue> {
    if !(mu >= 0.0) || x == 0.0 {
        return Err(Error::Domain(format!("J1(0,mu;x) Bessel form needs mu >= 0 and x != 0 (mu={mu}, x={x})")));
    }
    let ax = x.abs();
    let y = ax / 2.0;
    let pre = beta(mu + 0.5, mu + 0.5)? * (4.0 / ax).powf(mu) * (x / 2.0).exp() * gamma(1.0 + mu)?;
    let v = pre * (bessel_i(mu, y)? * (digamma(mu + 0.5)? - ax.ln()) + dbessel_i_dnu_any(mu, y)?);
    Ok(KernelValue::new(v, 1e-14 * pre.abs().max(v.abs()), 0))
}

/// J₃(0, μ; x), even in x.
pub fn j3_closed(mu: f64, x: f64) -> Result<KernelValue> {
    if !(mu >= 0.0) || x == 0.0 {
        return Err(Error::Domain(format!("J3(0,mu;x) closed form needs mu >= 0 and x != 0 (mu={mu}, x={x})")));
    }
    let ax = x.abs();
    let y = ax / 2.0;
    let pre = beta(mu + 0.5, mu + 0.5)? * gamma(1.0 + mu)? * (16.0 / ax).powf(mu);
    let v = pre * (bessel_i(mu, y)? * (digamma(mu + 0.5)? + (4.0 / ax).ln()) + dbessel_i_dnu_any(mu, y)?);
    Ok(KernelValue::new(v, 1e-14 * pre.abs().max(v.abs()), 0))
}

/// Closed forms of J₁.
pub fn j1_closed(kappa: f64, mu: f64, x: f64) -> Option<Closed> {
    admissible(kappa, mu).ok()?;
    let ctrl = SeriesCtrl::default();
    if let Some((l, m)) = lm_indices(kappa, mu) {
        if x != 0.0 {
            if let Ok(v) = lm::j1_lm(l, m, x, &ctrl) {
                return Some(Closed::new(v, "J1 (l,m) F-function reduction"));
            }
        }
    }
    if near(kappa, 0.0) {
        if let Ok(v) = j1_kappa_zero(mu, x) {
            return Some(Closed::new(v, "J1(0,mu) via order derivative of I_mu"));
        }
    }
    j1_general(kappa, mu, x, &ctrl).ok().map(|v| Closed::new(v, "J1 general form via 1F1, G1 and H1"))
}

fn i1_best(kappa: f64, mu: f64, x: f64, route: IntRoute, q: &QuadCtrl) -> Result<KernelValue> {
    match route {
        IntRoute::Closed => i1_closed(kappa, mu, x)
            .map(|c| c.value)
            .ok_or_else(|| Error::Domain(format!("no closed form for I1 at (kappa, mu) = ({kappa}, {mu})"))),
        _ => i_quad(I_INT[0], kappa, mu, x, q),
    }
}

fn j1_best(kappa: f64, mu: f64, x: f64, route: IntRoute, q: &QuadCtrl) -> Result<KernelValue> {
    match route {
        IntRoute::Closed => j1_closed(kappa, mu, x)
            .map(|c| c.value)
            .ok_or_else(|| Error::Domain(format!("no closed form for J1 at (kappa, mu) = ({kappa}, {mu})"))),
        _ => j_quad(J_INT[0], kappa, mu, x, q),
    }
}

/// I_index(κ, μ; x). Relation and closed routes reduce to I₁ (quadrature or closed form).
pub fn i_integral(index: u8, kappa: f64, mu: f64, x: f64, route: IntRoute) -> Result<KernelValue> {
    let id = IntegralId::new(Family::I, index)?;
    let q = QuadCtrl::default();
    admissible(kappa, mu)?;
    if route == IntRoute::Quad {
        return i_quad(id, kappa, mu, x, &q);
    }
    let i1 = i1_best(kappa, mu, x, route, &q)?;
    Ok(match index {
        1 => i1,
        2 => i1.scale((-x).exp()),
        _ => i1.scale(4f64.powf(mu) * (-x / 2.0).exp()),
    })
}

/// J_index(κ, μ; x). Relation and closed routes reduce to J₁ plus, for J₃/J₄, an M term.
pub fn j_integral(index: u8, kappa: f64, mu: f64, x: f64, route: IntRoute) -> Result<KernelValue> {
    let id = IntegralId::new(Family::J, index)?;
    let q = QuadCtrl::default();
    admissible(kappa, mu)?;
    if route == IntRoute::Quad {
        return j_quad(id, kappa, mu, x, &q);
    }
    let j1 = j1_best(kappa, mu, x, route, &q)?;
    match index {
        1 => Ok(j1),
        2 => Ok(j1.scale((-x).exp())),
        _ => j3_from_j1(kappa, mu, x, j1),
    }
}

/// J₃ = 2^{2μ}[e^{−x/2} J₁ + ln 4 · x^{−μ−½} B(μ+κ+½, μ−κ+½) M].
pub(crate) fn j3_from_j1(kappa: f64, mu: f64, x: f64, j1: KernelValue) -> Result<KernelValue> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("J3 relation carries x^(-mu-1/2); needs x > 0, got {x}")));
    }
    let p = WhittakerParams::new(kappa, mu, x)?;
    let m = m_series(&p, &SeriesCtrl::default())?;
    let bb = beta(mu + kappa + 0.5, mu - kappa + 0.5)?;
    let c = 4f64.powf(mu);
    let mt = 4f64.ln() * x.powf(-mu - 0.5) * bb;
    let v = c * ((-x / 2.0).exp() * j1.value + mt * m.value);
    let err = c * ((-x / 2.0).exp() * j1.abs_err_est + mt.abs() * m.abs_err_est);
    Ok(KernelValue::new(v, err, j1.terms_used))
}

/// Tail tolerance for the truncated ℋ quadratures.
pub const H_TAIL_TOL: f64 = 5e-11;

/// ℋ₁ or ℋ₂ by truncated quadrature with an analytic tail bound.
pub fn h_quad(index: u8, kappa: f64, mu: f64, x: f64, q: &QuadCtrl) -> Result<KernelValue> {
    IntegralId::new(Family::H, index)?;
    if !(x > 0.0) {
        return Err(Error::Domain(format!("H integrals need x > 0, got {x}")));
    }
    let nu = 2.0 * mu;
    if index == 1 {
        if !(mu - kappa + 0.5 > 0.0) {
            return Err(Error::Integrability(format!("H1 needs mu - kappa + 1/2 > 0 (kappa={kappa}, mu={mu})")));
        }
        let p = -kappa - 0.5;
        // For t >= 16x: I_ν(2√(xt)) <= e^{t/2} and |ln t| <= t.
        let tail = |t: f64| {
            (t >= 16.0 * x).then(|| 2f64.powf(p + 2.0) * upper_gamma_bound(p + 2.0, t / 2.0).unwrap_or(f64::INFINITY))
        };
        quad_truncated(
            |t, a, _| (-t).exp() * a.powf(p) * bessel_i_raw(nu, 2.0 * (x * a).sqrt()).unwrap_or(f64::NAN) * a.ln(),
            0.0,
            Endpoints::new(mu - kappa - 0.5, 0.0),
            tail,
            H_TAIL_TOL,
            q,
        )
    } else {
        if !(mu + kappa + 0.5 > 0.0) {
            return Err(Error::Integrability(format!("H2 needs mu + kappa + 1/2 > 0 (kappa={kappa}, mu={mu})")));
        }
        let p = kappa - 0.5;
        let tail = |t: f64| (t >= 1.0).then(|| upper_gamma_bound(p + 2.0, t).unwrap_or(f64::INFINITY));
        quad_truncated(
            |t, a, _| (-t).exp() * a.powf(p) * bessel_j_raw(nu, 2.0 * (x * a).sqrt()).unwrap_or(f64::NAN) * a.ln(),
            0.0,
            Endpoints::new(mu + kappa - 0.5, 0.0),
            tail,
            H_TAIL_TOL,
            q,
        )
    }
}

/// ℋ₁, ℋ₂ from I₁ and M.
pub fn h_relation(index: u8, kappa: f64, mu: f64, x: f64, i1: KernelValue) -> Result<KernelValue> {
    IntegralId::new(Family::H, index)?;
    let p = WhittakerParams::new(kappa, mu, x)?;
    if !(x > 0.0) {
        return Err(Error::Domain(format!("H relations need x > 0, got {x}")));
    }
    let m = m_series(&p, &SeriesCtrl::default())?;
    let g2 = gamma(1.0 + 2.0 * mu)?;
    let (mc, ic) = if index == 1 {
        (
            gamma(mu - kappa + 0.5)? * digamma(mu + kappa + 0.5)? * (x / 2.0).exp() / (g2 * x.sqrt()),
            -x.powf(mu) / gamma(mu + kappa + 0.5)?,
        )
    } else {
        (
            gamma(mu + kappa + 0.5)? * digamma(mu - kappa + 0.5)? / (g2 * x.sqrt() * (x / 2.0).exp()),
            (-x).exp() * x.powf(mu) / gamma(mu - kappa + 0.5)?,
        )
    };
    let v = mc * m.value + ic * i1.value;
    Ok(KernelValue::new(v, mc.abs() * m.abs_err_est + ic.abs() * i1.abs_err_est, i1.terms_used))
}

/// ℋ_index(κ, μ; x) by the requested route.
pub fn h_integral(index: u8, kappa: f64, mu: f64, x: f64, route: IntRoute) -> Result<KernelValue> {
    let q = QuadCtrl::default();
    match route {
        IntRoute::Quad => h_quad(index, kappa, mu, x, &q),
        IntRoute::Closed => {
            let (l, m) = lm_indices(kappa, mu).ok_or_else(|| {
                Error::Domain(format!("no closed form for H{index} at (kappa, mu) = ({kappa}, {mu})"))
            })?;
            let ctrl = SeriesCtrl::default();
            if index == 1 {
                lm::h1inf_lm(l, m, x, &ctrl)
            } else {
                lm::h2inf_lm(l, m, x, &ctrl)
            }
        }
        IntRoute::Relation => {
            admissible(kappa, mu)?;
            let i1 = match i1_closed(kappa, mu, x) {
                Some(c) => c.value,
                None => i_quad(I_INT[0], kappa, mu, x, &q)?,
            };
            h_relation(index, kappa, mu, x, i1)
        }
    }
}

//! ∂M/∂κ and ∂M/∂μ by digamma-weighted series, closed forms, and integral representations.

use serde::{Deserialize, Serialize};

use crate::ctrl::{combine, Closed, EvalResult};
use crate::error::{Error, Result};
use crate::hypergeom::{g1, g1_one_minus_n, h1, pfq, PfqArgs};
use crate::kernels::{bessel_i, beta, dbessel_i_dnu_any, digamma, gamma, is_nonpositive_integer};
use crate::logint::{i_quad, j_quad, I_INT, J_INT};
use crate::quad::QuadCtrl;
use crate::whittaker::{lm, lm_indices, m_series, near, snap_int, WhittakerParams};
use crate::{KernelValue, SeriesCtrl};

pub use crate::whittaker::lm::f_func;

/// Which evaluation path(s) to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Series,
    Closed,
    Integral,
    All,
}

/// The two digamma-weighted sums S₁, S₂.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct S1S2Terms {
    pub s1: f64,
    pub s2: f64,
    pub terms_used: usize,
}

/// S₁ = Σ Γ(a+n)/Γ(b+n) ψ(a+n) xⁿ/n!, S₂ = 2 Σ Γ(a+n)/Γ(b+n) ψ(b+n) xⁿ/n!.
pub fn s1_s2(p: &WhittakerParams, ctrl: &SeriesCtrl) -> Result<S1S2Terms> {
    ctrl.validate()?;
    let (a, b) = (p.a(), p.b());
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return Err(Error::Pole(format!("S1/S2 need a = {a} and b = {b} away from nonpositive integers")));
    }
    let mut ratio = gamma(a)? / gamma(b)?;
    let mut psi_a = digamma(a)?;
    let mut psi_b = digamma(b)?;
    let mut s1 = ratio * psi_a;
    let mut s2 = ratio * psi_b;
    let mut quiet = 0;
    for n in 0..ctrl.max_terms {
        let nf = n as f64;
        ratio *= (a + nf) * p.x / ((b + nf) * (nf + 1.0));
        psi_a += 1.0 / (a + nf);
        psi_b += 1.0 / (b + nf);
        let (t1, t2) = (ratio * psi_a, ratio * psi_b);
        s1 += t1;
        s2 += t2;
        if t1.abs() <= ctrl.rel_tol * s1.abs() && t2.abs() <= ctrl.rel_tol * s2.abs() {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if quiet >= 3 && n + 2 >= ctrl.min_terms {
            return Ok(S1S2Terms { s1, s2: 2.0 * s2, terms_used: n + 2 });
        }
    }
    Err(Error::Convergence { what: "S1/S2 series".into(), terms: ctrl.max_terms })
}

fn series_ok(p: &WhittakerParams) -> Result<()> {
    if !(p.x > 0.0) {
        return Err(Error::Domain(format!("parameter derivatives of M need x > 0, got {}", p.x)));
    }
    if is_nonpositive_integer(p.a()) {
        return Err(Error::Pole(format!(
            "series route needs 1/2 + mu - kappa not a nonpositive integer (got {})",
            p.a()
        )));
    }
    Ok(())
}

fn prefactor(p: &WhittakerParams) -> f64 {
    p.x.powf(p.mu + 0.5) * (-p.x / 2.0).exp()
}

/// ∂M/∂κ = −x^{μ+½} e^{−x/2} G1(½+μ−κ; 1+2μ; x).
pub fn dm_dkappa_series(p: &WhittakerParams, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    series_ok(p)?;
    Ok(g1(p.a(), p.b(), p.x, ctrl)?.scale(-prefactor(p)))
}

/// ∂M/∂μ = ln x · M + x^{μ+½} e^{−x/2} [G1 + 2 H1].
pub fn dm_dmu_series(p: &WhittakerParams, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    series_ok(p)?;
    let m = m_series(p, ctrl)?;
    let g = g1(p.a(), p.b(), p.x, ctrl)?;
    let h = h1(p.a(), p.b(), p.x, ctrl)?;
    let pre = prefactor(p);
    let lnx = p.x.ln();
    let v = lnx * m.value + pre * (g.value + 2.0 * h.value);
    let err = lnx.abs() * m.abs_err_est + pre * (g.abs_err_est + 2.0 * h.abs_err_est);
    Ok(KernelValue::new(v, err, g.terms_used.max(h.terms_used)))
}

fn diag_f22(mu: f64, x: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    pfq(&PfqArgs::new(vec![1.0, 1.0], vec![2.0 * mu + 2.0, 2.0], -x), ctrl)
}

/// Closed forms of ∂M/∂κ: κ = −μ−½, (κ, μ) = (n, ½), and the (ℓ, m) family.
pub fn dm_dkappa_closed(p: &WhittakerParams) -> Option<Closed> {
    let ctrl = SeriesCtrl::default();
    let (k, mu, x) = (p.kappa, p.mu, p.x);
    if !(x > 0.0) {
        return None;
    }
    if near(k, -mu - 0.5) && !near(2.0 * mu + 1.0, 0.0) {
        let f = diag_f22(mu, x, &ctrl).ok()?;
        let s = -x.powf(mu + 1.5) * (x / 2.0).exp() / (2.0 * mu + 1.0);
        return Some(Closed::new(f.scale(s), "dM/dkappa at kappa = -mu - 1/2 via 2F2"));
    }
    if near(mu, 0.5) {
        if let Some(n) = snap_int(k).filter(|n| *n >= 1) {
            let g = g1_one_minus_n(n as u32, x).ok()?;
            return Some(Closed::new(g.scale(-x * (-x / 2.0).exp()), "dM/dkappa at (n, 1/2) via Ei and Laguerre"));
        }
    }
    let (l, m) = lm_indices(k, mu)?;
    lm::dkm_lm(l, m, x, &ctrl).ok().map(|v| Closed::new(v, "dM/dkappa (l,m) P/F-function reduction"))
}

/// ∂M_{0,μ}/∂μ through the Bessel form and the order derivative of I_μ.
pub fn dm_dmu_bessel(mu: f64, x: f64) -> Result<KernelValue> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("Bessel-form dM/dmu needs x > 0, got {x}")));
    }
    let y = x / 2.0;
    let pre = 4f64.powf(mu) * gamma(1.0 + mu)? * x.sqrt();
    let v = pre * ((4f64.ln() + digamma(1.0 + mu)?) * bessel_i(mu, y)? + dbessel_i_dnu_any(mu, y)?);
    Ok(KernelValue::new(v, 1e-14 * v.abs().max(pre.abs()), 0))
}

/// Closed forms of ∂M/∂μ: κ = −μ−½, κ = 0, and the (ℓ, m) family.
pub fn dm_dmu_closed(p: &WhittakerParams) -> Option<Closed> {
    let ctrl = SeriesCtrl::default();
    let (k, mu, x) = (p.kappa, p.mu, p.x);
    if !(x > 0.0) {
        return None;
    }
    if near(k, -mu - 0.5) && !near(2.0 * mu + 1.0, 0.0) {
        let f = diag_f22(mu, x, &ctrl).ok()?;
        let v = x.powf(mu + 0.5) * (x / 2.0).exp() * (x.ln() - x / (2.0 * mu + 1.0) * f.value);
        let err = x.powf(mu + 1.5) * (x / 2.0).exp() * f.abs_err_est / (2.0 * mu + 1.0).abs();
        return Some(Closed::new(KernelValue::new(v, err, f.terms_used), "dM/dmu at kappa = -mu - 1/2 via 2F2"));
    }
    if near(k, 0.0) && mu > -1.0 {
        if let Ok(v) = dm_dmu_bessel(mu, x) {
            return Some(Closed::new(v, "dM_(0,mu)/dmu via order derivative of I_mu"));
        }
    }
    let (l, m) = lm_indices(k, mu)?;
    lm::dmm_lm(l, m, x, &ctrl).ok().map(|v| Closed::new(v, "dM/dmu (l,m) P/F-function reduction"))
}

/// ∂M/∂κ from I₁: [ψ(μ−κ+½) − ψ(μ+κ+½)] M + x^{μ+½}e^{−x/2} I₁ / B.
pub fn dm_dkappa_integral(p: &WhittakerParams, sctrl: &SeriesCtrl, qctrl: &QuadCtrl) -> Result<KernelValue> {
    integral_ok(p)?;
    let (k, mu) = (p.kappa, p.mu);
    let m = m_series(p, sctrl)?;
    let i1 = i_quad(I_INT[0], k, mu, p.x, qctrl)?;
    let bb = beta(mu + k + 0.5, mu - k + 0.5)?;
    let c = digamma(mu - k + 0.5)? - digamma(mu + k + 0.5)?;
    let pre = prefactor(p) / bb;
    let v = c * m.value + pre * i1.value;
    Ok(KernelValue::new(v, c.abs() * m.abs_err_est + pre.abs() * i1.abs_err_est, i1.terms_used))
}

/// ∂M/∂μ from J₁: [ln x − ψ(μ−κ+½) − ψ(μ+κ+½) + 2ψ(2μ+1)] M + x^{μ+½}e^{−x/2} J₁ / B.
pub fn dm_dmu_integral(p: &WhittakerParams, sctrl: &SeriesCtrl, qctrl: &QuadCtrl) -> Result<KernelValue> {
    integral_ok(p)?;
    let (k, mu) = (p.kappa, p.mu);
    let m = m_series(p, sctrl)?;
    let j1 = j_quad(J_INT[0], k, mu, p.x, qctrl)?;
    let bb = beta(mu + k + 0.5, mu - k + 0.5)?;
    let c = p.x.ln() - digamma(mu - k + 0.5)? - digamma(mu + k + 0.5)? + 2.0 * digamma(2.0 * mu + 1.0)?;
    let pre = prefactor(p) / bb;
    let v = c * m.value + pre * j1.value;
    Ok(KernelValue::new(v, c.abs() * m.abs_err_est + pre.abs() * j1.abs_err_est, j1.terms_used))
}

fn integral_ok(p: &WhittakerParams) -> Result<()> {
    if !(p.x > 0.0) {
        return Err(Error::Domain(format!("integral route needs x > 0, got {}", p.x)));
    }
    if !p.integral_admissible() {
        return Err(Error::Integrability(format!(
            "integral representation needs mu +/- kappa + 1/2 > 0 (kappa = {}, mu = {})",
            p.kappa, p.mu
        )));
    }
    Ok(())
}

#[derive(Clone, Copy)]
enum Wrt {
    Kappa,
    Mu,
}

fn dispatch(p: &WhittakerParams, route: Route, ctrl: &SeriesCtrl, wrt: Wrt) -> Result<EvalResult> {
    let q = QuadCtrl::default();
    let series = || -> Result<EvalResult> {
        let v = match wrt {
            Wrt::Kappa => dm_dkappa_series(p, ctrl)?,
            Wrt::Mu => dm_dmu_series(p, ctrl)?,
        };
        let cite = match wrt {
            Wrt::Kappa => "dM/dkappa digamma-weighted series",
            Wrt::Mu => "dM/dmu digamma-weighted series",
        };
        Ok(EvalResult::from_kernel(v, "series", cite))
    };
    let closed = || -> Result<EvalResult> {
        let c = match wrt {
            Wrt::Kappa => dm_dkappa_closed(p),
            Wrt::Mu => dm_dmu_closed(p),
        };
        c.map(|c| EvalResult::from_kernel(c.value, "closed", c.citation)).ok_or_else(|| {
            Error::Domain(format!("no closed form catalogued for (kappa, mu) = ({}, {})", p.kappa, p.mu))
        })
    };
    let integral = || -> Result<EvalResult> {
        let (v, cite) = match wrt {
            Wrt::Kappa => (dm_dkappa_integral(p, ctrl, &q)?, "dM/dkappa from I1 quadrature"),
            Wrt::Mu => (dm_dmu_integral(p, ctrl, &q)?, "dM/dmu from J1 quadrature"),
        };
        Ok(EvalResult::from_kernel(v, "integral", cite))
    };
    match route {
        Route::Series => series(),
        Route::Closed => closed(),
        Route::Integral => integral(),
        Route::All => {
            let s = series();
            let first_err = s.as_ref().err().cloned();
            let parts: Vec<EvalResult> = [s, closed(), integral()].into_iter().filter_map(|r| r.ok()).collect();
            combine(parts).ok_or_else(|| first_err.unwrap_or(Error::Domain("no admissible route".into())))
        }
    }
}

/// ∂M_{κ,μ}(x)/∂κ by the requested route.
pub fn dm_dkappa(p: &WhittakerParams, route: Route, ctrl: &SeriesCtrl) -> Result<EvalResult> {
    dispatch(p, route, ctrl, Wrt::Kappa)
}

/// ∂M_{κ,μ}(x)/∂μ by the requested route.
pub fn dm_dmu(p: &WhittakerParams, route: Route, ctrl: &SeriesCtrl) -> Result<EvalResult> {
    dispatch(p, route, ctrl, Wrt::Mu)
}

//! Tanh-sinh (double-exponential) quadrature on finite intervals.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::KernelValue;

/// Tolerances and refinement limits for the quadrature routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadCtrl {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_levels: u32,
    pub tail_cut: f64,
}

impl Default for QuadCtrl {
    fn default() -> Self {
        QuadCtrl { abs_tol: 1e-300, rel_tol: 1e-14, max_levels: 11, tail_cut: 30.0 }
    }
}

impl QuadCtrl {
    pub fn validate(&self) -> Result<()> {
        if self.max_levels > 12 {
            return Err(Error::Domain(format!("QuadCtrl.max_levels must be <= 12, got {}", self.max_levels)));
        }
        if !(self.tail_cut >= 30.0) {
            return Err(Error::Domain(format!("QuadCtrl.tail_cut must be >= 30, got {}", self.tail_cut)));
        }
        if !(self.abs_tol >= 0.0) || !(self.rel_tol > 0.0) {
            return Err(Error::Domain("QuadCtrl tolerances must be nonnegative (rel_tol > 0)".into()));
        }
        Ok(())
    }
}

/// Algebraic endpoint exponents of the integrand, (t−a)^α (b−t)^β.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Endpoints {
    pub alpha: f64,
    pub beta: f64,
}

impl Endpoints {
    pub const REGULAR: Endpoints = Endpoints { alpha: 0.0, beta: 0.0 };

    pub fn new(alpha: f64, beta: f64) -> Self {
        Endpoints { alpha, beta }
    }
}

const U_MAX: f64 = 6.0;
const MIN_LEVELS: u32 = 3;

struct Node {
    t: f64,
    da: f64,
    db: f64,
    w: f64,
}

fn node(u: f64, a: f64, b: f64) -> Node {
    let d = 0.5 * (b - a);
    let s = std::f64::consts::FRAC_PI_2 * u.sinh();
    let e = (-2.0 * s.abs()).exp();
    let near = d * 2.0 * e / (1.0 + e);
    let far = 2.0 * d - near;
    let (da, db) = if u >= 0.0 { (far, near) } else { (near, far) };
    let t = if u >= 0.0 { b - near } else { a + near };
    let w = d * std::f64::consts::FRAC_PI_2 * u.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
    Node { t, da, db, w }
}

/// ∫_a^b f, where f receives (t, t−a, b−t) so endpoint distances stay exact.
pub fn quad_de<F>(f: F, a: f64, b: f64, ends: Endpoints, ctrl: &QuadCtrl) -> Result<KernelValue>
where
    F: Fn(f64, f64, f64) -> f64,
{
    ctrl.validate()?;
    if ends.alpha <= -1.0 || ends.beta <= -1.0 {
        return Err(Error::Integrability(format!(
            "endpoint exponents must exceed -1 (alpha = {}, beta = {})",
            ends.alpha, ends.beta
        )));
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain("quad_de needs finite limits".into()));
    }
    if a == b {
        return Ok(KernelValue::exact(0.0));
    }
    if b < a {
        return Ok(quad_de(f, b, a, Endpoints::new(ends.beta, ends.alpha), ctrl)?.scale(-1.0));
    }
    let eval = |u: f64, sum: &mut f64, abs: &mut f64| -> Result<()> {
        let n = node(u, a, b);
        if n.da == 0.0 || n.db == 0.0 || n.w == 0.0 {
            return Ok(());
        }
        let v = f(n.t, n.da, n.db);
        if !v.is_finite() {
            return Err(Error::Quadrature(format!("integrand not finite at t = {}", n.t)));
        }
        *sum += n.w * v;
        *abs += (n.w * v).abs();
        Ok(())
    };
    let mut h = 1.0;
    let mut sum = 0.0;
    let mut abs = 0.0;
    eval(0.0, &mut sum, &mut abs)?;
    let mut k = 1;
    while k as f64 * h <= U_MAX {
        eval(k as f64 * h, &mut sum, &mut abs)?;
        eval(-(k as f64) * h, &mut sum, &mut abs)?;
        k += 1;
    }
    let mut prev = sum * h;
    let mut points = 2 * k - 1;
    for level in 1..=ctrl.max_levels {
        h *= 0.5;
        let mut j = 1;
        while j as f64 * h <= U_MAX {
            eval(j as f64 * h, &mut sum, &mut abs)?;
            eval(-(j as f64) * h, &mut sum, &mut abs)?;
            points += 2;
            j += 2;
        }
        let cur = sum * h;
        let diff = (cur - prev).abs();
        if level >= MIN_LEVELS && diff <= ctrl.abs_tol.max(ctrl.rel_tol * abs * h) {
            let err = diff + abs * h * 4.0 * f64::EPSILON;
            return Ok(KernelValue::new(cur, err, points));
        }
        prev = cur;
    }
    Err(Error::Quadrature(format!(
        "no convergence on [{a}, {b}] after {} levels (last estimate {prev})",
        ctrl.max_levels
    )))
}

/// ∫_a^∞ f by truncation at growing T; `tail(T)` must bound |∫_T^∞ f|.
pub fn quad_truncated<F, B>(
    f: F,
    a: f64,
    ends: Endpoints,
    tail: B,
    tail_tol: f64,
    ctrl: &QuadCtrl,
) -> Result<KernelValue>
where
    F: Fn(f64, f64, f64) -> f64,
    B: Fn(f64) -> Option<f64>,
{
    let mut t_cut = a + ctrl.tail_cut;
    for _ in 0..8 {
        if let Some(bound) = tail(t_cut) {
            if bound < tail_tol {
                let v = quad_de(&f, a, t_cut, Endpoints::new(ends.alpha, 0.0), ctrl)?;
                return Ok(KernelValue::new(v.value, v.abs_err_est + bound, v.terms_used));
            }
        }
        t_cut *= 2.0;
    }
    Err(Error::Quadrature(format!("tail bound did not fall below {tail_tol} before T = {t_cut}")))
}

/// Γ(s, y) <= y^{s−1} e^{−y} / (1 − (s−1)/y) for y > s − 1.
pub(crate) fn upper_gamma_bound(s: f64, y: f64) -> Option<f64> {
    if s <= 1.0 {
        return Some(y.powf(s - 1.0) * (-y).exp());
    }
    let r = (s - 1.0) / y;
    (r < 1.0).then(|| y.powf(s - 1.0) * (-y).exp() / (1.0 - r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arcsine_weight() {
        let v = quad_de(|_, a, b| 1.0 / (a * b).sqrt(), 0.0, 1.0, Endpoints::new(-0.5, -0.5), &QuadCtrl::default())
            .unwrap();
        assert!((v.value - std::f64::consts::PI).abs() < 1e-13);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let f = |t: f64, _: f64, _: f64| t * t;
        let c = QuadCtrl::default();
        let v = quad_de(f, 2.0, 0.0, Endpoints::REGULAR, &c).unwrap();
        assert!((v.value + 8.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn rejects_non_integrable() {
        let r = quad_de(|_, a, _| 1.0 / a, 0.0, 1.0, Endpoints::new(-1.0, 0.0), &QuadCtrl::default());
        assert!(matches!(r, Err(Error::Integrability(_))));
    }

    #[test]
    fn truncated_exponential() {
        let c = QuadCtrl::default();
        let v = quad_truncated(|t, _, _| (-t).exp(), 0.0, Endpoints::REGULAR, |t| Some((-t).exp()), 1e-12, &c).unwrap();
        assert!((v.value - 1.0).abs() < 1e-11);
    }
}

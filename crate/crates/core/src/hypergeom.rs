//! Generalised hypergeometric series and the parameter derivatives of ₁F₁.

use num_rational::Ratio;
use serde::Serialize;

use crate::ctrl::{Closed, Tail};
use crate::dd::{self, Dd};
use crate::error::{Error, Result};
use crate::kernels::{expint_ei, harmonic, is_nonpositive_integer, laguerre, EULER_GAMMA};
use crate::{KernelValue, SeriesCtrl};

/// Parameters of pFq(a₁..a_p; b₁..b_q; x).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PfqArgs {
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
    pub x: f64,
}

impl PfqArgs {
    pub fn new(upper: Vec<f64>, lower: Vec<f64>, x: f64) -> Self {
        PfqArgs { upper, lower, x }
    }

    /// Degree of the polynomial case, if some upper parameter is a nonpositive integer.
    pub fn terminates_at(&self) -> Option<usize> {
        self.upper.iter().filter(|a| is_nonpositive_integer(**a)).map(|a| (-a) as usize).min()
    }

    pub fn validate(&self) -> Result<()> {
        if !self.x.is_finite() || self.upper.iter().chain(&self.lower).any(|v| !v.is_finite()) {
            return Err(Error::Domain("pFq parameters and argument must be finite".into()));
        }
        let stop = self.terminates_at();
        for b in &self.lower {
            if is_nonpositive_integer(*b) {
                let ok = matches!(stop, Some(k) if k as f64 <= -b);
                if !ok {
                    return Err(Error::Pole(format!(
                        "lower parameter {b} is a nonpositive integer not shielded by a terminating upper parameter"
                    )));
                }
            }
        }
        let (p, q) = (self.upper.len(), self.lower.len());
        if stop.is_none() {
            if p > q + 1 {
                return Err(Error::Domain(format!("{p}F{q} diverges for every x != 0 (need p <= q+1)")));
            }
            if p == q + 1 && self.x.abs() >= 1.0 {
                return Err(Error::Domain(format!("{p}F{q} needs |x| < 1, got {}", self.x)));
            }
        }
        Ok(())
    }
}

fn ratio(args: &PfqArgs, n: usize) -> f64 {
    let nf = n as f64;
    let mut r = args.x / (nf + 1.0);
    for a in &args.upper {
        r *= a + nf;
    }
    for b in &args.lower {
        r /= b + nf;
    }
    r
}

fn ratio_dd(args: &PfqArgs, n: usize) -> Dd {
    let nf = n as f64;
    let mut r = dd::dd(args.x) / (nf + 1.0);
    for a in &args.upper {
        r *= a + nf;
    }
    for b in &args.lower {
        r /= b + nf;
    }
    r
}

/// Σ Π(a_i)_n / Π(b_j)_n · xⁿ/n!.
pub fn pfq(args: &PfqArgs, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    args.validate()?;
    ctrl.validate()?;
    let stop = args.terminates_at();
    // Large alternating sums lose digits in the terms themselves, so carry them in double-double.
    if args.x < -2.0 && stop.is_none() {
        return pfq_dd(args, ctrl);
    }
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut biggest = 1.0f64;
    let mut tail = Tail::default();
    for n in 0..ctrl.max_terms {
        if stop == Some(n) {
            let err = biggest * (n as f64 + 1.0) * f64::EPSILON;
            return Ok(KernelValue::new(sum, err, n + 1));
        }
        term *= ratio(args, n);
        sum += term;
        biggest = biggest.max(term.abs());
        if !sum.is_finite() {
            return Err(Error::Overflow(format!("pFq partial sum overflowed at n={n}")));
        }
        if tail.done(term, sum, n + 1, ctrl) {
            let err = 10.0 * term.abs() + biggest * (n as f64 + 2.0) * f64::EPSILON;
            return Ok(KernelValue::new(sum, err, n + 2));
        }
    }
    Err(Error::Convergence { what: "pFq series".into(), terms: ctrl.max_terms })
}

fn pfq_dd(args: &PfqArgs, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    let mut term = dd::dd(1.0);
    let mut sum = dd::dd(1.0);
    let mut biggest = 1.0f64;
    let mut tail = Tail::default();
    for n in 0..ctrl.max_terms {
        term *= ratio_dd(args, n);
        sum += term;
        let t = dd::to_f64(term);
        biggest = biggest.max(t.abs());
        if tail.done(t, dd::to_f64(sum), n + 1, ctrl) {
            let err = 10.0 * t.abs() + biggest * (n as f64 + 2.0) * 1e-31 + dd::to_f64(sum).abs() * f64::EPSILON;
            return Ok(KernelValue::new(dd::to_f64(sum), err, n + 2));
        }
    }
    Err(Error::Convergence { what: "pFq series (double-double)".into(), terms: ctrl.max_terms })
}

/// Parameters shifted by n with the scalar prefactor of the n-th x-derivative.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftedPfq {
    pub prefactor: f64,
    pub args: PfqArgs,
}

/// dⁿ/dxⁿ pFq(a;b;x) = prefactor · pFq(a+n; b+n; x).
pub fn pfq_nth_derivative(args: &PfqArgs, n: usize) -> ShiftedPfq {
    let nf = n as f64;
    let mut prefactor = 1.0;
    for a in &args.upper {
        prefactor *= crate::kernels::pochhammer(*a, n);
    }
    for b in &args.lower {
        prefactor /= crate::kernels::pochhammer(*b, n);
    }
    ShiftedPfq {
        prefactor,
        args: PfqArgs {
            upper: args.upper.iter().map(|a| a + nf).collect(),
            lower: args.lower.iter().map(|b| b + nf).collect(),
            x: args.x,
        },
    }
}

/// ₂F₂(s,s;s+1,s+1;z), the building block of the logarithmic integrals.
pub(crate) fn f22_log(s: f64, z: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    pfq(&PfqArgs::new(vec![s, s], vec![s + 1.0, s + 1.0], z), ctrl)
}

fn check_b(b: f64) -> Result<()> {
    if is_nonpositive_integer(b) {
        return Err(Error::Pole(format!("lower parameter b = {b} is a nonpositive integer")));
    }
    Ok(())
}

/// Σ c_n (a)_n/(b)_n xⁿ/n! where c_n is a running digamma difference.
fn weighted_series(
    a: f64,
    b: f64,
    x: f64,
    ctrl: &SeriesCtrl,
    what: &str,
    weight_step: impl Fn(usize) -> f64,
) -> Result<KernelValue> {
    ctrl.validate()?;
    let mut p = 1.0f64;
    let mut w = 0.0f64;
    let mut sum = 0.0f64;
    let mut biggest = 0.0f64;
    let mut tail = Tail::default();
    let stop = if is_nonpositive_integer(a) { Some((-a) as usize) } else { None };
    for n in 0..ctrl.max_terms {
        if stop == Some(n) {
            return Ok(KernelValue::new(sum, biggest * (n as f64 + 1.0) * f64::EPSILON, n));
        }
        let nf = n as f64;
        w += weight_step(n);
        p *= (a + nf) * x / ((b + nf) * (nf + 1.0));
        let t = w * p;
        sum += t;
        biggest = biggest.max(t.abs());
        if !sum.is_finite() {
            return Err(Error::Overflow(format!("{what} partial sum overflowed")));
        }
        if n > 0 && tail.done(t, sum, n + 1, ctrl) {
            return Ok(KernelValue::new(sum, 10.0 * t.abs() + biggest * (nf + 2.0) * f64::EPSILON, n + 2));
        }
    }
    Err(Error::Convergence { what: what.into(), terms: ctrl.max_terms })
}

/// ∂/∂a ₁F₁(a;b;x) = Σ (a)_n/(b)_n [ψ(a+n) − ψ(a)] xⁿ/n!.
pub fn g1(a: f64, b: f64, x: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    check_b(b)?;
    if is_nonpositive_integer(a) {
        return Err(Error::Pole(format!(
            "digamma-weighted series for G1 needs a not a nonpositive integer, got a = {a}"
        )));
    }
    weighted_series(a, b, x, ctrl, "G1 series", |n| 1.0 / (a + n as f64))
}

/// ∂/∂a ₁F₁(a;b;x) at a = −k, as the limit of the digamma-weighted series.
pub fn g1_polynomial_limit(k: usize, b: f64, x: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    check_b(b)?;
    ctrl.validate()?;
    let a = -(k as f64);
    // n <= k: ordinary terms (a)_n d_n xⁿ/((b)_n n!)
    let mut p = 1.0f64;
    let mut d = 0.0f64;
    let mut sum = 0.0f64;
    let mut biggest = 0.0f64;
    for n in 1..=k {
        let nf = (n - 1) as f64;
        d += 1.0 / (a + nf);
        p *= (a + nf) * x / ((b + nf) * (nf + 1.0));
        sum += d * p;
        biggest = biggest.max((d * p).abs());
    }
    // n > k: (−1)^k k! (n−k−1)! xⁿ/((b)_n n!)
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut q = 1.0f64; // xⁿ/((b)_n n!) built incrementally
    for n in 0..=k {
        if n > 0 {
            q *= x / ((b + (n - 1) as f64) * n as f64);
        }
    }
    let mut fact_nk = 1.0f64; // (n−k−1)!
    let mut kfact = 1.0f64;
    for j in 1..=k {
        kfact *= j as f64;
    }
    let mut tail = Tail::default();
    for n in (k + 1)..(k + 1 + ctrl.max_terms) {
        let nf = (n - 1) as f64;
        q *= x / ((b + nf) * n as f64);
        if n > k + 1 {
            fact_nk *= (n - k - 1) as f64;
        }
        let t = sign * kfact * fact_nk * q;
        sum += t;
        biggest = biggest.max(t.abs());
        if tail.done(t, sum, n - k, ctrl) {
            return Ok(KernelValue::new(sum, 10.0 * t.abs() + biggest * n as f64 * f64::EPSILON, n));
        }
    }
    Err(Error::Convergence { what: "G1 polynomial limit".into(), terms: ctrl.max_terms })
}

/// ∂/∂b ₁F₁(a;b;x) = −Σ (a)_n/(b)_n [ψ(b+n) − ψ(b)] xⁿ/n!.
pub fn h1(a: f64, b: f64, x: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    check_b(b)?;
    Ok(weighted_series(a, b, x, ctrl, "H1 series", |n| 1.0 / (b + n as f64))?.scale(-1.0))
}

/// Independent route G1(a;b;x) = −eˣ G1(b−a;b;−x).
pub fn g1_kummer(a: f64, b: f64, x: f64) -> Result<KernelValue> {
    let ctrl = SeriesCtrl::default();
    let inner = match snap_int(b - a) {
        Some(n) if n <= 0 => g1_polynomial_limit((-n) as usize, b, -x, &ctrl)?,
        _ => g1(b - a, b, -x, &ctrl)?,
    };
    Ok(inner.scale(-x.exp()))
}

/// S(n,ℓ) = Σ_{k=0}^{n−ℓ−1} (ℓ)_k 2^k/(ℓ+n)_k, summed exactly.
pub fn s_finite(n: u32, l: u32) -> Result<f64> {
    if l < 1 || l >= n {
        return Err(Error::Domain(format!("S(n,l) needs 1 <= l <= n-1, got n={n}, l={l}")));
    }
    let mut term = Ratio::<u128>::from_integer(1);
    let mut sum = term;
    for k in 0..(n - l - 1) as u128 {
        term *= Ratio::new(2 * (l as u128 + k), l as u128 + n as u128 + k);
        sum += term;
    }
    Ok(*sum.numer() as f64 / *sum.denom() as f64)
}

/// L_ν(x) = ₁F₁(−ν;1;x) for real ν.
pub fn laguerre_fn(nu: f64, x: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    pfq(&PfqArgs::new(vec![-nu], vec![1.0], x), ctrl)
}

fn snap_int(v: f64) -> Option<i64> {
    let r = v.round();
    if (v - r).abs() <= 1e-12 {
        Some(r as i64)
    } else {
        None
    }
}

/// (ℓ, m) with a = m+1−ℓ, b = 2(m+1)−ℓ, m >= ℓ, m >= 0.
pub(crate) fn lm_from_ab(a: f64, b: f64) -> Option<(i64, i64)> {
    let m = snap_int(b - a - 1.0)?;
    let l = snap_int(m as f64 + 1.0 - a)?;
    (m >= 0 && m >= l).then_some((l, m))
}

/// Catalogued closed forms of G1.
pub fn g1_reduced(a: f64, b: f64, x: f64) -> Option<Closed> {
    let ctrl = SeriesCtrl::default();
    if let Some((l, m)) = lm_from_ab(a, b) {
        if x != 0.0 {
            if let Ok(v) = crate::whittaker::lm::g1_lm(l, m, x, &ctrl) {
                return Some(Closed::new(v, "G1 (l,m) P/F-function reduction"));
            }
        }
    }
    if (a - b).abs() <= 1e-12 * b.abs().max(1.0) {
        return g1_diag(b, x, &ctrl).ok().map(|v| Closed::new(v, "G1 diagonal a=b via 2F2"));
    }
    if (b - 2.0).abs() <= 1e-12 {
        if let Some(k) = snap_int(1.0 - a).filter(|k| *k >= 1) {
            return g1_one_minus_n(k as u32, x).ok().map(|v| Closed::new(v, "G1(1-n;2;x) Laguerre/Ei corollary"));
        }
    }
    None
}

fn g1_diag(a: f64, x: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    let f = pfq(&PfqArgs::new(vec![1.0, 1.0], vec![a + 1.0, 2.0], -x), ctrl)?;
    Ok(f.scale(x * x.exp() / a))
}

/// G1(1−n;2;x) for n >= 1, x > 0, through Ei, Laguerre polynomials and S(n,ℓ).
pub fn g1_one_minus_n(n: u32, x: f64) -> Result<KernelValue> {
    if n < 1 {
        return Err(Error::Domain("G1(1-n;2;x) needs n >= 1".into()));
    }
    if !(x > 0.0) {
        return Err(Error::Domain(format!("G1(1-n;2;x) closed form uses ln x; needs x > 0, got {x}")));
    }
    let nf = n as f64;
    let ex = x.exp();
    let mut v =
        (1.0 - ex) / x - (x.ln() + EULER_GAMMA - harmonic(nf)? - expint_ei(x)?) * laguerre((n - 1) as usize, 1.0, x);
    for l in 1..n {
        let lf = l as f64;
        v -= ((nf + lf) / (nf - lf) - ex * s_finite(n, l)?) * laguerre((l - 1) as usize, 1.0, x) / lf;
    }
    let v = v / nf;
    Ok(KernelValue::new(v, 64.0 * f64::EPSILON * (ex + v.abs()), 0))
}

/// Catalogued closed forms of H1.
pub fn h1_reduced(a: f64, b: f64, x: f64) -> Option<Closed> {
    let ctrl = SeriesCtrl::default();
    if let Some((l, m)) = lm_from_ab(a, b) {
        if x != 0.0 {
            if let Ok(v) = crate::whittaker::lm::h1_lm(l, m, x, &ctrl) {
                return Some(Closed::new(v, "H1 (l,m) P/F-function reduction"));
            }
        }
    }
    if (a - b).abs() <= 1e-12 * b.abs().max(1.0) {
        return g1_diag(b, x, &ctrl).ok().map(|v| Closed::new(v.scale(-1.0), "H1 diagonal a=b via 2F2"));
    }
    if (a - 1.0).abs() <= 1e-12 && !is_nonpositive_integer(b) {
        let f = f22_log(b, -x, &ctrl).ok()?;
        return Some(Closed::new(f.scale(-x * x.exp() / (b * b)), "H1(1;b;x) via 2F2"));
    }
    None
}

#[cfg(test)]
/// ψ(a+n) − ψ(a).
pub(crate) fn digamma_diff(a: f64, n: usize) -> Result<f64> {
    Ok(crate::kernels::digamma(a + n as f64)? - crate::kernels::digamma(a)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c() -> SeriesCtrl {
        SeriesCtrl::default()
    }

    #[test]
    fn polynomial_termination() {
        // ₁F₁(−2;3;x) = 1 − 2x/3 + x²/12
        let v = pfq(&PfqArgs::new(vec![-2.0], vec![3.0], 1.5), &c()).unwrap();
        assert!((v.value - (1.0 - 1.0 + 2.25 / 12.0)).abs() < 1e-15);
    }

    #[test]
    fn equal_depth_pole_is_shielded() {
        let args = PfqArgs::new(vec![-2.0], vec![-2.0], 1.0);
        assert!(args.validate().is_ok());
        let bad = PfqArgs::new(vec![-3.0], vec![-2.0], 1.0);
        assert!(matches!(bad.validate(), Err(Error::Pole(_))));
    }

    #[test]
    fn polynomial_limit_matches_nearby_fd() {
        // G1 is smooth through a = −k; compare with central difference of the ordinary series.
        for k in 0..4 {
            let b = 2.0;
            let x = 1.3;
            let lim = g1_polynomial_limit(k, b, x, &c()).unwrap().value;
            let h = 1e-4;
            let a = -(k as f64);
            let near = (g1(a + h, b, x, &c()).unwrap().value + g1(a - h, b, x, &c()).unwrap().value) / 2.0;
            assert!((lim - near).abs() < 1e-6 * (1.0 + lim.abs()), "k={k}: {lim} vs {near}");
        }
    }

    #[test]
    fn weights_match_digamma_differences() {
        for n in [1usize, 5, 17] {
            let direct: f64 = (0..n).map(|j| 1.0 / (0.3 + j as f64)).sum();
            assert!((direct - digamma_diff(0.3, n).unwrap()).abs() < 1e-13);
        }
    }
}

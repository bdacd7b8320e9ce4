//! The integer (ℓ, m) family: κ = ℓ/2, μ = m + (1−ℓ)/2 with m >= max(ℓ, 0).
//!
//! Everything here is built from the factorial polynomials 𝒫 and the ₂F₂ ladder 𝓕.
//! The bracket e^x·𝒫(−ℓ,m−ℓ,−x) − 𝒫(ℓ,m,x) vanishes like x^{2m+1−ℓ}, so it is
//! evaluated in double-double.

use crate::dd::{self, Dd};
use crate::error::{Error, Result};
use crate::hypergeom::f22_log;
use crate::kernels::{binomial, factorial, harmonic, EULER_GAMMA};
use crate::{KernelValue, SeriesCtrl};

/// Admissibility of an (ℓ, m) pair.
pub fn check_lm(l: i64, m: i64) -> Result<()> {
    if m < 0 || m < l {
        return Err(Error::Domain(format!("(l, m) family needs m >= max(l, 0), got l={l}, m={m}")));
    }
    Ok(())
}

fn p_poly_dd(s: i64, k: i64, z: f64) -> Result<Dd> {
    let mut sum = dd::dd(0.0);
    for n in 0..=k {
        let f = 2 * k - s - n;
        if f < 0 {
            return Err(Error::Domain(format!("P({s},{k},z) needs 2k-s-n >= 0, fails at n={n}")));
        }
        sum += dd::factorial(f as usize) * binomial(k as usize, n as usize) * dd::powi(z, n as i32);
    }
    Ok(sum)
}

/// 𝒫(s,k,z) = Σ_{n=0}^{k} C(k,n)(2k−s−n)! zⁿ.
pub fn p_poly(s: i64, k: u32, z: f64) -> Result<f64> {
    p_poly_dd(s, k as i64, z).map(dd::to_f64)
}

/// e^x·𝒫(−ℓ,m−ℓ,−x) − 𝒫(ℓ,m,x)
fn p_bracket(l: i64, m: i64, x: f64) -> Result<Dd> {
    Ok(dd::exp(x) * p_poly_dd(-l, m - l, -x)? - p_poly_dd(l, m, x)?)
}

/// 𝓕(s,k,z) = Σ_n (−1)^{n+1} C(k,n)/(N+1)² ₂F₂(N+1,N+1;N+2,N+2;z), N = n+k−s.
pub fn f_func(s: i64, k: u32, z: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    if z == 0.0 {
        return Err(Error::Domain("F(s,k,z) is built from (ln z - Chi - Shi + gamma)/z; needs z != 0".into()));
    }
    if (k as i64) < s {
        return Err(Error::Domain(format!("F(s,k,z) needs derivative order n+k-s >= 0; k={k} < s={s}")));
    }
    let mut v = 0.0;
    let mut err = 0.0;
    let mut terms = 0;
    for n in 0..=k as i64 {
        let big_n = (n + k as i64 - s) as f64;
        let f = f22_log(big_n + 1.0, z, ctrl)?;
        let c =
            if n % 2 == 0 { -1.0 } else { 1.0 } * binomial(k as usize, n as usize) / ((big_n + 1.0) * (big_n + 1.0));
        v += c * f.value;
        err += (c * f.abs_err_est).abs() + (c * f.value).abs() * f64::EPSILON;
        terms = terms.max(f.terms_used);
    }
    Ok(KernelValue::new(v, err, terms))
}

struct Brackets {
    fm: KernelValue, // 𝓕(−ℓ,m−ℓ,−x)
    fp: KernelValue, // 𝓕(ℓ,m,x)
}

fn f_pair(l: i64, m: i64, x: f64, ctrl: &SeriesCtrl) -> Result<Brackets> {
    Ok(Brackets { fm: f_func(-l, (m - l) as u32, -x, ctrl)?, fp: f_func(l, m as u32, x, ctrl)? })
}

fn norm(l: i64, m: i64) -> f64 {
    (2 * m - l + 1) as f64 * binomial((2 * m - l) as usize, m as usize)
}

fn parity(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

fn h(n: i64) -> Result<f64> {
    harmonic(n as f64)
}

fn need_positive(x: f64) -> Result<()> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("(l, m) closed forms carry x^(l/2-m) and ln x; need x > 0, got {x}")));
    }
    Ok(())
}

/// M_{ℓ/2, m+(1−ℓ)/2}(x).
pub fn m_lm(l: i64, m: i64, x: f64) -> Result<KernelValue> {
    check_lm(l, m)?;
    need_positive(x)?;
    let pb = dd::to_f64(p_bracket(l, m, x)?);
    let v = norm(l, m) * parity(m - l) * x.powf(l as f64 / 2.0 - m as f64) * (-x / 2.0).exp() * pb;
    Ok(KernelValue::new(v, 16.0 * f64::EPSILON * v.abs(), 0))
}

/// ∂M/∂κ on the (ℓ, m) family.
pub fn dkm_lm(l: i64, m: i64, x: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    check_lm(l, m)?;
    need_positive(x)?;
    let pb = dd::to_f64(p_bracket(l, m, x)?);
    let b = f_pair(l, m, x, ctrl)?;
    let ex = x.exp();
    let fb = ex * b.fm.value - b.fp.value;
    let xp = x.powi((2 * m + 1 - l) as i32);
    let pre = norm(l, m) * x.powf(l as f64 / 2.0 - m as f64) * (-x / 2.0).exp();
    let v = pre * (parity(m - l) * (h(m - l)? - h(m)?) * pb + xp * fb);
    let err = (pre * xp).abs() * (ex * b.fm.abs_err_est + b.fp.abs_err_est) + 16.0 * f64::EPSILON * v.abs();
    Ok(KernelValue::new(v, err, b.fm.terms_used.max(b.fp.terms_used)))
}

/// ∂M/∂μ on the (ℓ, m) family.
pub fn dmm_lm(l: i64, m: i64, x: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    check_lm(l, m)?;
    need_positive(x)?;
    let pb = dd::to_f64(p_bracket(l, m, x)?);
    let b = f_pair(l, m, x, ctrl)?;
    let ex = x.exp();
    let fsum = ex * b.fm.value + b.fp.value;
    let xp = x.powi((2 * m + 1 - l) as i32);
    let pre = norm(l, m) * x.powf(l as f64 / 2.0 - m as f64) * (-x / 2.0).exp();
    let w = x.ln() + 2.0 * h(2 * m - l + 1)? - h(m - l)? - h(m)?;
    let v = pre * (parity(m - l) * w * pb + xp * fsum);
    let err = (pre * xp).abs() * (ex * b.fm.abs_err_est + b.fp.abs_err_est) + 16.0 * f64::EPSILON * v.abs();
    Ok(KernelValue::new(v, err, b.fm.terms_used.max(b.fp.terms_used)))
}

/// G1(m+1−ℓ; 2(m+1)−ℓ; x).
pub fn g1_lm(l: i64, m: i64, x: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    check_lm(l, m)?;
    if x == 0.0 {
        return Ok(KernelValue::exact(0.0));
    }
    let pb = dd::to_f64(p_bracket(l, m, x)?);
    let b = f_pair(l, m, x, ctrl)?;
    let ex = x.exp();
    let fb = ex * b.fm.value - b.fp.value;
    let c = norm(l, m);
    let v = c * (-parity(m - l) * x.powi((l - 2 * m - 1) as i32) * (h(m - l)? - h(m)?) * pb - fb);
    let err = c * (ex * b.fm.abs_err_est + b.fp.abs_err_est) + 16.0 * f64::EPSILON * v.abs();
    Ok(KernelValue::new(v, err, b.fm.terms_used.max(b.fp.terms_used)))
}

/// H1(m+1−ℓ; 2(m+1)−ℓ; x).
pub fn h1_lm(l: i64, m: i64, x: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    check_lm(l, m)?;
    if x == 0.0 {
        return Ok(KernelValue::exact(0.0));
    }
    let pb = dd::to_f64(p_bracket(l, m, x)?);
    let fm = f_func(-l, (m - l) as u32, -x, ctrl)?;
    let ex = x.exp();
    let c = norm(l, m);
    let v = c * (parity(m - l) * x.powi((l - 2 * m - 1) as i32) * (h(2 * m - l + 1)? - h(m)?) * pb + ex * fm.value);
    let err = c * ex * fm.abs_err_est + 16.0 * f64::EPSILON * v.abs();
    Ok(KernelValue::new(v, err, fm.terms_used))
}

/// I₁ on the (ℓ, m) family: e^x 𝓕(−ℓ,m−ℓ,−x) − 𝓕(ℓ,m,x).
pub fn i1_lm(l: i64, m: i64, x: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    check_lm(l, m)?;
    let b = f_pair(l, m, x, ctrl)?;
    let ex = x.exp();
    let v = ex * b.fm.value - b.fp.value;
    Ok(KernelValue::new(v, ex * b.fm.abs_err_est + b.fp.abs_err_est, b.fm.terms_used.max(b.fp.terms_used)))
}

/// J₁ on the (ℓ, m) family: e^x 𝓕(−ℓ,m−ℓ,−x) + 𝓕(ℓ,m,x).
pub fn j1_lm(l: i64, m: i64, x: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    check_lm(l, m)?;
    let b = f_pair(l, m, x, ctrl)?;
    let ex = x.exp();
    let v = ex * b.fm.value + b.fp.value;
    Ok(KernelValue::new(v, ex * b.fm.abs_err_est + b.fp.abs_err_est, b.fm.terms_used.max(b.fp.terms_used)))
}

/// ℋ₁ on the (ℓ, m) family.
pub fn h1inf_lm(l: i64, m: i64, x: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    check_lm(l, m)?;
    need_positive(x)?;
    let pb = dd::to_f64(p_bracket(l, m, x)?);
    let b = f_pair(l, m, x, ctrl)?;
    let ex = x.exp();
    let fb = ex * b.fm.value - b.fp.value;
    let xm = x.powf(-(m as f64) + (l as f64 - 1.0) / 2.0);
    let xp = x.powf(m as f64 + (1.0 - l as f64) / 2.0);
    let v = (parity(m - l) * (h(m)? - EULER_GAMMA) * xm * pb - xp * fb) / factorial(m as usize);
    let err = xp * (ex * b.fm.abs_err_est + b.fp.abs_err_est) / factorial(m as usize) + 16.0 * f64::EPSILON * v.abs();
    Ok(KernelValue::new(v, err, b.fm.terms_used.max(b.fp.terms_used)))
}

/// ℋ₂ on the (ℓ, m) family.
pub fn h2inf_lm(l: i64, m: i64, x: f64, ctrl: &SeriesCtrl) -> Result<KernelValue> {
    check_lm(l, m)?;
    need_positive(x)?;
    let emx = dd::exp(-x);
    let pb = dd::to_f64(p_poly_dd(-l, m - l, -x)? - emx * p_poly_dd(l, m, x)?);
    let b = f_pair(l, m, x, ctrl)?;
    let e = (-x).exp();
    let fb = b.fm.value - e * b.fp.value;
    let xm = x.powf(-(m as f64) + (l as f64 - 1.0) / 2.0);
    let xp = x.powf(m as f64 + (1.0 - l as f64) / 2.0);
    let nf = factorial((m - l) as usize);
    let v = (parity(m - l) * (h(m - l)? - EULER_GAMMA) * xm * pb + xp * fb) / nf;
    let err = xp * (b.fm.abs_err_est + e * b.fp.abs_err_est) / nf + 16.0 * f64::EPSILON * v.abs();
    Ok(KernelValue::new(v, err, b.fm.terms_used.max(b.fp.terms_used)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_poly_small() {
        assert_eq!(p_poly(0, 0, 3.0).unwrap(), 1.0);
        assert_eq!(p_poly(0, 1, 3.0).unwrap(), 5.0);
        assert_eq!(p_poly(1, 1, 3.0).unwrap(), 4.0);
        assert!(p_poly(3, 1, 1.0).is_err());
    }

    #[test]
    fn m00_is_two_sinh() {
        for x in [0.5, 1.0, 3.0] {
            let v = m_lm(0, 0, x).unwrap().value;
            let r = 2.0 * (x / 2.0).sinh();
            assert!((v - r).abs() < 1e-15 * r);
        }
    }
}

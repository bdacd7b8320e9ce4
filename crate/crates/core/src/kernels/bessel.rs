//! Modified and ordinary Bessel functions by ascending series (K by Steed's
//! continued fraction for x >= 2), plus the order derivative of I_ν.

use twofloat::TwoFloat;

use super::gamma::{digamma, gamma, is_nonpositive_integer, lngamma, sin_pi};
use crate::error::{Error, Result};
use crate::hypergeom::{pfq, PfqArgs};
use crate::SeriesCtrl;

const MAX_TERMS: usize = 1000;

fn check_x(x: f64, what: &str) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("{what} needs a finite x >= 0, got {x}")));
    }
    if x > 50.0 {
        return Err(Error::Domain(format!("{what}: ascending series limited to x <= 50, got {x}")));
    }
    Ok(())
}

/// (x/2)^ν / Γ(ν+1), zero when ν+1 is a pole of Γ.
fn lead(nu: f64, x: f64) -> Result<f64> {
    if is_nonpositive_integer(nu + 1.0) {
        return Ok(0.0);
    }
    let lg = lngamma(nu + 1.0)?;
    let e = nu * (x / 2.0).ln() - lg.ln_abs;
    if e > 709.0 {
        return Err(Error::Overflow(format!("(x/2)^nu/Gamma(nu+1) overflows at nu={nu}, x={x}")));
    }
    Ok(lg.sign * e.exp())
}

fn ascending_i(nu: f64, x: f64) -> Result<f64> {
    let q = x * x / 4.0;
    let mut t = 1.0;
    let mut sum = 1.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        t *= q / (kf * (nu + kf));
        sum += t;
        if t.abs() <= f64::EPSILON * 0.25 * sum.abs() && kf > nu.abs() {
            return Ok(sum);
        }
        if !t.is_finite() {
            break;
        }
    }
    Err(Error::Overflow(format!("I_{nu}({x}) series terms left the representable range")))
}

/// I_ν(x) for x >= 0.
pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    check_x(x, "bessel_i")?;
    bessel_i_raw(nu, x)
}

/// I_ν(x) without the desk-scale cap on x; used inside damped integrands.
pub(crate) fn bessel_i_raw(nu: f64, x: f64) -> Result<f64> {
    if nu < 0.0 && nu == nu.round() {
        return bessel_i_raw(-nu, x);
    }
    if x == 0.0 {
        return match nu {
            0.0 => Ok(1.0),
            n if n > 0.0 => Ok(0.0),
            _ => Err(Error::Overflow(format!("I_{nu}(0) is infinite for negative non-integer order"))),
        };
    }
    Ok(lead(nu, x)? * ascending_i(nu, x)?)
}

/// J_ν(x) for x >= 0, summed in double-double to absorb the alternating cancellation.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    check_x(x, "bessel_j")?;
    bessel_j_raw(nu, x)
}

/// J_ν(x) without the desk-scale cap; accuracy degrades like e^x · 1e-32 beyond it.
pub(crate) fn bessel_j_raw(nu: f64, x: f64) -> Result<f64> {
    if nu < 0.0 && nu == nu.round() {
        let s = if (nu as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(s * bessel_j_raw(-nu, x)?);
    }
    if x == 0.0 {
        return match nu {
            0.0 => Ok(1.0),
            n if n > 0.0 => Ok(0.0),
            _ => Err(Error::Overflow(format!("J_{nu}(0) is infinite for negative non-integer order"))),
        };
    }
    let q = TwoFloat::from(x) * x / 4.0;
    let mut t = TwoFloat::from(1.0);
    let mut sum = TwoFloat::from(1.0);
    let mut converged = false;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        t = -crate::dd::div(t * q, TwoFloat::new_add(nu, kf)) / kf;
        sum += t;
        if f64::from(t).abs() <= 1e-33 * f64::from(sum).abs().max(1e-300) && kf > nu.abs() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence { what: format!("J_{nu}({x})"), terms: MAX_TERMS });
    }
    Ok(lead(nu, x)? * f64::from(sum))
}

/// K_ν(x) for x > 0.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("bessel_k needs x > 0, got {x}")));
    }
    check_x(x, "bessel_k")?;
    let nu = nu.abs();
    if x >= 2.0 {
        return bessel_k_cf2(nu, x);
    }
    if nu != nu.round() {
        let s = sin_pi(nu);
        return Ok(std::f64::consts::FRAC_PI_2 * (bessel_i(-nu, x)? - bessel_i(nu, x)?) / s);
    }
    let n = nu as usize;
    let h = x / 2.0;
    let q = h * h;
    let mut finite = 0.0;
    if n > 0 {
        // ½ (x/2)^{-n} Σ_{k<n} (n-k-1)!/k! (−q)^k
        let mut fact_nk = gamma(n as f64)?;
        let mut kfact = 1.0;
        let mut p = 1.0;
        for k in 0..n {
            if k > 0 {
                kfact *= k as f64;
                fact_nk /= (n - k) as f64;
                p *= -q;
            }
            finite += fact_nk / kfact * p;
        }
        finite *= 0.5 * h.powi(-(n as i32));
    }
    let sgn = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let log_part = -sgn * h.ln() * bessel_i(n as f64, x)?;
    let mut t = h.powi(n as i32) / gamma(n as f64 + 1.0)?;
    let mut sum = 0.0;
    for k in 0..MAX_TERMS {
        if k > 0 {
            t *= q / (k as f64 * (n + k) as f64);
        }
        let w = digamma(k as f64 + 1.0)? + digamma((n + k) as f64 + 1.0)?;
        sum += w * t;
        if (w * t).abs() <= f64::EPSILON * 0.25 * sum.abs() && k > 2 {
            break;
        }
    }
    Ok(finite + log_part + sgn * 0.5 * sum)
}

/// Steed's continued fraction for K_μ, K_{μ+1} with |μ| <= ½, then upward
/// recurrence in the order. Free of the cancellation the ascending series
/// suffers once K is exponentially small.
fn bessel_k_cf2(nu: f64, x: f64) -> Result<f64> {
    let nl = (nu + 0.5).floor();
    let xmu = nu - nl;
    let a1 = 0.25 - xmu * xmu;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let (mut q1, mut q2) = (0.0, 1.0);
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    let mut converged = false;
    for i in 2..MAX_TERMS {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < f64::EPSILON * 0.5 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence { what: format!("K_{nu}({x}) continued fraction"), terms: MAX_TERMS });
    }
    h *= a1;
    let mut k0 = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    let mut k1 = k0 * (xmu + x + 0.5 - h) / x;
    for i in 1..=nl as usize {
        let next = (xmu + i as f64) * 2.0 / x * k1 + k0;
        k0 = k1;
        k1 = next;
    }
    Ok(k0)
}

/// ∂I_ν(x)/∂ν for ν > −1 by term-wise differentiation of the ascending series.
pub(crate) fn dbessel_i_dnu_any(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("dbessel_i_dnu needs x > 0, got {x}")));
    }
    if !(nu > -1.0) {
        return Err(Error::Domain(format!("order derivative series needs nu > -1, got {nu}")));
    }
    check_x(x, "dbessel_i_dnu")?;
    let h = x / 2.0;
    let q = h * h;
    let mut c = lead(nu, x)?;
    let mut sum_i = 0.0;
    let mut sum_psi = 0.0;
    for k in 0..MAX_TERMS {
        if k > 0 {
            c *= q / (k as f64 * (nu + k as f64));
        }
        let w = digamma(nu + k as f64 + 1.0)?;
        sum_i += c;
        sum_psi += w * c;
        let small = |v: f64, s: f64| v.abs() <= f64::EPSILON * 0.25 * s.abs();
        if k > 2 && small(c, sum_i) && small(w * c, sum_psi) {
            return Ok(h.ln() * sum_i - sum_psi);
        }
    }
    Err(Error::Convergence { what: format!("dI_nu/dnu at nu={nu}, x={x}"), terms: MAX_TERMS })
}

/// ∂I_ν(x)/∂ν for ν >= 0, x > 0.
pub fn dbessel_i_dnu(nu: f64, x: f64) -> Result<f64> {
    if nu < 0.0 {
        return Err(Error::Domain(format!("dbessel_i_dnu needs nu >= 0, got {nu}")));
    }
    dbessel_i_dnu_any(nu, x)
}

/// Cross-check route for ∂I_ν/∂ν built from ₃F₄ and ₂F₃; non-integer ν > 0 only.
pub fn dbessel_i_dnu_hyper(nu: f64, x: f64) -> Result<f64> {
    if !(nu > 0.0) || nu == nu.round() {
        return Err(Error::Domain(format!("hypergeometric order-derivative form needs non-integer nu > 0, got {nu}")));
    }
    if !(x > 0.0) {
        return Err(Error::Domain(format!("dbessel_i_dnu_hyper needs x > 0, got {x}")));
    }
    let ctrl = SeriesCtrl::default();
    let z = x * x;
    let f34 = pfq(&PfqArgs::new(vec![1.0, 1.0, 1.5], vec![2.0, 2.0, 2.0 - nu, 2.0 + nu], z), &ctrl)?.value;
    let f23 = pfq(&PfqArgs::new(vec![nu, nu + 0.5], vec![nu + 1.0, nu + 1.0, 2.0 * nu + 1.0], z), &ctrl)?.value;
    let bracket = z / (4.0 * (1.0 - nu * nu)) * f34 + (x / 2.0).ln() - digamma(nu)? - 0.5 / nu;
    let g = gamma(nu + 1.0)?;
    let second = std::f64::consts::PI / sin_pi(nu) / (2.0 * g * g) * (x / 2.0).powf(2.0 * nu) * f23;
    Ok(bessel_i(nu, x)? * bracket - bessel_i(-nu, x)? * second)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_large_argument_has_no_cancellation() {
        let cases = [
            (0.0, 2.0, 0.11389387274953344),
            (0.0, 25.0, 3.4641615622131143e-12),
            (0.3, 2.5, 0.06331387929629556),
            (2.0, 20.0, 6.329543612292228e-10),
            (5.5, 3.0, 1.7572674969827395),
            (1.0, 10.0, 1.8648773453825585e-05),
            (0.5, 7.0, 0.00043196598040526124),
        ];
        for (nu, x, want) in cases {
            let got = bessel_k(nu, x).unwrap();
            assert!((got - want).abs() <= 1e-14 * want, "K_{nu}({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn negative_integer_orders_reflect() {
        assert_eq!(bessel_i(-2.0, 1.3).unwrap(), bessel_i(2.0, 1.3).unwrap());
        assert_eq!(bessel_j(-1.0, 1.3).unwrap(), -bessel_j(1.0, 1.3).unwrap());
    }

    #[test]
    fn order_derivative_at_zero_is_minus_k0() {
        for x in [0.5, 1.0, 3.0] {
            let d = dbessel_i_dnu(0.0, x).unwrap();
            let k0 = bessel_k(0.0, x).unwrap();
            assert!((d + k0).abs() < 1e-14 * (1.0 + k0.abs()), "x={x}");
        }
    }

    #[test]
    fn j_at_large_argument_keeps_digits() {
        // J_0(40) = 0.0073668905842372896
        let j = bessel_j(0.0, 40.0).unwrap();
        assert!((j - 0.007_366_890_584_237_29).abs() < 1e-12, "{j}");
    }
}

//! Gamma, digamma and harmonic numbers on the real line.

use num_rational::Ratio;

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// ln|Γ(z)| together with the sign of Γ(z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LnGamma {
    pub ln_abs: f64,
    pub sign: f64,
}

pub(crate) fn is_nonpositive_integer(z: f64) -> bool {
    z <= 0.0 && z == z.round()
}

fn pole(what: &str, z: f64) -> Error {
    Error::Pole(format!("{what} has a pole at z = {z} (nonpositive integer)"))
}

/// sin(πz) without the loss that `(PI * z).sin()` suffers for large |z|.
pub(crate) fn sin_pi(z: f64) -> f64 {
    let r = z - 2.0 * (z / 2.0).round();
    if r.abs() == 1.0 || r == 0.0 {
        return 0.0;
    }
    let (s, t) = if r > 0.5 {
        (1.0, 1.0 - r)
    } else if r < -0.5 {
        (1.0, -1.0 - r)
    } else {
        (1.0, r)
    };
    s * (std::f64::consts::PI * t).sin()
}

pub(crate) fn cos_pi(z: f64) -> f64 {
    sin_pi(z + 0.5)
}

// Bernoulli numbers B_{2k}/(2k(2k-1)) for Stirling's series.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

fn lngamma_large(z: f64) -> f64 {
    let zi = 1.0 / z;
    let zi2 = zi * zi;
    let mut corr = 0.0;
    let mut p = zi;
    for c in STIRLING {
        corr += c * p;
        p *= zi2;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + corr
}

/// ln|Γ(z)| and the sign of Γ(z); shift to z >= 15 then Stirling.
pub fn lngamma(z: f64) -> Result<LnGamma> {
    if is_nonpositive_integer(z) {
        return Err(pole("lngamma", z));
    }
    if !z.is_finite() {
        return Err(Error::Domain(format!("lngamma needs a finite argument, got {z}")));
    }
    if z < 0.5 {
        let s = sin_pi(z);
        let rest = lngamma(1.0 - z)?;
        let ln_abs = std::f64::consts::PI.ln() - s.abs().ln() - rest.ln_abs;
        return Ok(LnGamma { ln_abs, sign: s.signum() * rest.sign });
    }
    if z == z.round() && z <= 171.0 {
        let mut f = 1.0f64;
        let mut k = 2.0;
        while k < z {
            f *= k;
            k += 1.0;
        }
        return Ok(LnGamma { ln_abs: f.ln(), sign: 1.0 });
    }
    let mut shift = 1.0f64;
    let mut w = z;
    while w < 15.0 {
        shift *= w;
        w += 1.0;
    }
    Ok(LnGamma { ln_abs: lngamma_large(w) - shift.ln(), sign: 1.0 })
}

/// Γ(z) for real z away from the poles.
pub fn gamma(z: f64) -> Result<f64> {
    if is_nonpositive_integer(z) {
        return Err(pole("gamma", z));
    }
    if z == z.round() && z > 0.0 && z <= 171.0 {
        let mut f = 1.0f64;
        let mut k = 2.0;
        while k < z {
            f *= k;
            k += 1.0;
        }
        return Ok(f);
    }
    if z < 0.5 {
        return Ok(std::f64::consts::PI / (sin_pi(z) * gamma(1.0 - z)?));
    }
    if z < 15.0 {
        let mut shift = 1.0f64;
        let mut w = z;
        while w < 15.0 {
            shift *= w;
            w += 1.0;
        }
        return Ok(lngamma_large(w).exp() / shift);
    }
    let lg = lngamma_large(z);
    if lg > 709.0 {
        return Err(Error::Overflow(format!("gamma({z}) exceeds f64 range")));
    }
    Ok(lg.exp())
}

/// 1/Γ(z), zero at the poles.
pub fn rgamma(z: f64) -> f64 {
    if is_nonpositive_integer(z) {
        0.0
    } else {
        gamma(z).map(|g| 1.0 / g).unwrap_or(0.0)
    }
}

/// Beta function B(a, b) = Γ(a)Γ(b)/Γ(a+b).
pub fn beta(a: f64, b: f64) -> Result<f64> {
    let la = lngamma(a)?;
    let lb = lngamma(b)?;
    if is_nonpositive_integer(a + b) {
        return Err(pole("beta (a+b)", a + b));
    }
    let lab = lngamma(a + b)?;
    Ok(la.sign * lb.sign * lab.sign * (la.ln_abs + lb.ln_abs - lab.ln_abs).exp())
}

// B_{2k}/(2k) for the digamma asymptotic tail.
const DIGAMMA_TAIL: [f64; 7] =
    [1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0, 1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0];

/// ψ(z) by upward recurrence to z >= 10 and the asymptotic tail.
pub fn digamma(z: f64) -> Result<f64> {
    if is_nonpositive_integer(z) {
        return Err(pole("digamma", z));
    }
    if !z.is_finite() {
        return Err(Error::Domain(format!("digamma needs a finite argument, got {z}")));
    }
    let mut acc = 0.0;
    let mut w = z;
    if w < -10.0 {
        // ψ(1−z) − ψ(z) = π cot(πz)
        let c = cos_pi(z) / sin_pi(z);
        return Ok(digamma(1.0 - z)? - std::f64::consts::PI * c);
    }
    while w < 10.0 {
        acc -= 1.0 / w;
        w += 1.0;
    }
    let wi2 = 1.0 / (w * w);
    let mut p = wi2;
    let mut tail = 0.0;
    for c in DIGAMMA_TAIL {
        tail += c * p;
        p *= wi2;
    }
    Ok(acc + w.ln() - 0.5 / w - tail)
}

/// Generalised harmonic number H_z = ψ(z+1) + γ; exact for integer z <= 30.
pub fn harmonic(z: f64) -> Result<f64> {
    if z <= -1.0 {
        return Err(Error::Domain(format!("harmonic number H_z needs z > -1, got {z}")));
    }
    if z == z.round() && (0.0..=30.0).contains(&z) {
        let n = z as u128;
        let mut s = Ratio::<u128>::from_integer(0);
        for k in 1..=n {
            s += Ratio::new(1, k);
        }
        return Ok(*s.numer() as f64 / *s.denom() as f64);
    }
    Ok(digamma(z + 1.0)? + EULER_GAMMA)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_half() {
        let g = gamma(0.5).unwrap();
        assert!((g - std::f64::consts::PI.sqrt()).abs() < 4e-16);
    }

    #[test]
    fn gamma_negative_half() {
        // Γ(−1/2) = −2√π
        let g = gamma(-0.5).unwrap();
        assert!((g + 2.0 * std::f64::consts::PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn lngamma_sign_between_poles() {
        assert_eq!(lngamma(-0.5).unwrap().sign, -1.0);
        assert_eq!(lngamma(-1.5).unwrap().sign, 1.0);
    }

    #[test]
    fn poles_are_errors() {
        assert!(matches!(gamma(-2.0), Err(Error::Pole(_))));
        assert!(matches!(digamma(0.0), Err(Error::Pole(_))));
    }

    #[test]
    fn digamma_far_left_uses_reflection() {
        let z = -12.3;
        let lhs = digamma(z + 1.0).unwrap() - digamma(z).unwrap();
        assert!((lhs - 1.0 / z).abs() < 1e-12);
    }

    #[test]
    fn sin_pi_exact_zeros() {
        assert_eq!(sin_pi(3.0), 0.0);
        assert!((sin_pi(0.5) - 1.0).abs() < 1e-16);
        assert!((sin_pi(-0.5) + 1.0).abs() < 1e-16);
    }
}

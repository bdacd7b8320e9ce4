//! Generalised Laguerre polynomials.

use super::pochhammer::{binomial, factorial};

/// L_n^{(α)}(x) = Σ_k (−1)^k C(n+α, n−k) x^k / k!, with the binomial in Γ form.
pub fn laguerre(n: usize, alpha: f64, x: f64) -> f64 {
    // C(n+α, n−k) = Π_{j=k+1}^{n} (α+j) / (n−k)!
    let mut sum = 0.0;
    for k in 0..=n {
        let mut c = 1.0;
        for j in (k + 1)..=n {
            c *= alpha + j as f64;
        }
        c /= factorial(n - k);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * c * x.powi(k as i32) / factorial(k);
    }
    sum
}

/// Integer-α convenience used by tests: C(n+α, n−k) via integer binomials.
#[allow(dead_code)]
pub(crate) fn laguerre_int(n: usize, alpha: usize, x: f64) -> f64 {
    (0..=n)
        .map(|k| {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            s * binomial(n + alpha, n - k) * x.powi(k as i32) / factorial(k)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_integer_binomial_form() {
        for n in 0..6 {
            for a in 0..3 {
                let l = laguerre(n, a as f64, 1.7);
                let r = laguerre_int(n, a, 1.7);
                assert!((l - r).abs() < 1e-13 * (1.0 + r.abs()));
            }
        }
    }
}

//! Rising factorials, factorials and binomial coefficients.

/// (a)_n = a(a+1)…(a+n−1).
pub fn pochhammer(a: f64, n: usize) -> f64 {
    let mut p = 1.0;
    for k in 0..n {
        p *= a + k as f64;
        if p == 0.0 {
            break;
        }
    }
    p
}

/// n! exactly in integer arithmetic up to 33!, rounded to f64 once.
pub fn factorial(n: usize) -> f64 {
    if n <= 33 {
        (1..=n as u128).product::<u128>() as f64
    } else {
        let mut f = factorial(33);
        for k in 34..=n {
            f *= k as f64;
        }
        f
    }
}

/// Binomial coefficient C(n, k) for nonnegative integers.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for j in 0..k as u128 {
        match c.checked_mul(n as u128 - j) {
            Some(v) => c = v / (j + 1),
            None => return (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64),
        }
    }
    c as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(pochhammer(3.0, 4), 360.0);
        assert_eq!(pochhammer(-2.0, 4), 0.0);
        assert_eq!(pochhammer(0.5, 0), 1.0);
        assert_eq!(factorial(5), 120.0);
        assert_eq!(binomial(6, 2), 15.0);
        assert_eq!(binomial(3, 5), 0.0);
    }
}

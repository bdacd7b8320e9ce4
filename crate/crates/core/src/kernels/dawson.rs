//! Dawson's integral F(x) = e^{−x²}∫₀ˣ e^{t²} dt.

const SERIES_LIMIT: f64 = 6.0;

fn maclaurin(x: f64) -> f64 {
    // F(x) = Σ (−1)^k 2^k x^{2k+1} / (2k+1)!!
    let x2 = x * x;
    let mut t = x;
    let mut sum = x;
    let mut k = 0u32;
    while k < 400 {
        k += 1;
        t *= -2.0 * x2 / (2.0 * k as f64 + 1.0);
        sum += t;
        if t.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn maclaurin_dd(x: f64) -> f64 {
    use twofloat::TwoFloat;
    let x2 = TwoFloat::from(x) * x;
    let mut t = TwoFloat::from(x);
    let mut sum = t;
    for k in 1..600 {
        t = t * x2 * -2.0 / (2.0 * k as f64 + 1.0);
        sum += t;
        if f64::from(t).abs() <= 1e-33 * f64::from(sum).abs() {
            break;
        }
    }
    f64::from(sum)
}

fn asymptotic(x: f64) -> f64 {
    // F(x) ~ 1/(2x) Σ (2k−1)!!/(2x²)^k
    let y = 1.0 / (2.0 * x * x);
    let mut t = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        let next = t * (2 * k - 1) as f64 * y;
        if next.abs() > t.abs() {
            break;
        }
        t = next;
        sum += t;
        if t.abs() < 1e-17 * sum {
            break;
        }
    }
    sum / (2.0 * x)
}

/// Dawson's integral, odd in x.
pub fn dawson(x: f64) -> f64 {
    let a = x.abs();
    let v = if a <= 1.0 {
        maclaurin(a)
    } else if a <= SERIES_LIMIT {
        maclaurin_dd(a)
    } else {
        asymptotic(a)
    };
    v.copysign(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn continuous_across_switch() {
        let lo = maclaurin_dd(SERIES_LIMIT);
        let hi = asymptotic(SERIES_LIMIT);
        assert!((lo - hi).abs() < 1e-12 * lo, "{lo} vs {hi}");
    }

    #[test]
    fn odd() {
        assert_eq!(dawson(-0.7), -dawson(0.7));
        assert_eq!(dawson(0.0), 0.0);
    }
}

//! Double-double helpers on top of `twofloat`.

use twofloat::TwoFloat;

pub(crate) type Dd = TwoFloat;

pub(crate) fn dd(x: f64) -> Dd {
    TwoFloat::from(x)
}

pub(crate) fn to_f64(x: Dd) -> f64 {
    f64::from(x)
}

/// e^x to roughly 1e-30 relative: x = k ln2 + r, Taylor on r/16, square back up.
pub(crate) fn exp(x: f64) -> Dd {
    if x == 0.0 {
        return dd(1.0);
    }
    let ln2 = TwoFloat::new_add(std::f64::consts::LN_2, 2.319_046_813_846_299_6e-17);
    let k = (x / std::f64::consts::LN_2).round();
    let r = (dd(x) - ln2 * k) / 16.0;
    let mut term = dd(1.0);
    let mut sum = dd(1.0);
    for j in 1..30 {
        term = term * r / j as f64;
        sum += term;
        if to_f64(term).abs() < 1e-34 {
            break;
        }
    }
    for _ in 0..4 {
        sum = sum * sum;
    }
    sum * 2f64.powi(k as i32)
}

/// a / b to double-double accuracy; `TwoFloat`'s own quotient keeps only f64 digits.
pub(crate) fn div(a: Dd, b: Dd) -> Dd {
    let q1 = a.hi() / b.hi();
    let r = a - b * q1;
    let q2 = r.hi() / b.hi();
    let r = r - b * q2;
    let q3 = r.hi() / b.hi();
    TwoFloat::new_add(q1, q2) + q3
}

/// Integer power in double-double by repeated squaring.
pub(crate) fn powi(x: f64, n: i32) -> Dd {
    let mut base = dd(x);
    let mut e = n.unsigned_abs();
    let mut acc = dd(1.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base = base * base;
        e >>= 1;
    }
    if n < 0 {
        div(dd(1.0), acc)
    } else {
        acc
    }
}

/// n! in double-double; exact in u128 up to 33!.
pub(crate) fn factorial(n: usize) -> Dd {
    if n <= 33 {
        let f: u128 = (1..=n as u128).product();
        let hi = f as f64;
        let lo = (f as i128 - hi as i128) as f64;
        TwoFloat::new_add(hi, lo)
    } else {
        let mut f = factorial(33);
        for k in 34..=n {
            f *= k as f64;
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_one_to_double_double() {
        // e = 2.718281828459045 + 1.4456468917292502e-16
        let e = exp(1.0);
        assert_eq!(e.hi(), std::f64::consts::E);
        assert!((e.lo() - 1.445_646_891_729_250_2e-16).abs() < 1e-30);
    }

    #[test]
    fn exp_inverse() {
        for x in [0.3, 2.0, 7.5, 20.0] {
            let p = exp(x) * exp(-x);
            assert!((to_f64(p - dd(1.0))).abs() < 1e-28, "x={x}");
        }
    }

    #[test]
    fn division_keeps_double_double_digits() {
        let a = TwoFloat::new_add(1e10, 1e-7);
        let b = TwoFloat::new_add(3.0, 1e-17);
        let r = div(a, b) * b - a;
        assert!(to_f64(r).abs() < 1e-21);
        assert!(to_f64(powi(7.0, -3) * 343.0 - dd(1.0)).abs() < 1e-30);
    }

    #[test]
    fn factorial_exact_hi_lo() {
        let f = factorial(25);
        let exact: u128 = (1..=25u128).product();
        let back = f.hi() as i128 + f.lo() as i128;
        assert_eq!(back as u128, exact);
    }
}

//! Explicit closed forms of M_{κ,μ}(x) at particular parameter values.

use std::sync::OnceLock;

use crate::error::Result;
use crate::hypergeom::laguerre_fn;
use crate::kernels::{bessel_i, dawson, gamma};
use crate::SeriesCtrl;

/// A catalogue entry: exact (κ, μ), an evaluator in x, and its name.
#[derive(Debug, Clone, Copy)]
pub struct ClosedForm {
    pub kappa: f64,
    pub mu: f64,
    pub citation: &'static str,
    pub eval: fn(f64) -> Result<f64>,
}

impl ClosedForm {
    pub fn matches(&self, kappa: f64, mu: f64) -> bool {
        super::near(kappa, self.kappa) && super::near(mu, self.mu)
    }
}

fn i(nu: f64, x: f64) -> Result<f64> {
    bessel_i(nu, x / 2.0)
}

fn lf(nu: f64, x: f64) -> Result<f64> {
    Ok(laguerre_fn(nu, x, &SeriesCtrl::default())?.value)
}

const SQRT_PI: f64 = 1.772_453_850_905_516;

fn row(kappa: f64, mu: f64, eval: fn(f64) -> Result<f64>) -> ClosedForm {
    ClosedForm { kappa, mu, citation: "M particular-value table", eval }
}

/// Elementary and Bessel-type forms at particular (κ, μ); valid for x > 0.
pub fn table5() -> &'static [ClosedForm] {
    static ROWS: OnceLock<Vec<ClosedForm>> = OnceLock::new();
    ROWS.get_or_init(|| {
        vec![
            row(-0.25, 0.25, |x| Ok(SQRT_PI / 2.0 * (x / 2.0).exp() * x.powf(0.25) * libm::erf(x.sqrt()))),
            row(-0.5, 0.5, |x| Ok(x * (i(0.0, x)? + i(1.0, x)?))),
            row(-0.5, 1.0 / 6.0, |x| {
                Ok(2f64.powf(-2.0 / 3.0) * x * gamma(2.0 / 3.0)? * (i(-1.0 / 3.0, x)? + i(2.0 / 3.0, x)?))
            }),
            row(-0.5, 1.0, |x| Ok(x.powf(-0.5) * (-x / 2.0).exp() * (2.0 * x.exp() * (x - 1.0) + 2.0))),
            row(0.0, 0.0, |x| Ok(x.sqrt() * i(0.0, x)?)),
            row(0.0, 0.5, |x| Ok(2.0 * (x / 2.0).sinh())),
            row(0.0, 1.0, |x| Ok(4.0 * x.sqrt() * i(1.0, x)?)),
            row(0.0, 1.5, |x| Ok(12.0 * ((x / 2.0).cosh() - 2.0 / x * (x / 2.0).sinh()))),
            row(0.0, 2.5, |x| Ok(120.0 / (x * x) * ((x * x + 12.0) * (x / 2.0).sinh() - 6.0 * x * (x / 2.0).cosh()))),
            row(1.0 / 6.0, 0.0, |x| Ok(x.sqrt() * (-x / 2.0).exp() * lf(-1.0 / 3.0, x)?)),
            row(0.25, -0.25, |x| Ok(x.powf(0.25) * (-x / 2.0).exp())),
            row(0.25, 0.25, |x| Ok(x.powf(0.25) * (x / 2.0).exp() * dawson(x.sqrt()))),
            row(1.0 / 3.0, 0.0, |x| Ok(x.sqrt() * (-x / 2.0).exp() * lf(-1.0 / 6.0, x)?)),
            row(0.5, 1.0 / 6.0, |x| {
                Ok(2f64.powf(-2.0 / 3.0) * x * gamma(2.0 / 3.0)? * (i(-1.0 / 3.0, x)? - i(2.0 / 3.0, x)?))
            }),
            row(0.5, 0.25, |x| Ok(2f64.powf(-0.5) * x * gamma(0.75)? * (i(-0.25, x)? - i(0.75, x)?))),
            row(0.5, 0.5, |x| Ok(x * (i(0.0, x)? - i(1.0, x)?))),
            row(0.5, 1.0, |x| Ok(2.0 * x.powf(-0.5) * (-x / 2.0).exp() * (x.exp() - x - 1.0))),
            row(0.5, 2.0, |x| {
                Ok(12.0 * x.powf(-1.5) * (-x / 2.0).exp() * (2.0 * x.exp() * (x - 3.0) + x * x + 4.0 * x + 6.0))
            }),
            row(1.0, -1.5, |x| Ok((-x / 2.0).exp() * (x / 2.0 + 1.0 + 1.0 / x))),
            row(1.0, 1.0, |x| Ok(4.0 / 3.0 * x.sqrt() * (x * i(0.0, x)? - (x + 1.0) * i(1.0, x)?))),
            row(1.0, 1.5, |x| Ok((-x / 2.0).exp() / x * (6.0 * x.exp() - 3.0 * x * x - 6.0 * x - 6.0))),
            row(1.0, 2.0, |x| {
                Ok(32.0 / 5.0 * x.powf(-0.5) * ((x * x + 4.0 * x + 12.0) * i(1.0, x)? - (x * x + 3.0 * x) * i(0.0, x)?))
            }),
            row(2.0, 2.0, |x| {
                Ok(32.0 / 35.0
                    * x.powf(-0.5)
                    * (x * (2.0 * x * x + 2.0 * x + 3.0) * i(0.0, x)?
                        - 2.0 * (x * x * x + 2.0 * x * x + 4.0 * x + 6.0) * i(1.0, x)?))
            }),
        ]
    })
}

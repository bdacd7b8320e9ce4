//! Target dispatch for `whittaker eval`.

use anyhow::{anyhow, bail, Result};
use clap::ValueEnum;
use whittaker::deriv::{dm_dkappa, dm_dmu, Route};
use whittaker::hypergeom::{g1, g1_kummer, g1_polynomial_limit, g1_reduced, h1, h1_reduced};
use whittaker::incgamma::{dGamma_dnu, dgamma_dnu, IncGammaArgs};
use whittaker::intwhit::{
    mi_lower, mi_lower_reduced, mi_lower_reflected, mi_lower_signed, mi_upper, mi_upper_reduced, IntWhittakerArgs,
};
use whittaker::logint::{h_integral, i_integral, j_integral, IntRoute};
use whittaker::quad::QuadCtrl;
use whittaker::whittaker::{m_reduced, m_reflect, m_series, m_value, snap_int, WhittakerParams};
use whittaker::{Closed, EvalResult, KernelValue, SeriesCtrl};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    M,
    Dmdk,
    Dmdmu,
    G1,
    H1,
    I1,
    I2,
    I3,
    I4,
    J1,
    J2,
    J3,
    J4,
    H1inf,
    H2inf,
    #[value(name = "gammainc-dnu")]
    GammaincDnu,
    #[value(name = "Gammainc-dnu")]
    UpperGammaincDnu,
    Mi,
    #[value(name = "mi-upper")]
    MiUpper,
}

impl Target {
    pub fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }

    /// Named parameters the target needs, in output order.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            Target::G1 | Target::H1 => &["a", "b"],
            Target::GammaincDnu | Target::UpperGammaincDnu => &["nu"],
            _ => &["kappa", "mu"],
        }
    }

    /// Accepted `--route` values; the first is the default.
    pub fn routes(self) -> &'static [&'static str] {
        match self {
            Target::M => &["auto", "series", "closed", "reflect"],
            Target::Dmdk | Target::Dmdmu => &["auto", "series", "closed", "integral", "all"],
            Target::G1 => &["auto", "series", "closed", "kummer"],
            Target::H1 => &["auto", "series", "closed"],
            Target::GammaincDnu | Target::UpperGammaincDnu => &["auto"],
            Target::Mi => &["auto", "quad", "reduced", "reflected"],
            Target::MiUpper => &["auto", "quad", "reduced"],
            _ => &["auto", "quad", "closed", "relation"],
        }
    }
}

/// One evaluated point.
pub struct Point {
    pub value: f64,
    pub abs_err_est: f64,
    pub route: String,
    pub citations: Vec<String>,
}

impl Point {
    fn kernel(v: KernelValue, route: &str, citation: &str) -> Self {
        Point { value: v.value, abs_err_est: v.abs_err_est, route: route.into(), citations: vec![citation.into()] }
    }

    fn closed(c: Closed) -> Self {
        Point::kernel(c.value, "closed", c.citation)
    }

    fn eval(r: EvalResult) -> Self {
        Point { value: r.value, abs_err_est: r.abs_err_est, route: r.route, citations: r.citations }
    }
}

pub struct Request {
    pub target: Target,
    pub route: String,
    pub values: Vec<(&'static str, f64)>,
}

impl Request {
    pub fn get(&self, name: &str) -> f64 {
        self.values.iter().find(|(n, _)| *n == name).map(|(_, v)| *v).unwrap_or(f64::NAN)
    }
}

/// Mi/mi reduction indices: κ = κ₀ + n, μ = κ₀ − ½.
fn reduced_indices(kappa: f64, mu: f64) -> Option<(f64, usize)> {
    let k0 = mu + 0.5;
    match snap_int(kappa - k0) {
        Some(n) if n >= 0 && k0 > 0.0 => Some((k0, n as usize)),
        _ => None,
    }
}

fn no_closed(what: &str, a: f64, b: f64) -> anyhow::Error {
    anyhow!("no closed form catalogued for {what} at ({a}, {b})")
}

pub fn evaluate(req: &Request, x: f64, ctrl: &SeriesCtrl) -> Result<Point> {
    let route = req.route.as_str();
    let q = QuadCtrl::default();
    let (kappa, mu) = (req.get("kappa"), req.get("mu"));
    Ok(match req.target {
        Target::M => {
            let p = WhittakerParams::new(kappa, mu, x)?;
            match route {
                "series" => Point::kernel(m_series(&p, ctrl)?, "series", "1F1 power series"),
                "closed" => Point::closed(m_reduced(&p).ok_or_else(|| no_closed("M", kappa, mu))?),
                "reflect" => Point::kernel(m_reflect(&p, ctrl)?, "reflect", "Kummer reflection of M"),
                _ => Point::kernel(m_value(&p, ctrl)?, "series", "1F1 power series"),
            }
        }
        Target::Dmdk | Target::Dmdmu => {
            let p = WhittakerParams::new(kappa, mu, x)?;
            let r = match route {
                "series" => Route::Series,
                "closed" => Route::Closed,
                "integral" => Route::Integral,
                _ => Route::All,
            };
            let v = if req.target == Target::Dmdk { dm_dkappa(&p, r, ctrl)? } else { dm_dmu(&p, r, ctrl)? };
            Point::eval(v)
        }
        Target::G1 => {
            let (a, b) = (req.get("a"), req.get("b"));
            match route {
                "closed" => Point::closed(g1_reduced(a, b, x).ok_or_else(|| no_closed("G1", a, b))?),
                "kummer" => Point::kernel(g1_kummer(a, b, x)?, "kummer", "Kummer transformation of G1"),
                "series" => Point::kernel(g1(a, b, x, ctrl)?, "series", "G1 digamma-weighted series"),
                _ => match snap_int(a) {
                    Some(n) if n <= 0 => Point::kernel(
                        g1_polynomial_limit((-n) as usize, b, x, ctrl)?,
                        "series",
                        "G1 polynomial limit at nonpositive integer a",
                    ),
                    _ => Point::kernel(g1(a, b, x, ctrl)?, "series", "G1 digamma-weighted series"),
                },
            }
        }
        Target::H1 => {
            let (a, b) = (req.get("a"), req.get("b"));
            match route {
                "closed" => Point::closed(h1_reduced(a, b, x).ok_or_else(|| no_closed("H1", a, b))?),
                _ => Point::kernel(h1(a, b, x, ctrl)?, "series", "H1 digamma-weighted series"),
            }
        }
        t @ (Target::I1
        | Target::I2
        | Target::I3
        | Target::I4
        | Target::J1
        | Target::J2
        | Target::J3
        | Target::J4
        | Target::H1inf
        | Target::H2inf) => {
            let (family, index) = match t {
                Target::I1 => ("I", 1),
                Target::I2 => ("I", 2),
                Target::I3 => ("I", 3),
                Target::I4 => ("I", 4),
                Target::J1 => ("J", 1),
                Target::J2 => ("J", 2),
                Target::J3 => ("J", 3),
                Target::J4 => ("J", 4),
                Target::H1inf => ("H", 1),
                _ => ("H", 2),
            };
            let run = |r: IntRoute| -> whittaker::Result<KernelValue> {
                match family {
                    "I" => i_integral(index, kappa, mu, x, r),
                    "J" => j_integral(index, kappa, mu, x, r),
                    _ => h_integral(index, kappa, mu, x, r),
                }
            };
            let tagged = |r: IntRoute| -> whittaker::Result<Point> {
                let (tag, cite) = match r {
                    IntRoute::Quad => ("quad", "double-exponential quadrature"),
                    IntRoute::Closed => ("closed", "closed-form reduction"),
                    IntRoute::Relation => ("relation", "relation to the first integral of the family"),
                };
                run(r).map(|v| Point::kernel(v, tag, &format!("{family}{index} {cite}")))
            };
            match route {
                "quad" => tagged(IntRoute::Quad)?,
                "closed" => tagged(IntRoute::Closed)?,
                "relation" => tagged(IntRoute::Relation)?,
                _ => tagged(IntRoute::Closed)
                    .or_else(|_| tagged(IntRoute::Relation))
                    .or_else(|_| tagged(IntRoute::Quad))?,
            }
        }
        Target::GammaincDnu => {
            let v = dgamma_dnu(&IncGammaArgs::new(req.get("nu"), x)?)?;
            Point::kernel(v, "series", "order derivative of the lower incomplete gamma")
        }
        Target::UpperGammaincDnu => {
            let v = dGamma_dnu(&IncGammaArgs::new(req.get("nu"), x)?)?;
            Point::kernel(v, "series", "order derivative of the upper incomplete gamma")
        }
        Target::Mi => {
            let reduced = || -> Result<Point> {
                let (k0, n) = reduced_indices(kappa, mu).ok_or_else(|| {
                    anyhow!("Mi reduction needs kappa - mu - 1/2 a nonnegative integer and mu > -1/2")
                })?;
                Ok(Point::kernel(mi_lower_reduced(k0, n, x)?, "reduced", "Mi reduction to lower incomplete gamma"))
            };
            let reflected = || -> Result<Point> {
                let k0 = mu + 0.5;
                let n = snap_int(-kappa - k0)
                    .filter(|n| *n >= 0)
                    .ok_or_else(|| anyhow!("reflected Mi needs -kappa - mu - 1/2 a nonnegative integer"))?;
                Ok(Point::kernel(mi_lower_reflected(k0, n as usize, x)?, "reflected", "reflected Mi reduction"))
            };
            let quad = || -> Result<Point> {
                let v = if x > 0.0 {
                    mi_lower(&IntWhittakerArgs::new(kappa, mu, x)?, &q)?
                } else {
                    mi_lower_signed(kappa, mu, x, &q)?
                };
                Ok(Point::kernel(v, "quad", "Mi by double-exponential quadrature"))
            };
            match route {
                "quad" => quad()?,
                "reduced" => reduced()?,
                "reflected" => reflected()?,
                _ if x > 0.0 && reduced_indices(kappa, mu).is_some() => reduced()?,
                _ => quad()?,
            }
        }
        Target::MiUpper => {
            let reduced = || -> Result<Point> {
                let (k0, n) = reduced_indices(kappa, mu).ok_or_else(|| {
                    anyhow!("mi reduction needs kappa - mu - 1/2 a nonnegative integer and mu > -1/2")
                })?;
                Ok(Point::kernel(mi_upper_reduced(k0, n, x)?, "reduced", "mi reduction to upper incomplete gamma"))
            };
            match route {
                "reduced" => reduced()?,
                "auto" if reduced_indices(kappa, mu).is_some() => reduced()?,
                _ => Point::kernel(
                    mi_upper(&IntWhittakerArgs::new(kappa, mu, x)?, &q)?,
                    "quad",
                    "mi by truncated quadrature",
                ),
            }
        }
    })
}

/// Surfaces parameter constraints before complaining about missing flags.
pub fn precheck(target: Target, mu: Option<f64>) -> Result<()> {
    if let (Some(mu), true) = (mu, target.params().contains(&"mu")) {
        if let Err(e) = WhittakerParams::new(0.0, mu, 1.0) {
            bail!(e);
        }
    }
    Ok(())
}

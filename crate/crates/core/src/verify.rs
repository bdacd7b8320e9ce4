//! Cross-route verification: finite-difference oracles, quadrature oracles,
//! identity checks and table reproduction.
//!
//! Every check compares two values produced by routes that share no code
//! path, and records which public operations it exercised so that a full run
//! can assert coverage of the library.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::deriv::{dm_dkappa, dm_dkappa_closed, dm_dmu, dm_dmu_closed, f_func, s1_s2, Route};
use crate::error::{Error, Result};
use crate::grid::{self, ExecMode};
use crate::hypergeom::{
    g1, g1_kummer, g1_one_minus_n, g1_polynomial_limit, g1_reduced, h1, h1_reduced, pfq, pfq_nth_derivative, s_finite,
    PfqArgs,
};
use crate::incgamma::{
    dGamma_dnu, dgamma_dnu, log_integral_exp, log_integral_gamma, lower_gamma, upper_gamma, IncGammaArgs,
};
use crate::intwhit::{
    mi_complement, mi_lower, mi_lower_reduced, mi_lower_reflected, mi_lower_signed, mi_upper, mi_upper_reduced,
    IntWhittakerArgs,
};
use crate::kernels::{digamma, gamma, is_nonpositive_integer};
use crate::logint::{
    h_integral, i1_closed, i1_general, i_integral, i_quad, j1_closed, j1_general, j1_kappa_zero, j3_closed, j_integral,
    j_quad, IntRoute, I_INT, J_INT,
};
use crate::quad::{quad_de, quad_truncated, upper_gamma_bound, Endpoints, QuadCtrl};
use crate::tables::{rel_diff, reproduce_table, RowStatus, TableId};
use crate::whittaker::{m_reduced, m_reflect, m_series, p_poly, snap_int, table5, WhittakerParams};
use crate::SeriesCtrl;

/// One comparison of two routes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub check_id: String,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_diff: f64,
    pub rel_diff: f64,
    /// Relative tolerance; the absolute tolerance is `tol_abs`.
    pub tol: f64,
    pub tol_abs: f64,
    pub passed: bool,
    pub routes: (String, String),
    pub citation: String,
    pub note: Option<String>,
}

impl VerifyReport {
    fn compare(
        check_id: String,
        lhs: Result<f64>,
        rhs: Result<f64>,
        (tol, tol_abs): (f64, f64),
        routes: (&str, &str),
        citation: &str,
    ) -> Self {
        let routes = (routes.0.to_string(), routes.1.to_string());
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => {
                let abs_diff = (l - r).abs();
                let rd = rel_diff(l, r);
                VerifyReport {
                    check_id,
                    lhs: l,
                    rhs: r,
                    abs_diff,
                    rel_diff: rd,
                    tol,
                    tol_abs,
                    passed: abs_diff <= tol_abs || rd <= tol,
                    routes,
                    citation: citation.to_string(),
                    note: None,
                }
            }
            (l, r) => {
                let note = l.as_ref().err().or(r.as_ref().err()).map(|e| e.to_string());
                VerifyReport {
                    check_id,
                    lhs: l.unwrap_or(f64::NAN),
                    rhs: r.unwrap_or(f64::NAN),
                    abs_diff: f64::NAN,
                    rel_diff: f64::NAN,
                    tol,
                    tol_abs,
                    passed: false,
                    routes,
                    citation: citation.to_string(),
                    note,
                }
            }
        }
    }
}

/// Parameter sweep for a suite; each check filters it for admissibility.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub kappa_values: Vec<f64>,
    pub mu_values: Vec<f64>,
    pub x_values: Vec<f64>,
}

impl GridSpec {
    pub fn new(kappa_values: Vec<f64>, mu_values: Vec<f64>, x_values: Vec<f64>) -> Result<Self> {
        if kappa_values.is_empty() || mu_values.is_empty() || x_values.is_empty() {
            return Err(Error::EmptyGrid);
        }
        Ok(GridSpec { kappa_values, mu_values, x_values })
    }

    /// The acceptance grid of each suite. For `incgamma` the μ list is the order ν.
    pub fn default_for(suite: Suite) -> Self {
        let halves = vec![-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0];
        let g = |k: &[f64], m: &[f64], x: &[f64]| GridSpec {
            kappa_values: k.to_vec(),
            mu_values: m.to_vec(),
            x_values: x.to_vec(),
        };
        match suite {
            Suite::SeriesVsFd => g(&halves, &halves, &[0.5, 1.0, 2.0, 5.0]),
            Suite::CatalogVsSeries => {
                g(&[0.0], &[-2.0 / 3.0, -1.0 / 3.0, -0.25, 0.0, 0.25, 1.0 / 3.0, 0.5, 1.0, 1.5, 2.0], &[0.5, 1.0, 2.0])
            }
            Suite::IntegralRelations | Suite::ClosedVsQuad => {
                g(&[-0.5, -0.25, 0.0, 0.25, 0.5, 1.0], &[0.0, 0.25, 0.5, 1.0, 1.5], &[0.5, 1.0, 2.0])
            }
            Suite::Incgamma => g(&[0.0], &[0.5, 1.0, 1.5, 2.0, 3.5], &[0.5, 1.0, 2.0, 5.0]),
            Suite::IntWhittaker => g(&[0.5, 1.0, 1.5], &[0.0], &[0.5, 1.0, 2.0, 4.0]),
            Suite::Tables => g(&[0.0], &[0.0], &[0.5, 1.0, 2.0]),
        }
    }
}

/// Per-class tolerances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub catalog: f64,
    pub quadrature: f64,
    pub finite_difference: f64,
    pub infinite: f64,
    pub reduction: f64,
    pub identity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            catalog: 1e-9,
            quadrature: 1e-8,
            finite_difference: 1e-6,
            infinite: 1e-6,
            reduction: 1e-10,
            identity: 1e-12,
        }
    }
}

/// The verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Suite {
    SeriesVsFd,
    CatalogVsSeries,
    IntegralRelations,
    ClosedVsQuad,
    Incgamma,
    IntWhittaker,
    Tables,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::SeriesVsFd,
        Suite::CatalogVsSeries,
        Suite::IntegralRelations,
        Suite::ClosedVsQuad,
        Suite::Incgamma,
        Suite::IntWhittaker,
        Suite::Tables,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SeriesVsFd => "series_vs_fd",
            Suite::CatalogVsSeries => "catalog_vs_series",
            Suite::IntegralRelations => "integral_relations",
            Suite::ClosedVsQuad => "closed_vs_quad",
            Suite::Incgamma => "incgamma",
            Suite::IntWhittaker => "int_whittaker",
            Suite::Tables => "tables",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            Error::Domain(format!("unknown suite '{s}'; expected one of {} or all", names.join(", ")))
        })
    }
}

/// Richardson-extrapolated central difference with h = 1e-4·scale.
pub fn fd_derivative<F: Fn(f64) -> Result<f64>>(f: F, x0: f64, scale: f64) -> Result<f64> {
    let h = 1e-4 * scale;
    let d = |h: f64| -> Result<f64> { Ok((f(x0 + h)? - f(x0 - h)?) / (2.0 * h)) };
    Ok((4.0 * d(h / 2.0)? - d(h)?) / 3.0)
}

/// Public operations a full default run must exercise.
pub const COVERED_OPS: &[&str] = &[
    "pfq",
    "pfq_nth_derivative",
    "g1",
    "h1",
    "g1_kummer",
    "s_finite",
    "g1_reduced",
    "h1_reduced",
    "m_series",
    "p_poly",
    "m_reduced",
    "m_reflect",
    "s1_s2",
    "dm_dkappa",
    "dm_dkappa_closed",
    "f_func",
    "dm_dmu",
    "dm_dmu_closed",
    "quad_de",
    "i_integral",
    "i1_closed",
    "j_integral",
    "j1_closed",
    "j3_closed",
    "h_integral",
    "lower_gamma",
    "upper_gamma",
    "dgamma_dnu",
    "dGamma_dnu",
    "log_integral_gamma",
    "log_integral_exp",
    "mi_lower",
    "mi_upper",
    "mi_lower_reduced",
    "mi_upper_reduced",
    "mi_lower_reflected",
];

/// Operation names named by a route tag such as `"h_integral[relation]+i1_closed"`.
fn ops_of(tag: &str) -> impl Iterator<Item = &str> {
    tag.split('+').map(|t| t.split(['[', '(']).next().unwrap_or("").trim())
}

/// Entries of [`COVERED_OPS`] that no report exercised.
pub fn coverage_gaps(reports: &[VerifyReport]) -> Vec<&'static str> {
    let mut seen = std::collections::HashSet::new();
    for r in reports {
        seen.extend(ops_of(&r.routes.0));
        seen.extend(ops_of(&r.routes.1));
    }
    COVERED_OPS.iter().copied().filter(|op| !seen.contains(op)).collect()
}

type Job = Box<dyn Fn() -> VerifyReport + Send + Sync>;

struct Jobs {
    suite: Suite,
    list: Vec<Job>,
}

impl Jobs {
    fn new(suite: Suite) -> Self {
        Jobs { suite, list: Vec::new() }
    }

    fn push<L, R>(
        &mut self,
        id: String,
        tol: f64,
        routes: (&'static str, &'static str),
        citation: &'static str,
        lhs: L,
        rhs: R,
    ) where
        L: Fn() -> Result<f64> + Send + Sync + 'static,
        R: Fn() -> Result<f64> + Send + Sync + 'static,
    {
        self.push_abs(id, (tol, tol * 1e-3), routes, citation, lhs, rhs)
    }

    /// As `push`, with an explicit absolute tolerance for checks whose exact value may be zero.
    fn push_abs<L, R>(
        &mut self,
        id: String,
        tol: (f64, f64),
        routes: (&'static str, &'static str),
        citation: &'static str,
        lhs: L,
        rhs: R,
    ) where
        L: Fn() -> Result<f64> + Send + Sync + 'static,
        R: Fn() -> Result<f64> + Send + Sync + 'static,
    {
        let id = format!("{}/{}", self.suite, id);
        self.list.push(Box::new(move || VerifyReport::compare(id.clone(), lhs(), rhs(), tol, routes, citation)));
    }

    fn run(self, mode: ExecMode) -> Result<Vec<VerifyReport>> {
        if self.list.is_empty() {
            return Err(Error::EmptyGrid);
        }
        let mut out = grid::map(&self.list, mode, |job| job());
        out.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        Ok(out)
    }
}

fn sctrl() -> SeriesCtrl {
    SeriesCtrl::default()
}

fn qctrl() -> QuadCtrl {
    QuadCtrl::default()
}

fn series_admissible(kappa: f64, mu: f64, x: f64) -> bool {
    x > 0.0
        && WhittakerParams::new(kappa, mu, x).is_ok()
        && !is_nonpositive_integer(0.5 + mu - kappa)
        && !is_nonpositive_integer(1.0 + 2.0 * mu)
}

fn integral_admissible(kappa: f64, mu: f64) -> bool {
    mu + kappa + 0.5 > 0.0 && mu - kappa + 0.5 > 0.0
}

fn m_at(kappa: f64, mu: f64, x: f64) -> Result<f64> {
    Ok(m_series(&WhittakerParams::new(kappa, mu, x)?, &sctrl())?.value)
}

fn positive_x(g: &GridSpec) -> Vec<f64> {
    g.x_values.iter().copied().filter(|x| *x > 0.0).collect()
}

/// Fixed (a, b, x) grid for the ₁F₁ parameter-derivative checks.
pub const HYPERGEOM_AB: [f64; 5] = [0.5, 1.0, 1.5, 2.0, 3.5];
pub const HYPERGEOM_X: [f64; 5] = [-2.0, -0.5, 0.5, 1.0, 3.0];

fn suite_series_vs_fd(g: &GridSpec, t: &Tolerances, jobs: &mut Jobs) {
    let tol = t.finite_difference;
    for &k in &g.kappa_values {
        for &mu in &g.mu_values {
            for &x in &g.x_values {
                if !series_admissible(k, mu, x) {
                    continue;
                }
                let tag = format!("k={k}/mu={mu}/x={x}");
                jobs.push(
                    format!("dkappa/{tag}"),
                    tol,
                    ("dm_dkappa[series]", "fd_derivative(m_series)"),
                    "dM/dkappa digamma-weighted series",
                    move || Ok(dm_dkappa(&WhittakerParams::new(k, mu, x)?, Route::Series, &sctrl())?.value),
                    move || fd_derivative(|kk| m_at(kk, mu, x), k, 1.0),
                );
                jobs.push(
                    format!("dmu/{tag}"),
                    tol,
                    ("dm_dmu[series]", "fd_derivative(m_series)"),
                    "dM/dmu digamma-weighted series",
                    move || Ok(dm_dmu(&WhittakerParams::new(k, mu, x)?, Route::Series, &sctrl())?.value),
                    move || fd_derivative(|mm| m_at(k, mm, x), mu, 1.0),
                );
            }
        }
    }
    let f11 = |a: f64, b: f64, x: f64| -> Result<f64> { Ok(pfq(&PfqArgs::new(vec![a], vec![b], x), &sctrl())?.value) };
    for a in HYPERGEOM_AB {
        for b in HYPERGEOM_AB {
            for x in HYPERGEOM_X {
                let tag = format!("a={a}/b={b}/x={x}");
                jobs.push(
                    format!("g1/{tag}"),
                    tol,
                    ("g1", "fd_derivative(pfq)"),
                    "G1 digamma-weighted series",
                    move || Ok(g1(a, b, x, &sctrl())?.value),
                    move || fd_derivative(|aa| f11(aa, b, x), a, 1.0),
                );
                jobs.push(
                    format!("h1/{tag}"),
                    tol,
                    ("h1", "fd_derivative(pfq)"),
                    "H1 digamma-weighted series",
                    move || Ok(h1(a, b, x, &sctrl())?.value),
                    move || fd_derivative(|bb| f11(a, bb, x), b, 1.0),
                );
                jobs.push(
                    format!("kummer/{tag}"),
                    t.catalog,
                    ("g1_kummer", "g1"),
                    "Kummer transformation of G1",
                    move || Ok(g1_kummer(a, b, x)?.value),
                    move || Ok(g1(a, b, x, &sctrl())?.value),
                );
                let nth = move |n: usize, xx: f64| -> Result<f64> {
                    let s = pfq_nth_derivative(&PfqArgs::new(vec![a], vec![b], xx), n);
                    Ok(s.prefactor * pfq(&s.args, &sctrl())?.value)
                };
                jobs.push(
                    format!("pfq_d1/{tag}"),
                    tol,
                    ("pfq_nth_derivative", "fd_derivative(pfq)"),
                    "derivative of pFq in its argument",
                    move || nth(1, x),
                    move || fd_derivative(|xx| f11(a, b, xx), x, 1.0),
                );
                jobs.push(
                    format!("pfq_d2/{tag}"),
                    tol,
                    ("pfq_nth_derivative", "fd_derivative(pfq_nth_derivative)"),
                    "derivative of pFq in its argument",
                    move || nth(2, x),
                    move || fd_derivative(|xx| nth(1, xx), x, 1.0),
                );
            }
        }
    }
}

/// Explicit Σ_k (ℓ)_k 2^k/(ℓ+n)_k over a common integer denominator.
fn s_loop(n: u32, l: u32) -> f64 {
    let (n, l) = (n as u128, l as u128);
    let top = n - l - 1;
    let poch = |a: u128, k: u128| (0..k).map(|j| a + j).product::<u128>();
    let den = poch(l + n, top);
    let num: u128 = (0..=top).map(|k| poch(l, k) * (1u128 << k) * poch(l + n + k, top - k)).sum();
    num as f64 / den as f64
}

fn suite_catalog(g: &GridSpec, t: &Tolerances, jobs: &mut Jobs) {
    let xs = positive_x(g);
    let cat = t.catalog;
    let lm_points: Vec<(i64, i64)> = (-2..=2).flat_map(|l: i64| (l.max(0)..=3).map(move |m| (l, m))).collect();
    for &x in &xs {
        let mut dk_points: Vec<(f64, f64)> = g.mu_values.iter().map(|&mu| (-mu - 0.5, mu)).collect();
        dk_points.extend((1..=4).map(|n| (n as f64, 0.5)));
        dk_points.extend(lm_points.iter().map(|&(l, m)| (l as f64 / 2.0, m as f64 + (1 - l) as f64 / 2.0)));
        for (k, mu) in dk_points {
            if WhittakerParams::new(k, mu, x).is_err() || is_nonpositive_integer(1.0 + 2.0 * mu) {
                continue;
            }
            let tag = format!("k={k}/mu={mu}/x={x}");
            let at_pole = is_nonpositive_integer(0.5 + mu - k);
            jobs.push(
                format!("dkappa/{tag}"),
                cat,
                ("dm_dkappa_closed", if at_pole { "g1_polynomial_limit" } else { "dm_dkappa[series]" }),
                "dM/dkappa closed forms",
                move || {
                    dm_dkappa_closed(&WhittakerParams::new(k, mu, x)?)
                        .map(|c| c.value.value)
                        .ok_or_else(|| Error::Domain(format!("no dM/dkappa closed form at ({k}, {mu})")))
                },
                move || {
                    let p = WhittakerParams::new(k, mu, x)?;
                    if at_pole {
                        let n = (k - mu - 0.5).round() as usize;
                        let pre = x.powf(mu + 0.5) * (-x / 2.0).exp();
                        Ok(-pre * g1_polynomial_limit(n, 1.0 + 2.0 * mu, x, &sctrl())?.value)
                    } else {
                        Ok(dm_dkappa(&p, Route::Series, &sctrl())?.value)
                    }
                },
            );
        }
        let mut dm_points: Vec<(f64, f64)> = g.mu_values.iter().map(|&mu| (-mu - 0.5, mu)).collect();
        dm_points.extend(g.mu_values.iter().filter(|mu| **mu > -1.0).map(|&mu| (0.0, mu)));
        dm_points.extend(lm_points.iter().map(|&(l, m)| (l as f64 / 2.0, m as f64 + (1 - l) as f64 / 2.0)));
        for (k, mu) in dm_points {
            if !series_admissible(k, mu, x) {
                continue;
            }
            let integer_bessel = k == 0.0 && snap_int(mu).is_some() && snap_int(mu + 0.5).is_none();
            jobs.push(
                format!("dmu/k={k}/mu={mu}/x={x}"),
                if integer_bessel { 1e-7 } else { cat },
                ("dm_dmu_closed", "dm_dmu[series]"),
                "dM/dmu closed forms",
                move || {
                    dm_dmu_closed(&WhittakerParams::new(k, mu, x)?)
                        .map(|c| c.value.value)
                        .ok_or_else(|| Error::Domain(format!("no dM/dmu closed form at ({k}, {mu})")))
                },
                move || Ok(dm_dmu(&WhittakerParams::new(k, mu, x)?, Route::Series, &sctrl())?.value),
            );
        }
        // G1 and H1 reductions against their series
        let mut ab: Vec<(f64, f64)> =
            lm_points.iter().map(|&(l, m)| ((m + 1 - l) as f64, (2 * m + 2 - l) as f64)).collect();
        ab.extend([(0.5, 0.5), (1.5, 1.5), (2.5, 2.5), (1.0, 0.5), (1.0, 1.5), (1.0, 3.0)]);
        for (a, b) in ab {
            let tag = format!("a={a}/b={b}/x={x}");
            if g1_reduced(a, b, x).is_some() {
                jobs.push(
                    format!("g1_reduced/{tag}"),
                    cat,
                    ("g1_reduced", "g1"),
                    "G1 reductions",
                    move || {
                        g1_reduced(a, b, x)
                            .map(|c| c.value.value)
                            .ok_or_else(|| Error::Domain("no G1 reduction".into()))
                    },
                    move || Ok(g1(a, b, x, &sctrl())?.value),
                );
            }
            if h1_reduced(a, b, x).is_some() {
                jobs.push(
                    format!("h1_reduced/{tag}"),
                    cat,
                    ("h1_reduced", "h1"),
                    "H1 reductions",
                    move || {
                        h1_reduced(a, b, x)
                            .map(|c| c.value.value)
                            .ok_or_else(|| Error::Domain("no H1 reduction".into()))
                    },
                    move || Ok(h1(a, b, x, &sctrl())?.value),
                );
            }
        }
        for n in 1..=4u32 {
            jobs.push(
                format!("g1_one_minus_n/n={n}/x={x}"),
                cat,
                ("g1_reduced(s_finite)", "g1_polynomial_limit"),
                "G1(1-n;2;x) through Ei, Laguerre polynomials and S(n,l)",
                move || Ok(g1_one_minus_n(n, x)?.value),
                move || Ok(g1_polynomial_limit((n - 1) as usize, 2.0, x, &sctrl())?.value),
            );
        }
        // G1 from the S1 digamma sum
        for &(k, mu) in &[(0.25, 0.5), (-0.5, 1.0), (1.0, 1.5), (0.0, 0.0)] {
            jobs.push(
                format!("s1/k={k}/mu={mu}/x={x}"),
                cat,
                ("s1_s2", "g1"),
                "S1 digamma-weighted Gamma-ratio sum",
                move || {
                    let p = WhittakerParams::new(k, mu, x)?;
                    let s = s1_s2(&p, &sctrl())?;
                    let (a, b) = (p.a(), p.b());
                    let f = pfq(&PfqArgs::new(vec![a], vec![b], x), &sctrl())?.value;
                    Ok(gamma(b)? / gamma(a)? * s.s1 - digamma(a)? * f)
                },
                move || Ok(g1(0.5 + mu - k, 1.0 + 2.0 * mu, x, &sctrl())?.value),
            );
        }
        // P and F building blocks
        for s in -2i64..=2 {
            for k in (s.max(1) as u32)..=4 {
                for z in [x, -x] {
                    jobs.push(
                        format!("p_poly/s={s}/k={k}/z={z}"),
                        t.reduction,
                        ("p_poly", "pfq"),
                        "factorial polynomial P(s,k,z)",
                        move || p_poly(s, k, z),
                        move || {
                            let top = 2 * k as i64 - s;
                            Ok(gamma(top as f64 + 1.0)?
                                * pfq(&PfqArgs::new(vec![-(k as f64)], vec![(s - 2 * k as i64) as f64], z), &sctrl())?
                                    .value)
                        },
                    );
                }
            }
            for k in (s.max(0) as u32)..=3 {
                for z in [x, -x] {
                    jobs.push(
                        format!("f_func/s={s}/k={k}/z={z}"),
                        t.quadrature,
                        ("f_func", "quad_de"),
                        "F(s,k,z) sum of 2F2 logarithmic terms",
                        move || Ok(f_func(s, k, z, &sctrl())?.value),
                        move || {
                            let e = (k as i64 - s) as f64;
                            let v = quad_de(
                                |t, a, b| a.powf(e) * b.powi(k as i32) * (z * t).exp() * a.ln(),
                                0.0,
                                1.0,
                                Endpoints::new(e, k as f64),
                                &qctrl(),
                            )?;
                            Ok(v.value)
                        },
                    );
                }
            }
        }
        // M reductions
        let mut red: Vec<(f64, f64)> = Vec::new();
        for l in -3i64..=6 {
            for m in l.max(0)..=6 {
                red.push((l as f64 / 2.0, m as f64 + (1 - l) as f64 / 2.0));
            }
        }
        for k0 in [0.5, 1.0, 1.5, 2.0] {
            red.extend((0..=5).map(|n| (k0 + n as f64, k0 - 0.5)));
        }
        red.extend(g.mu_values.iter().filter(|mu| **mu > -0.5).map(|&mu| (0.0, mu)));
        red.extend(table5().iter().filter(|r| r.mu > -0.5).map(|r| (r.kappa, r.mu)));
        for (k, mu) in red {
            jobs.push(
                format!("m_reduced/k={k}/mu={mu}/x={x}"),
                t.reduction,
                ("m_reduced", "m_series"),
                "M reductions",
                move || {
                    m_reduced(&WhittakerParams::new(k, mu, x)?)
                        .map(|c| c.value.value)
                        .ok_or_else(|| Error::Domain(format!("no M reduction at ({k}, {mu})")))
                },
                move || m_at(k, mu, x),
            );
        }
        for mu in [0.5, 1.5, 2.5] {
            for k in [-1.0, -0.5, 0.0, 0.75, 2.0] {
                for xx in [x, -x] {
                    jobs.push(
                        format!("m_reflect/k={k}/mu={mu}/x={xx}"),
                        t.reduction,
                        ("m_reflect", "m_series"),
                        "Kummer reflection of M",
                        move || Ok(m_reflect(&WhittakerParams::new(k, mu, xx)?, &sctrl())?.value),
                        move || m_at(k, mu, xx),
                    );
                }
            }
        }
    }
    for n in 2..=12u32 {
        for l in 1..n {
            jobs.push(
                format!("s_finite/n={n}/l={l}"),
                f64::EPSILON,
                ("s_finite", "explicit k-loop"),
                "finite sum S(n,l)",
                move || s_finite(n, l),
                move || Ok(s_loop(n, l)),
            );
        }
    }
}

fn suite_relations(g: &GridSpec, t: &Tolerances, jobs: &mut Jobs) {
    let tol = t.catalog;
    for &k in &g.kappa_values {
        for &mu in &g.mu_values {
            if !integral_admissible(k, mu) {
                continue;
            }
            for x in positive_x(g) {
                let tag = format!("k={k}/mu={mu}/x={x}");
                for idx in 2..=4u8 {
                    jobs.push(
                        format!("I{idx}/{tag}"),
                        tol,
                        ("i_integral[quad]", "i_integral[relation]"),
                        "I-integral relations to I1",
                        move || Ok(i_integral(idx, k, mu, x, IntRoute::Quad)?.value),
                        move || Ok(i_integral(idx, k, mu, x, IntRoute::Relation)?.value),
                    );
                }
                for idx in 2..=3u8 {
                    jobs.push(
                        format!("J{idx}/{tag}"),
                        tol,
                        ("j_integral[quad]", "j_integral[relation]"),
                        "J-integral relations to J1",
                        move || Ok(j_integral(idx, k, mu, x, IntRoute::Quad)?.value),
                        move || Ok(j_integral(idx, k, mu, x, IntRoute::Relation)?.value),
                    );
                }
                jobs.push(
                    format!("J4=J3/{tag}"),
                    tol,
                    ("j_integral[quad]", "quad_de"),
                    "J4 = J3",
                    move || Ok(j_integral(4, k, mu, x, IntRoute::Quad)?.value),
                    move || Ok(j_quad(J_INT[2], k, mu, x, &qctrl())?.value),
                );
            }
        }
    }
}

fn suite_closed_quad(g: &GridSpec, t: &Tolerances, jobs: &mut Jobs) -> Result<()> {
    let tol = t.quadrature;
    let xs = positive_x(g);
    for &k in &g.kappa_values {
        for &mu in &g.mu_values {
            if !integral_admissible(k, mu) {
                continue;
            }
            for &x in &xs {
                let tag = format!("k={k}/mu={mu}/x={x}");
                if !is_nonpositive_integer(0.5 + mu - k) {
                    jobs.push(
                        format!("I1_general/{tag}"),
                        tol,
                        ("i1_closed(general)", "quad_de"),
                        "I1 general form",
                        move || Ok(i1_general(k, mu, x, &sctrl())?.value),
                        move || Ok(i_quad(I_INT[0], k, mu, x, &qctrl())?.value),
                    );
                    jobs.push(
                        format!("J1_general/{tag}"),
                        tol,
                        ("j1_closed(general)", "quad_de"),
                        "J1 general form",
                        move || Ok(j1_general(k, mu, x, &sctrl())?.value),
                        move || Ok(j_quad(J_INT[0], k, mu, x, &qctrl())?.value),
                    );
                }
            }
        }
    }
    for &x in &xs {
        for (l, m) in [(0i64, 0i64), (0, 1), (1, 1), (1, 2), (-1, 0), (-1, 1), (2, 2), (2, 3)] {
            let (k, mu) = (l as f64 / 2.0, m as f64 + (1 - l) as f64 / 2.0);
            let tag = format!("l={l}/m={m}/x={x}");
            jobs.push(
                format!("I1_lm/{tag}"),
                tol,
                ("i1_closed", "quad_de"),
                "I1 (l,m) reduction",
                move || {
                    i1_closed(k, mu, x).map(|c| c.value.value).ok_or_else(|| Error::Domain("no I1 closed form".into()))
                },
                move || Ok(i_quad(I_INT[0], k, mu, x, &qctrl())?.value),
            );
            jobs.push(
                format!("J1_lm/{tag}"),
                tol,
                ("j1_closed", "quad_de"),
                "J1 (l,m) reduction",
                move || {
                    j1_closed(k, mu, x).map(|c| c.value.value).ok_or_else(|| Error::Domain("no J1 closed form".into()))
                },
                move || Ok(j_quad(J_INT[0], k, mu, x, &qctrl())?.value),
            );
            jobs.push(
                format!("J3_lm/{tag}"),
                tol,
                ("j_integral[closed]", "quad_de"),
                "J3 from the J1 (l,m) reduction",
                move || Ok(j_integral(3, k, mu, x, IntRoute::Closed)?.value),
                move || Ok(j_quad(J_INT[2], k, mu, x, &qctrl())?.value),
            );
        }
        for &mu in g.mu_values.iter().filter(|m| **m >= 0.0) {
            let tag = format!("mu={mu}/x={x}");
            jobs.push(
                format!("J1_k0/{tag}"),
                tol,
                ("j1_closed(kappa=0)", "quad_de"),
                "J1(0,mu) via order derivative of I_mu",
                move || Ok(j1_kappa_zero(mu, x)?.value),
                move || Ok(j_quad(J_INT[0], 0.0, mu, x, &qctrl())?.value),
            );
            jobs.push(
                format!("J3_k0/{tag}"),
                tol,
                ("j3_closed", "quad_de"),
                "J3(0,mu) via order derivative of I_mu",
                move || Ok(j3_closed(mu, x)?.value),
                move || Ok(j_quad(J_INT[2], 0.0, mu, x, &qctrl())?.value),
            );
        }
        for (l, m) in [(0i64, 0i64), (0, 1), (1, 1), (1, 2)] {
            let (k, mu) = (l as f64 / 2.0, m as f64 + (1 - l) as f64 / 2.0);
            for idx in 1..=2u8 {
                let tag = format!("H{idx}/l={l}/m={m}/x={x}");
                jobs.push(
                    format!("{tag}/closed"),
                    t.infinite,
                    ("h_integral[closed]", "h_integral[quad]"),
                    "H (l,m) reduction",
                    move || Ok(h_integral(idx, k, mu, x, IntRoute::Closed)?.value),
                    move || Ok(h_integral(idx, k, mu, x, IntRoute::Quad)?.value),
                );
                jobs.push(
                    format!("{tag}/relation"),
                    t.infinite,
                    ("h_integral[relation]+i1_closed", "h_integral[quad]"),
                    "H relation to I1 and M",
                    move || Ok(h_integral(idx, k, mu, x, IntRoute::Relation)?.value),
                    move || Ok(h_integral(idx, k, mu, x, IntRoute::Quad)?.value),
                );
            }
        }
    }
    for id in [TableId::T3A, TableId::T3B] {
        table_jobs(id, &xs, jobs)?;
    }
    Ok(())
}

fn suite_incgamma(g: &GridSpec, t: &Tolerances, jobs: &mut Jobs) {
    let xs = positive_x(g);
    for &nu in g.mu_values.iter().filter(|n| **n > 0.0) {
        for &x in &xs {
            let tag = format!("nu={nu}/x={x}");
            let lower_q = move |w: f64| -> Result<f64> {
                Ok(quad_de(
                    |t, a, _| a.powf(nu - 1.0) * (-t).exp() * w.powf(0.0) * if w == 0.0 { 1.0 } else { a.ln() },
                    0.0,
                    x,
                    Endpoints::new(nu - 1.0, 0.0),
                    &qctrl(),
                )?
                .value)
            };
            let upper_q = move |with_log: bool| -> Result<f64> {
                let tail = move |t: f64| {
                    let s = nu + if with_log { 1.0 } else { 0.0 };
                    upper_gamma_bound(s, t)
                };
                Ok(quad_truncated(
                    |t, _, _| t.powf(nu - 1.0) * (-t).exp() * if with_log { t.ln() } else { 1.0 },
                    x,
                    Endpoints::REGULAR,
                    tail,
                    1e-15,
                    &qctrl(),
                )?
                .value)
            };
            let args = move || IncGammaArgs::new(nu, x);
            jobs.push(
                format!("lower/{tag}"),
                t.catalog,
                ("lower_gamma", "quad_de"),
                "lower incomplete gamma",
                move || Ok(lower_gamma(&args()?)?.value),
                move || lower_q(0.0),
            );
            jobs.push(
                format!("upper/{tag}"),
                t.catalog,
                ("upper_gamma", "quad_de"),
                "upper incomplete gamma",
                move || Ok(upper_gamma(&args()?)?.value),
                move || upper_q(false),
            );
            jobs.push(
                format!("dgamma/{tag}"),
                t.catalog,
                ("dgamma_dnu", "quad_de"),
                "order derivative of the lower incomplete gamma",
                move || Ok(dgamma_dnu(&args()?)?.value),
                move || lower_q(1.0),
            );
            jobs.push(
                format!("log_integral_gamma/{tag}"),
                t.catalog,
                ("log_integral_gamma", "quad_de"),
                "logarithmic integral of t^(nu-1) e^(-t)",
                move || Ok(log_integral_gamma(nu, x)?.value),
                move || lower_q(1.0),
            );
            jobs.push(
                format!("dGamma/{tag}"),
                t.catalog,
                ("dGamma_dnu", "quad_de"),
                "order derivative of the upper incomplete gamma",
                move || Ok(dGamma_dnu(&args()?)?.value),
                move || upper_q(true),
            );
            jobs.push_abs(
                format!("complement/{tag}"),
                (t.identity * 10.0, t.identity * 10.0),
                ("dgamma_dnu+dGamma_dnu", "digamma"),
                "derivative complement",
                move || Ok(dgamma_dnu(&args()?)?.value + dGamma_dnu(&args()?)?.value),
                move || Ok(gamma(nu)? * digamma(nu)?),
            );
            for z in [x, -x] {
                jobs.push(
                    format!("log_integral_exp/nu={nu}/x={z}"),
                    t.catalog,
                    ("log_integral_exp", "quad_de"),
                    "logarithmic integral of e^(xt) t^(nu-1)",
                    move || Ok(log_integral_exp(nu, z)?.value),
                    move || {
                        Ok(quad_de(
                            |t, a, _| (z * t).exp() * a.powf(nu - 1.0) * a.ln(),
                            0.0,
                            1.0,
                            Endpoints::new(nu - 1.0, 0.0),
                            &qctrl(),
                        )?
                        .value)
                    },
                );
            }
        }
        jobs.push(
            format!("fd/nu={nu}"),
            t.finite_difference,
            ("dgamma_dnu", "fd_derivative(lower_gamma)"),
            "order derivative of the lower incomplete gamma",
            move || Ok(dgamma_dnu(&IncGammaArgs::new(nu, 1.0)?)?.value),
            move || fd_derivative(|n| Ok(lower_gamma(&IncGammaArgs::new(n, 1.0)?)?.value), nu, 1.0),
        );
    }
}

fn suite_int_whittaker(g: &GridSpec, t: &Tolerances, jobs: &mut Jobs) {
    let xs = positive_x(g);
    for &k in g.kappa_values.iter().filter(|k| **k > 0.0) {
        for n in 0..=3usize {
            for &x in &xs {
                let tag = format!("k={k}/n={n}/x={x}");
                let (kk, mu) = (k + n as f64, k - 0.5);
                jobs.push(
                    format!("Mi/{tag}"),
                    t.quadrature,
                    ("mi_lower_reduced", "mi_lower"),
                    "Mi reduction to lower incomplete gamma",
                    move || Ok(mi_lower_reduced(k, n, x)?.value),
                    move || Ok(mi_lower(&IntWhittakerArgs::new(kk, mu, x)?, &qctrl())?.value),
                );
                jobs.push(
                    format!("mi/{tag}"),
                    t.quadrature,
                    ("mi_upper_reduced", "mi_upper"),
                    "mi reduction to upper incomplete gamma",
                    move || Ok(mi_upper_reduced(k, n, x)?.value),
                    move || Ok(mi_upper(&IntWhittakerArgs::new(kk, mu, x)?, &qctrl())?.value),
                );
                jobs.push_abs(
                    format!("complement/{tag}"),
                    (t.identity, t.identity),
                    ("mi_lower_reduced+mi_upper_reduced", "gamma"),
                    "Mi + mi complement",
                    move || Ok(mi_lower_reduced(k, n, x)?.value + mi_upper_reduced(k, n, x)?.value),
                    move || mi_complement(k, n),
                );
                if snap_int(k).is_some() && n <= 2 {
                    for xx in [x, -x] {
                        jobs.push(
                            format!("Mi_reflected/k={k}/n={n}/x={xx}"),
                            t.quadrature,
                            ("mi_lower_reflected", "mi_lower"),
                            "reflected Mi reduction",
                            move || Ok(mi_lower_reflected(k, n, xx)?.value),
                            move || Ok(mi_lower_signed(-k - n as f64, k - 0.5, xx, &qctrl())?.value),
                        );
                    }
                }
            }
        }
    }
}

fn table_jobs(id: TableId, xs: &[f64], jobs: &mut Jobs) -> Result<()> {
    for row in reproduce_table(id, xs)? {
        if row.status == RowStatus::Skipped {
            continue;
        }
        let (c, i) = (row.closed_value, row.independent_value);
        let reason = row.reason.clone();
        let err = move || Error::Domain(reason.clone().unwrap_or_default());
        let err2 = err.clone();
        jobs.push(
            format!("{id}/k={}/mu={}/x={}", row.kappa, row.mu, row.x),
            row.tol,
            ("tables", row.independent_route),
            row.citation,
            move || c.ok_or_else(err.clone()),
            move || i.ok_or_else(err2.clone()),
        );
    }
    Ok(())
}

/// Run one suite on `grid` with the default tolerances.
pub fn run_suite(suite: Suite, grid: &GridSpec) -> Result<Vec<VerifyReport>> {
    run_suite_with(suite, grid, &Tolerances::default(), ExecMode::default())
}

/// Run one suite with explicit tolerances and execution mode.
pub fn run_suite_with(suite: Suite, grid: &GridSpec, tol: &Tolerances, mode: ExecMode) -> Result<Vec<VerifyReport>> {
    if grid.kappa_values.is_empty() || grid.mu_values.is_empty() || grid.x_values.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut jobs = Jobs::new(suite);
    match suite {
        Suite::SeriesVsFd => suite_series_vs_fd(grid, tol, &mut jobs),
        Suite::CatalogVsSeries => suite_catalog(grid, tol, &mut jobs),
        Suite::IntegralRelations => suite_relations(grid, tol, &mut jobs),
        Suite::ClosedVsQuad => suite_closed_quad(grid, tol, &mut jobs)?,
        Suite::Incgamma => suite_incgamma(grid, tol, &mut jobs),
        Suite::IntWhittaker => suite_int_whittaker(grid, tol, &mut jobs),
        Suite::Tables => {
            let xs = positive_x(grid);
            if !xs.is_empty() {
                for id in TableId::ALL {
                    table_jobs(id, &xs, &mut jobs)?;
                }
            }
        }
    }
    jobs.run(mode)
}

/// Every suite on its default grid, followed by a coverage report.
pub fn run_all(tol: &Tolerances, mode: ExecMode) -> Result<Vec<VerifyReport>> {
    let mut out = Vec::new();
    for s in Suite::ALL {
        out.extend(run_suite_with(s, &GridSpec::default_for(s), tol, mode)?);
    }
    let gaps = coverage_gaps(&out);
    out.push(VerifyReport {
        check_id: "coverage/ops".into(),
        lhs: gaps.len() as f64,
        rhs: 0.0,
        abs_diff: gaps.len() as f64,
        rel_diff: if gaps.is_empty() { 0.0 } else { 1.0 },
        tol: 0.0,
        tol_abs: 0.0,
        passed: gaps.is_empty(),
        routes: ("suite registry".into(), "operation list".into()),
        citation: "every public operation exercised".into(),
        note: (!gaps.is_empty()).then(|| format!("not exercised: {}", gaps.join(", "))),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fd_of_elementary_functions() {
        assert!((fd_derivative(|x| Ok(x * x), 3.0, 1.0).unwrap() - 6.0).abs() < 1e-10);
        assert!((fd_derivative(|x| Ok(x.exp()), 1.0, 1.0).unwrap() - std::f64::consts::E).abs() < 1e-9);
    }

    #[test]
    fn empty_grid_is_rejected() {
        let g = GridSpec { kappa_values: vec![], mu_values: vec![0.0], x_values: vec![1.0] };
        assert_eq!(run_suite(Suite::Tables, &g).unwrap_err(), Error::EmptyGrid);
        assert!(GridSpec::new(vec![0.0], vec![], vec![1.0]).is_err());
    }

    #[test]
    fn route_tags_split_into_ops() {
        let v: Vec<&str> = ops_of("h_integral[relation]+i1_closed").collect();
        assert_eq!(v, ["h_integral", "i1_closed"]);
        assert_eq!(ops_of("fd_derivative(m_series)").next(), Some("fd_derivative"));
    }

    #[test]
    fn s_loop_small_values() {
        // S(2,1) = 1, S(3,1) = 1 + 2/4
        assert_eq!(s_loop(2, 1), 1.0);
        assert_eq!(s_loop(3, 1), 1.5);
    }
}

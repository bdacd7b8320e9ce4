//! Acceptance checks, one test per criterion.

use std::process::Command;

use whittaker::deriv::{dm_dkappa, dm_dmu, Route};
use whittaker::grid::ExecMode;
use whittaker::incgamma::{dgamma_dnu, IncGammaArgs};
use whittaker::logint::H_TAIL_TOL;
use whittaker::quad::{quad_de, Endpoints, QuadCtrl};
use whittaker::tables::{reproduce_table, RowStatus, TableId};
use whittaker::verify::{fd_derivative, run_suite, GridSpec, Suite, VerifyReport};
use whittaker::whittaker::{m_series, WhittakerParams};
use whittaker::SeriesCtrl;

fn is_nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v == v.round()
}

fn suite(s: Suite) -> Vec<VerifyReport> {
    run_suite(s, &GridSpec::default_for(s)).expect("suite runs")
}

/// Reports whose id contains `part`; asserts at least `min` of them and that all pass.
fn require(reports: &[VerifyReport], part: &str, min: usize) {
    let sel: Vec<&VerifyReport> = reports.iter().filter(|r| r.check_id.contains(part)).collect();
    assert!(sel.len() >= min, "{part}: only {} checks (expected >= {min})", sel.len());
    let bad: Vec<String> = sel
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("{} lhs={} rhs={} rel={} {:?}", r.check_id, r.lhs, r.rhs, r.rel_diff, r.note))
        .collect();
    assert!(bad.is_empty(), "{part}: failures\n{}", bad.join("\n"));
}

fn require_table(id: TableId, max_rel: f64) {
    let rows = reproduce_table(id, &[0.5, 1.0, 2.0]).unwrap();
    assert!(!rows.is_empty());
    for r in rows {
        assert_ne!(r.status, RowStatus::Fail, "{id} row ({}, {}) at x={} failed: {:?}", r.kappa, r.mu, r.x, r.reason);
        if r.status == RowStatus::Pass {
            let d = r.rel_diff.unwrap();
            let abs = (r.closed_value.unwrap() - r.independent_value.unwrap()).abs();
            assert!(
                d <= max_rel.max(r.tol) || abs <= r.tol * 1e-3,
                "{id} row ({}, {}) x={} rel_diff {d}",
                r.kappa,
                r.mu,
                r.x
            );
        }
    }
}

#[test]
fn criterion_01_parameter_derivative_series_match_richardson_fd() {
    let grid = [-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0];
    let ctrl = SeriesCtrl::default();
    let m = |k: f64, mu: f64, x: f64| Ok(m_series(&WhittakerParams::new(k, mu, x)?, &ctrl)?.value);
    let mut n = 0;
    for k in grid {
        for mu in grid {
            if is_nonpositive_integer(1.0 + 2.0 * mu) || is_nonpositive_integer(0.5 + mu - k) {
                continue;
            }
            for x in [0.5, 1.0, 2.0, 5.0] {
                let p = WhittakerParams::new(k, mu, x).unwrap();
                let dk = dm_dkappa(&p, Route::Series, &ctrl).unwrap().value;
                let dm = dm_dmu(&p, Route::Series, &ctrl).unwrap().value;
                let fk = fd_derivative(|kk| m(kk, mu, x), k, 1.0).unwrap();
                let fm = fd_derivative(|mm| m(k, mm, x), mu, 1.0).unwrap();
                for (s, f) in [(dk, fk), (dm, fm)] {
                    assert!((s - f).abs() <= 1e-6 * f.abs().max(1e-3), "({k}, {mu}, {x}): {s} vs {f}");
                }
                n += 1;
            }
        }
    }
    assert!(n >= 100, "{n} grid points");
}

#[test]
fn criterion_02_catalog_closed_forms_match_series() {
    let r = suite(Suite::CatalogVsSeries);
    require(&r, "/dkappa/", 20);
    require(&r, "/dmu/", 20);
    require(&r, "/g1_reduced/", 10);
    require(&r, "/h1_reduced/", 10);
    for id in [TableId::T1, TableId::TDkM, TableId::T2A, TableId::T2, TableId::T3, TableId::T4] {
        require_table(id, 1e-9);
    }
}

#[test]
fn criterion_03_integral_relations_hold_under_quadrature() {
    let r = suite(Suite::IntegralRelations);
    for part in ["/I2/", "/I3/", "/I4/", "/J2/", "/J3/", "/J4=J3/"] {
        require(&r, part, 30);
    }
}

#[test]
fn criterion_04_integral_closed_forms_match_quadrature() {
    let r = suite(Suite::ClosedVsQuad);
    for part in ["/I1_general/", "/I1_lm/", "/J1_general/", "/J1_lm/", "/J1_k0/", "/J3_k0/", "/T3A/", "/T3B/"] {
        require(&r, part, 6);
    }
}

#[test]
fn criterion_05_infinite_integrals_match_truncated_quadrature() {
    const { assert!(H_TAIL_TOL < 1e-10) };
    let r = suite(Suite::ClosedVsQuad);
    for idx in ["H1", "H2"] {
        for (l, m) in [(0, 0), (0, 1), (1, 1), (1, 2)] {
            require(&r, &format!("/{idx}/l={l}/m={m}/"), 6);
        }
    }
}

#[test]
fn criterion_06_reductions_match_series() {
    let r = suite(Suite::CatalogVsSeries);
    require(&r, "/m_reduced/", 100);
    // (l, m) = (-3, 6): kappa = -3/2, mu = 8
    require(&r, "/m_reduced/k=-1.5/mu=8/", 3);
    // Laguerre kappa0 = 2, n = 5
    require(&r, "/m_reduced/k=7/mu=1.5/", 3);
    require(&r, "/m_reflect/", 30);
    let rows = reproduce_table(TableId::T5, &[0.5, 1.0, 2.0]).unwrap();
    assert!(rows.iter().all(|r| r.status == RowStatus::Pass && r.rel_diff.unwrap() < 1e-10));
}

#[test]
fn criterion_07_finite_sum_is_exact_and_half_mu_derivatives_match() {
    let r = suite(Suite::CatalogVsSeries);
    let s: Vec<&VerifyReport> = r.iter().filter(|r| r.check_id.contains("/s_finite/")).collect();
    assert_eq!(s.len(), (2..=12).map(|n| n - 1).sum::<usize>());
    for c in s {
        let ulp = f64::EPSILON * c.rhs.abs();
        assert!(c.abs_diff <= ulp, "{}: {} vs {}", c.check_id, c.lhs, c.rhs);
    }
    for n in 1..=4 {
        require(&r, &format!("/dkappa/k={n}/mu=0.5/"), 3);
    }
}

#[test]
fn criterion_08_incomplete_gamma_derivatives() {
    let r = suite(Suite::Incgamma);
    for part in ["/dgamma/", "/dGamma/", "/complement/", "/fd/"] {
        require(&r, part, 5);
    }
    let v = dgamma_dnu(&IncGammaArgs::new(1.0, 1.0).unwrap()).unwrap().value;
    let q =
        quad_de(|t, a, _| (-t).exp() * a.ln(), 0.0, 1.0, Endpoints::new(0.0, 0.0), &QuadCtrl::default()).unwrap().value;
    assert!((v - q).abs() < 1e-9);
    assert!((v + 0.7965996).abs() < 1e-7);
}

#[test]
fn criterion_09_integral_whittaker_reductions() {
    let r = suite(Suite::IntWhittaker);
    require(&r, "/Mi/", 48);
    require(&r, "/mi/", 48);
    require(&r, "/complement/", 48);
    require(&r, "/Mi_reflected/", 8);
}

#[test]
fn criterion_10_kummer_identity_and_parameter_derivatives_of_1f1() {
    let r = suite(Suite::SeriesVsFd);
    require(&r, "/kummer/", 125);
    require(&r, "/g1/", 125);
    require(&r, "/h1/", 125);
}

#[test]
fn criterion_11_cli_verify_all_and_table_t5() {
    let bin = env!("CARGO_BIN_EXE_whittaker");
    let out = Command::new(bin).args(["verify", "--suite", "all", "--format", "text"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let out = Command::new(bin).args(["table", "T5", "--x", "1", "--format", "json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(rows.len() >= 20);
    for row in rows {
        assert_eq!(row["status"], "pass");
        assert!(row["rel_diff"].as_f64().unwrap() < 1e-10);
    }
}

#[test]
fn exec_modes_agree() {
    let g = GridSpec::default_for(Suite::IntegralRelations);
    let a = whittaker::verify::run_suite_with(Suite::IntegralRelations, &g, &Default::default(), ExecMode::Sequential)
        .unwrap();
    let b = whittaker::verify::run_suite_with(Suite::IntegralRelations, &g, &Default::default(), ExecMode::Parallel)
        .unwrap();
    assert_eq!(a, b);
}

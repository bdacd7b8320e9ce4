use whittaker::grid::ExecMode;
use whittaker::incgamma::{lower_gamma, IncGammaArgs};
use whittaker::tables::{reproduce_table, RowStatus, TableId};
use whittaker::verify::{coverage_gaps, fd_derivative, run_all, run_suite, GridSpec, Suite, Tolerances, COVERED_OPS};
use whittaker::Error;

#[test]
fn full_run_passes_and_covers_every_operation() {
    let r = run_all(&Tolerances::default(), ExecMode::Parallel).unwrap();
    let failed: Vec<_> = r.iter().filter(|c| !c.passed).map(|c| c.check_id.clone()).collect();
    assert!(failed.is_empty(), "{failed:?}");
    assert!(coverage_gaps(&r).is_empty());
    assert!(COVERED_OPS.len() >= 36);
    assert_eq!(r.last().unwrap().check_id, "coverage/ops");
}

#[test]
fn suites_are_deterministic_and_sorted() {
    for s in [Suite::CatalogVsSeries, Suite::IntWhittaker] {
        let g = GridSpec::default_for(s);
        let a = run_suite(s, &g).unwrap();
        let b = run_suite(s, &g).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.check_id, y.check_id);
            assert_eq!(x.lhs.to_bits(), y.lhs.to_bits());
            assert_eq!(x.rhs.to_bits(), y.rhs.to_bits());
        }
        assert!(a.windows(2).all(|w| w[0].check_id <= w[1].check_id));
    }
}

#[test]
fn empty_grid_after_filtering_is_an_error() {
    // no kappa with mu + kappa + 1/2 > 0 and mu - kappa + 1/2 > 0
    let g = GridSpec::new(vec![5.0], vec![0.0], vec![1.0]).unwrap();
    assert_eq!(run_suite(Suite::IntegralRelations, &g).unwrap_err(), Error::EmptyGrid);
    assert_eq!(GridSpec::new(vec![], vec![0.0], vec![1.0]).unwrap_err(), Error::EmptyGrid);
}

#[test]
fn tolerance_overrides_are_honoured() {
    let s = Suite::Incgamma;
    let tight = Tolerances { catalog: 1e-300, ..Tolerances::default() };
    let r = whittaker::verify::run_suite_with(s, &GridSpec::default_for(s), &tight, ExecMode::Sequential).unwrap();
    assert!(r.iter().any(|c| !c.passed));
}

#[test]
fn fd_examples() {
    assert!((fd_derivative(|x| Ok(x * x), 3.0, 1.0).unwrap() - 6.0).abs() < 1e-9);
    assert!((fd_derivative(|x| Ok(x.exp()), 1.0, 1.0).unwrap() - std::f64::consts::E).abs() < 1e-10);
    let d = fd_derivative(|nu| Ok(lower_gamma(&IncGammaArgs::new(nu, 1.0)?)?.value), 1.0, 1.0).unwrap();
    assert!((d + 0.7965996).abs() < 1e-7);
}

#[test]
fn table_examples() {
    let t5 = reproduce_table(TableId::T5, &[1.0]).unwrap();
    let row = t5.iter().find(|r| r.kappa == 0.25 && r.mu == -0.25).unwrap();
    assert!((row.closed_value.unwrap() - 0.6065307).abs() < 1e-7);
    assert!(row.rel_diff.unwrap() < 1e-14);

    let t1 = reproduce_table(TableId::T1, &[1.0]).unwrap();
    let row = t1.iter().find(|r| r.kappa == -0.5 && r.mu == 0.0).unwrap();
    // 40-digit numerical derivative of M: -1.3133707035922503520
    assert!((row.closed_value.unwrap() + 1.313_370_703_592_250_4).abs() < 1e-13);
    assert_eq!(row.status, RowStatus::Pass);

    let t3b = reproduce_table(TableId::T3B, &[1.0]).unwrap();
    let row = t3b.iter().find(|r| r.kappa == 0.0 && r.mu == 0.0).unwrap();
    assert!(row.rel_diff.unwrap() <= 1e-8);
}

#[test]
fn table_preconditions() {
    assert!(reproduce_table(TableId::T2, &[]).is_err());
    assert!(reproduce_table(TableId::T2, &[51.0]).is_err());
    let rows = reproduce_table(TableId::T2, &[-1.0]).unwrap();
    assert!(rows.iter().all(|r| r.status == RowStatus::Skipped && r.reason.is_some()));
}

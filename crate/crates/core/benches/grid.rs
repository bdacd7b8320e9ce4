use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use whittaker::grid::{self, ExecMode};
use whittaker::logint::{i_integral, IntRoute};
use whittaker::tables::{reproduce_table_with, TableId};
use whittaker::verify::{run_suite_with, GridSpec, Suite, Tolerances};

const MODES: [(&str, ExecMode); 2] = [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)];

fn quadrature_grid(c: &mut Criterion) {
    let xs: Vec<f64> = (1..=256).map(|i| i as f64 / 32.0).collect();
    let mut g = c.benchmark_group("i1_quadrature_256_points");
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                grid::map(&xs, mode, |&x| i_integral(1, 0.25, 0.75, black_box(x), IntRoute::Quad).map(|v| v.value))
            })
        });
    }
    g.finish();
}

fn table_reproduction(c: &mut Criterion) {
    let xs: Vec<f64> = (1..=20).map(|i| i as f64 * 0.25).collect();
    let mut g = c.benchmark_group("table_T3B_20_points");
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| reproduce_table_with(TableId::T3B, black_box(&xs), mode))
        });
    }
    g.finish();
}

fn verify_suite(c: &mut Criterion) {
    let spec = GridSpec::default_for(Suite::CatalogVsSeries);
    let tol = Tolerances::default();
    let mut g = c.benchmark_group("suite_catalog_vs_series");
    g.sample_size(20);
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| run_suite_with(Suite::CatalogVsSeries, black_box(&spec), &tol, mode))
        });
    }
    g.finish();
}

criterion_group!(benches, quadrature_grid, table_reproduction, verify_suite);
criterion_main!(benches);

//! `whittaker`: evaluate, tabulate and cross-check the Whittaker M family.
//!
//! Exit status: 0 on success, 1 when a verification or table row fails,
//! 2 on usage and domain errors. Results go to stdout (or `--out`),
//! diagnostics to stderr.

mod eval;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use whittaker::grid::ExecMode;
use whittaker::tables::{reproduce_table_with, RowStatus, TableId};
use whittaker::verify::{coverage_gaps, run_all, run_suite_with, GridSpec, Suite, Tolerances, VerifyReport};
use whittaker::SeriesCtrl;

use eval::{evaluate, precheck, Request, Target};
use output::{json_line, opt10, opt17, sig10, sig17};

#[derive(Parser)]
#[command(name = "whittaker", version, about = "Whittaker M function, parameter derivatives and logarithmic integrals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one quantity on a grid of x values.
    Eval(EvalArgs),
    /// Reproduce a catalog table: closed form next to an independent route.
    Table(TableArgs),
    /// Run a verification suite (or all of them).
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write results to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Evaluate grid points on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(value_enum)]
    target: Target,
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<f64>,
    /// Points: a comma list and/or start:stop:step ranges (inclusive).
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    /// Evaluation route; `auto` picks the first admissible one.
    #[arg(long, default_value = "auto")]
    route: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct TableArgs {
    /// T1, TDkM, T2A, T2, T3A, T3, T3B, T4 or T5.
    table: String,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    x: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Override the suite's kappa values (list or range).
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<String>,
    /// Override the suite's mu values (the order nu for the incgamma suite).
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Override the suite's x values.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long)]
    tol_catalog: Option<f64>,
    #[arg(long)]
    tol_quad: Option<f64>,
    #[arg(long)]
    tol_fd: Option<f64>,
    #[arg(long)]
    tol_infinite: Option<f64>,
    #[arg(long)]
    tol_reduction: Option<f64>,
    #[arg(long)]
    tol_identity: Option<f64>,
    /// Print every check in text mode, not only failures.
    #[arg(long)]
    all_checks: bool,
    #[command(flatten)]
    common: Common,
}

/// Parses `0.5,1,2` and `0.5:5:0.5` (inclusive), or a mix of both.
fn parse_points(spec: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let nums: Vec<f64> = part
            .split(':')
            .map(|s| s.trim().parse::<f64>().with_context(|| format!("bad number '{s}' in grid spec '{spec}'")))
            .collect::<Result<_>>()?;
        match nums[..] {
            [v] => out.push(v),
            [start, stop, step] => {
                if !start.is_finite() || !stop.is_finite() || !step.is_finite() || step <= 0.0 || stop < start {
                    bail!("range '{part}' needs start <= stop and step > 0");
                }
                let n = ((stop - start) / step + 1e-9).floor() as usize;
                if n > 1_000_000 {
                    bail!("range '{part}' has more than 10^6 points");
                }
                out.extend((0..=n).map(|i| start + i as f64 * step));
            }
            _ => bail!("grid spec '{part}' must be a number or start:stop:step"),
        }
    }
    if out.is_empty() {
        bail!("grid spec '{spec}' is empty");
    }
    if let Some(bad) = out.iter().find(|v| !v.is_finite()) {
        bail!("grid value {bad} is not finite");
    }
    Ok(out)
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn mode(c: &Common) -> ExecMode {
    if c.sequential {
        ExecMode::Sequential
    } else {
        ExecMode::Parallel
    }
}

#[derive(Serialize)]
struct EvalRecord {
    target: String,
    params: serde_json::Map<String, serde_json::Value>,
    x: f64,
    value: f64,
    abs_err_est: f64,
    route: String,
    citations: Vec<String>,
}

fn params_text(p: &[(&str, f64)]) -> String {
    p.iter().map(|(n, v)| format!("{n}={v}")).collect::<Vec<_>>().join(";")
}

fn cmd_eval(a: EvalArgs) -> Result<ExitCode> {
    precheck(a.target, a.mu)?;
    if !a.target.routes().contains(&a.route.as_str()) {
        bail!(
            "route '{}' is not available for {}; choose one of {}",
            a.route,
            a.target.name(),
            a.target.routes().join(", ")
        );
    }
    let given = [("kappa", a.kappa), ("mu", a.mu), ("a", a.a), ("b", a.b), ("nu", a.nu)];
    let mut values = Vec::new();
    for name in a.target.params() {
        let v = given.iter().find(|(n, _)| n == name).and_then(|(_, v)| *v).ok_or_else(|| {
            anyhow!("{} needs --{name} (parameters: {})", a.target.name(), a.target.params().join(", "))
        })?;
        if !v.is_finite() {
            bail!("--{name} must be finite");
        }
        values.push((*name, v));
    }
    for (n, v) in given {
        if v.is_some() && !a.target.params().contains(&n) {
            eprintln!("warning: --{n} is ignored by {}", a.target.name());
        }
    }
    let xs = parse_points(&a.x)?;
    let req = Request { target: a.target, route: a.route.clone(), values };
    let ctrl = SeriesCtrl::default();
    let results = whittaker::grid::map(&xs, mode(&a.common), |&x| evaluate(&req, x, &ctrl));
    let mut points = Vec::with_capacity(xs.len());
    for (x, r) in xs.iter().zip(results) {
        points.push((*x, r.with_context(|| format!("{} at x = {x}", a.target.name()))?));
    }

    let mut out = sink(&a.common.out)?;
    let target = a.target.name();
    match a.common.format {
        Format::Json => {
            for (x, p) in points {
                let params = req.values.iter().map(|(n, v)| (n.to_string(), serde_json::json!(v))).collect();
                let rec = EvalRecord {
                    target: target.clone(),
                    params,
                    x,
                    value: p.value,
                    abs_err_est: p.abs_err_est,
                    route: p.route,
                    citations: p.citations,
                };
                json_line(&mut out, &rec)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["target", "params", "x", "value", "abs_err_est", "route", "citations"])?;
            for (x, p) in points {
                w.write_record([
                    &target,
                    &params_text(&req.values),
                    &sig17(x),
                    &sig17(p.value),
                    &sig17(p.abs_err_est),
                    &p.route,
                    &p.citations.join("; "),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "{target} ({})", params_text(&req.values))?;
            writeln!(out, "{:>18}  {:>18}  {:>18}  route", "x", "value", "abs_err_est")?;
            for (x, p) in points {
                writeln!(out, "{:>18}  {:>18}  {:>18}  {}", sig10(x), sig10(p.value), sig10(p.abs_err_est), p.route)?;
            }
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(a: TableArgs) -> Result<ExitCode> {
    let id: TableId = a.table.parse()?;
    let xs = parse_points(&a.x)?;
    let rows = reproduce_table_with(id, &xs, mode(&a.common))?;
    let failed = rows.iter().filter(|r| r.status == RowStatus::Fail).count();
    let skipped = rows.iter().filter(|r| r.status == RowStatus::Skipped).count();
    let mut out = sink(&a.common.out)?;
    match a.common.format {
        Format::Json => {
            for r in &rows {
                json_line(&mut out, r)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record([
                "table",
                "kappa",
                "mu",
                "x",
                "closed_value",
                "independent_value",
                "rel_diff",
                "tol",
                "status",
                "independent_route",
                "citation",
                "reason",
            ])?;
            for r in &rows {
                w.write_record([
                    id.name().to_string(),
                    sig17(r.kappa),
                    sig17(r.mu),
                    sig17(r.x),
                    opt17(r.closed_value),
                    opt17(r.independent_value),
                    opt17(r.rel_diff),
                    sig17(r.tol),
                    status_name(r.status).into(),
                    r.independent_route.into(),
                    r.citation.into(),
                    r.reason.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "{id}: {}", id.caption())?;
            writeln!(
                out,
                "{:>9} {:>9} {:>8}  {:>18}  {:>18}  {:>17}  status",
                "kappa", "mu", "x", "closed", "independent", "rel_diff"
            )?;
            for r in &rows {
                writeln!(
                    out,
                    "{:>9} {:>9} {:>8}  {:>18}  {:>18}  {:>17}  {}{}",
                    fmt_param(r.kappa),
                    fmt_param(r.mu),
                    sig10(r.x),
                    opt10(r.closed_value),
                    opt10(r.independent_value),
                    opt10(r.rel_diff),
                    status_name(r.status),
                    r.reason.as_ref().map(|s| format!(" ({s})")).unwrap_or_default()
                )?;
            }
            writeln!(
                out,
                "{} rows, {} passed, {failed} failed, {skipped} skipped",
                rows.len(),
                rows.len() - failed - skipped
            )?;
        }
    }
    out.flush()?;
    if failed > 0 {
        eprintln!("{id}: {failed} row(s) failed");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn status_name(s: RowStatus) -> &'static str {
    match s {
        RowStatus::Pass => "pass",
        RowStatus::Fail => "fail",
        RowStatus::Skipped => "skipped",
    }
}

/// Table parameters are simple rationals; print them compactly.
fn fmt_param(v: f64) -> String {
    for d in [1.0, 2.0, 3.0, 4.0, 6.0] {
        let n = v * d;
        if (n - n.round()).abs() < 1e-12 {
            return if d == 1.0 { format!("{}", n.round()) } else { format!("{}/{d}", n.round()) };
        }
    }
    sig10(v)
}

#[derive(Serialize)]
struct Summary<'a> {
    suite: &'a str,
    checks: usize,
    passed: usize,
    failed: usize,
    coverage_gaps: Vec<&'static str>,
}

fn cmd_verify(a: VerifyArgs) -> Result<ExitCode> {
    let d = Tolerances::default();
    let tol = Tolerances {
        catalog: a.tol_catalog.unwrap_or(d.catalog),
        quadrature: a.tol_quad.unwrap_or(d.quadrature),
        finite_difference: a.tol_fd.unwrap_or(d.finite_difference),
        infinite: a.tol_infinite.unwrap_or(d.infinite),
        reduction: a.tol_reduction.unwrap_or(d.reduction),
        identity: a.tol_identity.unwrap_or(d.identity),
    };
    for (name, v) in [
        ("catalog", tol.catalog),
        ("quad", tol.quadrature),
        ("fd", tol.finite_difference),
        ("infinite", tol.infinite),
        ("reduction", tol.reduction),
        ("identity", tol.identity),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            bail!("--tol-{name} must be positive and finite");
        }
    }
    let overrides = a.kappa.is_some() || a.mu.is_some() || a.x.is_some();
    let reports: Vec<VerifyReport> = if a.suite == "all" {
        if overrides {
            bail!("grid overrides (--kappa/--mu/--x) need a single --suite");
        }
        run_all(&tol, mode(&a.common))?
    } else {
        let suite: Suite = a.suite.parse()?;
        let mut g = GridSpec::default_for(suite);
        if let Some(s) = &a.kappa {
            g.kappa_values = parse_points(s)?;
        }
        if let Some(s) = &a.mu {
            g.mu_values = parse_points(s)?;
        }
        if let Some(s) = &a.x {
            g.x_values = parse_points(s)?;
        }
        run_suite_with(suite, &g, &tol, mode(&a.common))?
    };
    let failed: Vec<&VerifyReport> = reports.iter().filter(|r| !r.passed).collect();
    let summary = Summary {
        suite: &a.suite,
        checks: reports.len(),
        passed: reports.len() - failed.len(),
        failed: failed.len(),
        coverage_gaps: if a.suite == "all" { coverage_gaps(&reports) } else { Vec::new() },
    };
    let mut out = sink(&a.common.out)?;
    match a.common.format {
        Format::Json => {
            for r in &reports {
                json_line(&mut out, r)?;
            }
            json_line(&mut out, &serde_json::json!({ "summary": summary }))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record([
                "check_id",
                "lhs",
                "rhs",
                "abs_diff",
                "rel_diff",
                "tol",
                "tol_abs",
                "passed",
                "route_lhs",
                "route_rhs",
                "citation",
                "note",
            ])?;
            for r in &reports {
                w.write_record([
                    r.check_id.clone(),
                    sig17(r.lhs),
                    sig17(r.rhs),
                    sig17(r.abs_diff),
                    sig17(r.rel_diff),
                    sig17(r.tol),
                    sig17(r.tol_abs),
                    r.passed.to_string(),
                    r.routes.0.clone(),
                    r.routes.1.clone(),
                    r.citation.clone(),
                    r.note.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            let shown: Vec<&VerifyReport> = if a.all_checks { reports.iter().collect() } else { failed.clone() };
            for r in shown {
                writeln!(
                    out,
                    "{} {}  lhs={} rhs={} rel_diff={} tol={}{}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.check_id,
                    sig10(r.lhs),
                    sig10(r.rhs),
                    sig10(r.rel_diff),
                    sig10(r.tol),
                    r.note.as_ref().map(|n| format!("  ({n})")).unwrap_or_default()
                )?;
            }
            let mut suites: Vec<&str> = reports.iter().map(|r| r.check_id.split('/').next().unwrap_or("")).collect();
            suites.dedup();
            for s in suites {
                let (n, p) = reports
                    .iter()
                    .filter(|r| r.check_id.split('/').next() == Some(s))
                    .fold((0, 0), |(n, p), r| (n + 1, p + r.passed as usize));
                writeln!(out, "{s:<20} {p}/{n} passed")?;
            }
            writeln!(out, "total: {}/{} checks passed", summary.passed, summary.checks)?;
        }
    }
    out.flush()?;
    if !failed.is_empty() {
        eprintln!("verify: {} of {} checks failed", failed.len(), reports.len());
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Ok(v) = std::env::var("WHITTAKER_MAX_TERMS") {
        let n: usize =
            v.trim().parse().map_err(|_| anyhow!("WHITTAKER_MAX_TERMS must be a positive integer, got '{v}'"))?;
        if n == 0 {
            bail!("WHITTAKER_MAX_TERMS must be a positive integer, got 0");
        }
        whittaker::set_default_max_terms(n);
    }
    match cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Table(a) => cmd_table(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_are_inclusive() {
        assert_eq!(parse_points("0.5:2:0.5").unwrap(), vec![0.5, 1.0, 1.5, 2.0]);
        assert_eq!(parse_points("1,2:3:1").unwrap(), vec![1.0, 2.0, 3.0]);
        assert_eq!(parse_points("0.1:0.3:0.1").unwrap().len(), 3);
        assert!(parse_points("1:0:1").is_err());
        assert!(parse_points("").is_err());
        assert!(parse_points("a").is_err());
    }

    #[test]
    fn params_print_as_rationals() {
        assert_eq!(fmt_param(-0.5), "-1/2");
        assert_eq!(fmt_param(0.75), "3/4");
        assert_eq!(fmt_param(2.0), "2");
    }
}

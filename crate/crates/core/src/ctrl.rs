use std::sync::atomic::{AtomicUsize, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};

/// Truncation policy for every power series in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesCtrl {
    pub rel_tol: f64,
    pub max_terms: usize,
    pub min_terms: usize,
}

const DEFAULT_MAX_TERMS: usize = 4000;

static MAX_TERMS_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_TERMS);

impl Default for SeriesCtrl {
    fn default() -> Self {
        SeriesCtrl { rel_tol: 1e-17, max_terms: MAX_TERMS_CAP.load(Ordering::Relaxed), min_terms: 3 }
    }
}

/// Process-wide cap on `SeriesCtrl::default().max_terms`, including series
/// summed inside other routes. Values below 3 are raised to 3.
pub fn set_default_max_terms(n: usize) {
    MAX_TERMS_CAP.store(n.max(3), Ordering::Relaxed);
}

impl SeriesCtrl {
    pub fn new(rel_tol: f64, max_terms: usize, min_terms: usize) -> Result<Self> {
        let c = SeriesCtrl { rel_tol, max_terms, min_terms };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1e-3) {
            return Err(Error::Domain(format!("SeriesCtrl.rel_tol must lie in (0, 1e-3), got {}", self.rel_tol)));
        }
        if self.min_terms < 3 || self.max_terms < self.min_terms {
            return Err(Error::Domain(format!(
                "SeriesCtrl needs min_terms >= 3 and max_terms >= min_terms (got {} / {})",
                self.min_terms, self.max_terms
            )));
        }
        Ok(())
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms.max(self.min_terms);
        self
    }
}

/// Value returned by the scalar kernels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelValue {
    pub value: f64,
    pub abs_err_est: f64,
    pub terms_used: usize,
}

impl KernelValue {
    pub fn new(value: f64, abs_err_est: f64, terms_used: usize) -> Self {
        KernelValue { value, abs_err_est: abs_err_est.abs(), terms_used }
    }

    /// A value whose only error is final rounding.
    pub fn exact(value: f64) -> Self {
        KernelValue { value, abs_err_est: value.abs() * f64::EPSILON, terms_used: 0 }
    }

    pub fn scale(self, c: f64) -> Self {
        KernelValue { value: self.value * c, abs_err_est: self.abs_err_est * c.abs(), terms_used: self.terms_used }
    }
}

/// Stopping rule shared by the series engines: three consecutive small terms.
#[derive(Debug, Default)]
pub(crate) struct Tail {
    quiet: usize,
}

impl Tail {
    pub(crate) fn done(&mut self, term: f64, sum: f64, n: usize, ctrl: &SeriesCtrl) -> bool {
        if term.abs() <= ctrl.rel_tol * sum.abs() || term == 0.0 {
            self.quiet += 1;
        } else {
            self.quiet = 0;
        }
        self.quiet >= 3 && n >= ctrl.min_terms
    }
}

/// A closed-form value together with the name of the identity that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Closed {
    pub value: KernelValue,
    pub citation: &'static str,
}

impl Closed {
    pub fn new(value: KernelValue, citation: &'static str) -> Self {
        Closed { value, citation }
    }
}

/// A value tagged with the route that produced it and the cross-route spread.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub abs_err_est: f64,
    pub terms_used: usize,
    pub route: String,
    pub citations: Vec<String>,
    /// Largest pairwise difference among the routes that were evaluated.
    pub discrepancy: Option<f64>,
}

impl EvalResult {
    pub fn from_kernel(v: KernelValue, route: &str, citation: &str) -> Self {
        EvalResult {
            value: v.value,
            abs_err_est: v.abs_err_est,
            terms_used: v.terms_used,
            route: route.to_string(),
            citations: vec![citation.to_string()],
            discrepancy: None,
        }
    }
}

/// Combine several route values: the first is reported, the spread is recorded.
pub(crate) fn combine(mut parts: Vec<EvalResult>) -> Option<EvalResult> {
    if parts.is_empty() {
        return None;
    }
    let mut spread = 0.0f64;
    for i in 0..parts.len() {
        for j in (i + 1)..parts.len() {
            spread = spread.max((parts[i].value - parts[j].value).abs());
        }
    }
    let routes: Vec<String> = parts.iter().map(|p| p.route.clone()).collect();
    let cites: Vec<String> = parts.iter().flat_map(|p| p.citations.clone()).collect();
    let mut head = parts.swap_remove(0);
    head.route = routes.join("+");
    head.citations = cites;
    head.discrepancy = Some(spread);
    Some(head)
}

//! Parameter-space scans: enumerate `(D, 2A, 2B)`, build fields, compare both
//! formulas for every prime `ell`, and emit JSON records in a fixed order.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::primes_in;
use crate::cm_field::build_cm_field;
use crate::error::{Error, Result};
use crate::formulas::{compare, ComparisonReport, FieldContext};
use crate::json::{rational_value, SCHEMA_VERSION};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    /// Bound on the prime `D`.
    pub d_max: u64,
    /// Bound on `|2A|` and `|2B|`.
    pub coeff_max: i64,
    /// Bound on the prime `ell`.
    pub ell_max: u64,
    /// Keep fields that fail the theorem's assumptions.
    pub permissive: bool,
    /// Worker threads; `None` uses every processor.
    pub jobs: Option<usize>,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            d_max: 41,
            coeff_max: 40,
            ell_max: 50,
            permissive: false,
            jobs: None,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if self.d_max < 5 || self.coeff_max < 0 || self.ell_max < 2 || self.jobs == Some(0) {
            return Err(Error::Invariant(format!(
                "invalid scan bounds: d_max {} (>= 5), coeff_max {} (>= 0), ell_max {} (>= 2), jobs {:?} (>= 1)",
                self.d_max, self.coeff_max, self.ell_max, self.jobs
            )));
        }
        Ok(())
    }

    pub fn discriminants(&self) -> Vec<i64> {
        primes_in(5, self.d_max)
            .into_iter()
            .filter(|p| p % 4 == 1)
            .map(|p| p as i64)
            .collect()
    }

    pub fn ells(&self) -> Vec<u64> {
        primes_in(2, self.ell_max)
    }

    /// Every `(D, 2A, 2B)` in the box with matching parity, in output order.
    pub fn triples(&self) -> Vec<(i64, i64, i64)> {
        let c = self.coeff_max;
        let mut out = Vec::new();
        for d in self.discriminants() {
            for a2 in -c..=c {
                for b2 in (-c..=c).filter(|b2| (a2 - b2) % 2 == 0) {
                    out.push((d, a2, b2));
                }
            }
        }
        out
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(j) = self.jobs {
            builder = builder.num_threads(j);
        }
        builder
            .build()
            .map_err(|e| Error::Invariant(format!("thread pool: {e}")))
    }
}

/// Accepted fields in `(D, 2A, 2B)` order; theorem fields only unless permissive.
pub fn scan_fields(config: &ScanConfig) -> Result<Vec<FieldContext>> {
    config.validate()?;
    let triples = config.triples();
    let contexts: Vec<Option<FieldContext>> = config.pool()?.install(|| {
        triples
            .par_iter()
            .map(|&(d, a2, b2)| {
                let Ok(field) = build_cm_field(d, a2, b2) else {
                    return Ok(None);
                };
                let ctx = FieldContext::new(field)?;
                Ok((config.permissive || ctx.in_theorem()).then_some(ctx))
            })
            .collect::<Result<_>>()
    })?;
    Ok(contexts.into_iter().flatten().collect())
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub fields_found: usize,
    pub fields_in_theorem: usize,
    pub comparisons: usize,
    pub equalities: usize,
    /// Theorem fields whose totals or rows disagree, or whose evaluation failed.
    pub failures: usize,
}

#[derive(Debug, Clone)]
pub struct ScanOutcome {
    pub reports: Vec<ComparisonReport>,
    /// `(D, 2A, 2B, ell, message)` for evaluations that returned an error.
    pub errors: Vec<(i64, i64, i64, u64, String)>,
    pub summary: ScanSummary,
}

/// Compares every scanned field against every prime `ell <= ell_max`.
pub fn run_scan(config: &ScanConfig, contexts: &[FieldContext]) -> Result<ScanOutcome> {
    let ells = config.ells();
    let work: Vec<(&FieldContext, u64)> = contexts
        .iter()
        .flat_map(|c| ells.iter().map(move |&l| (c, l)))
        .collect();
    let results: Vec<Result<ComparisonReport>> =
        config.pool()?.install(|| work.par_iter().map(|&(c, l)| compare(c, l)).collect());

    let mut summary = ScanSummary {
        fields_found: contexts.len(),
        fields_in_theorem: contexts.iter().filter(|c| c.in_theorem()).count(),
        ..Default::default()
    };
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for ((ctx, ell), result) in work.into_iter().zip(results) {
        summary.comparisons += 1;
        let f = ctx.field();
        match result {
            Ok(report) => {
                let ok = report.totals_equal && report.rows.iter().all(|r| r.equal);
                if ok {
                    summary.equalities += 1;
                } else if report.in_theorem {
                    summary.failures += 1;
                }
                reports.push(report);
            }
            Err(e) => {
                if ctx.in_theorem() {
                    summary.failures += 1;
                }
                errors.push((f.d(), f.a2(), f.b2(), ell, e.to_string()));
            }
        }
    }
    Ok(ScanOutcome {
        reports,
        errors,
        summary,
    })
}

fn opt_rational(q: &Option<crate::arith::Rational>) -> Value {
    q.as_ref().map_or(Value::Null, rational_value)
}

/// The assumption block of a record.
pub fn assumptions_json(ctx: &FieldContext) -> Value {
    let a = ctx.assumptions();
    json!({
        "status": if a.passed() { "passed" } else { "failed" },
        "different": a.different.ideal.to_string(),
        "different_norm": a.different.norm,
        "different_norm_is_d": a.different_norm_is_d,
        "wild_at_2": !a.different.wild.is_empty(),
        "du_fundamental": a.du_fundamental,
        "du_witness": a.du_witness.map(|(delta, n, du)| json!({"delta": delta, "n": n, "du": du})),
    })
}

/// One JSON-lines record for a `(field, ell)` comparison.
pub fn record_json(ctx: &FieldContext, report: &ComparisonReport) -> Value {
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "delta": r.delta,
                "n": r.n,
                "N": r.norm,
                "du": r.du,
                "dx": r.dx,
                "by": opt_rational(&r.by),
                "lv": opt_rational(&r.lv),
                "equal": r.equal,
                "trace": r.trace.iter().map(|t| json!({
                    "p": t.p,
                    "eps_d": t.eps_d,
                    "eps_reflex": t.eps_reflex,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "schema": SCHEMA_VERSION,
        "D": report.d,
        "a2": report.a2,
        "b2": report.b2,
        "Dt": report.dt,
        "assumptions": assumptions_json(ctx),
        "ell": report.ell,
        "rows": rows,
        "by_total": opt_rational(&report.by_total),
        "lv_total": opt_rational(&report.lv_total),
        "totals_equal": report.totals_equal,
    })
}

/// Final summary line of a scan.
pub fn summary_json(summary: &ScanSummary) -> Value {
    json!({ "schema": SCHEMA_VERSION, "summary": summary })
}

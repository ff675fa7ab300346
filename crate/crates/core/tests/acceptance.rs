//! Acceptance criteria. Each criterion prints one PASS/FAIL line on stderr
//! (written directly, so it shows up even when test output is captured).

use std::io::Write;
use std::time::{Duration, Instant};

use cm_intersection::formulas::FieldContext;
use cm_intersection::scan::{run_scan, scan_fields, ScanConfig, ScanOutcome};
use cm_intersection::verify::{
    corpus_properties, hilbert_bilinearity_symmetry, hilbert_product_formula, hilbert_vs_search,
    ideal_count_oracle, PropertyTally,
};
use cm_intersection::Rational;

/// Scan box for criteria 1-6, 9, 10.
const D_MAX: u64 = 41;
const COEFF_MAX: i64 = 40;
const ELL_MAX: u64 = 50;
/// Runtime ceilings.
const SCAN_BUDGET: Duration = Duration::from_secs(300);
const IDEAL_BUDGET: Duration = Duration::from_secs(60);
/// Oracle ranges.
const HILBERT_PRODUCT_BOUND: i64 = 50;
const HILBERT_SEARCH_BOUND: i64 = 20;
const HILBERT_SAMPLES: usize = 1000;
const HILBERT_SEED: u64 = 20_240_917;
const IDEAL_D_BOUND: i64 = 500;
const IDEAL_A_MAX: u64 = 300;

fn line(id: u32, ok: bool, detail: String) -> bool {
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "[{}] criterion {id:>2}: {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn tally_ok(t: &PropertyTally) -> bool {
    t.passed() && t.checked > 0
}

fn describe(ts: &[&PropertyTally]) -> String {
    ts.iter()
        .map(|t| {
            let mut s = format!("{} {}/{}", t.name, t.checked - t.failures, t.checked);
            if let Some(w) = &t.witness {
                s.push_str(&format!(" (first counterexample: {w})"));
            }
            s
        })
        .collect::<Vec<_>>()
        .join(", ")
}

struct Corpus {
    contexts: Vec<FieldContext>,
    outcome: ScanOutcome,
    elapsed: Duration,
    properties: Vec<PropertyTally>,
}

impl Corpus {
    fn property(&self, name: &str) -> &PropertyTally {
        self.properties.iter().find(|p| p.name == name).expect("known property")
    }
}

fn corpus() -> Corpus {
    let config = ScanConfig {
        d_max: D_MAX,
        coeff_max: COEFF_MAX,
        ell_max: ELL_MAX,
        permissive: false,
        jobs: None,
    };
    let start = Instant::now();
    let contexts = scan_fields(&config).expect("scan");
    let outcome = run_scan(&config, &contexts).expect("compare");
    let elapsed = start.elapsed();
    let properties = corpus_properties(&contexts, &config.ells()).expect("properties");
    Corpus {
        contexts,
        outcome,
        elapsed,
        properties,
    }
}

#[test]
fn acceptance_criteria() {
    let c = corpus();
    let mut all = true;

    let reports = &c.outcome.reports;
    let zero = Rational::from_integer(0);
    let witness_field = reports
        .iter()
        .find(|r| !r.rows.is_empty() && r.by_total.is_some_and(|t| t > zero));
    let totals_equal = reports.iter().all(|r| r.totals_equal && r.by_total == r.lv_total);
    all &= line(
        1,
        totals_equal
            && c.outcome.errors.is_empty()
            && c.outcome.summary.failures == 0
            && witness_field.is_some()
            && c.elapsed < SCAN_BUDGET,
        format!(
            "{} theorem fields, {} comparisons, {} equal totals, {} errors, positive-total witness {}, {:.2?}",
            c.contexts.len(),
            reports.len(),
            reports.iter().filter(|r| r.totals_equal).count(),
            c.outcome.errors.len(),
            witness_field.map_or("none".into(), |r| format!(
                "D={} 2A={} 2B={} l={} total={}",
                r.d,
                r.a2,
                r.b2,
                r.ell,
                r.by_total.unwrap()
            )),
            c.elapsed
        ),
    );

    let rows: Vec<_> = reports.iter().flat_map(|r| &r.rows).collect();
    let summands_equal = rows.iter().all(|r| r.equal && r.by.is_some() && r.by == r.lv);
    all &= line(
        2,
        summands_equal && !rows.is_empty(),
        format!("{} rows, {} equal", rows.len(), rows.iter().filter(|r| r.equal).count()),
    );

    for (id, name) in [
        (3, "splitting_reciprocity"),
        (4, "valuation_lemma"),
        (5, "local_factor_equality"),
        (6, "index_double_characterization"),
    ] {
        let t = c.property(name);
        all &= line(id, tally_ok(t), describe(&[t]));
    }

    let start = Instant::now();
    let ideals = ideal_count_oracle(IDEAL_D_BOUND, IDEAL_A_MAX).expect("ideal oracle");
    let took = start.elapsed();
    all &= line(
        7,
        tally_ok(&ideals) && took < IDEAL_BUDGET,
        format!("{}, {took:.2?}", describe(&[&ideals])),
    );

    let product = hilbert_product_formula(HILBERT_PRODUCT_BOUND).expect("product formula");
    let (bilinear, symmetric) = hilbert_bilinearity_symmetry(HILBERT_SAMPLES, HILBERT_SEED).expect("sample");
    let search = hilbert_vs_search(HILBERT_SEARCH_BOUND).expect("search");
    let hilbert = [&product, &bilinear, &symmetric, &search];
    all &= line(8, hilbert.iter().all(|t| tally_ok(t)), describe(&hilbert));

    let structural: Vec<&PropertyTally> = [
        "c_k_odd",
        "c_k_congruence",
        "du_negative",
        "delta_n_coprime",
        "du_dx_coprime_on_n",
        "norm_identity",
        "hilbert_du_dx",
    ]
    .iter()
    .map(|n| c.property(n))
    .collect();
    all &= line(9, structural.iter().all(|t| tally_ok(t)), describe(&structural));

    let paths = [c.property("by_dual_paths"), c.property("lv_dual_paths")];
    all &= line(10, paths.iter().all(|t| tally_ok(t)), describe(&paths));

    assert!(all, "at least one acceptance criterion failed; see the FAIL lines above");
}

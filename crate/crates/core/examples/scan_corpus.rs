//! A small parameter scan, printing the first JSON record with a positive
//! total and the summary line.

use cm_intersection::scan::{record_json, run_scan, scan_fields, summary_json, ScanConfig};

fn main() {
    let config = ScanConfig {
        d_max: 13,
        coeff_max: 30,
        ell_max: 20,
        ..Default::default()
    };
    let fields = scan_fields(&config).unwrap();
    let outcome = run_scan(&config, &fields).unwrap();
    if let Some(report) = outcome
        .reports
        .iter()
        .find(|r| r.by_total.is_some_and(|t| t > 0.into()))
    {
        let ctx = fields
            .iter()
            .find(|c| (c.field().d(), c.field().a2(), c.field().b2()) == (report.d, report.a2, report.b2))
            .unwrap();
        println!("{}", serde_json::to_string_pretty(&record_json(ctx, report)).unwrap());
    }
    println!("{}", summary_json(&outcome.summary));
}

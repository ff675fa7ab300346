//! Builds a quartic CM field from `(D, 2A, 2B)`, prints its integral basis
//! data and index set, or the full list of violated assumptions.
//!
//!     cargo run --example cm_field -- 5 -37 -9

use cm_intersection::cm_field::{build_cm_field, check_assumptions, index_set};

fn main() {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let (d, a2, b2) = match args.as_slice() {
        [d, a2, b2, ..] => (*d, *a2, *b2),
        _ => (5, -37, -9),
    };
    let field = match build_cm_field(d, a2, b2) {
        Ok(f) => f,
        Err(report) => {
            eprintln!("rejected {report}");
            std::process::exit(1);
        }
    };
    println!("{field}");
    println!(
        "basis {:?}: alpha = ({}, {}), beta = ({}, {}), c_K = {}",
        field.case(),
        field.alpha0(),
        field.alpha1(),
        field.beta0(),
        field.beta1(),
        field.c_k()
    );
    let report = check_assumptions(&field).unwrap();
    println!(
        "different {} (norm {}), d_u fundamental: {}",
        report.different.ideal, report.different.norm, report.du_fundamental
    );
    println!("{:>6} {:>6} {:>8} {:>8} {:>8} {:>10}", "delta", "n", "N", "d_u", "d_x", "tx tu - 2txu");
    for row in index_set(&field).unwrap() {
        println!(
            "{:>6} {:>6} {:>8} {:>8} {:>8} {:>10}",
            row.delta,
            row.n,
            row.norm,
            row.du,
            row.dx,
            row.cross_term().to_string()
        );
    }
}

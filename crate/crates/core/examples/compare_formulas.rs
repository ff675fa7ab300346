//! Both formulas for one field and a range of primes, row by row.
//!
//!     cargo run --example compare_formulas -- 29 -17 1

use cm_intersection::arith::primes_in;
use cm_intersection::{build_cm_field, compare, FieldContext};

fn main() {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let (d, a2, b2) = match args.as_slice() {
        [d, a2, b2, ..] => (*d, *a2, *b2),
        _ => (29, -17, 1),
    };
    let ctx = FieldContext::new(build_cm_field(d, a2, b2).expect("admissible field")).unwrap();
    println!("{} (assumptions {})", ctx.field(), if ctx.in_theorem() { "hold" } else { "fail" });
    for ell in primes_in(2, 50) {
        let report = compare(&ctx, ell).unwrap();
        let show = |q: Option<cm_intersection::Rational>| q.map_or("-".into(), |q| q.to_string());
        let nonzero: Vec<String> = report
            .rows
            .iter()
            .filter(|r| r.by.is_some_and(|v| v != 0.into()))
            .map(|r| format!("(delta {}, n {}): {}", r.delta, r.n, show(r.by)))
            .collect();
        if nonzero.is_empty() {
            continue;
        }
        println!(
            "l = {ell:>2}: total {} = {} [{}]",
            show(report.by_total),
            show(report.lv_total),
            nonzero.join("; ")
        );
    }
}

//! Runs every structural check on one field and prints the tallies.

use cm_intersection::{build_cm_field, verify_lemmas, FieldContext};

fn main() {
    let ctx = FieldContext::new(build_cm_field(5, -37, -9).unwrap()).unwrap();
    let report = verify_lemmas(&ctx).unwrap();
    for c in &report.checks {
        println!("{:<30} {:>3} checked, {} failed", c.name, c.checked, c.failures);
    }
    println!("all passed: {}", report.passed());
}

//! Hilbert symbols at every place, checked against the product formula and a
//! brute-force solvability search.
//!
//!     cargo run --example hilbert_symbols -- -3 5

use cm_intersection::arith::{hilbert_symbol_int, relevant_places};
use cm_intersection::oracle::hilbert_symbol_by_search;

fn main() {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let (a, b) = match args.as_slice() {
        [a, b, ..] if *a != 0 && *b != 0 => (*a, *b),
        _ => (-3, 5),
    };
    println!("(a, b) = ({a}, {b})");
    let mut product = 1;
    for place in relevant_places(a, b) {
        let h = hilbert_symbol_int(a as i128, b as i128, place).unwrap();
        let search = hilbert_symbol_by_search(a, b, place).unwrap();
        product *= h;
        println!("  v = {place:>3}: {h:>2}  (search: {search:>2})");
    }
    println!("product over places: {product}");
}

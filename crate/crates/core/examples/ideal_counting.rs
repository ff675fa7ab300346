//! Ideal counts `R_d(A)` in imaginary quadratic orders, from the splitting
//! dictionary and from lattice enumeration, plus the genus factor `rho~`.

use cm_intersection::quad_order::{count_ideals_brute, count_ideals_of_norm, eps_d, rho_tilde, QuadDiscriminant};

fn main() {
    for d in [-3, -4, -7, -20, -23, -84] {
        let disc = QuadDiscriminant::fundamental(d).unwrap();
        let counts: Vec<String> = (1..=12)
            .map(|a| {
                let fast = count_ideals_of_norm(disc, a).unwrap();
                assert_eq!(fast, count_ideals_brute(disc, a).unwrap());
                fast.to_string()
            })
            .collect();
        println!("d = {d:>4}: R_d(1..12) = [{}]", counts.join(", "));
    }
    let d = QuadDiscriminant::fundamental(-20).unwrap();
    println!("rho~_-20(5) relative to l = 3: {}", rho_tilde(d, 5, 3).unwrap());
    println!("eps_-20(5, 10) = {}", eps_d(d, 5, 10).unwrap());
}

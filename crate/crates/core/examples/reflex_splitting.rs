//! How small primes factor in the reflex field `F~` and then in `K~`.

use cm_intersection::cm_field::build_cm_field;
use cm_intersection::reflex::ReflexField;

fn main() {
    let field = build_cm_field(5, -37, -9).unwrap();
    let reflex = ReflexField::new(&field).unwrap();
    println!("D~ = {}, alpha = {}", reflex.dt(), reflex.alpha());
    println!("relative different: {}", reflex.different().ideal);
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 241] {
        let parts: Vec<String> = reflex
            .primes_over(p)
            .unwrap()
            .into_iter()
            .map(|q| format!("{q} -> {}", reflex.classify(q).unwrap()))
            .collect();
        println!("{p:>4}: {}", parts.join(", "));
    }
}

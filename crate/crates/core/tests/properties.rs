use proptest::prelude::*;

use cm_intersection::arith::{
    factorize, hilbert_symbol, hilbert_symbol_int, is_prime, kronecker, relevant_places, Place, Rational,
};
use cm_intersection::cm_field::{build_cm_field, index_set};
use cm_intersection::oracle::legendre_by_enumeration;
use cm_intersection::quad_order::{count_ideals_brute, count_ideals_of_norm, QuadDiscriminant};
use cm_intersection::reflex::{factor_prime_in_ftilde, valuation, ReflexElement, ReflexField};
use cm_intersection::SplitType;

fn nonzero(bound: i64) -> impl Strategy<Value = i64> {
    (-bound..=bound).prop_filter("nonzero", |x| *x != 0)
}

fn prime_place() -> impl Strategy<Value = Place> {
    prop_oneof![
        Just(Place::Infinity),
        (2u64..200).prop_filter("prime", |p| is_prime(*p)).prop_map(Place::Prime),
    ]
}

fn fundamental_negative() -> impl Strategy<Value = QuadDiscriminant> {
    (-2000i64..0).prop_filter_map("fundamental", |d| QuadDiscriminant::fundamental(d).ok())
}

fn primes_below(n: u64) -> Vec<u64> {
    (2..n).filter(|&p| is_prime(p)).collect()
}

fn odd_prime(below: u64) -> impl Strategy<Value = u64> {
    prop::sample::select(primes_below(below).into_iter().skip(1).collect::<Vec<_>>())
}

/// Accepted fields from a small box.
fn accepted_field() -> impl Strategy<Value = cm_intersection::CmField> {
    let mut fields = Vec::new();
    for d in [5i64, 13, 17, 29, 37, 41, 53, 61] {
        for a2 in -80i64..0 {
            for b2 in -80i64..80 {
                if let Ok(f) = build_cm_field(d, a2, b2) {
                    fields.push(f);
                }
            }
        }
    }
    prop::sample::select(fields)
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 400,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn factorization_recombines(m in nonzero(1_000_000_000_000)) {
        let f = factorize(m).unwrap();
        prop_assert_eq!(f.value(), m.unsigned_abs() as u128);
        prop_assert!(f.primes().all(is_prime));
    }

    #[test]
    fn kronecker_matches_enumeration(a in -10_000i64..10_000, p in odd_prime(500)) {
        prop_assert_eq!(kronecker(a, p as i64).unwrap(), legendre_by_enumeration(a, p));
    }

    #[test]
    fn kronecker_multiplicative_in_top(a in nonzero(5000), b in nonzero(5000), n in 1i64..5000) {
        prop_assert_eq!(
            kronecker(a * b, n).unwrap(),
            kronecker(a, n).unwrap() * kronecker(b, n).unwrap()
        );
    }

    #[test]
    fn hilbert_symmetric_and_bilinear(a in nonzero(10_000), a2 in nonzero(10_000), b in nonzero(10_000), v in prime_place()) {
        let h = |x: i64, y: i64| hilbert_symbol_int(x as i128, y as i128, v).unwrap();
        prop_assert_eq!(h(a, b), h(b, a));
        prop_assert_eq!(h(a * a2, b), h(a, b) * h(a2, b));
    }

    #[test]
    fn hilbert_product_formula(a in nonzero(100_000), b in nonzero(100_000)) {
        let prod: i8 = relevant_places(a, b)
            .into_iter()
            .map(|v| hilbert_symbol_int(a as i128, b as i128, v).unwrap())
            .product();
        prop_assert_eq!(prod, 1);
    }

    #[test]
    fn hilbert_invariant_under_norms(a in nonzero(300), b in nonzero(300), x in -30i64..30, y in -30i64..30, v in prime_place()) {
        // x^2 - a y^2 is a norm from Q(sqrt a), so it does not change (a, .)_v
        let norm = x * x - a * y * y;
        prop_assume!(norm != 0);
        let h = |t: i64| hilbert_symbol_int(a as i128, t as i128, v).unwrap();
        prop_assert_eq!(h(b), h(b * norm));
    }

    #[test]
    fn hilbert_rational_uses_square_class(a in nonzero(500), b in nonzero(500), c in 1i64..50, v in prime_place()) {
        let q = Rational::new(a, c);
        prop_assert_eq!(
            hilbert_symbol(q, Rational::from_integer(b), v).unwrap(),
            hilbert_symbol_int((a * c) as i128, b as i128, v).unwrap()
        );
    }

    #[test]
    fn ideal_count_multiplicative(d in fundamental_negative(), m in 1u64..300, n in 1u64..300) {
        prop_assume!(num_integer::gcd(m, n) == 1);
        prop_assert_eq!(
            count_ideals_of_norm(d, m * n).unwrap(),
            count_ideals_of_norm(d, m).unwrap() * count_ideals_of_norm(d, n).unwrap()
        );
    }

    #[test]
    fn ideal_count_matches_lattices(d in fundamental_negative(), a in 1u64..2000) {
        prop_assert_eq!(count_ideals_of_norm(d, a).unwrap(), count_ideals_brute(d, a).unwrap());
    }

    #[test]
    fn valuations_satisfy_norm_formula(dt_idx in 0usize..6, x in -500i64..500, y in -500i64..500, z in 1i64..60, p in prop::sample::select(primes_below(60))) {
        let dt = [5i64, 13, 17, 21, 29, 33][dt_idx];
        prop_assume!((x, y) != (0, 0));
        let elt = ReflexElement::new(x, y, z).unwrap();
        let total: i32 = factor_prime_in_ftilde(dt, p)
            .unwrap()
            .into_iter()
            .map(|q| q.residue_degree() as i32 * valuation(dt, &elt, q).unwrap())
            .sum();
        let norm = elt.norm(dt);
        let vp = |m: i64| cm_intersection::arith::valuation(m as i128, p) as i32;
        prop_assert_eq!(total, vp(*norm.numer()) - vp(*norm.denom()));
    }

    #[test]
    fn index_identity_holds(field in accepted_field()) {
        for row in index_set(&field).unwrap() {
            let lhs = Rational::from_integer(row.delta * row.delta * field.dt() - row.n * row.n);
            prop_assert_eq!(lhs, row.norm_identity_rhs(&field));
            prop_assert!(row.du < 0 && row.dx < 0);
        }
    }

    #[test]
    fn splitting_matches_root_count(field in accepted_field(), p in odd_prime(400)) {
        // x^4 - 2(2A) x^2 + (2B)^2 D is the minimal polynomial of sqrt(2A + 2 sqrt D~);
        // away from its discriminant, roots mod p count the degree-one primes of K~ over p.
        let (a2, b2, d, dt) = (field.a2(), field.b2(), field.d(), field.dt());
        let bad = 2 * dt as i128 * b2 as i128 * d as i128;
        prop_assume!(bad % p as i128 != 0);
        let reflex = ReflexField::new(&field).unwrap();
        let pi = p as i128;
        let roots = (0..pi)
            .filter(|&x| {
                let x2 = x * x % pi;
                (x2 * x2 - 2 * a2 as i128 * x2 + (b2 as i128).pow(2) * d as i128).rem_euclid(pi) == 0
            })
            .count();
        let mut expected = 0;
        for q in reflex.primes_over(p).unwrap() {
            if q.residue_degree() == 1 && reflex.classify(q).unwrap() == SplitType::Split {
                expected += 2;
            }
        }
        prop_assert_eq!(roots, expected);
    }
}

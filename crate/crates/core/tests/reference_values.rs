//! Worked values for individual operations. Fields come from the scan box
//! `D <= 41`, `|2A|, |2B| <= 40`.

use cm_intersection::cm_field::{build_cm_field, enumerate_deltas, enumerate_ns, index_data, Violation};
use cm_intersection::formulas::{
    by_summand, by_summand_paths, by_total, lv_summand, lv_summand_paths, lv_total, mu, FieldContext,
};
use cm_intersection::reflex::{PrimeKind, ReflexElement, ReflexIdeal, ReflexPrime};
use cm_intersection::{Error, Rational, SplitType};

fn ctx(d: i64, a2: i64, b2: i64) -> FieldContext {
    FieldContext::new(build_cm_field(d, a2, b2).unwrap()).unwrap()
}

fn half(n: i64) -> Rational {
    Rational::new(n, 2)
}

/// A theorem field with several index rows and a positive total at `ell = 2`.
fn sample() -> FieldContext {
    let c = ctx(5, -37, -9);
    assert!(c.in_theorem());
    c
}

/// First prime of the requested kinds in `F~` and `K~` over primes below 200.
fn find_prime(c: &FieldContext, in_f: fn(PrimeKind) -> bool, in_k: SplitType) -> ReflexPrime {
    (3..200u64)
        .filter(|&p| cm_intersection::arith::is_prime(p))
        .flat_map(|p| c.reflex().primes_over(p).unwrap())
        .find(|q| in_f(q.kind) && c.reflex().classify(*q).unwrap() == in_k)
        .expect("such a prime exists below 200")
}

#[test]
fn field_building_examples() {
    let f = build_cm_field(5, -10, 4).unwrap();
    assert_eq!((f.dt(), f.c_k()), (5, -5));
    assert!(enumerate_ns(&f, 1).is_empty());
    let r = build_cm_field(13, -10, 4).unwrap_err();
    assert!(r.violations.contains(&Violation::DtNotPositive));
}

#[test]
fn sample_field_data() {
    let c = sample();
    let f = c.field();
    // A = -37/2, B = -9/2: D~ = (1369 - 405)/4 = 241, c_K = A - D/2 = -21
    assert_eq!(f.dt(), 241);
    assert_eq!(f.c_k(), -21);
    assert_eq!(enumerate_deltas(5), vec![1]);
    let rows = c.index();
    assert_eq!(rows.len(), 3);
    for r in rows {
        assert_eq!((r.n - 21).rem_euclid(10), 0);
        assert_eq!(index_data(f, r.delta, r.n).unwrap(), *r);
    }
    assert_eq!(c.assumptions().different.norm, 5);
}

#[test]
fn ramified_prime_over_d_divides_alpha() {
    for c in [sample(), ctx(13, -17, -1), ctx(13, -30, 8), ctx(29, -17, 1)] {
        let d = c.field().d() as u64;
        let over_d = c.reflex().primes_over(d).unwrap();
        if over_d.len() != 2 {
            continue;
        }
        let alpha = *c.reflex().alpha();
        let conj = ReflexElement::new(alpha.x(), -alpha.y(), alpha.z()).unwrap();
        let p2 = *over_d.iter().find(|q| c.reflex().valuation(&alpha, **q).unwrap() > 0).unwrap();
        let p1 = *over_d.iter().find(|q| c.reflex().valuation(&conj, **q).unwrap() > 0).unwrap();
        assert_ne!(p1, p2);
        assert_eq!(c.reflex().classify(p2).unwrap(), SplitType::Ramified);
        for r in c.index() {
            let elt = ReflexElement::new(r.n, r.delta, 2).unwrap();
            assert!(c.reflex().valuation(&elt, p1).unwrap() > 0);
        }
    }
}

#[test]
fn reflex_counting_examples() {
    let c = sample();
    let reflex = c.reflex();
    assert_eq!(reflex.r_reflex(&ReflexIdeal::unit()).unwrap(), 1);
    let inert = find_prime(&c, |k| matches!(k, PrimeKind::Split { .. }), SplitType::Inert);
    let split = find_prime(&c, |k| matches!(k, PrimeKind::Split { .. }), SplitType::Split);
    assert_eq!(reflex.r_reflex(&ReflexIdeal::prime(inert)).unwrap(), 0);
    assert_eq!(reflex.r_reflex(&ReflexIdeal::from_exponents([(split, 2)])).unwrap(), 3);
    assert_eq!(reflex.eps_reflex(split.p, &ReflexIdeal::prime(split)).unwrap(), 2);
    assert_eq!(reflex.eps_reflex(inert.p, &ReflexIdeal::from_exponents([(inert, 2)])).unwrap(), 1);
    assert_eq!(reflex.eps_reflex(7919, &ReflexIdeal::prime(split)).unwrap(), 1);
}

#[test]
fn inverse_different_membership() {
    let c = sample();
    let r = &c.index()[0];
    assert!(c.reflex().is_in_inverse_different(r.delta, r.n).unwrap());
    // wrong parity: (n + sqrt D~)/2 is not integral at 2
    assert!(!c.reflex().is_in_inverse_different(r.delta, r.n + 1).unwrap());
    // right parity, wrong class mod 2D
    assert!(!c.reflex().is_in_inverse_different(r.delta, r.n + 2).unwrap());
}

#[test]
fn index_ideals_carry_norms() {
    let c = sample();
    for r in c.index() {
        let ideals = c.reflex().reflex_ideal_of_index(c.field(), r.delta, r.n).unwrap();
        assert!(ideals.nd_ideal.is_integral());
        assert_eq!(ideals.nd_ideal.norm(), Rational::from_integer(r.norm as i64));
        assert_eq!(ideals.n_ideal.norm(), Rational::new(r.norm as i64, 5));
    }
    assert_eq!(
        c.reflex().reflex_ideal_of_index(c.field(), 1, 0),
        Err(Error::OutsideIndexSet { delta: 1, n: 0 })
    );
}

#[test]
fn summand_examples() {
    let c = sample();
    for r in c.index() {
        // a prime dividing no N contributes nothing on either side
        assert_eq!(mu(r, 7919).unwrap(), half(1));
        assert_eq!(lv_summand(r, 7919).unwrap(), Rational::from_integer(0));
        assert_eq!(by_summand(&c, r.delta, r.n, 7919).unwrap(), Rational::from_integer(0));
        for ell in [2u64, 3, 7, 11, 13] {
            let by = by_summand_paths(&c, r.delta, r.n, ell).unwrap();
            let lv = lv_summand_paths(r, ell).unwrap();
            assert_eq!(by.definitional, lv.definitional);
            if let Some(v) = by.closed_form {
                assert_eq!(v, by.definitional);
            }
            if let Some(v) = lv.closed_form {
                assert_eq!(v, lv.definitional);
            }
        }
    }
    assert_eq!(by_total(&c, 2).unwrap(), Rational::from_integer(4));
    assert_eq!(lv_total(&c, 2).unwrap(), Rational::from_integer(4));
    assert_eq!(by_total(&c, 3).unwrap(), Rational::from_integer(3));
}

#[test]
fn totals_reject_fields_outside_the_theorem() {
    // d_u = -12 at (delta, n) = (1, -11) is not fundamental
    let c = ctx(5, -38, -8);
    assert!(!c.in_theorem());
    assert_eq!(c.assumptions().du_witness, Some((1, -11, -12)));
    assert!(matches!(by_total(&c, 2), Err(Error::AssumptionsFailed { .. })));
    assert!(matches!(lv_total(&c, 2), Err(Error::AssumptionsFailed { .. })));
    let row = c.index().iter().find(|r| r.du == -12).unwrap();
    assert_eq!(lv_summand(row, 2), Err(Error::NotFundamental(-12)));
}

//! The property suite behind `cm-intersection verify`: standalone arithmetic
//! oracles plus every structural and formula-level claim over a scanned corpus.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{hilbert_symbol_int, kronecker, primes_in, relevant_places, Place, Rational};
use crate::formulas::{
    by_summand_paths, compare, lv_summand_paths, mu, mu_closed_form, verify_lemmas, FieldContext,
    LEMMA_CHECKS,
};
use crate::oracle::{hilbert_symbol_by_search, legendre_by_enumeration};
use crate::quad_order::{count_ideals_brute, count_ideals_of_norm, QuadDiscriminant};
use crate::error::Result;

/// Pass count and first counterexample of one property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyTally {
    pub name: String,
    pub checked: u64,
    pub failures: u64,
    pub witness: Option<String>,
}

impl PropertyTally {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            checked: 0,
            failures: 0,
            witness: None,
        }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    fn absorb(&mut self, checked: u64, failures: u64, witness: Option<String>) {
        self.checked += checked;
        self.failures += failures;
        if self.witness.is_none() {
            self.witness = witness;
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub properties: Vec<PropertyTally>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyTally::passed)
    }

    pub fn get(&self, name: &str) -> Option<&PropertyTally> {
        self.properties.iter().find(|p| p.name == name)
    }
}

fn nonzero_range(bound: i64) -> impl Iterator<Item = i64> + Clone {
    (-bound..=bound).filter(|&x| x != 0)
}

/// `prod_v (a, b)_v = 1` for all nonzero `|a|, |b| <= bound`.
pub fn hilbert_product_formula(bound: i64) -> Result<PropertyTally> {
    let mut t = PropertyTally::new("hilbert_product_formula");
    for a in nonzero_range(bound) {
        for b in nonzero_range(bound) {
            let mut prod = 1;
            for place in relevant_places(a, b) {
                prod *= hilbert_symbol_int(a as i128, b as i128, place)?;
            }
            t.record(prod == 1, || format!("a={a} b={b}"));
        }
    }
    Ok(t)
}

/// Bilinearity in the first argument and symmetry on a seeded random sample.
pub fn hilbert_bilinearity_symmetry(samples: usize, seed: u64) -> Result<(PropertyTally, PropertyTally)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes = primes_in(2, 50);
    let mut bilinear = PropertyTally::new("hilbert_bilinearity");
    let mut symmetric = PropertyTally::new("hilbert_symmetry");
    let draw = |rng: &mut ChaCha8Rng| loop {
        let x: i64 = rng.gen_range(-500..=500);
        if x != 0 {
            return x;
        }
    };
    for _ in 0..samples {
        let (a, a2, b) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let place = if rng.gen_bool(0.1) {
            Place::Infinity
        } else {
            Place::Prime(primes[rng.gen_range(0..primes.len())])
        };
        let h = |x: i64, y: i64| hilbert_symbol_int(x as i128, y as i128, place);
        let ok = h(a * a2, b)? == h(a, b)? * h(a2, b)?;
        bilinear.record(ok, || format!("a={a} a'={a2} b={b} at {place}"));
        symmetric.record(h(a, b)? == h(b, a)?, || format!("a={a} b={b} at {place}"));
    }
    Ok((bilinear, symmetric))
}

/// Closed form against the solvability search at every place dividing `2ab`.
pub fn hilbert_vs_search(bound: i64) -> Result<PropertyTally> {
    let mut t = PropertyTally::new("hilbert_vs_search");
    for a in nonzero_range(bound) {
        for b in nonzero_range(bound) {
            for place in relevant_places(a, b) {
                let closed = hilbert_symbol_int(a as i128, b as i128, place)?;
                let search = hilbert_symbol_by_search(a, b, place)?;
                t.record(closed == search, || {
                    format!("({a}, {b}) at {place}: closed {closed}, search {search}")
                });
            }
        }
    }
    Ok(t)
}

/// Kronecker symbol against enumerated squares for odd primes up to `p_max`.
pub fn kronecker_vs_enumeration(a_bound: i64, p_max: u64) -> Result<PropertyTally> {
    let mut t = PropertyTally::new("kronecker_vs_enumeration");
    for p in primes_in(3, p_max) {
        for a in -a_bound..=a_bound {
            let k = kronecker(a, p as i64)?;
            t.record(k == legendre_by_enumeration(a, p), || format!("({a}|{p})"));
        }
    }
    Ok(t)
}

/// `R_d(A)` from factorization against lattice enumeration, for fundamental
/// `-d_bound < d < 0` and `1 <= A <= a_max`.
pub fn ideal_count_oracle(d_bound: i64, a_max: u64) -> Result<PropertyTally> {
    let mut t = PropertyTally::new("ideal_count_oracle");
    for d in (-d_bound + 1)..0 {
        let Ok(disc) = QuadDiscriminant::fundamental(d) else {
            continue;
        };
        for a in 1..=a_max {
            let fast = count_ideals_of_norm(disc, a)?;
            let slow = count_ideals_brute(disc, a)?;
            t.record(fast == slow, || format!("d={d} A={a}: {fast} vs {slow}"));
        }
    }
    Ok(t)
}

/// Property names produced by [`corpus_properties`], beyond the lemma checks.
pub const FORMULA_PROPERTIES: [&str; 7] = [
    "total_equality",
    "summand_equality",
    "by_dual_paths",
    "lv_dual_paths",
    "mu_corollary",
    "summand_shape",
    "evaluation_errors",
];

/// Every lemma check and formula-level property over theorem fields of the corpus.
pub fn corpus_properties(contexts: &[FieldContext], ells: &[u64]) -> Result<Vec<PropertyTally>> {
    let mut lemma: Vec<PropertyTally> = LEMMA_CHECKS.iter().map(|n| PropertyTally::new(*n)).collect();
    let mut formula: Vec<PropertyTally> = FORMULA_PROPERTIES.iter().map(|n| PropertyTally::new(*n)).collect();
    for ctx in contexts.iter().filter(|c| c.in_theorem()) {
        let f = ctx.field();
        let tag = format!("D={} 2A={} 2B={}", f.d(), f.a2(), f.b2());
        match verify_lemmas(ctx) {
            Ok(report) => {
                for (slot, check) in lemma.iter_mut().zip(&report.checks) {
                    slot.absorb(check.checked, check.failures, check.witness.clone());
                }
            }
            Err(e) => formula[6].record(false, || format!("{tag}: lemmas: {e}")),
        }
        for &ell in ells {
            for idx in ctx.index() {
                let rtag = || format!("{tag} ell={ell} delta={} n={}", idx.delta, idx.n);
                let by = by_summand_paths(ctx, idx.delta, idx.n, ell)?;
                if let Some(c) = by.closed_form {
                    formula[2].record(c == by.definitional, rtag);
                }
                let lv = lv_summand_paths(idx, ell)?;
                if let Some(c) = lv.closed_form {
                    formula[3].record(c == lv.definitional, rtag);
                }
                if idx.norm % ell == 0 {
                    formula[4].record(mu(idx, ell)? == mu_closed_form(idx, ell), rtag);
                }
            }
            let report = match compare(ctx, ell) {
                Ok(r) => r,
                Err(e) => {
                    formula[6].record(false, || format!("{tag} ell={ell}: {e}"));
                    continue;
                }
            };
            formula[6].record(true, String::new);
            formula[0].record(report.totals_equal, || format!("{tag} ell={ell}"));
            for row in &report.rows {
                let rtag = || format!("{tag} ell={ell} delta={} n={}", row.delta, row.n);
                formula[1].record(row.equal, rtag);
                let shape = [row.by, row.lv].iter().all(|v| {
                    v.is_some_and(|q| {
                        q >= Rational::from_integer(0)
                            && 2 % q.denom() == 0
                            && (q == Rational::from_integer(0) || q.is_integer())
                    })
                });
                formula[5].record(shape, rtag);
            }
        }
    }
    lemma.extend(formula);
    Ok(lemma)
}

/// Bounds for the standalone oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBounds {
    pub hilbert_product: i64,
    pub hilbert_search: i64,
    pub hilbert_samples: usize,
    pub seed: u64,
    pub ideal_d: i64,
    pub ideal_a: u64,
}

impl Default for OracleBounds {
    fn default() -> Self {
        Self {
            hilbert_product: 50,
            hilbert_search: 20,
            hilbert_samples: 1000,
            seed: 0x5eed,
            ideal_d: 500,
            ideal_a: 300,
        }
    }
}

pub fn oracle_properties(bounds: &OracleBounds) -> Result<Vec<PropertyTally>> {
    let (bilinear, symmetric) = hilbert_bilinearity_symmetry(bounds.hilbert_samples, bounds.seed)?;
    Ok(vec![
        hilbert_product_formula(bounds.hilbert_product)?,
        bilinear,
        symmetric,
        hilbert_vs_search(bounds.hilbert_search)?,
        kronecker_vs_enumeration(60, 200)?,
        ideal_count_oracle(bounds.ideal_d, bounds.ideal_a)?,
    ])
}

/// Oracles followed by the corpus properties.
pub fn run_verification(contexts: &[FieldContext], ells: &[u64], bounds: &OracleBounds) -> Result<VerifyReport> {
    let mut properties = oracle_properties(bounds)?;
    properties.extend(corpus_properties(contexts, ells)?);
    Ok(VerifyReport { properties })
}

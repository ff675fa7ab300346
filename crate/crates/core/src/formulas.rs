//! Both expressions for `(CM(K).G1)_ell` and their comparison.
//!
//! The reflex side (`by_*`) goes through [`ReflexField`] and the quadratic
//! order side (`lv_*`) through [`crate::quad_order`]. The two sides share
//! only the index set and integer arithmetic.

use serde::Serialize;

use crate::arith::{factorize, factorize_u64, hilbert_symbol_int, is_prime, relevant_places, valuation, Rational};
use crate::cm_field::{
    basis_display_forms, check_assumptions_with, enumerate_deltas, enumerate_ns, index_set,
    AssumptionReport, CmField, IndexData,
};
use crate::error::{Error, Result};
use crate::quad_order::{
    count_ideals_of_rational_norm, eps_d, rho_tilde, QuadDiscriminant, SplitType,
};
use crate::reflex::{PrimeKind, ReflexField, SummandPaths};

/// Everything that depends on the field alone, computed once.
#[derive(Debug, Clone)]
pub struct FieldContext {
    field: CmField,
    reflex: ReflexField,
    assumptions: AssumptionReport,
    index: Vec<IndexData>,
}

impl FieldContext {
    pub fn new(field: CmField) -> Result<Self> {
        let reflex = ReflexField::new(&field)?;
        let assumptions = check_assumptions_with(&field, &reflex)?;
        let index = index_set(&field)?;
        Ok(Self {
            field,
            reflex,
            assumptions,
            index,
        })
    }

    pub fn field(&self) -> &CmField {
        &self.field
    }
    pub fn reflex(&self) -> &ReflexField {
        &self.reflex
    }
    pub fn assumptions(&self) -> &AssumptionReport {
        &self.assumptions
    }
    pub fn index(&self) -> &[IndexData] {
        &self.index
    }

    /// Whether the field satisfies every assumption of the comparison theorem.
    pub fn in_theorem(&self) -> bool {
        self.assumptions.passed()
    }

    fn require_theorem(&self) -> Result<()> {
        if self.in_theorem() {
            Ok(())
        } else {
            Err(Error::AssumptionsFailed {
                d: self.field.d(),
                a2: self.field.a2(),
                b2: self.field.b2(),
            })
        }
    }

    fn row(&self, delta: i64, n: i64) -> Result<&IndexData> {
        self.index
            .iter()
            .find(|r| r.delta == delta && r.n == n)
            .ok_or(Error::OutsideIndexSet { delta, n })
    }
}

fn require_prime(ell: u64) -> Result<()> {
    if is_prime(ell) {
        Ok(())
    } else {
        Err(Error::NotPrime(ell))
    }
}

fn divides(p: u64, m: i64) -> bool {
    m % p as i64 == 0
}

/// `mu(n)`: `v_ell(N)` if `ell | gcd(d_u, d_x)`, else `(v_ell(N) + 1)/2`.
pub fn mu(row: &IndexData, ell: u64) -> Result<Rational> {
    require_prime(ell)?;
    let v = valuation(row.norm as i128, ell) as i64;
    Ok(if divides(ell, row.du) && divides(ell, row.dx) {
        Rational::from_integer(v)
    } else {
        Rational::new(v + 1, 2)
    })
}

/// Splitting of `p` in the order of discriminant `d`, read off `(d|p)`.
fn order_symbol(d: i64, p: u64) -> SplitType {
    match crate::arith::kronecker(d, p as i64).expect("p nonzero") {
        1 => SplitType::Split,
        -1 => SplitType::Inert,
        _ => SplitType::Ramified,
    }
}

/// `mu(n) rho~_{d_u}(N) R_{d_u}(N/ell)` together with its local closed form.
pub fn lv_summand_paths(row: &IndexData, ell: u64) -> Result<SummandPaths> {
    require_prime(ell)?;
    let du = QuadDiscriminant::fundamental(row.du)?;
    let m = mu(row, ell)?;
    let definitional = if row.norm % ell == 0 {
        let rho = rho_tilde(du, row.norm, ell)?;
        let r = count_ideals_of_rational_norm(du, Rational::new(row.norm as i64, ell as i64))?;
        m * Rational::from_integer((rho * r) as i64)
    } else {
        Rational::from_integer(0)
    };

    let (su, sx) = (order_symbol(row.du, ell), order_symbol(row.dx, ell));
    let closed_form = if su == SplitType::Ramified && sx == SplitType::Ramified {
        None
    } else if (su == SplitType::Inert || sx == SplitType::Inert)
        && valuation(row.norm as i128, ell) % 2 == 1
    {
        let mut local = 1;
        for p in factorize_u64(row.norm).primes().filter(|&p| p != ell) {
            local *= eps_d(du, p, row.norm)?;
        }
        Some(m * Rational::from_integer(local as i64))
    } else {
        Some(Rational::from_integer(0))
    };
    Ok(SummandPaths {
        definitional,
        closed_form,
    })
}

pub fn lv_summand(row: &IndexData, ell: u64) -> Result<Rational> {
    lv_summand_paths(row, ell)?.checked("LV summand")
}

pub fn by_summand_paths(ctx: &FieldContext, delta: i64, n: i64, ell: u64) -> Result<SummandPaths> {
    ctx.reflex.b_summand_paths(&ctx.field, delta, n, ell)
}

pub fn by_summand(ctx: &FieldContext, delta: i64, n: i64, ell: u64) -> Result<Rational> {
    by_summand_paths(ctx, delta, n, ell)?.checked("B_N(ell)")
}

/// Sum of reflex-side summands over the index set.
pub fn by_total(ctx: &FieldContext, ell: u64) -> Result<Rational> {
    ctx.require_theorem()?;
    ctx.index
        .iter()
        .try_fold(Rational::from_integer(0), |acc, r| Ok(acc + by_summand(ctx, r.delta, r.n, ell)?))
}

/// Sum of quadratic-order-side summands over the index set.
pub fn lv_total(ctx: &FieldContext, ell: u64) -> Result<Rational> {
    ctx.require_theorem()?;
    ctx.index
        .iter()
        .try_fold(Rational::from_integer(0), |acc, r| Ok(acc + lv_summand(r, ell)?))
}

/// Local factors of both sides at one prime `p | N`, `p != ell`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalFactor {
    pub p: u64,
    pub eps_d: Option<u64>,
    pub eps_reflex: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub delta: i64,
    pub n: i64,
    pub norm: u64,
    pub du: i64,
    pub dx: i64,
    #[serde(with = "crate::json::opt_rational")]
    pub by: Option<Rational>,
    #[serde(with = "crate::json::opt_rational")]
    pub lv: Option<Rational>,
    pub equal: bool,
    pub trace: Vec<LocalFactor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub d: i64,
    pub a2: i64,
    pub b2: i64,
    pub dt: i64,
    pub ell: u64,
    pub in_theorem: bool,
    pub rows: Vec<ComparisonRow>,
    #[serde(with = "crate::json::opt_rational")]
    pub by_total: Option<Rational>,
    #[serde(with = "crate::json::opt_rational")]
    pub lv_total: Option<Rational>,
    pub totals_equal: bool,
}

/// Both sides row by row. Outside the theorem's hypotheses a side that cannot
/// be evaluated (non-fundamental `d_u`, wild ramification) is `None`.
pub fn compare(ctx: &FieldContext, ell: u64) -> Result<ComparisonReport> {
    require_prime(ell)?;
    let strict = ctx.in_theorem();
    // outside the theorem only the definitional routes are meaningful
    let pick = |paths: Result<SummandPaths>, what| match paths {
        Ok(p) if strict => p.checked(what).map(Some),
        Ok(p) => Ok(Some(p.definitional)),
        Err(Error::NotFundamental(_) | Error::WildRamification) if !strict => Ok(None),
        Err(e) => Err(e),
    };
    let mut rows = Vec::with_capacity(ctx.index.len());
    for r in &ctx.index {
        let by = pick(by_summand_paths(ctx, r.delta, r.n, ell), "B_N(ell)")?;
        let lv = pick(lv_summand_paths(r, ell), "LV summand")?;
        let trace = local_trace(ctx, r, ell)?;
        rows.push(ComparisonRow {
            delta: r.delta,
            n: r.n,
            norm: r.norm,
            du: r.du,
            dx: r.dx,
            equal: by.is_some() && by == lv,
            by,
            lv,
            trace,
        });
    }
    let sum = |side: fn(&ComparisonRow) -> Option<Rational>| {
        rows.iter()
            .try_fold(Rational::from_integer(0), |acc, row| side(row).map(|v| acc + v))
    };
    let by_total = sum(|r| r.by);
    let lv_total = sum(|r| r.lv);
    Ok(ComparisonReport {
        d: ctx.field.d(),
        a2: ctx.field.a2(),
        b2: ctx.field.b2(),
        dt: ctx.field.dt(),
        ell,
        in_theorem: strict,
        totals_equal: by_total.is_some() && by_total == lv_total,
        rows,
        by_total,
        lv_total,
    })
}

fn local_trace(ctx: &FieldContext, row: &IndexData, ell: u64) -> Result<Vec<LocalFactor>> {
    let du = QuadDiscriminant::fundamental(row.du).ok();
    let nd = ctx
        .reflex
        .reflex_ideal_of_index(&ctx.field, row.delta, row.n)
        .ok()
        .map(|i| i.nd_ideal);
    factorize_u64(row.norm)
        .primes()
        .filter(|&p| p != ell)
        .map(|p| {
            Ok(LocalFactor {
                p,
                eps_d: du.map(|d| eps_d(d, p, row.norm)).transpose()?,
                eps_reflex: nd.as_ref().map(|i| ctx.reflex.eps_reflex(p, i)).transpose()?,
            })
        })
        .collect()
}

/// Outcome of one structural claim across a field's index set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub checked: u64,
    pub failures: u64,
    pub witness: Option<String>,
}

impl LemmaCheck {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checked: 0,
            failures: 0,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(LemmaCheck::passed)
    }

    pub fn get(&self, name: &str) -> Option<&LemmaCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Names of the checks in [`verify_lemmas`], in report order.
pub const LEMMA_CHECKS: [&str; 13] = [
    "c_k_odd",
    "c_k_congruence",
    "index_double_characterization",
    "delta_n_coprime",
    "du_dx_coprime_on_n",
    "norm_identity",
    "display_forms",
    "du_negative",
    "hilbert_du_dx",
    "valuation_lemma",
    "splitting_reciprocity",
    "local_factor_equality",
    "norm_of_nd",
];

/// Evaluates every structural claim behind the summand equality on one field.
pub fn verify_lemmas(ctx: &FieldContext) -> Result<LemmaReport> {
    let mut checks: Vec<LemmaCheck> = LEMMA_CHECKS.iter().map(|n| LemmaCheck::new(n)).collect();
    let field = &ctx.field;
    let reflex = &ctx.reflex;
    let d = field.d();
    let ck = field.c_k();
    let tag = |r: &IndexData| format!("D={d} 2A={} 2B={} delta={} n={}", field.a2(), field.b2(), r.delta, r.n);

    checks[0].record(ck.rem_euclid(2) == 1, || format!("c_K = {ck}"));
    checks[1].record((2 * ck - field.a2()).rem_euclid(d) == 0, || format!("c_K = {ck}"));

    for delta in enumerate_deltas(d) {
        let bound = delta * delta * field.dt();
        let enumerated = enumerate_ns(field, delta);
        let r = crate::arith::isqrt((bound - 1) as u64) as i64;
        let mut filtered = Vec::new();
        for n in -r..=r {
            if reflex.is_in_inverse_different(delta, n)? {
                filtered.push(n);
            }
        }
        checks[2].record(filtered == enumerated, || {
            format!("delta={delta}: enumerated {enumerated:?}, filtered {filtered:?}")
        });
    }

    for row in &ctx.index {
        let big_n = row.norm;
        let g = num_integer::gcd(row.delta as u64, big_n);
        checks[3].record(g == 1, || tag(row));
        let shared = factorize_u64(big_n)
            .primes()
            .any(|p| divides(p, row.du) && divides(p, row.dx));
        checks[4].record(!shared, || tag(row));
        let lhs = Rational::from_integer(row.delta * row.delta * field.dt() - row.n * row.n);
        checks[5].record(lhs == row.norm_identity_rhs(field), || tag(row));
        let (du2, dx2, cross2) = basis_display_forms(field, row.delta, row.n);
        checks[6].record(
            du2 == Rational::from_integer(row.du)
                && dx2 == Rational::from_integer(row.dx)
                && cross2 == row.cross_term()
                && row.cross_term()
                    == field.b() * row.delta - Rational::new(row.s, d) * (Rational::from_integer(row.n) + field.a() * row.delta),
            || tag(row),
        );
        checks[7].record(row.du < 0, || tag(row));
        let minus_n = -(big_n as i128);
        let mut places = relevant_places(row.du, big_n as i64);
        places.extend(relevant_places(row.dx, big_n as i64));
        places.sort();
        places.dedup();
        let mut hilbert_ok = true;
        for place in places {
            hilbert_ok &= hilbert_symbol_int(row.du as i128, minus_n, place)?
                == hilbert_symbol_int(row.dx as i128, minus_n, place)?;
        }
        checks[8].record(hilbert_ok, || tag(row));

        let ideals = reflex.reflex_ideal_of_index(field, row.delta, row.n)?;
        checks[12].record(ideals.nd_ideal.norm() == Rational::from_integer(big_n as i64), || tag(row));
        let du = QuadDiscriminant::fundamental(row.du).ok();
        for (p, v) in factorize(big_n as i64)?.factors().iter().copied() {
            let over = reflex.primes_over(p)?;
            let supported: Vec<_> = over.iter().filter(|q| ideals.nd_ideal.exponent(q) > 0).collect();
            let lemma_ok = match supported.as_slice() {
                [q] => {
                    q.kind != PrimeKind::Inert
                        && reflex.classify(**q)? != SplitType::Ramified
                        && ideals.nd_ideal.exponent(q) == v as i32
                }
                _ => false,
            };
            checks[9].record(lemma_ok, || format!("{} p={p}", tag(row)));
            if let [q] = supported.as_slice() {
                let kind = reflex.classify(**q)?;
                let (su, sx) = (order_symbol(row.du, p), order_symbol(row.dx, p));
                let any = |t| su == t || sx == t;
                let ok = (kind == SplitType::Split) == any(SplitType::Split)
                    && (kind == SplitType::Inert) == any(SplitType::Inert);
                checks[10].record(ok, || format!("{} p={p}: K~ {kind}, d_u {su}, d_x {sx}", tag(row)));
            } else {
                checks[10].record(false, || format!("{} p={p}: no unique prime", tag(row)));
            }
            if let Some(du) = du {
                let left = eps_d(du, p, big_n)?;
                let right = reflex.eps_reflex(p, &ideals.nd_ideal)?;
                checks[11].record(left == right, || format!("{} p={p}: {left} vs {right}", tag(row)));
            }
        }
    }
    Ok(LemmaReport { checks })
}

/// `mu` via the closed form `(v_ell(N) + 1)/2` valid for theorem fields.
pub fn mu_closed_form(row: &IndexData, ell: u64) -> Rational {
    Rational::new(valuation(row.norm as i128, ell) as i64 + 1, 2)
}

/// Looks up a row and evaluates both summands.
pub fn summands(ctx: &FieldContext, delta: i64, n: i64, ell: u64) -> Result<(Rational, Rational)> {
    let row = ctx.row(delta, n)?;
    Ok((by_summand(ctx, delta, n, ell)?, lv_summand(row, ell)?))
}

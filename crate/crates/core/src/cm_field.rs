//! CM field data `K = F(sqrt(A + B sqrt D))`, its relative integral basis, and
//! the `(delta, n)` index set shared by both intersection formulas.
//!
//! `A` and `B` may be half-integers, so they are carried as `a2 = 2A` and
//! `b2 = 2B`. Everything derived from them is exact: integers where the
//! integral-basis analysis guarantees integrality, `Rational` otherwise.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{is_perfect_square, is_prime, is_squarefree, isqrt, Rational};
use crate::error::{Error, Result};
use crate::quad_order::QuadDiscriminant;
use crate::reflex::{DifferentReport, ReflexField};

/// Which relative integral basis `{1, eta}` the field has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisCase {
    /// `eta = (1 + sqrt(A + B sqrt D))/2`
    Case1,
    /// `eta = (2B + sqrt D + 2 sqrt(A + B sqrt D))/4`, only for `D = 5 mod 8`
    /// and half-integral `A`, `B`.
    Case2,
}

/// A validated quartic CM field. Build with [`build_cm_field`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CmField {
    d: i64,
    a2: i64,
    b2: i64,
    dt: i64,
    case: BasisCase,
    alpha0: i64,
    alpha1: i64,
    beta0: i64,
    beta1: i64,
    c_k: i64,
}

impl CmField {
    pub fn d(&self) -> i64 {
        self.d
    }
    /// `2A`
    pub fn a2(&self) -> i64 {
        self.a2
    }
    /// `2B`
    pub fn b2(&self) -> i64 {
        self.b2
    }
    pub fn a(&self) -> Rational {
        Rational::new(self.a2, 2)
    }
    pub fn b(&self) -> Rational {
        Rational::new(self.b2, 2)
    }
    /// `D~ = A^2 - B^2 D`
    pub fn dt(&self) -> i64 {
        self.dt
    }
    pub fn case(&self) -> BasisCase {
        self.case
    }
    pub fn alpha0(&self) -> i64 {
        self.alpha0
    }
    pub fn alpha1(&self) -> i64 {
        self.alpha1
    }
    pub fn beta0(&self) -> i64 {
        self.beta0
    }
    pub fn beta1(&self) -> i64 {
        self.beta1
    }
    pub fn c_k(&self) -> i64 {
        self.c_k
    }
}

impl fmt::Display for CmField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "K = Q(sqrt{d})(sqrt({a} + {b} sqrt{d})), D~ = {dt}",
            d = self.d,
            a = self.a(),
            b = self.b(),
            dt = self.dt
        )
    }
}

/// One reason a parameter triple `(D, 2A, 2B)` is not admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    DNotPrime,
    DNotOneModFour,
    /// `2A` and `2B` differ in parity, or `A + B sqrt D` is not in `O_F`.
    ParityMismatch,
    NotTotallyImaginary,
    DtNotPositive,
    DtSquare,
    DtNotSquarefree,
    DtNotOneModFour,
    /// Half-integral `A`, `B` need `D = 5 mod 8` for the second basis form.
    HalfIntegersNeedFiveModEight,
    /// The generator `eta` of the selected form is not an algebraic integer.
    BasisNotIntegral,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Violation::DNotPrime => "D is not prime",
            Violation::DNotOneModFour => "D is not 1 mod 4",
            Violation::ParityMismatch => "A + B sqrt D is not integral (2A, 2B parity mismatch)",
            Violation::NotTotallyImaginary => "A + B sqrt D is not totally negative",
            Violation::DtNotPositive => "D~ = A^2 - B^2 D is not positive",
            Violation::DtSquare => "D~ is a perfect square (K not primitive)",
            Violation::DtNotSquarefree => "D~ is not squarefree",
            Violation::DtNotOneModFour => "D~ is not 1 mod 4",
            Violation::HalfIntegersNeedFiveModEight => "half-integral A, B require D = 5 mod 8",
            Violation::BasisNotIntegral => "relative integral basis generator is not integral",
        })
    }
}

/// Every violated assumption for a rejected triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectionReport {
    pub d: i64,
    pub a2: i64,
    pub b2: i64,
    pub violations: Vec<Violation>,
}

impl fmt::Display for RejectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(D, 2A, 2B) = ({}, {}, {}):", self.d, self.a2, self.b2)?;
        for v in &self.violations {
            write!(f, " [{v}]")?;
        }
        Ok(())
    }
}

impl From<RejectionReport> for Error {
    fn from(r: RejectionReport) -> Self {
        Error::FieldRejected(Box::new(r))
    }
}

fn exact_div(num: i64, den: i64) -> Option<i64> {
    (num % den == 0).then(|| num / den)
}

/// Validates `(D, 2A, 2B)` and derives the integral basis data and `c_K`.
pub fn build_cm_field(d: i64, a2: i64, b2: i64) -> std::result::Result<CmField, RejectionReport> {
    let mut violations = Vec::new();
    if d <= 0 || !is_prime(d as u64) {
        violations.push(Violation::DNotPrime);
    }
    if d.rem_euclid(4) != 1 {
        violations.push(Violation::DNotOneModFour);
    }
    let dt_times_four = (a2 as i128).pow(2) - (b2 as i128).pow(2) * d as i128;
    let dt = if (a2 - b2) % 2 != 0 || dt_times_four % 4 != 0 {
        violations.push(Violation::ParityMismatch);
        None
    } else {
        Some((dt_times_four / 4) as i64)
    };
    if !(a2 < 0 && dt_times_four > 0) {
        violations.push(Violation::NotTotallyImaginary);
    }
    if let Some(dt) = dt {
        if dt <= 0 {
            violations.push(Violation::DtNotPositive);
        } else {
            if is_perfect_square(dt) {
                violations.push(Violation::DtSquare);
            }
            if !is_squarefree(dt) {
                violations.push(Violation::DtNotSquarefree);
            }
            if dt % 4 != 1 {
                violations.push(Violation::DtNotOneModFour);
            }
        }
    }
    let half_integral = a2 % 2 != 0 && b2 % 2 != 0;
    if half_integral && d.rem_euclid(8) == 1 {
        violations.push(Violation::HalfIntegersNeedFiveModEight);
    }
    let reject = |violations| RejectionReport {
        d,
        a2,
        b2,
        violations,
    };
    if !violations.is_empty() {
        return Err(reject(violations));
    }
    let dt = dt.expect("checked above");

    let basis = if half_integral {
        // eta = (2B + sqrt D + 2 sqrt(A + B sqrt D))/4
        exact_div(b2 * b2 + d - 2 * a2, 16).map(|beta0| (BasisCase::Case2, (b2 - d) / 2, 1, beta0, 0))
    } else {
        // eta = (1 + sqrt(A + B sqrt D))/2
        let (a, b) = (a2 / 2, b2 / 2);
        exact_div(1 - a + b * d, 4)
            .zip(exact_div(-b, 2))
            .map(|(beta0, beta1)| (BasisCase::Case1, 1, 0, beta0, beta1))
    };
    let Some((case, alpha0, alpha1, beta0, beta1)) = basis else {
        return Err(reject(vec![Violation::BasisNotIntegral]));
    };
    let c_k = alpha0 * alpha0 + alpha0 * alpha1 * d + alpha1 * alpha1 * (d * d - d) / 4
        - 4 * beta0
        - 2 * beta1 * d;
    Ok(CmField {
        d,
        a2,
        b2,
        dt,
        case,
        alpha0,
        alpha1,
        beta0,
        beta1,
        c_k,
    })
}

/// All `delta > 0` with `D - 4 delta` a perfect square, ascending.
pub fn enumerate_deltas(d: i64) -> Vec<i64> {
    let mut out: Vec<i64> = (1..)
        .step_by(2)
        .take_while(|x| x * x < d)
        .filter_map(|x| exact_div(d - x * x, 4))
        .filter(|&delta| delta > 0)
        .collect();
    out.sort_unstable();
    out
}

/// All `n` with `n = -delta c_K mod 2D`, `4D | delta^2 D~ - n^2` and
/// `|n| < delta sqrt(D~)`, ascending.
pub fn enumerate_ns(field: &CmField, delta: i64) -> Vec<i64> {
    let d = field.d;
    let bound_sq = delta * delta * field.dt;
    let bound = isqrt((bound_sq - 1) as u64) as i64;
    let modulus = 2 * d;
    let residue = (-delta * field.c_k).rem_euclid(modulus);
    let start = residue - modulus * ((residue + bound) / modulus);
    (0..)
        .map(|k| start + k * modulus)
        .skip_while(|&n| n < -bound)
        .take_while(|&n| n <= bound)
        .filter(|&n| (bound_sq - n * n) % (4 * d) == 0)
        .collect()
}

/// Whether `(delta, n)` indexes a summand of either formula.
pub fn in_index_set(field: &CmField, delta: i64, n: i64) -> bool {
    let d = field.d;
    delta > 0
        && is_perfect_square(d - 4 * delta)
        && (n + delta * field.c_k).rem_euclid(2 * d) == 0
        && {
            let diff = delta * delta * field.dt - n * n;
            diff > 0 && diff % (4 * d) == 0
        }
}

/// Derived quantities for one `(delta, n)` in the index set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexData {
    pub delta: i64,
    /// Nonnegative square root of `D - 4 delta`.
    pub s: i64,
    pub n: i64,
    /// `N = (delta^2 D~ - n^2)/(4D)`
    pub norm: u64,
    pub du: i64,
    pub dx: i64,
    #[serde(with = "crate::json::rational")]
    pub tu: Rational,
    #[serde(with = "crate::json::rational")]
    pub tx: Rational,
    #[serde(with = "crate::json::rational")]
    pub txu: Rational,
}

impl IndexData {
    /// `t_x t_u - 2 t_{xu^vee}`
    pub fn cross_term(&self) -> Rational {
        self.tx * self.tu - self.txu * 2
    }

    /// `D (d_u d_x - (t_x t_u - 2 t_{xu^vee})^2)`, which must equal `delta^2 D~ - n^2`.
    pub fn norm_identity_rhs(&self, field: &CmField) -> Rational {
        let c = self.cross_term();
        (Rational::from_integer(self.du * self.dx) - c * c) * field.d
    }

    pub fn du_disc(&self) -> Result<QuadDiscriminant> {
        QuadDiscriminant::new(self.du)
    }
}

/// `(d_u, d_x, t_x t_u - 2 t_{xu^vee})` evaluated from the integral-basis
/// displays in terms of `alpha_i`, `beta_i`, `c_K`, independently of the
/// simplified closed forms used by [`index_data`].
pub fn basis_display_forms(field: &CmField, delta: i64, n: i64) -> (Rational, Rational, Rational) {
    let d = field.d;
    let s = isqrt((d - 4 * delta) as u64) as i64;
    let q = |num: i64, den: i64| Rational::new(num, den);
    let shift = q(n + field.c_k * delta, 2 * d);
    let half_d_minus_s = q(d - s, 2);
    let tu = Rational::from_integer(field.alpha1 * delta);
    let tx = Rational::from_integer(field.alpha0) + half_d_minus_s * field.alpha1;
    let txu = Rational::from_integer(field.beta1 * delta) + shift * s;
    let du = tu * tu + shift * 4 * delta;
    let dx = tx * tx
        - (Rational::from_integer(field.beta0) + half_d_minus_s * field.beta1 + shift) * 4;
    (du, dx, tx * tu - txu * 2)
}

/// Closed forms for `(d_u, d_x)` and the cross term for one index.
pub fn index_data(field: &CmField, delta: i64, n: i64) -> Result<IndexData> {
    if !in_index_set(field, delta, n) {
        return Err(Error::OutsideIndexSet { delta, n });
    }
    let d = field.d;
    let s = isqrt((d - 4 * delta) as u64) as i64;
    let norm = ((delta * delta * field.dt - n * n) / (4 * d)) as u64;
    let inner = 2 * n + delta * field.a2;
    let du = exact_div(delta * inner, d)
        .ok_or_else(|| Error::Invariant(format!("d_u not integral at (delta, n) = ({delta}, {n})")))?;
    let dx = Rational::new(field.a2 - field.b2 * s, 2) - Rational::new(inner, d);
    if !dx.is_integer() {
        return Err(Error::Invariant(format!(
            "d_x = {dx} not integral at (delta, n) = ({delta}, {n})"
        )));
    }
    let tu = Rational::from_integer(field.alpha1 * delta);
    let tx = Rational::from_integer(field.alpha0) + Rational::new((d - s) * field.alpha1, 2);
    let txu =
        Rational::from_integer(field.beta1 * delta) + Rational::new(s * (n + field.c_k * delta), 2 * d);
    Ok(IndexData {
        delta,
        s,
        n,
        norm,
        du,
        dx: dx.to_integer(),
        tu,
        tx,
        txu,
    })
}

/// All index data of a field, ordered by `delta` then `n`.
pub fn index_set(field: &CmField) -> Result<Vec<IndexData>> {
    enumerate_deltas(field.d)
        .into_iter()
        .flat_map(|delta| enumerate_ns(field, delta).into_iter().map(move |n| (delta, n)))
        .map(|(delta, n)| index_data(field, delta, n))
        .collect()
}

/// Pass/fail for each assumption of the main comparison theorem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssumptionReport {
    /// `D` prime and `1 mod 4`; guaranteed by construction.
    pub d_prime: bool,
    /// `D~` squarefree and `1 mod 4`; guaranteed by construction.
    pub dt_squarefree: bool,
    pub different: DifferentReport,
    pub different_norm_is_d: bool,
    pub du_fundamental: bool,
    /// First `(delta, n, d_u)` with non-fundamental `d_u`.
    pub du_witness: Option<(i64, i64, i64)>,
}

impl AssumptionReport {
    pub fn passed(&self) -> bool {
        self.d_prime && self.dt_squarefree && self.different_norm_is_d && self.du_fundamental
    }
}

/// Checks the theorem's assumptions against an already-built reflex field.
pub fn check_assumptions_with(field: &CmField, reflex: &ReflexField) -> Result<AssumptionReport> {
    let different = reflex.different().clone();
    let different_norm_is_d = different.norm_is(field.d as u64);
    let mut du_witness = None;
    for idx in index_set(field)? {
        let fundamental = QuadDiscriminant::new(idx.du).is_ok_and(|d| d.is_fundamental());
        if !fundamental {
            du_witness = Some((idx.delta, idx.n, idx.du));
            break;
        }
    }
    Ok(AssumptionReport {
        d_prime: true,
        dt_squarefree: true,
        different,
        different_norm_is_d,
        du_fundamental: du_witness.is_none(),
        du_witness,
    })
}

pub fn check_assumptions(field: &CmField) -> Result<AssumptionReport> {
    check_assumptions_with(field, &ReflexField::new(field)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_the_golden_ratio_example() {
        let f = build_cm_field(5, -10, 4).unwrap();
        assert_eq!(f.dt(), 5);
        assert_eq!(f.case(), BasisCase::Case1);
        assert_eq!(
            (f.alpha0(), f.alpha1(), f.beta0(), f.beta1()),
            (1, 0, 4, -1)
        );
        assert_eq!(f.c_k(), -5);
    }

    #[test]
    fn rejects_negative_dt() {
        let r = build_cm_field(13, -10, 4).unwrap_err();
        assert!(r.violations.contains(&Violation::DtNotPositive));
        assert!(r.violations.contains(&Violation::NotTotallyImaginary));
    }

    #[test]
    fn rejects_square_dt() {
        // A = -9/2, B = 3/2: D~ = (81 - 45)/4 = 9
        let r = build_cm_field(5, -9, 3).unwrap_err();
        assert!(r.violations.contains(&Violation::DtSquare));
        assert!(!r.violations.contains(&Violation::DtNotPositive));
    }

    #[test]
    fn rejects_each_assumption() {
        let has = |d, a2, b2, v| build_cm_field(d, a2, b2).unwrap_err().violations.contains(&v);
        assert!(has(15, -10, 2, Violation::DNotPrime));
        assert!(has(7, -10, 2, Violation::DNotOneModFour));
        assert!(has(5, -10, 3, Violation::ParityMismatch));
        assert!(has(5, 10, 2, Violation::NotTotallyImaginary));
        // D~ = 49 - 5*4 = 29 ... use A = -7, B = 2 then D~ = 29 = 1 mod 4; force 3 mod 4 instead
        assert!(has(5, -12, 2, Violation::DtNotOneModFour));
        // A = -7, B = 1: D~ = 44
        assert!(has(5, -14, 2, Violation::DtNotSquarefree));
        // D = 17 = 1 mod 8 with half-integers
        assert!(has(17, -21, 1, Violation::HalfIntegersNeedFiveModEight));
    }

    #[test]
    fn case_two_field() {
        // D = 5, A = -7/2, B = 1/2: D~ = (49 - 5)/4 = 11 = 3 mod 4 -> rejected;
        // A = -9/2, B = 1/2: D~ = (81 - 5)/4 = 19 -> 3 mod 4; A = -11/2, B = 3/2: (121 - 45)/4 = 19;
        // A = -7/2, B = 3/2: (49 - 45)/4 = 1 square. Search for an admissible one.
        let f = (-41..0)
            .step_by(2)
            .flat_map(|a2| (-41..42).step_by(2).map(move |b2| (a2, b2)))
            .find_map(|(a2, b2)| build_cm_field(13, a2, b2).ok())
            .expect("some half-integral field over Q(sqrt 13)");
        assert_eq!(f.case(), BasisCase::Case2);
        assert_eq!(f.alpha1(), 1);
        assert_eq!(f.beta1(), 0);
        assert_eq!(2 * f.alpha0(), f.b2() - 13);
        // c_K = A - D/2
        assert_eq!(2 * f.c_k(), f.a2() - 13);
    }

    #[test]
    fn deltas() {
        assert_eq!(enumerate_deltas(5), vec![1]);
        assert_eq!(enumerate_deltas(13), vec![1, 3]);
        assert_eq!(enumerate_deltas(17), vec![2, 4]);
        assert_eq!(enumerate_deltas(41), vec![4, 8, 10]);
    }

    #[test]
    fn golden_example_has_empty_index_set() {
        let f = build_cm_field(5, -10, 4).unwrap();
        assert!(enumerate_ns(&f, 1).is_empty());
        assert!(index_set(&f).unwrap().is_empty());
    }

    #[test]
    fn ns_match_brute_force_range() {
        for (d, a2, b2) in [(13, -14, 2), (17, -26, 4), (29, -22, 2), (37, -26, 2)] {
            let Ok(f) = build_cm_field(d, a2, b2) else { continue };
            for delta in enumerate_deltas(d) {
                let bound = delta * delta * f.dt();
                let brute: Vec<i64> = (-2000..=2000)
                    .filter(|&n| n * n < bound && in_index_set(&f, delta, n))
                    .collect();
                assert_eq!(enumerate_ns(&f, delta), brute);
            }
        }
    }

    #[test]
    fn index_data_rejects_outside() {
        let f = build_cm_field(5, -10, 4).unwrap();
        assert_eq!(
            index_data(&f, 1, 0),
            Err(Error::OutsideIndexSet { delta: 1, n: 0 })
        );
    }
}

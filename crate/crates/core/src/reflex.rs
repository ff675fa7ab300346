//! The real quadratic field `F~ = Q(sqrt D~)` and the relative quadratic
//! extension `K~ = F~(sqrt(2A + 2 sqrt D~))`.
//!
//! Ideals of `O_F~` are exponent maps over [`ReflexPrime`]s; every ideal used
//! here is determined by valuations of explicit elements. Split primes are
//! embedded into `Z_p` through a Hensel-lifted root of `D~`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{
    factorize, hensel_lift_sqrt, inv_mod, is_prime, legendre, split_valuation, sqrt_mod_prime,
    two_adic_sqrt, valuation as int_valuation, Rational,
};
use crate::cm_field::{in_index_set, CmField};
use crate::error::{Error, Result};
use crate::quad_order::SplitType;

/// How a prime of `F~` sits over its rational prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeKind {
    /// `which = 1` uses the root `r` of `D~`, `which = 2` uses `-r`. For odd
    /// `p`, `r` lifts the smaller root mod `p`; for `p = 2`, `r = 1 mod 4`.
    Split { which: u8 },
    Inert,
    Ramified,
}

/// A prime ideal of `O_F~`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReflexPrime {
    pub p: u64,
    pub kind: PrimeKind,
}

impl ReflexPrime {
    /// Inertial degree over `Q`.
    pub fn residue_degree(&self) -> u32 {
        match self.kind {
            PrimeKind::Inert => 2,
            _ => 1,
        }
    }

    pub fn ramification_index(&self) -> u32 {
        match self.kind {
            PrimeKind::Ramified => 2,
            _ => 1,
        }
    }

    pub fn norm(&self) -> u64 {
        self.p.pow(self.residue_degree())
    }
}

impl fmt::Display for ReflexPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PrimeKind::Split { which } => write!(f, "P{}_{}", self.p, which),
            PrimeKind::Inert => write!(f, "({})", self.p),
            PrimeKind::Ramified => write!(f, "P{}", self.p),
        }
    }
}

/// `(x + y sqrt D~)/z` with `z > 0` and `gcd(x, y, z) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReflexElement {
    x: i64,
    y: i64,
    z: i64,
}

impl ReflexElement {
    pub fn new(x: i64, y: i64, z: i64) -> Result<Self> {
        if z == 0 {
            return Err(Error::ZeroArgument("z"));
        }
        let g = x.gcd(&y).gcd(&z);
        let sign = z.signum();
        Ok(Self {
            x: sign * x / g,
            y: sign * y / g,
            z: sign * z / g,
        })
    }

    pub fn integer(x: i64) -> Self {
        Self { x, y: 0, z: 1 }
    }

    pub fn x(&self) -> i64 {
        self.x
    }
    pub fn y(&self) -> i64 {
        self.y
    }
    pub fn z(&self) -> i64 {
        self.z
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// `(x^2 - y^2 D~)/z^2`
    pub fn norm(&self, dt: i64) -> Rational {
        let num = self.x as i128 * self.x as i128 - self.y as i128 * self.y as i128 * dt as i128;
        Rational::new(num as i64, self.z * self.z)
    }

    fn numerator_norm(&self, dt: i64) -> i128 {
        self.x as i128 * self.x as i128 - self.y as i128 * self.y as i128 * dt as i128
    }
}

impl fmt::Display for ReflexElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {} sqrt D~)/{}", self.x, self.y, self.z)
    }
}

/// The primes of `O_F~` above `p`. `dt` must be positive, squarefree and `1 mod 4`.
pub fn factor_prime_in_ftilde(dt: i64, p: u64) -> Result<Vec<ReflexPrime>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let prime = |kind| ReflexPrime { p, kind };
    let split = || {
        vec![
            prime(PrimeKind::Split { which: 1 }),
            prime(PrimeKind::Split { which: 2 }),
        ]
    };
    if dt.rem_euclid(p as i64) == 0 {
        return Ok(vec![prime(PrimeKind::Ramified)]);
    }
    if p == 2 {
        return Ok(match dt.rem_euclid(8) {
            1 => split(),
            5 => vec![prime(PrimeKind::Inert)],
            _ => return Err(Error::Invariant(format!("D~ = {dt} is not 1 mod 4"))),
        });
    }
    Ok(if legendre(dt as i128, p) == 1 {
        split()
    } else {
        vec![prime(PrimeKind::Inert)]
    })
}

/// The root of `D~` attached to a split prime, reduced mod `p^k`.
fn split_root(dt: i64, p: u64, which: u8, k: u32) -> Result<i128> {
    let modulus = (p as i128).pow(k);
    let r = if p == 2 {
        two_adic_sqrt(dt as i128, k).ok_or_else(|| Error::Invariant(format!("2 does not split for D~ = {dt}")))?
    } else {
        let r0 = sqrt_mod_prime(dt.rem_euclid(p as i64) as u64, p)
            .ok_or_else(|| Error::Invariant(format!("{p} does not split for D~ = {dt}")))?;
        hensel_lift_sqrt(dt as i128, p, r0.min(p - r0), k)
    };
    Ok(if which == 1 { r } else { (-r).rem_euclid(modulus) })
}

/// `v_P` of the integral element `x + y sqrt D~` (the `z` part is ignored).
fn numerator_valuation(dt: i64, elt: &ReflexElement, prime: ReflexPrime) -> Result<i32> {
    let p = prime.p;
    let vn = int_valuation(elt.numerator_norm(dt), p) as i32;
    Ok(match prime.kind {
        PrimeKind::Ramified => vn,
        PrimeKind::Inert => vn / 2,
        PrimeKind::Split { which } => {
            // v_P + v_P' = v_p(norm) and both are >= 0, so precision v_p(norm) + 1 is exact.
            let k = vn as u32 + 1;
            let modulus = (p as i128).pow(k);
            let r = split_root(dt, p, which, k)?;
            let image = (elt.x as i128 + elt.y as i128 * r).rem_euclid(modulus);
            if image == 0 {
                return Err(Error::Invariant(format!("precision exhausted at {prime}")));
            }
            int_valuation(image, p) as i32
        }
    })
}

/// `v_P(elt)` for a nonzero element of `F~`.
pub fn valuation(dt: i64, elt: &ReflexElement, prime: ReflexPrime) -> Result<i32> {
    if elt.is_zero() {
        return Err(Error::ZeroElement);
    }
    let vz = int_valuation(elt.z as i128, prime.p) as i32;
    Ok(numerator_valuation(dt, elt, prime)? - vz * prime.ramification_index() as i32)
}

fn is_square_mod_two_power(target: (i64, i64), c: i64, k: u32) -> bool {
    // (a + b w)^2 = a^2 + b^2 c + (2ab + b^2) w, where w^2 = w + c
    let m = 1i64 << k;
    let target = (target.0.rem_euclid(m), target.1.rem_euclid(m));
    (0..m).any(|a| {
        (0..m).any(|b| {
            ((a * a + b * b * c).rem_euclid(m), (2 * a * b + b * b).rem_euclid(m)) == target
        })
    })
}

/// How `prime` decomposes in `F~(sqrt alpha)`.
pub fn classify_in_ktilde(dt: i64, prime: ReflexPrime, alpha: &ReflexElement) -> Result<SplitType> {
    if alpha.is_zero() {
        return Err(Error::ZeroElement);
    }
    // alpha and alpha z^2 have the same square class.
    let elt = ReflexElement {
        x: alpha.x * alpha.z,
        y: alpha.y * alpha.z,
        z: 1,
    };
    let v = numerator_valuation(dt, &elt, prime)?;
    if v % 2 == 1 {
        return Ok(SplitType::Ramified);
    }
    let p = prime.p;
    let (x, y) = (elt.x as i128, elt.y as i128);
    let from_symbol = |s: i8| if s == 1 { SplitType::Split } else { SplitType::Inert };
    if p != 2 {
        let pv = (p as i128).pow(v as u32);
        return Ok(match prime.kind {
            PrimeKind::Split { which } => {
                let k = v as u32 + 1;
                let r = split_root(dt, p, which, k)?;
                let image = (x + y * r).rem_euclid((p as i128).pow(k));
                from_symbol(legendre(image / pv, p))
            }
            PrimeKind::Inert => {
                let (x1, y1) = (x / pv, y / pv);
                from_symbol(legendre(x1 * x1 - y1 * y1 * dt as i128, p))
            }
            PrimeKind::Ramified => {
                // uniformizer sqrt D~, so the unit part is x / D~^m mod p
                let m = (v / 2) as u32;
                let (_, dt_unit) = split_valuation(dt as i128, p);
                let pm = (p as i128).pow(m);
                let inv = inv_mod(dt_unit.pow(m).rem_euclid(p as i128), p as i128)
                    .expect("D~ squarefree");
                from_symbol(legendre(x / pm * inv, p))
            }
        });
    }
    // 2 is unramified in F~: a unit is a square iff it is one mod 8, and gives
    // an unramified extension iff it is a square mod 4.
    let (x1, y1) = match prime.kind {
        PrimeKind::Split { which } => {
            let k = v as u32 + 3;
            let r = split_root(dt, 2, which, k)?;
            let u = (x + y * r).rem_euclid(1 << k) >> v;
            (u as i64, 0)
        }
        PrimeKind::Inert => {
            // coordinates in the basis 1, w = (1 + sqrt D~)/2
            let (cx, cy) = (x - y, 2 * y);
            (((cx >> v) as i64), ((cy >> v) as i64))
        }
        PrimeKind::Ramified => return Err(Error::Invariant("2 ramified in F~".into())),
    };
    let c = match prime.kind {
        PrimeKind::Inert => (dt - 1) / 4,
        _ => 0,
    };
    let ring = |target: (i64, i64), k: u32| match prime.kind {
        PrimeKind::Inert => is_square_mod_two_power(target, c, k),
        _ => {
            let m = 1i64 << k;
            (0..m).any(|a| (a * a - target.0).rem_euclid(m) == 0)
        }
    };
    Ok(if ring((x1, y1), 3) {
        SplitType::Split
    } else if ring((x1, y1), 2) {
        SplitType::Inert
    } else {
        SplitType::Ramified
    })
}

/// A fractional ideal of `O_F~` as a map from primes to nonzero exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(into = "Vec<IdealEntry>")]
pub struct ReflexIdeal(BTreeMap<ReflexPrime, i32>);

#[derive(Debug, Clone, Serialize)]
pub struct IdealEntry {
    pub prime: ReflexPrime,
    pub exponent: i32,
}

impl From<ReflexIdeal> for Vec<IdealEntry> {
    fn from(ideal: ReflexIdeal) -> Self {
        ideal
            .0
            .into_iter()
            .map(|(prime, exponent)| IdealEntry { prime, exponent })
            .collect()
    }
}

impl ReflexIdeal {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn prime(prime: ReflexPrime) -> Self {
        Self::from_exponents([(prime, 1)])
    }

    pub fn from_exponents(entries: impl IntoIterator<Item = (ReflexPrime, i32)>) -> Self {
        let mut ideal = Self::default();
        for (prime, e) in entries {
            ideal.add(prime, e);
        }
        ideal
    }

    fn add(&mut self, prime: ReflexPrime, e: i32) {
        let slot = self.0.entry(prime).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.0.remove(&prime);
        }
    }

    pub fn exponent(&self, prime: &ReflexPrime) -> i32 {
        self.0.get(prime).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (ReflexPrime, i32)> + '_ {
        self.0.iter().map(|(p, e)| (*p, *e))
    }

    pub fn mul(&self, other: &ReflexIdeal) -> ReflexIdeal {
        let mut out = self.clone();
        for (p, e) in other.entries() {
            out.add(p, e);
        }
        out
    }

    pub fn divide_by_prime(&self, prime: ReflexPrime) -> ReflexIdeal {
        let mut out = self.clone();
        out.add(prime, -1);
        out
    }

    pub fn is_integral(&self) -> bool {
        self.0.values().all(|&e| e >= 0)
    }

    pub fn norm(&self) -> Rational {
        self.entries().fold(Rational::from_integer(1), |acc, (p, e)| {
            let n = Rational::from_integer(p.norm() as i64);
            acc * n.pow(e)
        })
    }
}

impl fmt::Display for ReflexIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("(1)");
        }
        let parts: Vec<String> = self.entries().map(|(p, e)| format!("{p}^{e}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// The relative different of `K~/F~`, restricted to tame primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferentReport {
    pub ideal: ReflexIdeal,
    /// Norm of the tame part.
    pub norm: u64,
    /// Primes over 2 that ramify in `K~` (exponent not modelled).
    pub wild: Vec<ReflexPrime>,
}

impl DifferentReport {
    /// `Norm(D_{K~/F~}) = d` with no wild ramification.
    pub fn norm_is(&self, d: u64) -> bool {
        self.wild.is_empty() && self.norm == d
    }
}

/// The `(delta, n)`-ideal `N = ((n + delta sqrt D~)/(2D))` and `N D_{K~/F~}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexIdeals {
    pub n_ideal: ReflexIdeal,
    pub nd_ideal: ReflexIdeal,
}

/// A summand computed along two independent routes. `closed_form` is `None`
/// when the closed form's hypotheses do not hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SummandPaths {
    pub definitional: Rational,
    pub closed_form: Option<Rational>,
}

impl SummandPaths {
    /// The definitional value, or [`Error::PathMismatch`] if the routes disagree.
    pub fn checked(self, what: &'static str) -> Result<Rational> {
        match self.closed_form {
            Some(c) if c != self.definitional => Err(Error::PathMismatch {
                what,
                definitional: self.definitional.to_string(),
                closed_form: c.to_string(),
            }),
            _ => Ok(self.definitional),
        }
    }
}

/// The reflex data of one CM field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflexField {
    d: i64,
    dt: i64,
    alpha: ReflexElement,
    different: DifferentReport,
}

impl ReflexField {
    pub fn new(field: &CmField) -> Result<Self> {
        let dt = field.dt();
        let alpha = ReflexElement::new(field.a2(), 2, 1)?;
        let mut candidates: Vec<u64> = vec![2, field.d() as u64];
        if field.b2() != 0 {
            candidates.extend(factorize(field.b2())?.primes());
        }
        candidates.sort_unstable();
        candidates.dedup();
        let mut ideal = ReflexIdeal::unit();
        let mut wild = Vec::new();
        for p in candidates {
            for prime in factor_prime_in_ftilde(dt, p)? {
                if classify_in_ktilde(dt, prime, &alpha)? == SplitType::Ramified {
                    if p == 2 {
                        wild.push(prime);
                    } else {
                        ideal.add(prime, 1);
                    }
                }
            }
        }
        let norm = ideal.norm().to_integer() as u64;
        Ok(Self {
            d: field.d(),
            dt,
            alpha,
            different: DifferentReport { ideal, norm, wild },
        })
    }

    pub fn dt(&self) -> i64 {
        self.dt
    }

    /// `2A + 2 sqrt D~`
    pub fn alpha(&self) -> &ReflexElement {
        &self.alpha
    }

    pub fn different(&self) -> &DifferentReport {
        &self.different
    }

    pub fn primes_over(&self, p: u64) -> Result<Vec<ReflexPrime>> {
        factor_prime_in_ftilde(self.dt, p)
    }

    pub fn valuation(&self, elt: &ReflexElement, prime: ReflexPrime) -> Result<i32> {
        valuation(self.dt, elt, prime)
    }

    pub fn classify(&self, prime: ReflexPrime) -> Result<SplitType> {
        classify_in_ktilde(self.dt, prime, &self.alpha)
    }

    fn require_tame(&self) -> Result<()> {
        if self.different.wild.is_empty() {
            Ok(())
        } else {
            Err(Error::WildRamification)
        }
    }

    /// `(n + delta sqrt D~)/(2D)`
    pub fn index_element(&self, delta: i64, n: i64) -> Result<ReflexElement> {
        ReflexElement::new(n, delta, 2 * self.d)
    }

    /// Whether `(n + delta sqrt D~)/(2D)` lies in the inverse different.
    pub fn is_in_inverse_different(&self, delta: i64, n: i64) -> Result<bool> {
        self.require_tame()?;
        let elt = self.index_element(delta, n)?;
        if elt.is_zero() {
            return Ok(true);
        }
        // the numerator is integral, so only primes over 2D and those of the different matter
        let mut primes = self.primes_over(2)?;
        primes.extend(self.primes_over(self.d as u64)?);
        primes.extend(self.different.ideal.entries().map(|(p, _)| p));
        for prime in primes {
            if self.valuation(&elt, prime)? + self.different.ideal.exponent(&prime) < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `N` and `N D_{K~/F~}` for an index pair.
    pub fn reflex_ideal_of_index(&self, field: &CmField, delta: i64, n: i64) -> Result<IndexIdeals> {
        if !in_index_set(field, delta, n) {
            return Err(Error::OutsideIndexSet { delta, n });
        }
        self.require_tame()?;
        let elt = self.index_element(delta, n)?;
        let big_n = (delta * delta * self.dt - n * n) / (4 * self.d);
        let mut candidates: Vec<u64> = factorize(2 * self.d * big_n)?.primes().collect();
        candidates.dedup();
        let mut n_ideal = ReflexIdeal::unit();
        for p in candidates {
            for prime in self.primes_over(p)? {
                n_ideal.add(prime, self.valuation(&elt, prime)?);
            }
        }
        let nd_ideal = n_ideal.mul(&self.different.ideal);
        Ok(IndexIdeals { n_ideal, nd_ideal })
    }

    /// `R_{K~/F~}(a)`: the number of integral ideals of `K~` with relative norm `a`.
    pub fn r_reflex(&self, ideal: &ReflexIdeal) -> Result<u64> {
        if !ideal.is_integral() {
            return Ok(0);
        }
        let mut count = 1;
        for (prime, v) in ideal.entries() {
            count *= match self.classify(prime)? {
                SplitType::Inert => u64::from(v % 2 == 0),
                SplitType::Split => v as u64 + 1,
                SplitType::Ramified => 1,
            };
        }
        Ok(count)
    }

    /// `eps_{K~/F~}(p, a)`
    pub fn eps_reflex(&self, p: u64, ideal: &ReflexIdeal) -> Result<u64> {
        let mut out = 1;
        for (prime, v) in ideal.entries().filter(|(q, v)| q.p == p && *v > 0) {
            out *= match self.classify(prime)? {
                SplitType::Inert => u64::from(v % 2 == 0),
                SplitType::Split => v as u64 + 1,
                SplitType::Ramified => 1,
            };
        }
        Ok(out)
    }

    /// `B_N(ell)` by the definitional sum over primes above `ell`, together with
    /// the closed form valid when exactly one prime above `ell` divides `N D`.
    pub fn b_summand_paths(&self, field: &CmField, delta: i64, n: i64, ell: u64) -> Result<SummandPaths> {
        if !is_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        let ideals = self.reflex_ideal_of_index(field, delta, n)?;
        let over_ell = self.primes_over(ell)?;
        let mut definitional = Rational::from_integer(0);
        for &l in &over_ell {
            if self.classify(l)? == SplitType::Split {
                continue;
            }
            let v = ideals.n_ideal.exponent(&l) as i64;
            let r = self.r_reflex(&ideals.nd_ideal.divide_by_prime(l))?;
            definitional += Rational::new((v + 1) * r as i64 * l.residue_degree() as i64, 2);
        }

        let supported: Vec<ReflexPrime> = over_ell
            .iter()
            .copied()
            .filter(|l| ideals.nd_ideal.exponent(l) > 0)
            .collect();
        let closed_form = match supported.as_slice() {
            [] => Some(Rational::from_integer(0)),
            [l] if self.classify(*l)? != SplitType::Ramified => {
                let v = ideals.n_ideal.exponent(l) as i64;
                if self.classify(*l)? == SplitType::Inert && v % 2 == 1 {
                    let big_n = (delta * delta * self.dt - n * n) / (4 * self.d);
                    let mut local = 1;
                    for p in factorize(big_n)?.primes().filter(|&p| p != ell) {
                        local *= self.eps_reflex(p, &ideals.nd_ideal)?;
                    }
                    Some(Rational::new((v + 1) * local as i64 * l.residue_degree() as i64, 2))
                } else {
                    Some(Rational::from_integer(0))
                }
            }
            _ => None,
        };
        Ok(SummandPaths {
            definitional,
            closed_form,
        })
    }

    pub fn b_summand(&self, field: &CmField, delta: i64, n: i64, ell: u64) -> Result<Rational> {
        self.b_summand_paths(field, delta, n, ell)?.checked("B_N(ell)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cm_field::build_cm_field;

    fn kinds(dt: i64, p: u64) -> Vec<PrimeKind> {
        factor_prime_in_ftilde(dt, p).unwrap().into_iter().map(|q| q.kind).collect()
    }

    #[test]
    fn factoring_small_primes() {
        assert_eq!(
            kinds(5, 11),
            vec![PrimeKind::Split { which: 1 }, PrimeKind::Split { which: 2 }]
        );
        assert_eq!(kinds(5, 5), vec![PrimeKind::Ramified]);
        assert_eq!(kinds(5, 2), vec![PrimeKind::Inert]);
        assert_eq!(kinds(17, 2).len(), 2);
        assert_eq!(kinds(5, 3), vec![PrimeKind::Inert]);
    }

    #[test]
    fn valuations_of_uniformizers() {
        for (dt, p) in [(5, 11), (5, 5), (5, 2), (17, 2), (13, 3)] {
            for prime in factor_prime_in_ftilde(dt, p).unwrap() {
                let v = valuation(dt, &ReflexElement::integer(p as i64), prime).unwrap();
                assert_eq!(v, prime.ramification_index() as i32);
            }
        }
        let root = ReflexElement::new(0, 1, 1).unwrap();
        let ram = factor_prime_in_ftilde(5, 5).unwrap()[0];
        assert_eq!(valuation(5, &root, ram).unwrap(), 1);
        assert_eq!(valuation(5, &ReflexElement::new(1, 0, 5).unwrap(), ram).unwrap(), -2);
    }

    #[test]
    fn split_valuations_distinguish_conjugates() {
        // 4 + sqrt 5 has norm 11; exactly one prime over 11 divides it
        let elt = ReflexElement::new(4, 1, 1).unwrap();
        let vs: Vec<i32> = factor_prime_in_ftilde(5, 11)
            .unwrap()
            .into_iter()
            .map(|q| valuation(5, &elt, q).unwrap())
            .collect();
        assert_eq!(vs.iter().sum::<i32>(), 1);
        assert!(vs.contains(&0));
        // (1 + sqrt 17)/2 has norm -4; over 2 the valuations are (2, 0) in some order
        let elt = ReflexElement::new(1, 1, 2).unwrap();
        let mut vs: Vec<i32> = factor_prime_in_ftilde(17, 2)
            .unwrap()
            .into_iter()
            .map(|q| valuation(17, &elt, q).unwrap())
            .collect();
        vs.sort();
        assert_eq!(vs, vec![0, 2]);
    }

    #[test]
    fn zero_has_no_valuation() {
        let q = factor_prime_in_ftilde(5, 2).unwrap()[0];
        assert_eq!(valuation(5, &ReflexElement::integer(0), q), Err(Error::ZeroElement));
    }

    #[test]
    fn classification_in_the_rationals_embedding() {
        // over an inert odd prime, a rational integer unit is always a square in F_{p^2}
        let q = factor_prime_in_ftilde(5, 3).unwrap()[0];
        assert_eq!(classify_in_ktilde(5, q, &ReflexElement::integer(2)).unwrap(), SplitType::Split);
        assert_eq!(classify_in_ktilde(5, q, &ReflexElement::integer(3)).unwrap(), SplitType::Ramified);
        // over 2 inert in Q(sqrt 5): -1 is not a square mod 4 in Z_2[w]? -1 = 1 mod 2 but
        // sqrt(-1) generates a ramified extension of Q_2 and also of its unramified quadratic extension
        let two = factor_prime_in_ftilde(5, 2).unwrap()[0];
        assert_eq!(classify_in_ktilde(5, two, &ReflexElement::integer(-1)).unwrap(), SplitType::Ramified);
        assert_eq!(classify_in_ktilde(5, two, &ReflexElement::integer(5)).unwrap(), SplitType::Split);
        // 5 = 1 + 4 is a non-square unit mod 8 in Z_2 but a square of sqrt 5 in F~
        let two17 = factor_prime_in_ftilde(17, 2).unwrap();
        for q in two17 {
            assert_eq!(classify_in_ktilde(17, q, &ReflexElement::integer(5)).unwrap(), SplitType::Inert);
            assert_eq!(classify_in_ktilde(17, q, &ReflexElement::integer(17)).unwrap(), SplitType::Split);
        }
    }

    #[test]
    fn ideal_arithmetic() {
        let q = ReflexPrime { p: 11, kind: PrimeKind::Split { which: 1 } };
        let r = ReflexPrime { p: 2, kind: PrimeKind::Inert };
        let a = ReflexIdeal::from_exponents([(q, 2), (r, 1)]);
        assert_eq!(a.norm(), Rational::from_integer(121 * 4));
        let b = a.divide_by_prime(r).divide_by_prime(r);
        assert!(!b.is_integral());
        assert_eq!(b.norm(), Rational::new(121, 4));
        assert_eq!(a.mul(&ReflexIdeal::from_exponents([(r, -1)])).exponent(&r), 0);
    }

    #[test]
    fn golden_field_different() {
        let f = build_cm_field(5, -10, 4).unwrap();
        let reflex = ReflexField::new(&f).unwrap();
        // alpha = -10 + 2 sqrt 5, norm 100 - 20 = 80 = 2^4 * 5
        assert_eq!(reflex.alpha().norm(5), Rational::from_integer(80));
        assert!(reflex.different().norm > 0);
    }

    #[test]
    fn counting_functions() {
        let f = build_cm_field(5, -10, 4).unwrap();
        let reflex = ReflexField::new(&f).unwrap();
        assert_eq!(reflex.r_reflex(&ReflexIdeal::unit()).unwrap(), 1);
        assert_eq!(reflex.eps_reflex(7, &ReflexIdeal::unit()).unwrap(), 1);
        let neg = ReflexIdeal::from_exponents([(ReflexPrime { p: 3, kind: PrimeKind::Inert }, -1)]);
        assert_eq!(reflex.r_reflex(&neg).unwrap(), 0);
    }
}

//! Imaginary quadratic orders `O_d = Z[(d + sqrt d)/2]`: splitting of primes,
//! the ideal count `R_d(A)`, the genus factor `rho~_d` and the local factor `eps_d`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{
    factorize, factorize_u64, hilbert_symbol_int, is_perfect_square, is_prime, is_squarefree,
    kronecker, valuation, Place, Rational,
};
use crate::error::{Error, Result};

/// Largest norm accepted by [`count_ideals_brute`].
pub const BRUTE_FORCE_NORM_BOUND: u64 = 10_000;

/// A quadratic discriminant: a non-square `d = 0, 1 mod 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct QuadDiscriminant(i64);

impl QuadDiscriminant {
    pub fn new(d: i64) -> Result<Self> {
        if !matches!(d.rem_euclid(4), 0 | 1) || is_perfect_square(d) {
            return Err(Error::NotDiscriminant(d));
        }
        Ok(Self(d))
    }

    /// Like [`QuadDiscriminant::new`] but additionally requires `d` fundamental.
    pub fn fundamental(d: i64) -> Result<Self> {
        let disc = Self::new(d)?;
        if !disc.is_fundamental() {
            return Err(Error::NotFundamental(d));
        }
        Ok(disc)
    }

    pub fn value(self) -> i64 {
        self.0
    }

    /// `d` squarefree and `1 mod 4`, or `d = 4m` with `m` squarefree and `2, 3 mod 4`.
    pub fn is_fundamental(self) -> bool {
        let d = self.0;
        if d.rem_euclid(4) == 1 {
            return is_squarefree(d);
        }
        let m = d / 4;
        matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m)
    }

    /// Splitting symbol of `p` read off the Kronecker symbol `(d|p)`; a prime
    /// dividing `d` is reported as ramified. Valid for any discriminant, but
    /// only meaningful as a splitting type when `p` does not divide the conductor.
    pub fn symbol(self, p: u64) -> SplitType {
        match kronecker(self.0, p as i64).expect("p is nonzero") {
            1 => SplitType::Split,
            -1 => SplitType::Inert,
            _ => SplitType::Ramified,
        }
    }
}

impl TryFrom<i64> for QuadDiscriminant {
    type Error = Error;

    fn try_from(d: i64) -> Result<Self> {
        Self::new(d)
    }
}

impl From<QuadDiscriminant> for i64 {
    fn from(d: QuadDiscriminant) -> i64 {
        d.0
    }
}

impl fmt::Display for QuadDiscriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for SplitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitType::Split => "split",
            SplitType::Inert => "inert",
            SplitType::Ramified => "ramified",
        })
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn require_fundamental(d: QuadDiscriminant) -> Result<()> {
    if d.is_fundamental() {
        Ok(())
    } else {
        Err(Error::NotFundamental(d.value()))
    }
}

/// How `p` decomposes in the maximal order of discriminant `d`.
pub fn splitting_in_order(d: QuadDiscriminant, p: u64) -> Result<SplitType> {
    require_fundamental(d)?;
    require_prime(p)?;
    Ok(d.symbol(p))
}

fn local_ideal_count(kind: SplitType, v: u32) -> u64 {
    match kind {
        SplitType::Split => v as u64 + 1,
        SplitType::Inert => u64::from(v % 2 == 0),
        SplitType::Ramified => 1,
    }
}

/// `R_d(A)`: the number of integral ideals of norm `A` in the maximal order
/// of discriminant `d`.
pub fn count_ideals_of_norm(d: QuadDiscriminant, a: u64) -> Result<u64> {
    require_fundamental(d)?;
    if a == 0 {
        return Err(Error::ZeroArgument("A"));
    }
    Ok(factorize_u64(a)
        .factors()
        .iter()
        .map(|&(p, v)| local_ideal_count(d.symbol(p), v))
        .product())
}

/// `R_d(q)` for a positive rational `q`; zero unless `q` is an integer.
pub fn count_ideals_of_rational_norm(d: QuadDiscriminant, q: Rational) -> Result<u64> {
    require_fundamental(d)?;
    if !q.is_integer() || *q.numer() <= 0 {
        return Ok(0);
    }
    count_ideals_of_norm(d, q.to_integer() as u64)
}

/// Ideal count by direct enumeration of sublattices `Z a + Z (b + c w)` of
/// `Z + Z w`, `w = (d + sqrt d)/2`, of index `A = a c` that are stable under
/// multiplication by `w`. Independent of the splitting dictionary; used as an oracle.
pub fn count_ideals_brute(d: QuadDiscriminant, norm: u64) -> Result<u64> {
    require_fundamental(d)?;
    if norm == 0 {
        return Err(Error::ZeroArgument("A"));
    }
    if norm > BRUTE_FORCE_NORM_BOUND {
        return Err(Error::BoundExceeded {
            value: norm,
            bound: BRUTE_FORCE_NORM_BOUND,
        });
    }
    let dd = d.value() as i128;
    // w^2 = d w - (d^2 - d)/4
    let w2_const = -(dd * dd - dd) / 4;
    let a_total = norm as i128;
    let mut count = 0;
    for c in (1..=a_total).filter(|c| a_total % c == 0) {
        let a = a_total / c;
        for b in 0..a {
            // membership of x + y w in Z a + Z (b + c w)
            let contains = |x: i128, y: i128| y % c == 0 && (x - (y / c) * b) % a == 0;
            // w * a = a w;  w * (b + c w) = c*w2_const + (b + c d) w
            if contains(0, a) && contains(c * w2_const, b + c * dd) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `(d, -A)_p` as a sign.
fn hilbert_d_minus_a(d: i64, a: u64, p: u64) -> i8 {
    hilbert_symbol_int(d as i128, -(a as i128), Place::Prime(p)).expect("nonzero arguments")
}

/// The local factor `eps_d(p, A)` for a prime `p` dividing `A`.
pub fn eps_d(d: QuadDiscriminant, p: u64, a: u64) -> Result<u64> {
    require_fundamental(d)?;
    require_prime(p)?;
    if a == 0 || a % p != 0 {
        return Err(Error::PrimeDoesNotDivide { p, a });
    }
    let v = valuation(a as i128, p);
    Ok(match d.symbol(p) {
        SplitType::Inert => u64::from(v % 2 == 0),
        SplitType::Split => v as u64 + 1,
        SplitType::Ramified => {
            if hilbert_d_minus_a(d.value(), a, p) == 1 {
                2
            } else {
                0
            }
        }
    })
}

/// The genus factor `rho~_d(A)` relative to the prime `ell`.
pub fn rho_tilde(d: QuadDiscriminant, a: u64, ell: u64) -> Result<u64> {
    require_fundamental(d)?;
    if a == 0 {
        return Err(Error::ZeroArgument("A"));
    }
    let mut shared = 0;
    for p in factorize(d.value())?.primes().filter(|&p| p != ell) {
        if hilbert_d_minus_a(d.value(), a, p) == -1 {
            return Ok(0);
        }
        if a % p == 0 {
            shared += 1;
        }
    }
    Ok(1 << shared)
}

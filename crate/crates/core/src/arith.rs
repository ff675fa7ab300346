//! Exact integer and local arithmetic.
//!
//! Everything here works on machine integers: the quantities that appear in the
//! intersection formulas at desk scale stay far below `2^63`, and intermediate
//! products are carried in `i128`/`u128`. Rationals are `num_rational::Ratio<i64>`,
//! which is always reduced with a positive denominator.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = num_rational::Ratio<i64>;

const TRIAL_DIVISION_BOUND: u64 = 1_000;

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub(crate) fn inv_mod(a: i128, m: i128) -> Option<i128> {
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m))
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of the odd composite `n`.
fn pollard_rho(n: u64) -> u64 {
    for c in 1..n {
        let step = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = step(x);
            y = step(step(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!("pollard rho exhausted all increments for {n}")
}

/// Prime factorization of a positive integer: `(prime, exponent)` pairs with
/// strictly increasing primes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.0
            .binary_search_by_key(&p, |&(q, _)| q)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Recombines the factorization.
    pub fn value(&self) -> u128 {
        self.0
            .iter()
            .map(|&(p, e)| (p as u128).pow(e))
            .product()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            match e {
                1 => write!(f, "{p}")?,
                _ => write!(f, "{p}^{e}")?,
            }
        }
        Ok(())
    }
}

fn collect_prime_factors(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    collect_prime_factors(d, out);
    collect_prime_factors(n / d, out);
}

/// Factorization of a positive `u64`. `factorize_u64(1)` is empty.
pub fn factorize_u64(mut n: u64) -> Factorization {
    assert!(n > 0, "cannot factor zero");
    let mut primes = Vec::new();
    while n % 2 == 0 {
        primes.push(2);
        n /= 2;
    }
    let mut p = 3;
    while p <= TRIAL_DIVISION_BOUND && p * p <= n {
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
        p += 2;
    }
    if n > 1 {
        if p * p > n {
            primes.push(n);
        } else {
            collect_prime_factors(n, &mut primes);
        }
    }
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match factors.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => factors.push((q, 1)),
        }
    }
    Factorization(factors)
}

/// Prime factorization of `|m|`.
pub fn factorize(m: i64) -> Result<Factorization> {
    if m == 0 {
        return Err(Error::ZeroArgument("m"));
    }
    Ok(factorize_u64(m.unsigned_abs()))
}

/// `v_p(m)` together with the prime-to-`p` part of `m`.
pub fn split_valuation(mut m: i128, p: u64) -> (u32, i128) {
    assert!(m != 0, "valuation of zero");
    let p = p as i128;
    let mut v = 0;
    while m % p == 0 {
        m /= p;
        v += 1;
    }
    (v, m)
}

/// `v_p(m)` for nonzero `m`.
pub fn valuation(m: i128, p: u64) -> u32 {
    split_valuation(m, p).0
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn is_perfect_square(m: i64) -> bool {
    m >= 0 && {
        let r = isqrt(m as u64);
        r * r == m as u64
    }
}

pub fn is_squarefree(m: i64) -> bool {
    m != 0 && factorize_u64(m.unsigned_abs()).factors().iter().all(|&(_, e)| e == 1)
}

/// The Kronecker symbol `(a|n)`.
pub fn kronecker(a: i64, n: i64) -> Result<i8> {
    if a == 0 && n == 0 {
        return Err(Error::KroneckerZeroZero);
    }
    let (mut a, mut n) = (a as i128, n as i128);
    if n == 0 {
        return Ok(if a.abs() == 1 { 1 } else { 0 });
    }
    if a % 2 == 0 && n % 2 == 0 {
        return Ok(0);
    }
    let mut k: i8 = 1;
    let v = n.trailing_zeros();
    n >>= v;
    if v % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
        k = -k;
    }
    if n < 0 {
        n = -n;
        if a < 0 {
            k = -k;
        }
    }
    // n is odd and positive: Jacobi symbol.
    a = a.rem_euclid(n);
    while a != 0 {
        let v = a.trailing_zeros();
        a >>= v;
        if v % 2 == 1 && matches!(n % 8, 3 | 5) {
            k = -k;
        }
        if a % 4 == 3 && n % 4 == 3 {
            k = -k;
        }
        (a, n) = (n % a, a);
    }
    Ok(if n == 1 { k } else { 0 })
}

/// Legendre symbol for an odd prime `p`.
pub fn legendre(a: i128, p: u64) -> i8 {
    let r = a.rem_euclid(p as i128) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// A place of the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Place {
    Infinity,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// The places where `(a, b)_v` can differ from 1: infinity and every prime dividing `2ab`.
pub fn relevant_places(a: i64, b: i64) -> Vec<Place> {
    let mut primes: Vec<u64> = factorize_u64(2 * a.unsigned_abs() * b.unsigned_abs())
        .primes()
        .collect();
    primes.dedup();
    std::iter::once(Place::Infinity)
        .chain(primes.into_iter().map(Place::Prime))
        .collect()
}

// A rational in the same square class: a/b ~ a*b.
fn square_class_rep(a: Rational) -> i128 {
    *a.numer() as i128 * *a.denom() as i128
}

/// Hilbert symbol of two nonzero integers.
pub fn hilbert_symbol_int(a: i128, b: i128, place: Place) -> Result<i8> {
    if a == 0 {
        return Err(Error::ZeroArgument("a"));
    }
    if b == 0 {
        return Err(Error::ZeroArgument("b"));
    }
    let p = match place {
        Place::Infinity => return Ok(if a < 0 && b < 0 { -1 } else { 1 }),
        Place::Prime(p) => p,
    };
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (alpha, u) = split_valuation(a, p);
    let (beta, v) = split_valuation(b, p);
    if p == 2 {
        let eps = |x: i128| ((x.rem_euclid(4) - 1) / 2) as u32;
        let omega = |x: i128| u32::from(matches!(x.rem_euclid(8), 3 | 5));
        let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        return Ok(if e % 2 == 0 { 1 } else { -1 });
    }
    let mut sign: i8 = if (alpha * beta) % 2 == 1 && p % 4 == 3 { -1 } else { 1 };
    if beta % 2 == 1 {
        sign *= legendre(u, p);
    }
    if alpha % 2 == 1 {
        sign *= legendre(v, p);
    }
    Ok(sign)
}

/// Hilbert symbol `(a, b)_v` of nonzero rationals by the closed-form
/// valuation/residue formulas.
pub fn hilbert_symbol(a: Rational, b: Rational, place: Place) -> Result<i8> {
    if a == Rational::from_integer(0) {
        return Err(Error::ZeroArgument("a"));
    }
    if b == Rational::from_integer(0) {
        return Err(Error::ZeroArgument("b"));
    }
    hilbert_symbol_int(square_class_rep(a), square_class_rep(b), place)
}

/// Whether the nonzero rational `a` is a square in `Q_p`.
pub fn is_square_in_completion(a: Rational, p: u64) -> Result<bool> {
    if a == Rational::from_integer(0) {
        return Err(Error::ZeroArgument("a"));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (v, u) = split_valuation(square_class_rep(a), p);
    if v % 2 == 1 {
        return Ok(false);
    }
    Ok(if p == 2 { u.rem_euclid(8) == 1 } else { legendre(u, p) == 1 })
}

/// Tonelli-Shanks: some square root of `a` modulo the odd prime `p`.
pub(crate) fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Lifts a square root `r0` of `a` mod the odd prime `p` to a root mod `p^k`
/// congruent to `r0` mod `p`.
pub(crate) fn hensel_lift_sqrt(a: i128, p: u64, r0: u64, k: u32) -> i128 {
    let mut r = r0 as i128;
    let mut modulus = p as i128;
    for _ in 1..k {
        modulus *= p as i128;
        let f = (r * r - a).rem_euclid(modulus);
        let inv = inv_mod(2 * r, modulus).expect("2r is a unit for odd p and p not dividing a");
        r = (r - f * inv).rem_euclid(modulus);
    }
    r.rem_euclid(modulus)
}

/// The smallest nonnegative `r` with `r^2 = a mod p^k`, if any. `p` must be an
/// odd prime not dividing `a`.
pub fn sqrt_mod_prime_power(a: i64, p: u64, k: u32) -> Result<Option<u64>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::EvenPrime(p));
    }
    if a.rem_euclid(p as i64) == 0 {
        return Err(Error::NotCoprime { a, p });
    }
    assert!(k >= 1, "precision must be positive");
    let Some(r0) = sqrt_mod_prime(a.rem_euclid(p as i64) as u64, p) else {
        return Ok(None);
    };
    let modulus = (p as i128).pow(k);
    let r = hensel_lift_sqrt(a as i128, p, r0, k);
    Ok(Some(r.min(modulus - r) as u64))
}

/// The 2-adic square root of `a = 1 mod 8` that is `1 mod 4`, reduced mod `2^k`.
pub(crate) fn two_adic_sqrt(a: i128, k: u32) -> Option<i128> {
    if a.rem_euclid(8) != 1 {
        return None;
    }
    // Invariant: r^2 = a mod 2^j, so r agrees with the true root mod 2^(j-1).
    let mut r: i128 = 1;
    let mut j = 3;
    while j < k + 1 {
        let m = 1i128 << (j + 1);
        if (r * r - a).rem_euclid(m) != 0 {
            r += 1 << (j - 1);
        }
        j += 1;
    }
    Some(r.rem_euclid(1 << k))
}

/// Primes in `[lo, hi]`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

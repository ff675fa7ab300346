//! Brute-force oracles that share no logic with the closed-form routines they
//! check: Hilbert symbols by solving `z^2 = a x^2 + b y^2` modulo prime powers,
//! and quadratic residues by listing squares.

use crate::arith::{is_prime, Place};
use crate::error::{Error, Result};

fn strip_squares(mut m: i64) -> i64 {
    let mut f = 2;
    while f * f <= m.abs() {
        while m % (f * f) == 0 {
            m /= f * f;
        }
        f += 1;
    }
    m
}

fn squares_mod(m: i64) -> Vec<bool> {
    let mut table = vec![false; m as usize];
    for z in 0..m {
        table[(z * z % m) as usize] = true;
    }
    table
}

/// `(a, b)_v` decided by searching for a primitive solution of
/// `z^2 = a x^2 + b y^2` modulo `p^k`.
///
/// After reducing `a`, `b` to squarefree integers, a primitive solution over
/// `Z_p` has `x` or `y` a unit, so up to scaling either `x = 1` or `y = 1` with
/// `p | x`. Solvability modulo `p^3` (odd `p`) or `2^7` lifts by Hensel's lemma.
pub fn hilbert_symbol_by_search(a: i64, b: i64, place: Place) -> Result<i8> {
    if a == 0 {
        return Err(Error::ZeroArgument("a"));
    }
    if b == 0 {
        return Err(Error::ZeroArgument("b"));
    }
    let p = match place {
        Place::Infinity => return Ok(if a > 0 || b > 0 { 1 } else { -1 }),
        Place::Prime(p) => p,
    };
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (a, b) = (strip_squares(a), strip_squares(b));
    let k = if p == 2 { 7 } else { 3 };
    let m = (p as i64).pow(k);
    let squares = squares_mod(m);
    let is_sq = |t: i64| squares[t.rem_euclid(m) as usize];
    let p = p as i64;
    let found = (0..m).any(|y| is_sq(a + b * y * y))
        || (0..m).step_by(p as usize).any(|x| is_sq(a * x * x + b));
    Ok(if found { 1 } else { -1 })
}

/// Legendre symbol `(a|p)` by listing the squares mod `p`.
pub fn legendre_by_enumeration(a: i64, p: u64) -> i8 {
    let p = p as i64;
    let r = a.rem_euclid(p);
    if r == 0 {
        0
    } else if (1..p).any(|z| z * z % p == r) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_symbols() {
        assert_eq!(hilbert_symbol_by_search(-1, -1, Place::Prime(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol_by_search(-1, -1, Place::Infinity).unwrap(), -1);
        assert_eq!(hilbert_symbol_by_search(-1, -1, Place::Prime(3)).unwrap(), 1);
        assert_eq!(hilbert_symbol_by_search(3, 3, Place::Prime(3)).unwrap(), -1);
        assert_eq!(hilbert_symbol_by_search(2, 2, Place::Prime(2)).unwrap(), 1);
        assert_eq!(hilbert_symbol_by_search(2, 5, Place::Prime(5)).unwrap(), -1);
    }

    #[test]
    fn enumeration_residues() {
        assert_eq!(legendre_by_enumeration(2, 7), 1);
        assert_eq!(legendre_by_enumeration(3, 7), -1);
        assert_eq!(legendre_by_enumeration(14, 7), 0);
    }
}

//! Multiplicative number theory and generalized binomial coefficients.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// The Möbius function, by trial division.
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::invalid("mobius is defined for n >= 1"));
    }
    let mut rest = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if rest > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// All positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::invalid("divisors are defined for n >= 1"));
    }
    let mut low = Vec::new();
    let mut high = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            low.push(d);
            if d != n / d {
                high.push(n / d);
            }
        }
        d += 1;
    }
    low.extend(high.into_iter().rev());
    Ok(low)
}

/// `a (a-1) ... (a-k+1) / k!` as an integer, for any integer `a`.
///
/// Each partial quotient `a (a-1) ... (a-i) / (i+1)!` is itself a binomial
/// coefficient, so the running division is always exact.
pub fn binomial(a: i64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(a) - BigInt::from(i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial coefficient with arbitrary integer upper index.
pub fn gen_binom(a: i64, k: u64) -> ExactRational {
    ExactRational::from_integer(binomial(a, k))
}

/// `(-1)^e` for a possibly negative exponent.
pub(crate) fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

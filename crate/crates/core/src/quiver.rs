//! Generalized Donaldson-Thomas invariants of the `m`-loop quiver.
//!
//! `DT_n^(m)` is defined by the product expansion of the generating series
//! `F(t) = sum_n chi(Hilb_n^(m)) t^n` of Euler characteristics of
//! noncommutative Hilbert schemes:
//!
//! ```text
//! F((-1)^(m-1) t) = prod_{n >= 1} (1 - t^n)^(-(-1)^((m-1) n) n DT_n^(m))
//! ```
//!
//! and has the closed form
//!
//! ```text
//! DT_n^(m) = 1/n^2 sum_{d | n} mu(n/d) (-1)^((m-1)(n-d)) binom(m d - 1, d - 1)
//! ```
//!
//! The binomial is `binom(m d - 1, d - 1)`; the variant with upper index
//! `m n - 1` is available through [`BinomialIndex::Printed`] only so that
//! its failure (`DT_4^(2) = 7/4`) can be tested.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{binomial, divisors, mobius, sign_pow};
use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::series::TruncatedSeries;

/// Upper index of the binomial in the closed-form divisor sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinomialIndex {
    /// `binom(m d - 1, d - 1)`.
    Corrected,
    /// `binom(m n - 1, d - 1)`; does not produce integers.
    Printed,
}

/// The signed divisor sum, before division by `n^2`.
fn divisor_sum(m: u32, n: u32, index: BinomialIndex) -> Result<BigInt> {
    let (m, n64) = (i64::from(m), u64::from(n));
    let mut sum = BigInt::zero();
    for d in divisors(n64)? {
        let mu = mobius(n64 / d)?;
        if mu == 0 {
            continue;
        }
        let upper_base = match index {
            BinomialIndex::Corrected => d as i64,
            BinomialIndex::Printed => n64 as i64,
        };
        let sign = sign_pow((m - 1) * (n64 - d) as i64) * i64::from(mu);
        sum += binomial(m * upper_base - 1, d - 1) * sign;
    }
    Ok(sum)
}

/// The closed-form divisor sum divided by `n^2`, with no integrality check.
pub fn dt_divisor_sum(m: u32, n: u32, index: BinomialIndex) -> Result<ExactRational> {
    if n == 0 {
        return Err(Error::invalid("DT_n is defined for n >= 1"));
    }
    let sum = divisor_sum(m, n, index)?;
    let n2 = BigInt::from(n) * BigInt::from(n);
    ExactRational::new(sum, n2)
}

/// `DT_n^(m)` from the closed form. `m = 0` is allowed and gives
/// `DT_n^(0) = delta_{n,1}`.
///
/// Fails with [`Error::FormulaIntegrity`] if the divisor sum is not a
/// nonnegative multiple of `n^2`.
pub fn dt_closed(m: u32, n: u32) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::invalid("DT_n is defined for n >= 1"));
    }
    let sum = divisor_sum(m, n, BinomialIndex::Corrected)?;
    let n2 = BigInt::from(n) * BigInt::from(n);
    let (quot, rem) = sum.div_rem(&n2);
    if !rem.is_zero() || quot.is_negative() {
        return Err(Error::FormulaIntegrity {
            m,
            n,
            value: ExactRational::new(sum, n2)?.to_string(),
        });
    }
    Ok(quot)
}

/// `DT_n^(m)` for `0 <= m <= m_max`, `1 <= n <= n_max`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DtTable {
    entries: BTreeMap<(u32, u32), BigInt>,
}

impl DtTable {
    pub fn get(&self, m: u32, n: u32) -> Option<&BigInt> {
        self.entries.get(&(m, n))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Loop counts present, ascending.
    pub fn loops(&self) -> Vec<u32> {
        let mut ms: Vec<u32> = self.entries.keys().map(|&(m, _)| m).collect();
        ms.dedup();
        ms
    }

    /// Largest `n` present in any row.
    pub fn max_n(&self) -> u32 {
        self.entries.keys().map(|&(_, n)| n).max().unwrap_or(0)
    }

    /// `DT_1^(m), DT_2^(m), ...` for one loop count.
    pub fn row(&self, m: u32) -> Vec<&BigInt> {
        self.entries.range((m, 0)..=(m, u32::MAX)).map(|(_, v)| v).collect()
    }

    pub fn insert(&mut self, m: u32, n: u32, value: BigInt) {
        self.entries.insert((m, n), value);
    }
}

pub fn dt_table(m_max: u32, n_max: u32) -> Result<DtTable> {
    if n_max == 0 {
        return Err(Error::invalid("n_max must be at least 1"));
    }
    let mut table = DtTable::default();
    for m in 0..=m_max {
        for n in 1..=n_max {
            table.insert(m, n, dt_closed(m, n)?);
        }
    }
    Ok(table)
}

/// Euler characteristics `chi(Hilb_n^(m))` for `n = 0..=N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerSeries {
    pub m: u32,
    chi: Vec<BigInt>,
}

impl EulerSeries {
    /// Requires `chi[0] = 1` and at least one further term.
    pub fn new(m: u32, chi: Vec<BigInt>) -> Result<Self> {
        match chi.first() {
            Some(c) if *c == BigInt::from(1) => {}
            _ => return Err(Error::invalid("Euler series must start with chi_0 = 1")),
        }
        if chi.len() < 2 {
            return Err(Error::invalid("Euler series needs at least one term beyond chi_0"));
        }
        Ok(Self { m, chi })
    }

    pub fn chi(&self) -> &[BigInt] {
        &self.chi
    }

    pub fn order(&self) -> usize {
        self.chi.len() - 1
    }
}

fn loop_sign(m: u32) -> ExactRational {
    ExactRational::from(sign_pow(i64::from(m) - 1))
}

/// Reads `DT_1 ..= DT_N` off the product expansion of `F((-1)^(m-1) t)`.
pub fn dt_from_euler(e: &EulerSeries) -> Result<Vec<BigInt>> {
    let coeffs = e.chi.iter().cloned().map(ExactRational::from).collect();
    let signed = TruncatedSeries::new(coeffs)?.rescale_variable(&loop_sign(e.m));
    let exponents = signed.product_decompose()?;
    exponents
        .into_iter()
        .enumerate()
        .map(|(i, exp)| {
            let n = i + 1;
            let sign = sign_pow((i64::from(e.m) - 1) * n as i64);
            let dt = (-exp * ExactRational::from(sign)).div_int(n as i64)?;
            dt.to_integer().ok_or_else(|| Error::NonIntegralDt { n, value: dt.to_string() })
        })
        .collect()
}

/// Expands `prod (1 - t^n)^(-(-1)^((m-1) n) n DT_n)` to order `order` and
/// undoes the sign substitution. Entries of `dt` beyond `order` are ignored;
/// missing ones count as zero.
pub fn euler_from_dt(m: u32, dt: &[BigInt], order: usize) -> Result<EulerSeries> {
    if order == 0 {
        return Err(Error::invalid("order must be at least 1"));
    }
    let exponents: Vec<ExactRational> = dt
        .iter()
        .take(order)
        .enumerate()
        .map(|(i, v)| {
            let n = (i + 1) as i64;
            let sign = sign_pow((i64::from(m) - 1) * n);
            ExactRational::from(-(v * BigInt::from(sign * n)))
        })
        .collect();
    // The substitution t -> (-1)^(m-1) t is an involution.
    let series = TruncatedSeries::product_compose(&exponents, order).rescale_variable(&loop_sign(m));
    let chi = series
        .into_coeffs()
        .into_iter()
        .map(|c| c.to_integer().ok_or_else(|| Error::invalid("product of integer powers gave a fraction")))
        .collect::<Result<Vec<_>>>()?;
    EulerSeries::new(m, chi)
}

//! Formal power series truncated at a fixed order, with exact coefficients.
//!
//! A series of order `N` stores the coefficients of `t^0 ..= t^N`. Every
//! operation between two series requires equal orders and truncates its
//! result back to that order.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

use crate::arith::{divisors, mobius};
use crate::error::{Error, Result};
use crate::rational::ExactRational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    coeffs: Vec<ExactRational>,
}

impl TruncatedSeries {
    /// Series whose order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<ExactRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("a series needs at least a constant term"));
        }
        Ok(Self { coeffs })
    }

    /// Pads with zeros or drops coefficients beyond `order`.
    pub fn with_order(mut coeffs: Vec<ExactRational>, order: usize) -> Self {
        coeffs.resize(order + 1, ExactRational::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![ExactRational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = ExactRational::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactRational> {
        self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { coeffs })
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Cauchy product, truncated.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    /// `f(c t)`: multiplies the coefficient of `t^k` by `c^k`.
    pub fn rescale_variable(&self, c: &ExactRational) -> Self {
        let mut power = ExactRational::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a * &power);
            power *= c;
        }
        Self { coeffs }
    }

    /// Formal logarithm, `log(1 + u) = sum_{k >= 1} (-1)^(k+1) u^k / k` with
    /// `u = f - 1`. Requires a constant term of exactly one.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != ExactRational::one() {
            return Err(Error::invalid("formal logarithm needs constant term 1"));
        }
        let n = self.order();
        let mut u = self.clone();
        u.coeffs[0] = ExactRational::zero();

        let mut out = Self::zero(n);
        let mut power = u.clone();
        for k in 1..=n {
            let weight = ExactRational::new(if k % 2 == 1 { 1 } else { -1 }, k as i64)?;
            for (o, p) in out.coeffs.iter_mut().zip(&power.coeffs).skip(k) {
                if !p.is_zero() {
                    *o += p * &weight;
                }
            }
            if k < n {
                power = power.mul_unchecked(&u);
            }
        }
        Ok(out)
    }

    /// Exponents `e_1 ..= e_N` with `f = prod_n (1 - t^n)^(e_n)` modulo
    /// `t^(N+1)`.
    ///
    /// With `c_k` the coefficient of `t^k` in `-log f`, the exponents satisfy
    /// `k c_k = sum_{n | k} n e_n`, which Möbius inversion solves as
    /// `n e_n = sum_{d | n} mu(n/d) d c_d`.
    pub fn product_decompose(&self) -> Result<Vec<ExactRational>> {
        let neg_log = self.log()?.scale(&ExactRational::from(-1));
        let c = neg_log.coeffs();
        (1..=self.order() as u64)
            .map(|n| {
                let mut acc = ExactRational::zero();
                for d in divisors(n)? {
                    let mu = mobius(n / d)?;
                    if mu != 0 {
                        acc += &c[d as usize] * &ExactRational::from((mu as i64) * d as i64);
                    }
                }
                acc.div_int(n as i64)
            })
            .collect()
    }

    /// `prod_{n >= 1} (1 - t^n)^(e_n)` truncated at `order`; entries of
    /// `exponents` beyond `order` are ignored and missing ones count as zero.
    ///
    /// Each factor is expanded with the generalized binomial series, so this
    /// does not go through the logarithm used by [`product_decompose`].
    ///
    /// [`product_decompose`]: TruncatedSeries::product_decompose
    pub fn product_compose(exponents: &[ExactRational], order: usize) -> Self {
        let mut acc = Self::one(order);
        for (idx, e) in exponents.iter().enumerate().take(order) {
            if e.is_zero() {
                continue;
            }
            let step = idx + 1;
            acc = acc.mul_unchecked(&binomial_power(e, step, order));
        }
        acc
    }
}

/// `(1 - t^step)^e = sum_j binom(e, j) (-1)^j t^(step j)` for rational `e`.
fn binomial_power(e: &ExactRational, step: usize, order: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(order);
    let mut term = ExactRational::one();
    let mut j = 0usize;
    while j * step <= order {
        out.coeffs[j * step] = term.clone();
        // binom(e, j+1) (-1)^(j+1) from binom(e, j) (-1)^j
        let factor = (e - &ExactRational::from(j as i64)).div_int(-(j as i64 + 1));
        term *= factor.expect("nonzero divisor");
        j += 1;
    }
    out
}

impl Index<usize> for TruncatedSeries {
    type Output = ExactRational;

    fn index(&self, k: usize) -> &ExactRational {
        &self.coeffs[k]
    }
}

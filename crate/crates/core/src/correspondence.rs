//! The linear relation between relative and local BPS counts.
//!
//! `C` is the lower triangular matrix with `C[s][t] = DT_{s/t}^(tw - 1)` when
//! `t | s` and zero otherwise (1-based indices), and
//!
//! ```text
//! C . [n_S[dw]]_d = [(-1)^(dw + 1) dw n_{d beta}]_d
//! ```
//!
//! The diagonal is `DT_1 = 1`, so `C` has an integer inverse and integral
//! local counts give integral relative counts. Only the leading `N x N` block
//! is ever built; it determines the first `N` entries exactly.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::sign_pow;
use crate::bps::{BpsVector, GeometryParams, Kind};
use crate::error::{Error, Result};
use crate::quiver::dt_closed;
use crate::rational::ExactRational;

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    /// Fails unless `rows` is square.
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix must be square"));
        }
        Ok(Self { rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn identity(dim: usize) -> Self {
        let mut rows = vec![vec![BigInt::zero(); dim]; dim];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        Self { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// 0-based access.
    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.rows[row][col]
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::invalid("matrix dimensions differ"));
        }
        let n = self.dim();
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for (i, out) in rows.iter_mut().enumerate() {
            for (k, a) in self.rows[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (o, b) in out.iter_mut().zip(&other.rows[k]) {
                    *o += a * b;
                }
            }
        }
        Ok(Self { rows })
    }

    /// `self . v` over the rationals. `v` must have length `dim`.
    pub fn apply(&self, v: &[ExactRational]) -> Result<Vec<ExactRational>> {
        if v.len() != self.dim() {
            return Err(Error::invalid("vector length does not match matrix dimension"));
        }
        Ok(self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(c, x)| !c.is_zero() && !x.is_zero())
                    .map(|(c, x)| ExactRational::from(c.clone()) * x)
                    .sum()
            })
            .collect())
    }
}

/// Inverse of a unit lower triangular integer matrix by forward substitution.
pub fn invert_unit_lower_triangular(c: &IntMatrix) -> Result<IntMatrix> {
    let n = c.dim();
    for (i, row) in c.rows.iter().enumerate() {
        if !row[i].is_one() {
            return Err(Error::NotUnitLowerTriangular(format!("diagonal entry {} is {}", i + 1, row[i])));
        }
        if let Some(j) = row[i + 1..].iter().position(|x| !x.is_zero()) {
            return Err(Error::NotUnitLowerTriangular(format!("entry ({}, {}) above the diagonal", i + 1, i + j + 2)));
        }
    }
    let mut inv = IntMatrix::identity(n);
    for j in 0..n {
        for i in j + 1..n {
            let mut acc = BigInt::zero();
            for k in j..i {
                let cik = &c.rows[i][k];
                if !cik.is_zero() {
                    acc -= cik * &inv.rows[k][j];
                }
            }
            inv.rows[i][j] = acc;
        }
    }
    Ok(inv)
}

/// Leading `N x N` block of `C` for a given `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceMatrix {
    w: u32,
    matrix: IntMatrix,
}

impl CorrespondenceMatrix {
    pub fn w(&self) -> u32 {
        self.w
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn as_matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// 1-based access, matching the `(s, t)` indexing of `C`.
    pub fn entry(&self, s: usize, t: usize) -> &BigInt {
        self.matrix.get(s - 1, t - 1)
    }

    pub fn inverse(&self) -> Result<IntMatrix> {
        invert_unit_lower_triangular(&self.matrix)
    }
}

pub fn build_matrix(w: u32, dim: usize) -> Result<CorrespondenceMatrix> {
    if w == 0 {
        return Err(Error::invalid("w must be at least 1"));
    }
    if dim == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    let mut rows = vec![vec![BigInt::zero(); dim]; dim];
    for s in 1..=dim {
        for t in (1..=s).filter(|t| s % t == 0) {
            let loops = t as u32 * w - 1;
            rows[s - 1][t - 1] = dt_closed(loops, (s / t) as u32)?;
        }
    }
    Ok(CorrespondenceMatrix { w, matrix: IntMatrix { rows } })
}

/// `(-1)^(dw + 1) dw`.
fn scale_factor(w: u32, d: usize) -> i64 {
    let dw = d as i64 * i64::from(w);
    sign_pow(dw + 1) * dw
}

/// Entry `d` is `(-1)^(dw + 1) d w n_d`.
pub fn local_scaling_vector(n_local: &BpsVector) -> Result<Vec<ExactRational>> {
    if n_local.kind != Kind::Local {
        return Err(Error::KindMismatch { expected: Kind::Local, found: n_local.kind });
    }
    let w = n_local.geometry.w();
    Ok(n_local
        .entries
        .iter()
        .enumerate()
        .map(|(i, n)| n * &ExactRational::from(scale_factor(w, i + 1)))
        .collect())
}

fn take_prefix(v: &BpsVector, expected: Kind, len: usize) -> Result<BpsVector> {
    if v.kind != expected {
        return Err(Error::KindMismatch { expected, found: v.kind });
    }
    if len == 0 {
        return Err(Error::invalid("order must be at least 1"));
    }
    if v.len() < len {
        return Err(Error::invalid(format!("need {len} entries, got {}", v.len())));
    }
    Ok(v.truncated(len))
}

/// Relative counts `C^{-1} [(-1)^(dw + 1) dw n_{d beta}]`, first `len` entries.
pub fn local_to_relative_bps(n_local: &BpsVector, len: usize) -> Result<BpsVector> {
    let n_local = take_prefix(n_local, Kind::Local, len)?;
    let geometry: GeometryParams = n_local.geometry;
    let inv = build_matrix(geometry.w(), len)?.inverse()?;
    let entries = inv.apply(&local_scaling_vector(&n_local)?)?;
    Ok(BpsVector::relative(geometry, entries))
}

/// Local counts `n_d = (-1)^(dw + 1) (C n_rel)_d / (dw)`, first `len` entries.
pub fn relative_to_local_bps(n_rel: &BpsVector, len: usize) -> Result<BpsVector> {
    let n_rel = take_prefix(n_rel, Kind::Relative, len)?;
    let w = n_rel.geometry.w();
    let image = build_matrix(w, len)?.as_matrix().apply(&n_rel.entries)?;
    let entries = image
        .into_iter()
        .enumerate()
        .map(|(i, x)| x.div_int(scale_factor(w, i + 1)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BpsVector::local(n_rel.geometry, entries))
}

/// Which entries of a vector fail to be integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralityReport {
    /// 1-based indices `d` of non-integral entries.
    pub non_integral: Vec<usize>,
}

impl IntegralityReport {
    pub fn passed(&self) -> bool {
        self.non_integral.is_empty()
    }
}

pub fn integrality_report(values: &[ExactRational]) -> IntegralityReport {
    IntegralityReport {
        non_integral: values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_integer())
            .map(|(i, _)| i + 1)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> ExactRational {
        s.parse().unwrap()
    }

    fn qs(cs: &[&str]) -> Vec<ExactRational> {
        cs.iter().map(|c| q(c)).collect()
    }

    fn geom(w: u32) -> GeometryParams {
        GeometryParams::new(w, true).unwrap()
    }

    #[test]
    fn matrix_examples() {
        let c = build_matrix(3, 3).unwrap();
        assert_eq!(c.as_matrix(), &IntMatrix::from_i64(&[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1]]).unwrap());
        let c = build_matrix(3, 4).unwrap();
        assert_eq!(c.as_matrix().rows()[3], vec![BigInt::from(2), BigInt::from(2), BigInt::zero(), BigInt::one()]);
        for w in 1..5 {
            assert_eq!(build_matrix(w, 1).unwrap().as_matrix(), &IntMatrix::identity(1));
        }
        assert!(build_matrix(0, 3).is_err());
        assert!(build_matrix(3, 0).is_err());
    }

    #[test]
    fn inverse_examples() {
        let c = IntMatrix::from_i64(&[&[1, 0], &[1, 1]]).unwrap();
        assert_eq!(invert_unit_lower_triangular(&c).unwrap(), IntMatrix::from_i64(&[&[1, 0], &[-1, 1]]).unwrap());
        assert_eq!(invert_unit_lower_triangular(&IntMatrix::identity(5)).unwrap(), IntMatrix::identity(5));
        assert_eq!(
            build_matrix(3, 3).unwrap().inverse().unwrap(),
            IntMatrix::from_i64(&[&[1, 0, 0], &[-1, 1, 0], &[-1, 0, 1]]).unwrap()
        );
    }

    #[test]
    fn malformed_matrices_are_rejected() {
        let bad_diag = IntMatrix::from_i64(&[&[1, 0], &[1, 2]]).unwrap();
        assert!(matches!(invert_unit_lower_triangular(&bad_diag), Err(Error::NotUnitLowerTriangular(_))));
        let upper = IntMatrix::from_i64(&[&[1, 3], &[0, 1]]).unwrap();
        assert!(matches!(invert_unit_lower_triangular(&upper), Err(Error::NotUnitLowerTriangular(_))));
        assert!(IntMatrix::from_i64(&[&[1, 0], &[1]]).is_err());
    }

    #[test]
    fn scaling_vector() {
        let v = local_scaling_vector(&BpsVector::local(geom(3), qs(&["3", "-6"]))).unwrap();
        assert_eq!(v, qs(&["9", "36"]));
        let v = local_scaling_vector(&BpsVector::local(geom(2), qs(&["1"]))).unwrap();
        assert_eq!(v, qs(&["-2"]));
        let v = local_scaling_vector(&BpsVector::local(geom(5), qs(&["0", "0"]))).unwrap();
        assert_eq!(v, qs(&["0", "0"]));
    }

    #[test]
    fn local_to_relative_examples() {
        let rel = |n: &[&str]| local_to_relative_bps(&BpsVector::local(geom(3), qs(n)), n.len()).unwrap().entries;
        assert_eq!(rel(&["3"]), qs(&["9"]));
        assert_eq!(rel(&["3", "-6"]), qs(&["9", "27"]));
        assert_eq!(rel(&["3", "-6", "27"]), qs(&["9", "27", "234"]));
    }

    #[test]
    fn relative_to_local_examples() {
        let loc = |n: &[&str]| relative_to_local_bps(&BpsVector::relative(geom(3), qs(n)), n.len()).unwrap().entries;
        assert_eq!(loc(&["9", "27", "234"]), qs(&["3", "-6", "27"]));
        assert_eq!(loc(&["9"]), qs(&["3"]));
        assert_eq!(loc(&["0", "0", "0"]), qs(&["0", "0", "0"]));
    }

    #[test]
    fn transform_preconditions() {
        let v = BpsVector::local(geom(3), qs(&["3", "-6"]));
        assert!(local_to_relative_bps(&v, 3).is_err());
        assert!(local_to_relative_bps(&v, 0).is_err());
        assert_eq!(local_to_relative_bps(&v, 1).unwrap().entries, qs(&["9"]));
        assert!(relative_to_local_bps(&v, 2).is_err());
    }

    #[test]
    fn integrality() {
        let r = integrality_report(&qs(&["9", "27", "234"]));
        assert!(r.passed());
        let r = integrality_report(&qs(&["9", "27/2"]));
        assert!(!r.passed());
        assert_eq!(r.non_integral, vec![2]);
        assert!(integrality_report(&[]).passed());
    }
}

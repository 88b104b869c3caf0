//! Gromov-Witten generating series and the BPS counts extracted from them.
//!
//! Both dictionaries have the shape
//!
//! ```text
//! sum_l GW_l q^l = sum_d n_d sum_k K(d, k) q^(dk)
//! ```
//!
//! with `K(d, 1) = 1`, so the relation is unitriangular in `d` and inverts by
//! recursion over the proper divisors of each index.
//!
//! - local: `K(d, k) = 1 / k^3`, and `GW_l = I_{K_S}(l beta)`;
//! - relative: `K(d, k) = binom(k(dw - 1) - 1, k - 1) / k^2`, the contribution
//!   of `k`-fold covers of a rigid curve of tangency `dw`, and
//!   `GW_l = N_S[lw]`.
//!
//! Vectors are indexed by the curve-class multiple `d` starting at 1; the
//! tangency order of entry `d` is `d * w`.

use alloc::vec::Vec;
use core::fmt;
use core::num::NonZeroU32;

use crate::arith::{divisors, gen_binom};
use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// Whether a vector belongs to the local threefold `K_S` or to the
/// maximal-tangency relative theory of `(S, D)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Local,
    Relative,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Local => "local",
            Kind::Relative => "relative",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeometryParams {
    /// Total intersection multiplicity `w = D . beta`.
    pub w: NonZeroU32,
    /// Caller's assertion that `beta` is primitive. Not checkable from the
    /// series; carried through so reports can show it.
    pub primitive: bool,
}

impl GeometryParams {
    pub fn new(w: u32, primitive: bool) -> Result<Self> {
        let w = NonZeroU32::new(w).ok_or_else(|| Error::invalid("w must be at least 1"))?;
        Ok(Self { w, primitive })
    }

    pub fn w(&self) -> u32 {
        self.w.get()
    }
}

macro_rules! tagged_vector {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq)]
        pub struct $name {
            pub kind: Kind,
            pub geometry: GeometryParams,
            /// `entries[d - 1]` holds the value for the class `d beta`.
            pub entries: Vec<ExactRational>,
        }

        impl $name {
            pub fn new(kind: Kind, geometry: GeometryParams, entries: Vec<ExactRational>) -> Self {
                Self { kind, geometry, entries }
            }

            pub fn local(geometry: GeometryParams, entries: Vec<ExactRational>) -> Self {
                Self::new(Kind::Local, geometry, entries)
            }

            pub fn relative(geometry: GeometryParams, entries: Vec<ExactRational>) -> Self {
                Self::new(Kind::Relative, geometry, entries)
            }

            pub fn len(&self) -> usize {
                self.entries.len()
            }

            pub fn is_empty(&self) -> bool {
                self.entries.is_empty()
            }

            /// Value at class multiple `d >= 1`.
            pub fn get(&self, d: usize) -> Option<&ExactRational> {
                d.checked_sub(1).and_then(|i| self.entries.get(i))
            }

            /// Keeps only the first `len` entries.
            pub fn truncated(&self, len: usize) -> Self {
                let mut v = self.clone();
                v.entries.truncate(len);
                v
            }

            fn expect_kind(&self, expected: Kind) -> Result<()> {
                if self.kind != expected {
                    return Err(Error::KindMismatch { expected, found: self.kind });
                }
                if self.entries.is_empty() {
                    return Err(Error::invalid("vector has no entries"));
                }
                Ok(())
            }
        }
    };
}

tagged_vector!(
    /// Gromov-Witten invariants: `I_{K_S}(d beta)` when local, `N_S[dw]` when
    /// relative.
    GwVector
);
tagged_vector!(
    /// BPS state counts: `n_{d beta}` when local, `n_S[dw]` when relative.
    BpsVector
);

/// Contribution of a `k`-fold cover of a rigid relative curve of class
/// `d beta`, i.e. of tangency `d w`:
/// `binom(k(dw - 1) - 1, k - 1) / k^2`.
///
/// For `dw = 1` the upper index is negative and the value is
/// `(-1)^(k-1) / k^2`.
pub fn multiple_cover_contribution(w: u32, d: u32, k: u32) -> ExactRational {
    let tangency = i64::from(d) * i64::from(w);
    let k64 = i64::from(k);
    let upper = k64 * (tangency - 1) - 1;
    gen_binom(upper, u64::from(k - 1))
        .div_int(k64 * k64)
        .expect("k >= 1")
}

fn local_kernel(k: u64) -> ExactRational {
    let k = k as i64;
    ExactRational::new(1, k * k * k).expect("k >= 1")
}

/// `out_l = sum_{dk = l} input_d kernel(d, k)`.
fn forward(input: &[ExactRational], kernel: impl Fn(u64, u64) -> ExactRational) -> Result<Vec<ExactRational>> {
    (1..=input.len() as u64)
        .map(|l| {
            let mut acc = ExactRational::zero();
            for k in divisors(l)? {
                let d = l / k;
                let n = &input[d as usize - 1];
                if !n.is_zero() {
                    acc += n * &kernel(d, k);
                }
            }
            Ok(acc)
        })
        .collect()
}

/// Solves `forward(out) = input`, using `kernel(d, 1) = 1`.
fn inverse(input: &[ExactRational], kernel: impl Fn(u64, u64) -> ExactRational) -> Result<Vec<ExactRational>> {
    let mut out: Vec<ExactRational> = Vec::with_capacity(input.len());
    for l in 1..=input.len() as u64 {
        let mut acc = input[l as usize - 1].clone();
        for k in divisors(l)?.into_iter().skip(1) {
            let d = l / k;
            let n = &out[d as usize - 1];
            if !n.is_zero() {
                acc -= n * &kernel(d, k);
            }
        }
        out.push(acc);
    }
    Ok(out)
}

fn relative_kernel(w: u32) -> impl Fn(u64, u64) -> ExactRational {
    move |d, k| multiple_cover_contribution(w, d as u32, k as u32)
}

/// `I_l = sum_{dk = l} n_d / k^3`.
pub fn local_gw_from_bps(n: &BpsVector) -> Result<GwVector> {
    n.expect_kind(Kind::Local)?;
    let entries = forward(&n.entries, |_, k| local_kernel(k))?;
    Ok(GwVector::local(n.geometry, entries))
}

/// `n_l = I_l - sum_{k | l, k > 1} n_{l/k} / k^3`.
pub fn local_bps_from_gw(gw: &GwVector) -> Result<BpsVector> {
    gw.expect_kind(Kind::Local)?;
    let entries = inverse(&gw.entries, |_, k| local_kernel(k))?;
    Ok(BpsVector::local(gw.geometry, entries))
}

/// `N[lw] = sum_{dk = l} n_S[dw] binom(k(dw - 1) - 1, k - 1) / k^2`.
pub fn relative_gw_from_bps(n: &BpsVector) -> Result<GwVector> {
    n.expect_kind(Kind::Relative)?;
    let entries = forward(&n.entries, relative_kernel(n.geometry.w()))?;
    Ok(GwVector::relative(n.geometry, entries))
}

/// Triangular inversion of [`relative_gw_from_bps`].
pub fn relative_bps_from_gw(gw: &GwVector) -> Result<BpsVector> {
    gw.expect_kind(Kind::Relative)?;
    let entries = inverse(&gw.entries, relative_kernel(gw.geometry.w()))?;
    Ok(BpsVector::relative(gw.geometry, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

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
    fn local_forward() {
        let gw = local_gw_from_bps(&BpsVector::local(geom(3), qs(&["1", "0", "0"]))).unwrap();
        assert_eq!(gw.entries, qs(&["1", "1/8", "1/27"]));
        let gw = local_gw_from_bps(&BpsVector::local(geom(3), qs(&["0", "0", "0"]))).unwrap();
        assert_eq!(gw.entries, qs(&["0", "0", "0"]));
        let gw = local_gw_from_bps(&BpsVector::local(geom(3), qs(&["3", "-6"]))).unwrap();
        assert_eq!(gw.entries, qs(&["3", "-45/8"]));
    }

    #[test]
    fn local_inverse() {
        let n = local_bps_from_gw(&GwVector::local(geom(3), qs(&["3", "-45/8"]))).unwrap();
        assert_eq!(n.entries, qs(&["3", "-6"]));
        let n = local_bps_from_gw(&GwVector::local(geom(3), qs(&["1", "1/8"]))).unwrap();
        assert_eq!(n.entries, qs(&["1", "0"]));
        let n = local_bps_from_gw(&GwVector::local(geom(3), qs(&["0", "0", "0"]))).unwrap();
        assert_eq!(n.entries, qs(&["0", "0", "0"]));
    }

    #[test]
    fn cover_contributions() {
        assert_eq!(multiple_cover_contribution(3, 1, 1), q("1"));
        assert_eq!(multiple_cover_contribution(3, 1, 2), q("3/4"));
        assert_eq!(multiple_cover_contribution(1, 1, 2), q("-1/4"));
        assert_eq!(multiple_cover_contribution(2, 1, 3), q("1/9"));
        // tangency dw = 3 also reached as d = 3, w = 1
        assert_eq!(multiple_cover_contribution(1, 3, 2), q("3/4"));
    }

    #[test]
    fn relative_forward() {
        let gw = relative_gw_from_bps(&BpsVector::relative(geom(3), qs(&["9"]))).unwrap();
        assert_eq!(gw.entries, qs(&["9"]));
        let gw = relative_gw_from_bps(&BpsVector::relative(geom(3), qs(&["9", "27"]))).unwrap();
        assert_eq!(gw.entries, qs(&["9", "135/4"]));
        let gw = relative_gw_from_bps(&BpsVector::relative(geom(3), qs(&["9", "27", "234"]))).unwrap();
        assert_eq!(gw.entries, qs(&["9", "135/4", "244"]));
    }

    #[test]
    fn relative_inverse() {
        let n = relative_bps_from_gw(&GwVector::relative(geom(3), qs(&["9", "135/4"]))).unwrap();
        assert_eq!(n.entries, qs(&["9", "27"]));
        let n = relative_bps_from_gw(&GwVector::relative(geom(3), qs(&["9", "10"]))).unwrap();
        assert_eq!(n.entries, qs(&["9", "13/4"]));
        for w in 1..=4 {
            let n = relative_bps_from_gw(&GwVector::relative(geom(w), qs(&["0", "0", "0", "0"]))).unwrap();
            assert_eq!(n.entries, qs(&["0", "0", "0", "0"]));
        }
    }

    #[test]
    fn kinds_and_emptiness_are_checked() {
        let rel = GwVector::relative(geom(3), qs(&["1"]));
        assert_eq!(
            local_bps_from_gw(&rel),
            Err(Error::KindMismatch { expected: Kind::Local, found: Kind::Relative })
        );
        let loc = BpsVector::local(geom(3), qs(&["1"]));
        assert!(relative_gw_from_bps(&loc).is_err());
        let empty = BpsVector::local(geom(3), vec![]);
        assert!(matches!(local_gw_from_bps(&empty), Err(Error::InvalidInput(_))));
        assert!(GeometryParams::new(0, true).is_err());
    }
}

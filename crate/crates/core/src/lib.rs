//! Exact arithmetic for genus-0 BPS state counts of del Pezzo surfaces.
//!
//! The crate is `no_std` (it needs `alloc` for arbitrary-precision integers)
//! and is organised bottom-up:
//!
//! - [`rational`], [`arith`] and [`series`] provide exact rationals, the
//!   multiplicative number theory helpers and truncated power series with a
//!   formal logarithm and infinite-product decomposition.
//! - [`bps`] converts between Gromov-Witten generating series and BPS counts,
//!   both for the local Calabi-Yau threefold `K_S` and for maximal-tangency
//!   relative invariants of the pair `(S, D)`.
//! - [`quiver`] evaluates generalized Donaldson-Thomas invariants of the
//!   `m`-loop quiver and translates them to and from Euler characteristic
//!   generating series.
//! - [`correspondence`] builds the DT-valued lower triangular matrix linking
//!   relative and local BPS counts, inverts it over the integers and checks
//!   integrality.
#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod arith;
pub mod bps;
pub mod correspondence;
mod error;
pub mod quiver;
pub mod rational;
pub mod series;

pub use error::{Error, Result};
pub use rational::ExactRational;

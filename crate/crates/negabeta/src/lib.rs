//! Exact negative-base numeration for Pisot bases.
//!
//! Everything here is exact: no floating point anywhere. A base is a monic
//! integer polynomial with a certified isolating interval around its
//! largest real root `beta > 1`; elements of Q(beta) are rational
//! coefficient vectors with sign, floor and comparison decided by interval
//! refinement backed by an exact zero test.
//!
//! On top of that foundation sit:
//!
//! - [`negabase`]: the transformation x -> -beta x - floor(-beta x - l) on
//!   [l, l+1) with l = -beta/(beta+1), digit expansions with eventual-period
//!   detection, fractional lengths, and enumeration of the
//!   (-beta)-integers;
//! - [`alphasrs`]: the conjugate shift radix system on integer lattices,
//!   witness-set closures and the finiteness decision with cycle
//!   certificates;
//! - [`finiteness`]: deciders for the negative finiteness property
//!   (every element of Z[1/beta] has a finite expansion), with
//!   machine-checkable certificates for every refutation;
//! - [`negarith`]: the carry system for the family x^3 - m x^2 - m x - m,
//!   its finite invariant set, and certified maxima for the number of
//!   fractional digits produced by adding or subtracting
//!   (-beta)-integers;
//! - [`cli`]: the `negabeta` command-line tool with deterministic text and
//!   JSON output.

pub mod alphasrs;
pub mod base;
pub mod cli;
pub mod error;
pub mod field;
pub mod finiteness;
pub mod interval;
pub mod negabase;
pub mod negarith;
pub mod poly;

pub use base::{isolate_pisot_base, PisotBase};
pub use error::{Error, Result};
pub use field::FieldElement;
pub use poly::IntPolynomial;

//! Kazhdan–Lusztig atlas charts on `G/P` for `G = SL_n`.
//!
//! The crate is `no_std` (it needs `alloc`). It contains the finite and affine
//! Weyl group combinatorics, exact polynomial and Laurent-matrix algebra, the
//! Bott–Samelson chart maps on both sides of the atlas, and the stratum and
//! divisor machinery used to check that the charts are stratified
//! isomorphisms. IO, configuration and report encoding live in the `klatlas`
//! binary crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod affine;
pub mod algebra;
pub mod cells;
pub mod charts;
pub mod divisors;
pub mod error;
pub mod report;
pub mod loop_group;
pub mod sampling;
pub mod strata;
pub mod weyl;

pub use error::{Error, Result};

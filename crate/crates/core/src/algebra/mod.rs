//! Exact arithmetic: rationals, multivariate and univariate polynomials,
//! rational functions in one variable, Laurent polynomials in `t`, and dense
//! matrices over any of them.

pub mod laurent;
pub mod matrix;
pub mod multipoly;
pub mod rational;
pub mod ring;
pub mod unipoly;

pub use laurent::LaurentPoly;
pub use matrix::Matrix;
pub use multipoly::{Monomial, MultiPoly};
pub use rational::{int, rat, Rational};
pub use ring::{Domain, Field, Ring};
pub use unipoly::{RatFunc, UniPoly};

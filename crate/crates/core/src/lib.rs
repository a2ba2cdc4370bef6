//! A laboratory for the coefficients `p_xi(n)` of the Gordon--McIntosh mock
//! theta function `xi(q)`.
//!
//! The crate provides:
//! - [`series`]: ring-generic truncated power series arithmetic;
//! - [`factory`]: constructors for Euler products, eta-quotients, theta
//!   functions, and the mock theta functions `xi`, `omega`, `nu`, `f`, `g_3`;
//! - [`congruence`]: Legendre symbols, quadratic-residue congruence families,
//!   claim verification, and an arithmetic-progression scanner;
//! - [`expr`]: a text grammar and evaluator for q-series expressions;
//! - [`suite`]: the executable catalog of dissection identities, congruences,
//!   characterizations, and conjectures, with a JSON report.

pub mod congruence;
pub mod expr;
pub mod factory;
pub mod series;
pub mod suite;

pub use factory::{mock_xi_definition, pxi};
pub use series::{ExactInts, Mod, Ring, Series, SeriesError, Sign};

//! Explicit zero repulsion for Dirichlet L-functions near an exceptional zero.
//!
//! The crate is organised bottom-up: exact arithmetic on characters and
//! multiplicative functions, the Selberg sieve weights, interval-valued
//! analytic evaluation, a certificate engine and the explicit bounds.

// `!(a < b)` is used on floats on purpose: a NaN must count as failure.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod arith;
pub mod bounds;
pub mod characters;
pub mod error;
pub mod interval;
pub mod multiplicative;
pub mod rigor;
pub mod sieve;

pub use arith::Factorization;
pub use bounds::{BoundReport, HypothesisParams, Hypotheses};
pub use characters::{
    enumerate_characters, kronecker, real_quadratic_characters, CharValue, DirichletCharacter,
    UnitGroup,
};
pub use error::{Error, Result, WindowSide};
pub use interval::Interval;
pub use multiplicative::{ExceptionalContext, PrimeKind};
pub use sieve::{build_weights, SieveSystem};
pub use rigor::{Certificate, Verdict};

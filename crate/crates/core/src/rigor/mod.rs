//! Rigorous quadrature, Euler products and series tails, and the certificate
//! suite built on them.

use serde::{Deserialize, Serialize};

use crate::interval::Interval;

pub mod certificates;
pub mod products;
pub mod quadrature;

pub use certificates::{certificate_names, verify_all, verify_certificate, Certificate, Check, Rigor};
pub use products::{prime_product_rigorous, series_tail_rigorous, PrimeFactor, SeriesTerm};
pub use quadrature::{integrate_rigorous, registered_form, AlgebraicForm, Domain, QuadParams};

/// Outcome of comparing two enclosures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Failed,
    Inconclusive,
}

impl Verdict {
    /// `a < b` for every point of the enclosures.
    pub fn lt(a: Interval, b: Interval) -> Verdict {
        if a.hi() < b.lo() {
            Verdict::Verified
        } else if a.lo() >= b.hi() {
            Verdict::Failed
        } else {
            Verdict::Inconclusive
        }
    }

    /// `a <= b` for every point of the enclosures.
    pub fn le(a: Interval, b: Interval) -> Verdict {
        if a.hi() <= b.lo() {
            Verdict::Verified
        } else if a.lo() > b.hi() {
            Verdict::Failed
        } else {
            Verdict::Inconclusive
        }
    }

    /// Failed dominates inconclusive, which dominates verified.
    pub fn all<I: IntoIterator<Item = Verdict>>(vs: I) -> Verdict {
        let mut out = Verdict::Verified;
        for v in vs {
            match v {
                Verdict::Failed => return Verdict::Failed,
                Verdict::Inconclusive => out = Verdict::Inconclusive,
                Verdict::Verified => {}
            }
        }
        out
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::Failed => "failed",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

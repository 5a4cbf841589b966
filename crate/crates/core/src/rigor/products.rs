//! Euler products over primes and series tails, each with a proven tail.

use crate::arith::primes_up_to;
use crate::error::{Error, Result};
use crate::interval::Interval;

/// A local factor `1 + sum_k c_k p^{-e_k}` with `c_k >= 0`.
#[derive(Clone, Debug)]
pub struct PrimeFactor {
    pub terms: Vec<(Interval, Interval)>,
}

impl PrimeFactor {
    pub fn new(terms: Vec<(Interval, Interval)>) -> Result<Self> {
        if terms.iter().any(|(c, _)| c.lo() < 0.0) {
            return Err(Error::InvalidArgument("coefficients must be nonnegative".into()));
        }
        Ok(PrimeFactor { terms })
    }

    pub fn at(&self, p: u64) -> Interval {
        let lp = Interval::from_u64(p).ln();
        Interval::ONE + self.terms.iter().map(|(c, e)| *c * (-(*e * lp)).exp()).sum::<Interval>()
    }

    /// `prod_{p > cutoff}` lies in `[1, exp(sum_k c_k cutoff^{1-e_k} / (e_k - 1))]`,
    /// from `log(1 + x) <= x` and `sum_{n > P} n^{-e} <= P^{1-e} / (e - 1)`.
    pub fn tail(&self, cutoff: u64) -> Result<Interval> {
        if self.terms.iter().any(|(_, e)| e.lo() <= 1.0) {
            return Err(Error::DivergentTail);
        }
        let p = Interval::from_u64(cutoff.max(1));
        let s: Interval = self
            .terms
            .iter()
            .map(|(c, e)| *c * p.pow(&(Interval::ONE - *e)) / (*e - Interval::ONE))
            .sum();
        Ok(Interval::new(1.0, s.exp().hi()))
    }
}

/// Product of `factor` over primes `lo <= p <= hi`. With `hi = None` the
/// product runs to infinity: primes up to `cutoff` are multiplied out and the
/// rest is covered by [`PrimeFactor::tail`].
pub fn prime_product_rigorous(factor: &PrimeFactor, lo: u64, hi: Option<u64>, cutoff: u64) -> Result<Interval> {
    let end = match hi {
        Some(h) => h,
        None => cutoff.max(lo.saturating_sub(1)),
    };
    let mut prod = Interval::ONE;
    if end >= lo {
        for p in primes_up_to(end) {
            if p >= lo {
                prod = prod * factor.at(p);
            }
        }
    }
    if hi.is_none() {
        prod = prod * factor.tail(end)?;
    }
    Ok(prod)
}

/// `n^{-a} (log n)^{-b}` with `a > 1`.
#[derive(Clone, Copy, Debug)]
pub struct SeriesTerm {
    pub exponent: Interval,
    pub log_power: u32,
}

impl SeriesTerm {
    pub fn power(exponent: Interval) -> Self {
        SeriesTerm { exponent, log_power: 0 }
    }

    pub fn at(&self, n: u64) -> Interval {
        let ln = Interval::from_u64(n).ln();
        (-(self.exponent * ln)).exp() / ln.powi(self.log_power as i32)
    }

    /// Integral-test bracket for `sum_{n > k}`.
    fn tail_after(&self, k: u64) -> Interval {
        let a1 = self.exponent - Interval::ONE;
        let kk = Interval::from_u64(k);
        let upper = kk.pow(&(-a1)) / a1 / kk.ln().powi(self.log_power as i32);
        let lower = if self.log_power == 0 {
            (kk + Interval::ONE).pow(&(-a1)) / a1
        } else {
            Interval::ZERO
        };
        Interval::new(lower.lo().max(0.0), upper.hi())
    }
}

/// Terms summed explicitly before the integral test takes over.
pub const SERIES_DIRECT_TERMS: u64 = 100_000;

/// `sum_{n >= start} term(n)`: direct partial sum plus an integral-test tail.
pub fn series_tail_rigorous(term: &SeriesTerm, start: u64) -> Result<Interval> {
    if term.exponent.lo() <= 1.0 {
        return Err(Error::NonmonotoneUnmajorized);
    }
    if start < 1 || (term.log_power > 0 && start < 2) {
        return Err(Error::InvalidArgument("series must start where the term is finite".into()));
    }
    let end = start + SERIES_DIRECT_TERMS - 1;
    let partial: Interval = (start..=end).map(|n| term.at(n)).sum();
    Ok(partial + term.tail_after(end))
}

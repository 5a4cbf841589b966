//! The divisor function of the exceptional character and the associated
//! sieve densities `g` and `h`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{Factorization, SpfTable};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};

pub use crate::arith::{divisors, mobius};

/// Number of distinct prime factors.
pub fn omega(n: u64) -> u32 {
    Factorization::of(n).factors().len() as u32
}

/// How a prime behaves with respect to the exceptional character.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeKind {
    /// `p | q`.
    Ramified,
    /// `chi1(p) = 1`.
    Split,
    /// `chi1(p) = -1`.
    Inert,
}

/// A real character `chi1` modulo `q` together with memoised values of `g` at primes.
#[derive(Debug)]
pub struct ExceptionalContext {
    chi1: DirichletCharacter,
    g_cache: RwLock<HashMap<u64, BigRational>>,
    residues: OnceLock<Option<Vec<i8>>>,
}

/// Moduli up to this size get a table of `chi1` on residues.
pub const RESIDUE_TABLE_CAP: u64 = 1 << 22;

impl Clone for ExceptionalContext {
    fn clone(&self) -> Self {
        ExceptionalContext {
            chi1: self.chi1.clone(),
            g_cache: RwLock::new(self.g_cache.read().expect("cache lock").clone()),
            residues: self.residues.clone(),
        }
    }
}

impl ExceptionalContext {
    pub fn new(chi1: DirichletCharacter) -> Result<Self> {
        if !chi1.is_real() {
            return Err(Error::InvalidArgument(format!(
                "exceptional character must be real, got order {}",
                chi1.order()
            )));
        }
        Ok(ExceptionalContext {
            chi1,
            g_cache: RwLock::new(HashMap::new()),
            residues: OnceLock::new(),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.chi1.modulus()
    }

    pub fn chi1(&self) -> &DirichletCharacter {
        &self.chi1
    }

    pub fn chi1_at(&self, n: u64) -> i8 {
        let q = self.modulus();
        let table = self.residues.get_or_init(|| {
            (q <= RESIDUE_TABLE_CAP).then(|| {
                self.chi1
                    .value_table()
                    .iter()
                    .map(|v| v.as_real().expect("real character"))
                    .collect()
            })
        });
        match table {
            Some(t) => t[(n % q) as usize],
            None => self.chi1.eval_u64(n).as_real().expect("real character"),
        }
    }

    pub fn prime_kind(&self, p: u64) -> PrimeKind {
        match self.chi1_at(p) {
            0 => PrimeKind::Ramified,
            1 => PrimeKind::Split,
            _ => PrimeKind::Inert,
        }
    }

    /// `a(p^k)` from the closed prime-power forms.
    pub fn a_prime_power(&self, p: u64, k: u32) -> u64 {
        match self.prime_kind(p) {
            PrimeKind::Ramified => 1,
            PrimeKind::Split => k as u64 + 1,
            PrimeKind::Inert => u64::from(k.is_multiple_of(2)),
        }
    }

    /// `a(n) = sum_{d | n} chi1(d)`.
    pub fn a(&self, n: u64) -> u64 {
        assert!(n >= 1);
        Factorization::of(n)
            .factors()
            .iter()
            .map(|&(p, k)| self.a_prime_power(p, k))
            .product()
    }

    /// `a(0..=n)`, with index 0 set to 0.
    pub fn a_table(&self, n: usize) -> Vec<u64> {
        let spf = SpfTable::new(n.max(1));
        self.a_table_with(&spf, n)
    }

    pub fn a_table_with(&self, spf: &SpfTable, n: usize) -> Vec<u64> {
        assert!(spf.limit() >= n);
        let mut out = vec![0u64; n + 1];
        if n >= 1 {
            out[1] = 1;
        }
        for m in 2..=n {
            let p = spf.smallest_prime_factor(m) as usize;
            let mut rest = m / p;
            let mut k = 1;
            while rest.is_multiple_of(p) {
                rest /= p;
                k += 1;
            }
            out[m] = out[rest] * self.a_prime_power(p as u64, k);
        }
        out
    }

    /// `1/g(p)` as a reduced fraction `(num, den)` of machine integers.
    pub fn inv_g_prime(&self, p: u64) -> (u64, u64) {
        match self.prime_kind(p) {
            PrimeKind::Ramified => (1, p - 1),
            PrimeKind::Split => (2 * p - 1, (p - 1) * (p - 1)),
            PrimeKind::Inert => (1, p * p - 1),
        }
    }

    pub fn g_at_prime(&self, p: u64) -> BigRational {
        if let Some(v) = self.g_cache.read().expect("cache lock").get(&p) {
            return v.clone();
        }
        let (num, den) = self.inv_g_prime(p);
        let v = BigRational::new(BigInt::from(den), BigInt::from(num));
        self.g_cache
            .write()
            .expect("cache lock")
            .insert(p, v.clone());
        v
    }

    pub fn h_at_prime(&self, p: u64) -> BigRational {
        self.g_at_prime(p) + BigRational::one()
    }

    /// Totally multiplicative extension of `h` from the primes.
    pub fn h(&self, n: u64) -> BigRational {
        assert!(n >= 1);
        let mut acc = BigRational::one();
        for &(p, k) in Factorization::of(n).factors() {
            let hp = self.h_at_prime(p);
            for _ in 0..k {
                acc *= &hp;
            }
        }
        acc
    }

    /// `g(n) = h(n) prod_{p | n} (1 - 1/h(p))`.
    pub fn g(&self, n: u64) -> BigRational {
        assert!(n >= 1);
        let mut acc = self.h(n);
        for p in Factorization::of(n).primes() {
            let hp = self.h_at_prime(p);
            assert!(!hp.is_zero(), "h(p) vanishes at p = {p}");
            acc *= BigRational::one() - hp.recip();
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::real_quadratic_characters;

    fn legendre5() -> ExceptionalContext {
        ExceptionalContext::new(real_quadratic_characters(5).unwrap()[0].clone()).unwrap()
    }

    #[test]
    fn basic_arithmetic_functions() {
        assert_eq!((mobius(1), omega(1), divisors(1)), (1, 0, vec![1]));
        assert_eq!(mobius(12), 0);
        assert_eq!((mobius(30), omega(30)), (-1, 3));
    }

    #[test]
    fn a_matches_divisor_sum() {
        let ctx = legendre5();
        for n in 1..=500u64 {
            let oracle: i64 = divisors(n).iter().map(|&d| ctx.chi1_at(d) as i64).sum();
            assert_eq!(ctx.a(n) as i64, oracle, "n = {n}");
        }
        assert_eq!(ctx.a(12), 0);
        assert_eq!(ctx.a(25), 1);
        let table = ctx.a_table(500);
        assert!((1..=500).all(|n| table[n] == ctx.a(n as u64)));
    }

    #[test]
    fn g_at_primes_closed_forms() {
        let ctx = legendre5();
        // 3 is a non-residue mod 5, 11 a residue.
        assert_eq!(ctx.g_at_prime(3), BigRational::from_integer(8.into()));
        assert_eq!(ctx.g_at_prime(5), BigRational::from_integer(4.into()));
        assert_eq!(ctx.h_at_prime(5), BigRational::from_integer(5.into()));
        assert_eq!(
            ctx.g_at_prime(11),
            BigRational::new(100.into(), 21.into())
        );
        // 3 = 5^2 is a residue mod 11.
        let ctx11 = ExceptionalContext::new(real_quadratic_characters(11).unwrap()[0].clone()).unwrap();
        assert_eq!(ctx11.g_at_prime(3), BigRational::new(4.into(), 5.into()));
    }

    #[test]
    fn g_of_squarefree_modulus_is_phi() {
        let ctx = legendre5();
        assert_eq!(ctx.g(5), BigRational::from_integer(4.into()));
        assert_eq!(ctx.h(5), BigRational::from_integer(5.into()));
        assert_eq!(ctx.g(1), BigRational::one());
    }
}

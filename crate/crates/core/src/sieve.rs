//! Selberg sieve weights attached to the exceptional character.
//!
//! Weight construction is exact. With `1/g(p) = n_p/d_p` for each prime
//! `p <= R` and `D = prod d_p`, every quantity is kept as an integer over a
//! shared denominator, so no rational normalisation happens on the hot path.

use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{gcd, primes_up_to, SpfTable};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::multiplicative::ExceptionalContext;

/// Largest sifting level for which exact weights are built.
pub const SIEVE_LEVEL_CAP: u64 = 10_000;

#[derive(Clone, Debug)]
struct PrimeTable {
    spf: SpfTable,
    primes: Vec<u64>,
    num: Vec<u64>,
    den: Vec<u64>,
    /// Position of each prime in `primes`, indexed by the prime.
    slot: Vec<u32>,
}

impl PrimeTable {
    fn new(ctx: &ExceptionalContext, r: u64) -> Self {
        let primes = primes_up_to(r);
        let mut num = Vec::with_capacity(primes.len());
        let mut den = Vec::with_capacity(primes.len());
        let mut slot = vec![u32::MAX; r as usize + 1];
        for (i, &p) in primes.iter().enumerate() {
            let (n, d) = ctx.inv_g_prime(p);
            num.push(n);
            den.push(d);
            slot[p as usize] = i as u32;
        }
        PrimeTable {
            spf: SpfTable::new(r.max(1) as usize),
            primes,
            num,
            den,
            slot,
        }
    }

    fn prime_slots(&self, d: u64) -> Vec<usize> {
        self.spf
            .factor(d as usize)
            .into_iter()
            .map(|(p, _)| self.slot[p as usize] as usize)
            .collect()
    }

    fn product<F: Fn(usize) -> u64>(&self, f: F) -> BigInt {
        let mut acc = BigInt::one();
        let mut chunk: u128 = 1;
        for i in 0..self.primes.len() {
            let x = f(i) as u128;
            if chunk.checked_mul(x).is_none_or(|c| c > u64::MAX as u128) {
                acc *= BigInt::from(chunk);
                chunk = 1;
            }
            chunk *= x;
        }
        acc * BigInt::from(chunk)
    }
}

fn squarefree_up_to(spf: &SpfTable, r: u64) -> Vec<u64> {
    (1..=r)
        .filter(|&d| d == 1 || spf.mobius(d as usize) != 0)
        .collect()
}

/// `V(R) = sum_{l <= R} mu^2(l)/g(l)` exactly.
pub fn v_of_r(ctx: &ExceptionalContext, r: u64) -> Result<BigRational> {
    if r == 0 {
        return Err(Error::InvalidArgument("R must be at least 1".into()));
    }
    if r > SIEVE_LEVEL_CAP {
        return Err(Error::CapExceeded {
            what: "sifting level",
            count: r,
            cap: SIEVE_LEVEL_CAP,
        });
    }
    let table = PrimeTable::new(ctx, r);
    let dprod = table.product(|i| table.den[i]);
    let support = squarefree_up_to(&table.spf, r);
    let v_num: BigInt = support
        .iter()
        .map(|&l| scaled_inverse_g(&table, &dprod, l))
        .sum();
    Ok(BigRational::new(v_num, dprod))
}

/// `D / g(l)` for squarefree `l <= R`, an integer.
fn scaled_inverse_g(table: &PrimeTable, dprod: &BigInt, l: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for s in table.prime_slots(l) {
        num *= table.num[s];
        den *= table.den[s];
    }
    dprod / den * num
}

/// Sieve weights `theta_d` on squarefree `d <= R`.
#[derive(Clone, Debug)]
pub struct SieveSystem {
    ctx: Arc<ExceptionalContext>,
    level: u64,
    table: PrimeTable,
    support: Vec<u64>,
    position: Vec<u32>,
    /// theta_d = scaled[k] / denom for d = support[k].
    scaled: Vec<BigInt>,
    denom: BigInt,
    v: BigRational,
}

impl SieveSystem {
    /// Graham's optimal weights
    /// `theta_d = mu(d) h(d) / (V(R) g(d)) * sum_{r <= R/d, (r,d)=1} mu^2(r)/g(r)`.
    pub fn build(ctx: Arc<ExceptionalContext>, r: u64) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidArgument(format!(
                "sifting level must be at least 2, got {r}"
            )));
        }
        if r > SIEVE_LEVEL_CAP {
            return Err(Error::CapExceeded {
                what: "sifting level",
                count: r,
                cap: SIEVE_LEVEL_CAP,
            });
        }
        let table = PrimeTable::new(&ctx, r);
        let support = squarefree_up_to(&table.spf, r);
        let dprod = table.product(|i| table.den[i]);
        let j: Vec<BigInt> = support
            .par_iter()
            .map(|&l| scaled_inverse_g(&table, &dprod, l))
            .collect();
        let inner: Vec<BigInt> = support
            .par_iter()
            .map(|&d| {
                let limit = r / d;
                let mut acc = BigInt::zero();
                for (k, &m) in support.iter().enumerate() {
                    if m > limit {
                        break;
                    }
                    if gcd(m, d) == 1 {
                        acc += &j[k];
                    }
                }
                acc
            })
            .collect();
        let v_num = inner[0].clone();
        let scaled: Vec<BigInt> = support
            .par_iter()
            .zip(inner.par_iter())
            .map(|(&d, i_d)| {
                let slots = table.prime_slots(d);
                let mut up = BigInt::one();
                let mut den = BigInt::one();
                for &s in &slots {
                    up *= table.num[s] + table.den[s];
                    den *= table.den[s];
                }
                let t = &dprod / den * up * i_d;
                if slots.len() % 2 == 1 {
                    -t
                } else {
                    t
                }
            })
            .collect();
        let denom = &dprod * &v_num;
        let v = BigRational::new(v_num, dprod);
        Ok(Self::assemble(ctx, r, table, support, scaled, denom, v))
    }

    /// A system with caller-supplied weights on squarefree `d <= R`; `theta_1` must be 1.
    pub fn with_weights(
        ctx: Arc<ExceptionalContext>,
        r: u64,
        weights: &[(u64, BigRational)],
    ) -> Result<Self> {
        if !(1..=SIEVE_LEVEL_CAP).contains(&r) {
            return Err(Error::InvalidArgument(format!("sifting level {r} out of range")));
        }
        let table = PrimeTable::new(&ctx, r);
        let support = squarefree_up_to(&table.spf, r);
        let mut values = vec![BigRational::zero(); support.len()];
        let mut position = vec![0u32; r as usize + 1];
        for (k, &d) in support.iter().enumerate() {
            position[d as usize] = k as u32 + 1;
        }
        for (d, w) in weights {
            if *d == 0 || *d > r || position[*d as usize] == 0 {
                return Err(Error::InvalidArgument(format!(
                    "weight at d = {d} is outside the squarefree range up to {r}"
                )));
            }
            values[position[*d as usize] as usize - 1] = w.clone();
        }
        if !values[0].is_one() {
            return Err(Error::InvalidArgument("theta_1 must equal 1".into()));
        }
        let denom = values
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let scaled = values
            .iter()
            .map(|w| w.numer() * (&denom / w.denom()))
            .collect();
        let v = v_of_r(&ctx, r)?;
        Ok(Self::assemble(ctx, r, table, support, scaled, denom, v))
    }

    fn assemble(
        ctx: Arc<ExceptionalContext>,
        level: u64,
        table: PrimeTable,
        support: Vec<u64>,
        scaled: Vec<BigInt>,
        denom: BigInt,
        v: BigRational,
    ) -> Self {
        let mut position = vec![0u32; level as usize + 1];
        for (k, &d) in support.iter().enumerate() {
            position[d as usize] = k as u32 + 1;
        }
        SieveSystem {
            ctx,
            level,
            table,
            support,
            position,
            scaled,
            denom,
            v,
        }
    }

    pub fn context(&self) -> &Arc<ExceptionalContext> {
        &self.ctx
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Squarefree `d <= R`, ascending.
    pub fn support(&self) -> &[u64] {
        &self.support
    }

    pub fn v_of_r(&self) -> &BigRational {
        &self.v
    }

    pub fn theta(&self, d: u64) -> BigRational {
        match self.index(d) {
            Some(k) => BigRational::new(self.scaled[k].clone(), self.denom.clone()),
            None => BigRational::zero(),
        }
    }

    pub fn theta_interval(&self, d: u64) -> Interval {
        Interval::from_ratio(&self.theta(d))
    }

    /// Nonzero weights as `(d, theta_d)`, ascending in `d`.
    pub fn weights(&self) -> Vec<(u64, BigRational)> {
        self.support
            .iter()
            .zip(&self.scaled)
            .filter(|(_, t)| !t.is_zero())
            .map(|(&d, t)| (d, BigRational::new(t.clone(), self.denom.clone())))
            .collect()
    }

    /// Weights as `(d, numerator)` over the common denominator.
    pub fn scaled_weights(&self) -> (Vec<(u64, BigInt)>, BigInt) {
        let w = self
            .support
            .iter()
            .zip(&self.scaled)
            .filter(|(_, t)| !t.is_zero())
            .map(|(&d, t)| (d, t.clone()))
            .collect();
        (w, self.denom.clone())
    }

    fn index(&self, d: u64) -> Option<usize> {
        if d == 0 || d > self.level {
            return None;
        }
        match self.position[d as usize] {
            0 => None,
            k => Some(k as usize - 1),
        }
    }

    /// `theta_1 == 1` exactly.
    pub fn theta_one_is_one(&self) -> bool {
        self.scaled[0] == self.denom
    }

    /// `|theta_d| <= 1` for every `d`, exactly.
    pub fn all_weights_bounded(&self) -> bool {
        let bound = self.denom.abs();
        self.scaled.iter().all(|t| t.abs() <= bound)
    }

    /// Largest `|theta_d|`.
    pub fn max_abs_weight(&self) -> BigRational {
        let m = self
            .scaled
            .iter()
            .map(|t| t.abs())
            .max()
            .unwrap_or_default();
        BigRational::new(m, self.denom.abs())
    }

    /// `G(1, chi_0) = sum_{d,e <= R, (de,q)=1} theta_d theta_e / h([d,e])`.
    ///
    /// Uses `h(gcd(d,e)) = sum_{l | gcd} g(l)` to diagonalise the double sum as
    /// `sum_l g(l) y_l^2` with `y_l = sum_{l | d, (d,q)=1} theta_d / h(d)`.
    pub fn g1_principal(&self) -> BigRational {
        let (num, den) = self.g1_principal_parts();
        BigRational::new(num, den)
    }

    /// Unreduced numerator and positive denominator of [`Self::g1_principal`].
    pub fn g1_principal_parts(&self) -> (BigInt, BigInt) {
        let q = self.ctx.modulus();
        let t = &self.table;
        // 1/h(p) = n_p / (n_p + d_p)
        let hprod = t.product(|i| t.num[i] + t.den[i]);
        let coprime: Vec<usize> = (0..self.support.len())
            .filter(|&k| gcd(self.support[k], q) == 1)
            .collect();
        // theta_d / h(d) scaled by denom * hprod
        let scaled_over_h: Vec<BigInt> = coprime
            .par_iter()
            .map(|&k| {
                let d = self.support[k];
                let mut num = BigInt::one();
                let mut den = BigInt::one();
                for s in t.prime_slots(d) {
                    num *= t.num[s];
                    den *= t.num[s] + t.den[s];
                }
                &self.scaled[k] * num * (&hprod / den)
            })
            .collect();
        let mut y = vec![BigInt::zero(); self.support.len()];
        for (idx, &k) in coprime.iter().enumerate() {
            let d = self.support[k];
            if scaled_over_h[idx].is_zero() {
                continue;
            }
            for l in crate::arith::divisors(d) {
                let pos = self.index(l).expect("divisors of squarefree are squarefree");
                y[pos] += &scaled_over_h[idx];
            }
        }
        // g(l) = prod d_p / n_p; scale by gn = prod n_p.
        let gn = t.product(|i| t.num[i]);
        let total: BigInt = coprime
            .par_iter()
            .filter(|&&k| !y[k].is_zero())
            .map(|&k| {
                let l = self.support[k];
                let mut num = BigInt::one();
                let mut den = BigInt::one();
                for s in t.prime_slots(l) {
                    num *= t.den[s];
                    den *= t.num[s];
                }
                (&gn / den) * num * &y[k] * &y[k]
            })
            .sum();
        let scale = &self.denom * &hprod;
        (total, gn * &scale * &scale)
    }

    /// `(q/phi(q)) (sum_{n <= R} a(n)/n)^{-1}`.
    pub fn graham_rhs(&self) -> BigRational {
        let q = self.ctx.modulus();
        let phi = self.ctx.chi1().group().order();
        BigRational::new(BigInt::from(q), BigInt::from(phi)) / a_over_n_partial(&self.ctx, self.level)
    }

    /// Whether `G(1, chi_0)` is at most the Graham bound.
    pub fn graham_bound_holds(&self) -> bool {
        let (gn, gd) = self.g1_principal_parts();
        let (an, ad) = a_over_n_parts(&self.ctx, self.level);
        let q = BigInt::from(self.ctx.modulus());
        let phi = BigInt::from(self.ctx.chi1().group().order());
        gn * phi * an <= q * ad * gd
    }

    /// `sum_{d | n} theta_d` scaled by the common denominator.
    pub fn divisor_sum_scaled(&self, n: u64) -> BigInt {
        let mut acc = BigInt::zero();
        for d in crate::arith::divisors(n) {
            if d > self.level {
                break;
            }
            if let Some(k) = self.index(d) {
                acc += &self.scaled[k];
            }
        }
        acc
    }

    pub fn common_denominator(&self) -> &BigInt {
        &self.denom
    }

    /// Prime factors of a squarefree `d` in the support.
    pub fn support_primes(&self, d: u64) -> Vec<u64> {
        self.table
            .prime_slots(d)
            .into_iter()
            .map(|s| self.table.primes[s])
            .collect()
    }
}

/// `sum_{n <= R} a(n)/n` exactly.
pub fn a_over_n_partial(ctx: &ExceptionalContext, r: u64) -> BigRational {
    let (num, den) = a_over_n_parts(ctx, r);
    BigRational::new(num, den)
}

fn a_over_n_parts(ctx: &ExceptionalContext, r: u64) -> (BigInt, BigInt) {
    let a = ctx.a_table(r as usize);
    let mut l = BigInt::one();
    for p in primes_up_to(r) {
        let mut pk = p;
        while pk <= r / p {
            pk *= p;
        }
        l *= pk;
    }
    let mut num = BigInt::zero();
    for n in 1..=r {
        if a[n as usize] != 0 {
            num += &l / BigInt::from(n) * a[n as usize];
        }
    }
    (num, l)
}

/// Interval form of [`a_over_n_partial`].
pub fn a_over_n_partial_interval(ctx: &ExceptionalContext, r: u64) -> Interval {
    Interval::from_ratio(&a_over_n_partial(ctx, r))
}

/// Lower bound `L(1,chi1) R^{1-b} / ((1-b)(2-b)) * (1 - 4A e^{(log q)^{3/4}} q^theta R^{-1/2})`.
///
/// When `l1` is `None`, `L(1,chi1)/(1-b)` is bracketed by `[0.72, 0.18 (log q)^2]`.
pub fn selberg_lower_bound_rhs(
    q: u64,
    beta1: Interval,
    a: Interval,
    theta: Interval,
    r: Interval,
    l1: Option<Interval>,
) -> Result<Interval> {
    if q <= 400_000 {
        return Err(Error::InvalidHypothesis(format!("q = {q} must exceed 400000")));
    }
    if r.lo() < 200.0 {
        return Err(Error::InvalidHypothesis("R must be at least 200".into()));
    }
    let logq = Interval::from_u64(q).ln();
    let lower = Interval::ONE - (Interval::from_u64(10) * logq).recip();
    if !(lower.hi() < beta1.lo() && beta1.hi() < 1.0) {
        return Err(Error::InvalidHypothesis(
            "beta1 must lie in (1 - 1/(10 log q), 1)".into(),
        ));
    }
    let one_minus = Interval::ONE - beta1;
    let ratio = match l1 {
        Some(l) => l / one_minus,
        None => {
            let hi = Interval::from_fraction(18, 100) * logq.sqr();
            Interval::new(Interval::from_fraction(72, 100).lo(), hi.hi())
        }
    };
    let main = ratio * r.pow(&one_minus) / (Interval::from_u64(2) - beta1);
    let correction = Interval::from_u64(4) * a * logq.powf(0.75).exp() * Interval::from_u64(q).pow(&theta)
        / r.sqrt();
    Ok(main * (Interval::ONE - correction))
}

impl SieveSystem {
    /// Sign of `theta_d` (0, 1 or -1).
    pub fn weight_sign(&self, d: u64) -> i8 {
        match self.index(d).map(|k| self.scaled[k].sign()) {
            Some(Sign::Plus) => 1,
            Some(Sign::Minus) => -1,
            _ => 0,
        }
    }
}

/// Graham's weights at level `R`.
pub fn build_weights(ctx: Arc<ExceptionalContext>, r: u64) -> Result<SieveSystem> {
    SieveSystem::build(ctx, r)
}

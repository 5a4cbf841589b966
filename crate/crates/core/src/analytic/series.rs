//! The products `F = L(s,chi) L(s,chi chi1)`, the sieve factor `G`, and the
//! finite mollified sums built from them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::complex::ComplexInterval;
use super::zeta::{l_eval, EvalParams};
use crate::arith::{gcd, SpfTable};
use crate::characters::{CharValue, DirichletCharacter};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::multiplicative::{ExceptionalContext, PrimeKind};
use crate::sieve::SieveSystem;

/// Largest length accepted by [`mollified_sum`] and [`truncated_s_of_x`].
pub const MOLLIFIER_LENGTH_CAP: u64 = 10_000_000;

/// `F(s, chi) = sum a(n) chi(n) n^{-s} = L(s, chi) L(s, chi chi1)`.
pub fn f_eval(
    s: ComplexInterval,
    chi: &DirichletCharacter,
    ctx: &ExceptionalContext,
    params: &EvalParams,
) -> Result<ComplexInterval> {
    let twisted = chi.product(ctx.chi1())?;
    Ok(l_eval(s, chi, params)? * l_eval(s, &twisted, params)?)
}

/// How the per-prime factor of `G` is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GForm {
    /// `P/(1+P)` with `P = sum_{k>=1} a(p^k) chi(p^k) p^{-ks}` truncated with a tail bound.
    SeriesRatio,
    /// `(1+chi1(p)) chi(p) p^{-s} - chi1(p) chi(p)^2 p^{-2s}`.
    TwoTerm,
}

const SERIES_TERMS: u32 = 60;

fn prime_factor(
    p: u64,
    s: &ComplexInterval,
    chi: &DirichletCharacter,
    ctx: &ExceptionalContext,
    form: GForm,
) -> ComplexInterval {
    let c = ComplexInterval::from_char_value(chi.eval_u64(p));
    let y = c * ComplexInterval::pow_neg_from_log(Interval::from_u64(p).ln(), s);
    match form {
        GForm::TwoTerm => match ctx.prime_kind(p) {
            PrimeKind::Ramified => y,
            PrimeKind::Split => y.scale(Interval::from_u64(2)) - y * y,
            PrimeKind::Inert => y * y,
        },
        GForm::SeriesRatio => {
            let mut p_sum = ComplexInterval::ZERO;
            let mut power = ComplexInterval::ONE;
            for k in 1..=SERIES_TERMS {
                power = power * y;
                let a = ctx.a_prime_power(p, k);
                if a != 0 {
                    p_sum = p_sum + power.scale(Interval::from_u64(a));
                }
            }
            let r = y.abs_hi();
            let k = SERIES_TERMS as f64;
            let tail = (Interval::point(r).powi(SERIES_TERMS as i32 + 1) * Interval::point(k + 2.0))
                / (Interval::ONE - Interval::point(r)).sqr();
            let p_sum = p_sum.inflate(tail.hi());
            p_sum / (ComplexInterval::ONE + p_sum)
        }
    }
}

/// `G(s, chi) = sum_{d,e <= R} theta_d theta_e prod_{p | [d,e]} w_p(s)`.
pub fn g_eval(
    s: ComplexInterval,
    chi: &DirichletCharacter,
    sys: &SieveSystem,
    form: GForm,
) -> Result<ComplexInterval> {
    let ctx = sys.context();
    if chi.modulus() != ctx.modulus() {
        return Err(Error::ModulusMismatch(chi.modulus(), ctx.modulus()));
    }
    if s.re.lo() < 0.5 {
        return Err(Error::InvalidArgument("G is evaluated for Re(s) >= 1/2".into()));
    }
    let weights: Vec<(u64, Interval)> = sys
        .weights()
        .into_iter()
        .map(|(d, w)| (d, Interval::from_ratio(&w)))
        .collect();
    // W(m) = prod_{p | m} w_p on squarefree m <= R.
    let level = sys.level() as usize;
    let mut w_table = vec![ComplexInterval::ZERO; level + 1];
    w_table[1] = ComplexInterval::ONE;
    let spf = SpfTable::new(level.max(1));
    let mut wp = vec![ComplexInterval::ZERO; level + 1];
    for m in 2..=level {
        if spf.is_prime(m) {
            wp[m] = prime_factor(m as u64, &s, chi, ctx, form);
        }
    }
    for &d in sys.support().iter().skip(1) {
        let p = spf.smallest_prime_factor(d as usize) as usize;
        w_table[d as usize] = wp[p] * w_table[d as usize / p];
    }
    // W([d,e]) = W(d) W(e / gcd(d,e)).
    let mut total = ComplexInterval::ZERO;
    for &(d, td) in &weights {
        let mut row = ComplexInterval::ZERO;
        for &(e, te) in &weights {
            let g = gcd(d, e);
            row = row + w_table[(e / g) as usize].scale(te);
        }
        total = total + (w_table[d as usize] * row).scale(td);
    }
    Ok(total)
}

/// Sparse element of the group ring `Q[Z/k]`: angle index `j` stands for `e(j/k)`.
type GroupRingElement = BTreeMap<u64, BigInt>;

fn ring_add(acc: &mut GroupRingElement, angle: u64, coeff: BigInt) {
    if coeff.is_zero() {
        return;
    }
    let entry = acc.entry(angle).or_insert_with(BigInt::zero);
    *entry += coeff;
    if entry.is_zero() {
        acc.remove(&angle);
    }
}

fn angle_index(v: CharValue, k: u64) -> Option<u64> {
    match v {
        CharValue::Zero => None,
        CharValue::Root { num, den } => Some(num * (k / den)),
    }
}

/// Outcome of the exact coefficient comparison for `F G`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CoefficientReport {
    pub modulus: u64,
    pub level: u64,
    pub n_max: u64,
    pub checked: u64,
    pub violations: Vec<u64>,
}

impl CoefficientReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares, for every `n <= n_max`, the `n`-th coefficient of the formal
/// product `F(s,chi) G(s,chi)` with `a(n) chi(n) (sum_{d | n} theta_d)^2`.
///
/// The coefficients of `G` come from the two-term prime factor: the
/// coefficient at `n = prod p^{e_p}` (`e_p` in {1,2}) is
/// `prod_p c_p(e_p) chi(n) T(rad n)` with `T(m) = sum_{[d,e]=m} theta_d theta_e`.
/// Values live in the group ring of `Z/k` (`k` the order of `chi`) with
/// integer coefficients over the squared common denominator of the weights.
pub fn fg_coefficient_identity(
    sys: &SieveSystem,
    chi: &DirichletCharacter,
    n_max: u64,
) -> Result<CoefficientReport> {
    let ctx = sys.context();
    if chi.modulus() != ctx.modulus() {
        return Err(Error::ModulusMismatch(chi.modulus(), ctx.modulus()));
    }
    if n_max > 100_000 {
        return Err(Error::CapExceeded {
            what: "coefficient range",
            count: n_max,
            cap: 100_000,
        });
    }
    let k = chi.order();
    let n = n_max as usize;
    let spf = SpfTable::new(n.max(2));
    let (weights, _) = sys.scaled_weights();

    // T(m) for every lcm m = [d,e] that stays in range.
    let mut t_of = vec![BigInt::zero(); n + 1];
    for (d, td) in &weights {
        for (e, te) in &weights {
            let m = d / gcd(*d, *e) * e;
            if m <= n_max {
                t_of[m as usize] += td * te;
            }
        }
    }

    // Coefficients of G as group-ring elements.
    let mut g_coeff: Vec<Option<(u64, BigInt)>> = vec![None; n + 1];
    for m in 1..=n {
        let fac = spf.factor(m);
        if fac.iter().any(|&(_, e)| e > 2) {
            continue;
        }
        let rad: u64 = fac.iter().map(|&(p, _)| p).product();
        if rad as usize > n || t_of[rad as usize].is_zero() {
            continue;
        }
        let mut c = t_of[rad as usize].clone();
        for &(p, e) in &fac {
            let chi1p = ctx.chi1_at(p) as i64;
            let local = if e == 1 { 1 + chi1p } else { -chi1p };
            c *= local;
        }
        if c.is_zero() {
            continue;
        }
        if let Some(angle) = angle_index(chi.eval_u64(m as u64), k) {
            g_coeff[m] = Some((angle, c));
        }
    }

    let a = ctx.a_table_with(&spf, n);
    let mut violations = Vec::new();
    for m in 1..=n {
        // LHS: sum over m1 | m of g(m1) f(m/m1)
        let mut lhs = GroupRingElement::new();
        let mut d = 1usize;
        while d * d <= m {
            if m % d == 0 {
                for m1 in [d, m / d] {
                    if let Some((angle, c)) = &g_coeff[m1] {
                        let rest = m / m1;
                        if a[rest] != 0 {
                            if let Some(b) = angle_index(chi.eval_u64(rest as u64), k) {
                                ring_add(&mut lhs, (angle + b) % k, c * BigInt::from(a[rest]));
                            }
                        }
                    }
                    if d == m / d {
                        break;
                    }
                }
            }
            d += 1;
        }
        let mut rhs = GroupRingElement::new();
        if a[m] != 0 {
            if let Some(angle) = angle_index(chi.eval_u64(m as u64), k) {
                let lam = sys.divisor_sum_scaled(m as u64);
                ring_add(&mut rhs, angle, &lam * &lam * BigInt::from(a[m]));
            }
        }
        if lhs != rhs {
            violations.push(m as u64);
        }
    }
    Ok(CoefficientReport {
        modulus: ctx.modulus(),
        level: sys.level(),
        n_max,
        checked: n_max,
        violations,
    })
}

/// `sum_{d | n} theta_d` for all `n <= len`, as enclosures.
fn mollifier_table(sys: &SieveSystem, len: usize) -> Vec<Interval> {
    let mut lam = vec![Interval::ZERO; len + 1];
    for (d, w) in sys.weights() {
        let w = Interval::from_ratio(&w);
        let mut m = d as usize;
        while m <= len {
            lam[m] = lam[m] + w;
            m += d as usize;
        }
    }
    lam
}

/// `S = sum_{n <= N} a(n) chi(n) (sum_{d | n} theta_d)^2 n^{-rho} (1 - n/N)`.
pub fn mollified_sum(
    n_len: u64,
    rho: ComplexInterval,
    chi: &DirichletCharacter,
    sys: &SieveSystem,
) -> Result<ComplexInterval> {
    if n_len > MOLLIFIER_LENGTH_CAP {
        return Err(Error::CapExceeded {
            what: "mollifier length",
            count: n_len,
            cap: MOLLIFIER_LENGTH_CAP,
        });
    }
    if n_len == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let ctx = sys.context();
    if chi.modulus() != ctx.modulus() {
        return Err(Error::ModulusMismatch(chi.modulus(), ctx.modulus()));
    }
    let len = n_len as usize;
    let a = ctx.a_table(len);
    let lam = mollifier_table(sys, len);
    let values: Vec<ComplexInterval> = chi
        .value_table()
        .into_iter()
        .map(ComplexInterval::from_char_value)
        .collect();
    let q = chi.modulus() as usize;
    let nn = Interval::from_u64(n_len);
    let mut total = ComplexInterval::ZERO;
    for n in 1..=len {
        if a[n] == 0 || lam[n].is_point() && lam[n].lo() == 0.0 {
            continue;
        }
        let c = values[n % q];
        if c == ComplexInterval::ZERO {
            continue;
        }
        let smooth = Interval::ONE - Interval::from_u64(n as u64) / nn;
        let coeff = Interval::from_u64(a[n]) * lam[n].sqr() * smooth;
        let pw = ComplexInterval::pow_neg_from_log(Interval::from_u64(n as u64).ln(), &rho);
        total = total + (c * pw).scale(coeff);
    }
    Ok(total)
}

/// Enclosure of `S(x) = sum_{n <= x} a(n) n^{-beta1} (1 - n/x)` with a witness
/// that every term is non-negative.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct TruncatedSum {
    pub value: Interval,
    pub terms_nonnegative: bool,
}

pub fn truncated_s_of_x(ctx: &ExceptionalContext, beta1: Interval, x: Interval) -> Result<TruncatedSum> {
    if x.lo() < 3.0 {
        return Err(Error::InvalidArgument("x must be at least 3".into()));
    }
    if x.hi() > MOLLIFIER_LENGTH_CAP as f64 {
        return Err(Error::CapExceeded {
            what: "truncation point",
            count: x.hi() as u64,
            cap: MOLLIFIER_LENGTH_CAP,
        });
    }
    let len = x.hi().floor() as usize;
    let a = ctx.a_table(len);
    let mut total = Interval::ZERO;
    let mut nonneg = true;
    for n in 1..=len {
        if a[n] == 0 {
            continue;
        }
        let nf = Interval::from_u64(n as u64);
        // For n in (x.lo, x.hi] the term is only partially present; its
        // smoothing factor is clipped at zero.
        let mut smooth = Interval::ONE - nf / x;
        if smooth.lo() < 0.0 {
            smooth = Interval::new(0.0, smooth.hi().max(0.0));
        }
        let term = Interval::from_u64(a[n]) * (-(beta1 * nf.ln())).exp() * smooth;
        nonneg &= term.lo() >= 0.0;
        total = total + term;
    }
    Ok(TruncatedSum {
        value: total,
        terms_nonnegative: nonneg,
    })
}

/// Smoothed sum `sum_{n <= R} a(n) n^{-s0} (1 - n/R)` for real `s0`.
pub fn smoothed_divisor_sum(ctx: &ExceptionalContext, s0: Interval, r: u64) -> Interval {
    let a = ctx.a_table(r as usize);
    let rr = Interval::from_u64(r);
    let mut total = Interval::ZERO;
    for n in 1..=r as usize {
        if a[n] == 0 {
            continue;
        }
        let nf = Interval::from_u64(n as u64);
        total = total + Interval::from_u64(a[n]) * (-(s0 * nf.ln())).exp() * (Interval::ONE - nf / rr);
    }
    total
}


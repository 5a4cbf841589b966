//! Hurwitz zeta, Riemann zeta and Dirichlet L-functions by Euler-Maclaurin
//! summation with a rigorous remainder.
//!
//! For `x = N + a` the expansion is
//! `zeta(s,a) = sum_{k<N} (k+a)^{-s} + x^{1-s}/(s-1) + x^{-s}/2
//!  + sum_{j=1}^{M} B_{2j}/(2j)! (s)_{2j-1} x^{-s-2j+1} + R`
//! with `|R| <= 4 |(s)_{2M}| (2 pi)^{-2M} x^{1-sigma-2M} / (sigma + 2M - 1)`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::complex::ComplexInterval;
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::interval::Interval;

/// Truncation controls for Euler-Maclaurin evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalParams {
    /// Fixed number of directly summed terms; chosen automatically when `None`.
    pub terms: Option<u64>,
    /// Number `M` of Bernoulli correction terms.
    pub order: usize,
    /// Target bound on the truncation remainder.
    pub target: f64,
    /// Ceiling for the automatic choice of `N`.
    pub max_terms: u64,
}

impl Default for EvalParams {
    fn default() -> Self {
        EvalParams {
            terms: None,
            order: 12,
            target: 1e-14,
            max_terms: 1 << 22,
        }
    }
}

impl EvalParams {
    /// Remainder target `2^{-bits/2}`, floored at what binary64 can resolve.
    pub fn from_bits(bits: u32) -> Self {
        EvalParams {
            target: 2f64.powi(-(bits as i32) / 2).max(1e-15),
            ..EvalParams::default()
        }
    }

    pub fn with_terms(mut self, n: u64) -> Self {
        self.terms = Some(n);
        self
    }
}

const MAX_ORDER: usize = 40;

/// Bernoulli numbers `B_0..=B_n` (with `B_1 = +1/2`).
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut a: Vec<BigRational> = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let diff = &a[j - 1] - &a[j];
            a[j - 1] = diff * BigRational::from_integer(BigInt::from(j));
        }
        out.push(a[0].clone());
    }
    out
}

/// Enclosures of `B_{2j}/(2j)!` for `j = 0..=MAX_ORDER`.
fn bernoulli_ratios() -> &'static [Interval] {
    static TABLE: OnceLock<Vec<Interval>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let b = bernoulli_numbers(2 * MAX_ORDER);
        let mut fact = BigInt::one();
        let mut out = Vec::with_capacity(MAX_ORDER + 1);
        for (n, bn) in b.iter().enumerate() {
            if n > 0 {
                fact *= BigInt::from(n);
            }
            if n % 2 == 0 {
                out.push(Interval::from_ratio(&(bn / BigRational::from_integer(fact.clone()))));
            }
        }
        out
    })
}

/// `s (s+1) ... (s+m-1)`.
fn rising(s: &ComplexInterval, m: usize) -> ComplexInterval {
    let mut acc = ComplexInterval::ONE;
    for k in 0..m {
        acc = acc * (*s + Interval::from_u64(k as u64));
    }
    acc
}

/// Upper bound on the Euler-Maclaurin remainder at `x = N + a`.
fn remainder_bound(s: &ComplexInterval, x: Interval, m: usize) -> f64 {
    let sigma = Interval::point(s.re.lo());
    let denom = sigma + Interval::from_u64(2 * m as u64) - Interval::ONE;
    if denom.lo() <= 0.0 {
        return f64::INFINITY;
    }
    let two_pi = Interval::from_u64(2) * Interval::pi();
    let mag = Interval::point(rising(s, 2 * m).abs_hi());
    let b = Interval::from_u64(4) * mag / two_pi.powi(2 * m as i32)
        * x.pow(&(Interval::ONE - sigma - Interval::from_u64(2 * m as u64)))
        / denom;
    b.hi()
}

fn check_order(params: &EvalParams) -> Result<usize> {
    if params.order == 0 || params.order > MAX_ORDER {
        return Err(Error::InvalidArgument(format!(
            "Euler-Maclaurin order must be in 1..={MAX_ORDER}"
        )));
    }
    Ok(params.order)
}

/// Number of direct terms meeting the target when the smallest shift is `a_min`.
fn choose_terms(s: &ComplexInterval, a_min: Interval, params: &EvalParams) -> u64 {
    if let Some(n) = params.terms {
        return n;
    }
    let m = params.order;
    let mut n = (s.abs_hi().ceil() as u64).max(8);
    while n < params.max_terms {
        if remainder_bound(s, Interval::from_u64(n) + a_min, m) <= params.target {
            return n;
        }
        n *= 2;
    }
    params.max_terms
}

/// Everything except the pole term `x^{1-s}/(s-1)`, plus `ln x`.
fn regular_part(s: &ComplexInterval, a: Interval, n: u64, m: usize) -> (ComplexInterval, Interval) {
    let mut sum = ComplexInterval::ZERO;
    for k in 0..n {
        let l = (Interval::from_u64(k) + a).ln();
        sum = sum + ComplexInterval::pow_neg_from_log(l, s);
    }
    let x = Interval::from_u64(n) + a;
    let log_x = x.ln();
    let base = ComplexInterval::pow_neg_from_log(log_x, s);
    sum = sum + base.scale(Interval::point(0.5));
    let ratios = bernoulli_ratios();
    let inv_x = x.recip();
    let inv_x2 = inv_x.sqr();
    let mut poch = *s; // (s)_{2j-1}
    let mut xpow = inv_x; // x^{-(2j-1)}
    for (j, ratio) in ratios.iter().enumerate().take(m + 1).skip(1) {
        if j > 1 {
            let k = (2 * j - 3) as u64;
            poch = poch * (*s + Interval::from_u64(k)) * (*s + Interval::from_u64(k + 1));
            xpow = xpow * inv_x2;
        }
        sum = sum + (poch * base).scale(*ratio * xpow);
    }
    let r = remainder_bound(s, x, m);
    (sum.inflate(r), log_x)
}

fn touches_pole(s: &ComplexInterval) -> bool {
    s.re.contains(1.0) && s.im.contains(0.0)
}

/// `zeta(s, a)` for rational `a = num/den` in `(0, 1]`.
pub fn hurwitz_zeta(s: ComplexInterval, num: u64, den: u64, params: &EvalParams) -> Result<ComplexInterval> {
    if num == 0 || num > den {
        return Err(Error::InvalidArgument("shift must lie in (0, 1]".into()));
    }
    if touches_pole(&s) {
        return Err(Error::PoleProximity);
    }
    let m = check_order(params)?;
    let a = Interval::from_fraction(num as i64, den);
    let n = choose_terms(&s, a, params);
    let (reg, log_x) = regular_part(&s, a, n, m);
    let x = Interval::from_u64(n) + a;
    let pole = (ComplexInterval::pow_neg_from_log(log_x, &s) * x) / (s - Interval::ONE);
    Ok(reg + pole)
}

/// Riemann zeta.
pub fn zeta(s: ComplexInterval, params: &EvalParams) -> Result<ComplexInterval> {
    hurwitz_zeta(s, 1, 1, params)
}

/// `(e^z - 1)/z`, entire.
fn expm1_over(z: &ComplexInterval) -> ComplexInterval {
    let r = z.abs_hi();
    if r <= 1.0 {
        const K: usize = 24;
        let mut sum = ComplexInterval::ZERO;
        let mut term = ComplexInterval::ONE; // z^k/(k+1)!
        for k in 0..K {
            if k > 0 {
                term = (term * *z).scale(Interval::from_u64(k as u64 + 1).recip());
            }
            sum = sum + term;
        }
        // tail sum_{k>=K} |z|^k/(k+1)!
        let mut fact = Interval::ONE;
        for i in 2..=(K as u64 + 1) {
            fact = fact * Interval::from_u64(i);
        }
        let tail = Interval::point(r).powi(K as i32) / fact
            / (Interval::ONE - Interval::point(r) / Interval::from_u64(K as u64 + 2));
        sum.inflate(tail.hi())
    } else {
        (z.exp() - Interval::ONE) / *z
    }
}

/// `L(s, chi) = q^{-s} sum_{a=1}^{q} chi(a) zeta(s, a/q)`.
///
/// For non-principal `chi` the pole terms are combined through
/// `sum chi(a) x_a^{1-s}/(s-1) = -sum chi(a) ln(x_a) E((1-s) ln x_a)`, which is
/// regular at `s = 1`.
pub fn l_eval(s: ComplexInterval, chi: &DirichletCharacter, params: &EvalParams) -> Result<ComplexInterval> {
    let q = chi.modulus();
    if q == 1 {
        return zeta(s, params);
    }
    let principal = chi.is_principal();
    if principal && touches_pole(&s) {
        return Err(Error::PoleProximity);
    }
    let m = check_order(params)?;
    let n = choose_terms(&s, Interval::from_fraction(1, q), params);
    let mut total = ComplexInterval::ZERO;
    let mut poles = ComplexInterval::ZERO;
    let one_minus_s = ComplexInterval::ONE - s;
    for a in 1..=q {
        let v = chi.eval_u64(a);
        if v.is_zero() {
            continue;
        }
        let c = ComplexInterval::from_char_value(v);
        let shift = Interval::from_fraction(a as i64, q);
        let (reg, log_x) = regular_part(&s, shift, n, m);
        total = total + c * reg;
        let pole = if principal {
            let x = Interval::from_u64(n) + shift;
            (ComplexInterval::pow_neg_from_log(log_x, &s) * x) / (s - Interval::ONE)
        } else {
            -expm1_over(&one_minus_s.scale(log_x)).scale(log_x)
        };
        poles = poles + c * pole;
    }
    let qs = ComplexInterval::pow_neg_from_log(Interval::from_u64(q).ln(), &s);
    Ok(qs * (total + poles))
}

/// `zeta(sigma)` for real `sigma` as a real enclosure.
pub fn zeta_real(sigma: Interval, params: &EvalParams) -> Result<Interval> {
    let z = zeta(ComplexInterval::real(sigma), params)?;
    Ok(z.re)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::real_quadratic_characters;
    use crate::interval::parse_decimal;

    #[test]
    fn bernoulli_small() {
        let b = bernoulli_numbers(6);
        assert_eq!(b[2], BigRational::new(1.into(), 6.into()));
        assert_eq!(b[4], BigRational::new((-1).into(), 30.into()));
        assert_eq!(b[6], BigRational::new(1.into(), 42.into()));
    }

    #[test]
    fn zeta_two_contains_pi_squared_over_six() {
        let z = zeta(ComplexInterval::point(2.0, 0.0), &EvalParams::default()).unwrap();
        let pi2 = Interval::pi().sqr() / Interval::from_u64(6);
        assert!(z.re.overlaps(&pi2));
        assert!(z.re.contains(1.6449340668482264));
        assert!(z.im.contains(0.0));
        assert!(z.width() < 1e-12);
    }

    #[test]
    fn zeta_half() {
        let z = zeta(ComplexInterval::point(0.5, 0.0), &EvalParams::default()).unwrap();
        let (lo, hi) = crate::interval::endpoints_exact(&z.re);
        let r = parse_decimal("-1.46035450880958681288949915252").unwrap();
        assert!(lo <= r && r <= hi, "{z:?}");
    }

    #[test]
    fn hurwitz_half_is_pi_squared_over_two() {
        let z = hurwitz_zeta(ComplexInterval::point(2.0, 0.0), 1, 2, &EvalParams::default()).unwrap();
        assert!(z.re.overlaps(&(Interval::pi().sqr() / Interval::from_u64(2))));
    }

    #[test]
    fn pole_is_rejected() {
        let s = ComplexInterval::new(Interval::new(0.9, 1.1), Interval::new(-0.1, 0.1));
        assert_eq!(zeta(s, &EvalParams::default()), Err(Error::PoleProximity));
    }

    #[test]
    fn l_one_chi_minus_four() {
        let chi = &real_quadratic_characters(4).unwrap()[0];
        let l = l_eval(ComplexInterval::point(1.0, 0.0), chi, &EvalParams::default()).unwrap();
        assert!(l.re.overlaps(&(Interval::pi() / Interval::from_u64(4))), "{l:?}");
        assert!(l.width() < 1e-10);
    }
}

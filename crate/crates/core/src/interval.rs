//! Closed real intervals over binary64 with outward rounding.
//!
//! Every arithmetic result is widened by one ulp on each side after the
//! round-to-nearest operation, which is enough to contain the exact image.
//! Transcendental functions come from the platform libm and are widened by
//! [`LIBM_PAD_ULPS`] ulps.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

/// Outward padding applied to libm results (exp, ln, sin, cos).
pub const LIBM_PAD_ULPS: u32 = 4;

#[inline]
fn down(x: f64) -> f64 {
    if x.is_finite() {
        x.next_down()
    } else {
        x
    }
}

#[inline]
fn up(x: f64) -> f64 {
    if x.is_finite() {
        x.next_up()
    } else {
        x
    }
}

fn pad_down(mut x: f64) -> f64 {
    for _ in 0..LIBM_PAD_ULPS {
        x = down(x);
    }
    x
}

fn pad_up(mut x: f64) -> f64 {
    for _ in 0..LIBM_PAD_ULPS {
        x = up(x);
    }
    x
}

// Error-free transforms. Results that are exact in binary64 stay exact; the
// others move one ulp in the rounding direction. Outside the safe exponent
// range the plain one-ulp widening is used.

const SAFE_HI: f64 = 1e300;
const SAFE_LO: f64 = 1e-290;

fn safe(x: f64) -> bool {
    x == 0.0 || (x.abs() < SAFE_HI && x.abs() > SAFE_LO)
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn split(a: f64) -> (f64, f64) {
    let c = 134_217_729.0 * a;
    let hi = c - (c - a);
    (hi, a - hi)
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

/// Rounds `s` toward the exact value whose excess over `s` has the sign of `e`.
#[inline]
fn round_with(s: f64, e: f64, upward: bool) -> f64 {
    match (upward, e > 0.0, e < 0.0) {
        (true, true, _) => s.next_up(),
        (false, _, true) => s.next_down(),
        _ => s,
    }
}

fn add_dir(a: f64, b: f64, upward: bool) -> f64 {
    let (s, e) = two_sum(a, b);
    if !s.is_finite() || !(safe(a) && safe(b)) || !e.is_finite() {
        return if upward { up(s) } else { down(s) };
    }
    round_with(s, e, upward)
}

fn mul_dir(a: f64, b: f64, upward: bool) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if p.is_nan() {
        return 0.0;
    }
    if !(safe(a) && safe(b) && safe(p)) {
        return if upward { up(p) } else { down(p) };
    }
    let (p, e) = two_prod(a, b);
    round_with(p, e, upward)
}

fn div_dir(a: f64, b: f64, upward: bool) -> f64 {
    let r = a / b;
    if r.is_nan() {
        return 0.0;
    }
    if a == 0.0 {
        return 0.0;
    }
    if !(safe(a) && safe(b) && safe(r)) {
        return if upward { up(r) } else { down(r) };
    }
    // a - r b is exact; a/b - r has its sign times the sign of b.
    let (p, e) = two_prod(r, b);
    let res = (a - p) - e;
    round_with(r, if b > 0.0 { res } else { -res }, upward)
}

fn sqrt_dir(x: f64, upward: bool) -> f64 {
    let r = x.sqrt();
    if x == 0.0 {
        return 0.0;
    }
    if !(safe(x) && safe(r)) {
        return if upward { up(r) } else { down(r) };
    }
    let (p, e) = two_prod(r, r);
    round_with(r, (x - p) - e, upward)
}


#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(
            !lo.is_nan() && !hi.is_nan() && lo <= hi,
            "invalid interval [{lo}, {hi}]"
        );
        Interval { lo, hi }
    }

    pub const fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub const ZERO: Interval = Interval::point(0.0);
    pub const ONE: Interval = Interval::point(1.0);

    pub fn entire() -> Self {
        Interval {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        }
    }

    /// Enclosure of `x`, where `x` may not be representable.
    pub fn around(x: f64) -> Self {
        Interval::new(down(x), up(x))
    }

    pub fn from_i64(n: i64) -> Self {
        let x = n as f64;
        if x.abs() <= 9_007_199_254_740_992.0 && x as i64 == n {
            Interval::point(x)
        } else {
            Interval::around(x)
        }
    }

    pub fn from_u64(n: u64) -> Self {
        let x = n as f64;
        if n <= 1 << 53 {
            Interval::point(x)
        } else {
            Interval::around(x)
        }
    }

    /// Enclosure of the exact rational `num/den`.
    pub fn from_fraction(num: i64, den: u64) -> Self {
        assert!(den > 0);
        Interval::from_ratio(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_ratio(r: &BigRational) -> Self {
        match r.to_f64() {
            Some(x) if x.is_finite() => {
                if BigRational::from_float(x).as_ref() == Some(r) {
                    Interval::point(x)
                } else {
                    Interval::around(x)
                }
            }
            _ => {
                if r.is_negative() {
                    Interval::new(f64::NEG_INFINITY, -f64::MAX)
                } else {
                    Interval::new(f64::MAX, f64::INFINITY)
                }
            }
        }
    }

    /// Parses a plain or scientific decimal literal into an enclosure.
    pub fn from_decimal(s: &str) -> Option<Self> {
        parse_decimal(s).map(|r| Interval::from_ratio(&r))
    }

    pub fn pi() -> Self {
        Interval::around(std::f64::consts::PI)
    }

    pub fn e() -> Self {
        Interval::around(std::f64::consts::E)
    }

    pub fn ln2() -> Self {
        Interval::around(std::f64::consts::LN_2)
    }

    pub fn ln10() -> Self {
        Interval::around(std::f64::consts::LN_10)
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        if self.lo == f64::NEG_INFINITY || self.hi == f64::INFINITY {
            if self.lo.is_finite() {
                return self.lo;
            }
            if self.hi.is_finite() {
                return self.hi;
            }
            return 0.0;
        }
        0.5 * self.lo + 0.5 * self.hi
    }

    pub fn width(&self) -> f64 {
        up(self.hi - self.lo)
    }

    /// Largest absolute value in the interval.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value in the interval.
    pub fn mig(&self) -> f64 {
        if self.contains(0.0) {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Every element is strictly below every element of `other`.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_le(&self, other: &Interval) -> bool {
        self.hi <= other.lo
    }

    pub fn certainly_positive(&self) -> bool {
        self.lo > 0.0
    }

    pub fn certainly_negative(&self) -> bool {
        self.hi < 0.0
    }

    /// Three-way comparison that only answers when the enclosures separate.
    pub fn partial_order(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.is_point() && other.is_point() && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Widens the interval by `r >= 0` on both sides.
    pub fn inflate(&self, r: f64) -> Interval {
        assert!(r >= 0.0);
        Interval {
            lo: down(self.lo - r),
            hi: up(self.hi + r),
        }
    }

    /// `[-r, r]`.
    pub fn symmetric(r: f64) -> Interval {
        let r = r.abs();
        Interval { lo: -r, hi: r }
    }

    pub fn abs(&self) -> Interval {
        if self.lo >= 0.0 {
            *self
        } else if self.hi <= 0.0 {
            Interval {
                lo: -self.hi,
                hi: -self.lo,
            }
        } else {
            Interval {
                lo: 0.0,
                hi: self.mag(),
            }
        }
    }

    pub fn max(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.max(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn min(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.min(other.hi),
        }
    }

    pub fn sqr(&self) -> Interval {
        let a = self.abs();
        Interval {
            lo: mul_dir(a.lo, a.lo, false).max(0.0),
            hi: mul_dir(a.hi, a.hi, true),
        }
    }

    pub fn recip(&self) -> Interval {
        Interval::ONE / *self
    }

    pub fn sqrt(&self) -> Interval {
        assert!(self.hi >= 0.0, "sqrt of negative interval");
        let lo = if self.lo <= 0.0 {
            0.0
        } else {
            sqrt_dir(self.lo, false).max(0.0)
        };
        Interval {
            lo,
            hi: sqrt_dir(self.hi, true),
        }
    }

    pub fn exp(&self) -> Interval {
        // exp(0) = 1 is the one exact case worth keeping.
        let exact = |x: f64| (x == 0.0).then_some(1.0);
        Interval {
            lo: exact(self.lo).unwrap_or_else(|| pad_down(self.lo.exp()).max(0.0)),
            hi: if self.hi == f64::INFINITY {
                f64::INFINITY
            } else {
                exact(self.hi).unwrap_or_else(|| pad_up(self.hi.exp()))
            },
        }
    }

    /// Natural logarithm; the part of the interval at or below zero is dropped.
    pub fn ln(&self) -> Interval {
        assert!(self.hi > 0.0, "ln of non-positive interval");
        let exact = |x: f64| (x == 1.0).then_some(0.0);
        let lo = if self.lo <= 0.0 {
            f64::NEG_INFINITY
        } else {
            exact(self.lo).unwrap_or_else(|| pad_down(self.lo.ln()))
        };
        Interval {
            lo,
            hi: exact(self.hi).unwrap_or_else(|| pad_up(self.hi.ln())),
        }
    }

    /// `self^y` for a positive base.
    pub fn pow(&self, y: &Interval) -> Interval {
        (*y * self.ln()).exp()
    }

    pub fn powf(&self, y: f64) -> Interval {
        self.pow(&Interval::point(y))
    }

    pub fn powi(&self, n: i32) -> Interval {
        if n == 0 {
            return Interval::ONE;
        }
        if n < 0 {
            return self.powi(-n).recip();
        }
        let even = n % 2 == 0;
        let mut n = n as u32;
        let mut base = *self;
        let mut acc = Interval::ONE;
        // Squaring keeps intervals that straddle zero non-negative.
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            n >>= 1;
            if n > 0 {
                base = base.sqr();
            }
        }
        if even && acc.lo < 0.0 {
            acc.lo = 0.0;
        }
        acc
    }

    pub fn cos(&self) -> Interval {
        self.trig(0.0)
    }

    pub fn sin(&self) -> Interval {
        self.trig(0.5)
    }

    // cos(x - shift*pi). Extremes of cos(x - shift*pi) sit at x = (k + shift) pi,
    // maxima for even k and minima for odd k.
    fn trig(&self, shift: f64) -> Interval {
        if !self.is_finite() || self.hi - self.lo >= std::f64::consts::TAU {
            return Interval::new(-1.0, 1.0);
        }
        let eval = |x: f64| {
            if shift == 0.0 {
                x.cos()
            } else {
                x.sin()
            }
        };
        let a = eval(self.lo);
        let b = eval(self.hi);
        let mut lo = pad_down(a.min(b)).max(-1.0);
        let mut hi = pad_up(a.max(b)).min(1.0);
        if self.is_point() {
            return Interval { lo, hi };
        }
        let pi = Interval::pi();
        let ka = (Interval::point(self.lo) / pi - Interval::point(shift)).lo().ceil();
        let kb = (Interval::point(self.hi) / pi - Interval::point(shift)).hi().floor();
        let mut k = ka;
        while k <= kb {
            if (k as i64).rem_euclid(2) == 0 {
                hi = 1.0;
            } else {
                lo = -1.0;
            }
            k += 1.0;
        }
        Interval { lo, hi }
    }

    /// Rounds the lower endpoint toward minus infinity as a decimal literal.
    pub fn lo_decimal(&self) -> String {
        decimal_below(self.lo)
    }

    /// Rounds the upper endpoint toward plus infinity as a decimal literal.
    pub fn hi_decimal(&self) -> String {
        decimal_above(self.hi)
    }
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// Shortest decimal literal that is `<= x`.
pub fn decimal_below(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:e}");
    if parse_decimal(&s).expect("own output parses") <= exact(x) {
        s
    } else {
        format!("{:e}", x.next_down())
    }
}

/// Shortest decimal literal that is `>= x`.
pub fn decimal_above(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:e}");
    if parse_decimal(&s).expect("own output parses") >= exact(x) {
        s
    } else {
        format!("{:e}", x.next_up())
    }
}

/// Exact rational value of a decimal literal such as `-1.25e-3`.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.find('.') {
        Some(i) => (&digits[..i], &digits[i + 1..]),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut num: BigInt = all.parse().ok()?;
    if neg {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let r = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Some(r)
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo_decimal(), self.hi_decimal())
    }
}

impl serde::Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Interval", 2)?;
        st.serialize_field("hi", &self.hi_decimal())?;
        st.serialize_field("lo", &self.lo_decimal())?;
        st.end()
    }
}

/// Reads the `{"hi", "lo"}` form back, rounding each decimal outward.
impl<'de> serde::Deserialize<'de> for Interval {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            hi: String,
            lo: String,
        }
        fn end<E: serde::de::Error>(s: &str, upper: bool) -> Result<f64, E> {
            match s {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                _ => {
                    let v = Interval::from_decimal(s)
                        .ok_or_else(|| E::custom(format!("bad decimal {s:?}")))?;
                    Ok(if upper { v.hi } else { v.lo })
                }
            }
        }
        let raw = Raw::deserialize(deserializer)?;
        let (lo, hi) = (end(&raw.lo, false)?, end(&raw.hi, true)?);
        if !(lo <= hi) {
            return Err(serde::de::Error::custom("lo exceeds hi"));
        }
        Ok(Interval { lo, hi })
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: add_dir(self.lo, rhs.lo, false),
            hi: add_dir(self.hi, rhs.hi, true),
        }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval {
            lo: add_dir(self.lo, -rhs.hi, false),
            hi: add_dir(self.hi, -rhs.lo, true),
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let pairs = [
            (self.lo, rhs.lo),
            (self.lo, rhs.hi),
            (self.hi, rhs.lo),
            (self.hi, rhs.hi),
        ];
        let lo = pairs.iter().map(|&(a, b)| mul_dir(a, b, false)).fold(f64::INFINITY, f64::min);
        let hi = pairs.iter().map(|&(a, b)| mul_dir(a, b, true)).fold(f64::NEG_INFINITY, f64::max);
        Interval { lo, hi }
    }
}

impl Div for Interval {
    type Output = Interval;
    fn div(self, rhs: Interval) -> Interval {
        if rhs.contains(0.0) {
            return Interval::entire();
        }
        let pairs = [
            (self.lo, rhs.lo),
            (self.lo, rhs.hi),
            (self.hi, rhs.lo),
            (self.hi, rhs.hi),
        ];
        let lo = pairs.iter().map(|&(a, b)| div_dir(a, b, false)).fold(f64::INFINITY, f64::min);
        let hi = pairs.iter().map(|&(a, b)| div_dir(a, b, true)).fold(f64::NEG_INFINITY, f64::max);
        Interval { lo, hi }
    }
}

macro_rules! scalar_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<f64> for Interval {
            type Output = Interval;
            fn $m(self, rhs: f64) -> Interval {
                $tr::$m(self, Interval::point(rhs))
            }
        }
        impl $tr<Interval> for f64 {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval {
                $tr::$m(Interval::point(self), rhs)
            }
        }
    )*};
}
scalar_ops!(Add add, Sub sub, Mul mul, Div div);

impl std::iter::Sum for Interval {
    fn sum<I: Iterator<Item = Interval>>(iter: I) -> Interval {
        iter.fold(Interval::ZERO, |a, b| a + b)
    }
}

/// Exact rational endpoints, for soundness checks against rational arithmetic.
pub fn endpoints_exact(x: &Interval) -> (BigRational, BigRational) {
    (exact(x.lo), exact(x.hi))
}

/// True when the exact rational `r` lies in `x`.
pub fn contains_ratio(x: &Interval, r: &BigRational) -> bool {
    let (lo, hi) = endpoints_exact(x);
    &lo <= r && r <= &hi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_enclose_reference_values() {
        let pi = BigRational::new(
            "314159265358979323846264338327950288".parse().unwrap(),
            "100000000000000000000000000000000000".parse().unwrap(),
        );
        assert!(contains_ratio(&Interval::pi(), &pi));
        let e = parse_decimal("2.71828182845904523536028747135266").unwrap();
        assert!(contains_ratio(&Interval::e(), &e));
    }

    #[test]
    fn decimal_endpoints_round_outward() {
        let x = Interval::from_fraction(1, 3);
        let lo = parse_decimal(&x.lo_decimal()).unwrap();
        let hi = parse_decimal(&x.hi_decimal()).unwrap();
        let third = BigRational::new(1.into(), 3.into());
        assert!(lo <= third && third <= hi);
        assert_eq!(Interval::point(0.5).lo_decimal(), "5e-1");
    }

    #[test]
    fn parse_decimal_forms() {
        assert_eq!(
            parse_decimal("-1.25e-2").unwrap(),
            BigRational::new((-1).into(), 80.into())
        );
        assert_eq!(parse_decimal("100").unwrap(), BigRational::from_integer(100.into()));
        assert!(parse_decimal("abc").is_none());
        assert!(parse_decimal(".").is_none());
    }

    #[test]
    fn division_by_zero_straddle_is_entire() {
        let x = Interval::ONE / Interval::new(-1.0, 1.0);
        assert_eq!(x.lo(), f64::NEG_INFINITY);
        assert_eq!(x.hi(), f64::INFINITY);
    }

    #[test]
    fn trig_catches_interior_extrema() {
        let c = Interval::new(-0.1, 0.1).cos();
        assert_eq!(c.hi(), 1.0);
        let s = Interval::new(1.5, 1.7).sin();
        assert_eq!(s.hi(), 1.0);
        let c = Interval::new(3.0, 3.3).cos();
        assert_eq!(c.lo(), -1.0);
        let s = Interval::new(0.2, 0.3).sin();
        assert!(s.contains(0.25f64.sin()) && s.hi() < 0.3);
    }

    #[test]
    fn powi_even_straddle_is_nonnegative() {
        let x = Interval::new(-2.0, 1.0).powi(2);
        assert_eq!(x.lo(), 0.0);
        assert!(x.hi() >= 4.0);
        let y = Interval::new(-2.0, 1.0).powi(3);
        assert!(y.lo() <= -8.0 && y.hi() >= 1.0);
    }

    #[test]
    fn ln_exp_roundtrip_encloses() {
        let x = Interval::point(7.25);
        assert!(x.ln().exp().contains(7.25));
        assert!(Interval::point(2.0).powf(0.5).contains(std::f64::consts::SQRT_2));
    }
}

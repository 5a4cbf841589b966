//! Rectangular complex intervals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::characters::CharValue;
use crate::interval::Interval;

#[derive(Clone, Copy, PartialEq, serde::Serialize)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub const ZERO: ComplexInterval = ComplexInterval {
        re: Interval::ZERO,
        im: Interval::ZERO,
    };
    pub const ONE: ComplexInterval = ComplexInterval {
        re: Interval::ONE,
        im: Interval::ZERO,
    };

    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn point(re: f64, im: f64) -> Self {
        ComplexInterval::new(Interval::point(re), Interval::point(im))
    }

    pub fn real(re: Interval) -> Self {
        ComplexInterval::new(re, Interval::ZERO)
    }

    /// `e(num/den) = exp(2 pi i num/den)` or zero.
    pub fn from_char_value(v: CharValue) -> Self {
        match v {
            CharValue::Zero => ComplexInterval::ZERO,
            CharValue::Root { den: 1, .. } => ComplexInterval::ONE,
            CharValue::Root { den: 2, .. } => -ComplexInterval::ONE,
            CharValue::Root { num, den: 4 } => {
                if num == 1 {
                    ComplexInterval::point(0.0, 1.0)
                } else {
                    ComplexInterval::point(0.0, -1.0)
                }
            }
            CharValue::Root { num, den } => {
                let angle = Interval::from_u64(2) * Interval::pi() * Interval::from_fraction(num as i64, den);
                ComplexInterval::new(angle.cos(), angle.sin())
            }
        }
    }

    pub fn conj(&self) -> Self {
        ComplexInterval::new(self.re, -self.im)
    }

    pub fn scale(&self, x: Interval) -> Self {
        ComplexInterval::new(self.re * x, self.im * x)
    }

    pub fn norm_sqr(&self) -> Interval {
        self.re.sqr() + self.im.sqr()
    }

    pub fn abs(&self) -> Interval {
        self.norm_sqr().sqrt()
    }

    /// Upper bound for `|z|` over the box.
    pub fn abs_hi(&self) -> f64 {
        self.abs().hi()
    }

    pub fn exp(&self) -> Self {
        let r = self.re.exp();
        ComplexInterval::new(r * self.im.cos(), r * self.im.sin())
    }

    /// `x^{-s}` for a positive real base enclosed by `log_x = ln x`.
    pub fn pow_neg_from_log(log_x: Interval, s: &ComplexInterval) -> Self {
        let mag = (-(s.re * log_x)).exp();
        let angle = s.im * log_x;
        ComplexInterval::new(mag * angle.cos(), -(mag * angle.sin()))
    }

    /// `x^{s}` for a positive real base.
    pub fn real_pow(x: Interval, s: &ComplexInterval) -> Self {
        ComplexInterval::pow_neg_from_log(x.ln(), &(-*s))
    }

    pub fn contains(&self, re: f64, im: f64) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    pub fn overlaps(&self, other: &ComplexInterval) -> bool {
        self.re.overlaps(&other.re) && self.im.overlaps(&other.im)
    }

    pub fn encloses(&self, other: &ComplexInterval) -> bool {
        self.re.encloses(&other.re) && self.im.encloses(&other.im)
    }

    pub fn hull(&self, other: &ComplexInterval) -> Self {
        ComplexInterval::new(self.re.hull(&other.re), self.im.hull(&other.im))
    }

    /// Adds a disc of radius `r` (as its bounding square).
    pub fn inflate(&self, r: f64) -> Self {
        ComplexInterval::new(self.re.inflate(r), self.im.inflate(r))
    }

    /// Larger of the two component widths.
    pub fn width(&self) -> f64 {
        self.re.width().max(self.im.width())
    }

    pub fn mid(&self) -> (f64, f64) {
        (self.re.mid(), self.im.mid())
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        ComplexInterval::new(self.re / d, -self.im / d)
    }
}

impl fmt::Debug for ComplexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + i{:?}", self.re, self.im)
    }
}

impl From<Interval> for ComplexInterval {
    fn from(x: Interval) -> Self {
        ComplexInterval::real(x)
    }
}

impl Neg for ComplexInterval {
    type Output = Self;
    fn neg(self) -> Self {
        ComplexInterval::new(-self.re, -self.im)
    }
}

impl Add for ComplexInterval {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        ComplexInterval::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for ComplexInterval {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        ComplexInterval::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for ComplexInterval {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        ComplexInterval::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl Div for ComplexInterval {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let d = o.norm_sqr();
        ComplexInterval::new(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )
    }
}

impl Mul<Interval> for ComplexInterval {
    type Output = Self;
    fn mul(self, x: Interval) -> Self {
        self.scale(x)
    }
}

impl Add<Interval> for ComplexInterval {
    type Output = Self;
    fn add(self, x: Interval) -> Self {
        ComplexInterval::new(self.re + x, self.im)
    }
}

impl Sub<Interval> for ComplexInterval {
    type Output = Self;
    fn sub(self, x: Interval) -> Self {
        ComplexInterval::new(self.re - x, self.im)
    }
}

impl std::iter::Sum for ComplexInterval {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ComplexInterval::ZERO, |a, b| a + b)
    }
}

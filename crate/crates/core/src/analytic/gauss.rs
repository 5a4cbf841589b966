//! Gauss-Legendre rules with verified node enclosures and a Bernstein-ellipse
//! error bound.

use crate::interval::Interval;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Exact `(P_n(x), P_{n-1}(x))` at a binary64 point.
fn legendre_exact(n: usize, x: f64) -> (BigRational, BigRational) {
    let x = BigRational::from_float(x).expect("finite node");
    let mut p0 = BigRational::from_integer(1.into());
    let mut p1 = x.clone();
    for k in 1..n {
        let kf = BigRational::from_integer((k as i64).into());
        let c = BigRational::from_integer((2 * k as i64 + 1).into());
        let p2 = (c * &x * &p1 - kf * &p0) / BigRational::from_integer((k as i64 + 1).into());
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

fn legendre_sign(n: usize, x: f64) -> i8 {
    let (p1, _) = legendre_exact(n, x);
    if p1.is_zero() {
        0
    } else if p1.is_positive() {
        1
    } else {
        -1
    }
}

fn legendre_f64(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// An `n`-point rule on `[-1, 1]` whose nodes and weights are enclosures.
#[derive(Clone, Debug)]
pub struct GaussRule {
    pub nodes: Vec<Interval>,
    pub weights: Vec<Interval>,
}

impl GaussRule {
    /// Builds the rule, certifying each node by a sign change of `P_n`.
    pub fn new(n: usize) -> Option<GaussRule> {
        assert!(n >= 2);
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_f64(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-17 {
                    break;
                }
            }
            let mut delta = f64::EPSILON;
            let node = loop {
                let (lo, hi) = ((x - delta).next_down(), (x + delta).next_up());
                let (sl, sh) = (legendre_sign(n, lo), legendre_sign(n, hi));
                if sl * sh < 0 {
                    break Interval::new(lo, hi);
                }
                delta *= 2.0;
                if delta > 1e-6 {
                    return None;
                }
            };
            // w = 2 (1 - x^2) / (n P_{n-1}(x))^2. P_{n-1} is taken at the centre
            // and widened by Markov's bound |P_{n-1}'| <= n (n - 1) / 2.
            let pm1_mid = Interval::from_ratio(&legendre_exact(n, node.mid()).1);
            let markov = (n * (n - 1) / 2) as f64 * (0.5 * node.width()).next_up();
            let pm1 = pm1_mid.inflate(markov.next_up());
            let one_minus = Interval::ONE - node.sqr();
            let w = Interval::from_u64(2) * one_minus / (Interval::from_u64(n as u64) * pm1).sqr();
            nodes.push(node);
            weights.push(w);
        }
        // Distinct, ordered enclosures give all n roots.
        for pair in nodes.windows(2) {
            if !(pair[1].hi() < pair[0].lo()) {
                return None;
            }
        }
        Some(GaussRule { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// See [`error_bound`].
    pub fn error_bound(&self, half_width: f64, rho: f64, m: f64) -> f64 {
        error_bound(self.len(), half_width, rho, m)
    }
}

/// `|int - rule| <= 64 M rho^{-2n} / (15 (rho^2 - 1))` on `[-1, 1]`, scaled by
/// the panel half-width, for an integrand bounded by `m` on the Bernstein
/// ellipse with parameter `rho`.
pub fn error_bound(n: usize, half_width: f64, rho: f64, m: f64) -> f64 {
    let rho = Interval::point(rho);
    let b = Interval::from_u64(64) * Interval::point(m) / Interval::from_u64(15)
        / rho.powi(2 * n as i32)
        / (rho.sqr() - Interval::ONE)
        * Interval::point(half_width);
    b.hi()
}

/// Ellipse parameter whose semi-minor axis equals `height / half_width`.
pub fn rho_for_height(half_width: f64, height: f64) -> f64 {
    let b = height / half_width;
    b + (b * b + 1.0).sqrt()
}

/// Semi-axes `(a, b)` of the Bernstein ellipse, scaled to a panel.
pub fn ellipse_box(half_width: f64, rho: f64) -> (f64, f64) {
    let a = 0.5 * (rho + 1.0 / rho) * half_width;
    let b = 0.5 * (rho - 1.0 / rho) * half_width;
    (a.next_up(), b.next_up())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        let rule = GaussRule::new(16).unwrap();
        let s: Interval = rule.weights.iter().copied().sum();
        assert!(s.contains(2.0) && s.width() < 1e-11);
    }

    #[test]
    fn integrates_polynomials_exactly() {
        let rule = GaussRule::new(10).unwrap();
        // x^18 integrates to 2/19.
        let s: Interval = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(x, w)| *w * x.powi(18))
            .sum();
        assert!(s.overlaps(&(Interval::from_u64(2) / Interval::from_u64(19))));
    }
}

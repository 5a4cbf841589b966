//! Rigorous integration of `(1 + t)^alpha / prod_j (c_j + t^2)^{1/2}` over a
//! half-line or the real line.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::interval::Interval;

/// Integration domain. On the real line the integrand is read with `|t|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    HalfLine,
    RealLine,
}

/// `(1 + t)^alpha / prod_j (c_j + t^2)^{1/2}` with rational `alpha`.
#[derive(Clone, Debug)]
pub struct AlgebraicForm {
    pub alpha_num: i64,
    pub alpha_den: u64,
    pub c: Vec<Interval>,
}

impl AlgebraicForm {
    pub fn new(alpha_num: i64, alpha_den: u64, c: Vec<Interval>) -> Result<Self> {
        if alpha_den == 0 || c.is_empty() || c.iter().any(|cj| !cj.certainly_positive()) {
            return Err(Error::UnregisteredForm(format!(
                "alpha = {alpha_num}/{alpha_den} with {} square-root factors",
                c.len()
            )));
        }
        Ok(AlgebraicForm { alpha_num, alpha_den, c })
    }

    pub fn alpha(&self) -> Interval {
        Interval::from_fraction(self.alpha_num, self.alpha_den)
    }

    /// The decay exponent `alpha - k` at infinity, as a rational.
    pub fn decay(&self) -> (i64, u64) {
        let k = self.c.len() as i64;
        (self.alpha_num - k * self.alpha_den as i64, self.alpha_den)
    }

    fn converges(&self) -> bool {
        // alpha < k - 1
        self.alpha_num < (self.c.len() as i64 - 1) * self.alpha_den as i64
    }

    pub fn eval(&self, t: Interval) -> Interval {
        let mut v = (Interval::ONE + t).pow(&self.alpha());
        for cj in &self.c {
            v = v / (*cj + t.sqr()).sqrt();
        }
        v
    }

    /// `f'(t) = f(t) (alpha / (1 + t) - sum_j t / (c_j + t^2))`.
    pub fn derivative(&self, t: Interval) -> Interval {
        let mut log_d = self.alpha() / (Interval::ONE + t);
        for cj in &self.c {
            log_d = log_d - t / (*cj + t.sqr());
        }
        self.eval(t) * log_d
    }

    /// Upper bound for the integral over `[t0, inf)`.
    pub fn tail_bound(&self, t0: f64) -> Interval {
        let t0 = Interval::point(t0);
        let alpha = self.alpha();
        let k = Interval::from_u64(self.c.len() as u64);
        let lead = if self.alpha_num >= 0 {
            (Interval::ONE + t0.recip()).pow(&alpha)
        } else {
            Interval::ONE
        };
        let gap = k - Interval::ONE - alpha;
        Interval::new(0.0, (lead * t0.pow(&(-gap)) / gap).hi())
    }
}

/// Names accepted by [`registered_form`].
pub const REGISTERED_FORMS: &[&str] =
    &["int_4_5", "int_5_8", "ratio_printed", "ratio_squared", "arctan"];

fn dec(s: &str) -> Interval {
    Interval::from_decimal(s).expect("literal")
}

/// The integrands used by the certificate suite, by name.
pub fn registered_form(name: &str) -> Result<(AlgebraicForm, Domain)> {
    let form = match name {
        "int_4_5" => (AlgebraicForm::new(5, 12, vec![dec("0.24"), dec("0.25")])?, Domain::HalfLine),
        "int_5_8" => (AlgebraicForm::new(1, 2, vec![Interval::ONE, Interval::ONE])?, Domain::RealLine),
        "ratio_printed" => (AlgebraicForm::new(1, 2, vec![dec("0.492"), dec("0.500")])?, Domain::HalfLine),
        "ratio_squared" => (
            AlgebraicForm::new(1, 2, vec![dec("0.492").sqr(), dec("0.500").sqr()])?,
            Domain::HalfLine,
        ),
        "arctan" => (AlgebraicForm::new(0, 1, vec![Interval::ONE, Interval::ONE])?, Domain::HalfLine),
        other => return Err(Error::UnregisteredForm(other.to_string())),
    };
    Ok(form)
}

/// Quadrature controls.
#[derive(Clone, Copy, Debug)]
pub struct QuadParams {
    /// Relative width target for the body of the integral.
    pub rel_tol: f64,
    /// Largest tail allowed, as a fraction of the body.
    pub tail_fraction: f64,
    /// Fixed truncation point; chosen automatically when `None`.
    pub t0: Option<f64>,
    pub max_depth: u32,
}

impl Default for QuadParams {
    fn default() -> Self {
        QuadParams { rel_tol: 1e-6, tail_fraction: 1e-3, t0: None, max_depth: 48 }
    }
}

impl QuadParams {
    /// `rel_tol = 2^{-bits/4}`, floored at `1e-12`.
    pub fn from_bits(bits: u32) -> Self {
        QuadParams { rel_tol: 2f64.powf(-(bits as f64) / 4.0).max(1e-12), ..Default::default() }
    }

    pub fn with_t0(mut self, t0: f64) -> Self {
        self.t0 = Some(t0);
        self
    }
}

// Midpoint rule with a first-derivative remainder: for f' in [L, U],
// int_a^b f - (b - a) f(m) lies in [L, U] (b - m)^2 / 2 - [L, U] (m - a)^2 / 2.
fn panel(form: &AlgebraicForm, a: f64, b: f64) -> Interval {
    let m = 0.5 * (a + b);
    let (ia, ib, im) = (Interval::point(a), Interval::point(b), Interval::point(m));
    let d = form.derivative(Interval::new(a, b));
    let half = Interval::point(0.5);
    form.eval(im) * (ib - ia) + d * (ib - im).sqr() * half - d * (im - ia).sqr() * half
}

fn adaptive(form: &AlgebraicForm, a: f64, b: f64, rel: f64, depth: u32) -> Interval {
    let est = panel(form, a, b);
    if depth == 0 || est.width() <= rel * est.mig() {
        return est;
    }
    let m = 0.5 * (a + b);
    if m <= a || m >= b {
        return est;
    }
    adaptive(form, a, m, rel, depth - 1) + adaptive(form, m, b, rel, depth - 1)
}

/// Integral over `[a, b]` on a geometric mesh (dyadic breakpoints from
/// `max(a, 1/64)`), each piece refined by bisection. Pieces run in parallel
/// and are summed in order, so the result does not depend on scheduling.
fn integrate_range(form: &AlgebraicForm, a: f64, b: f64, params: &QuadParams) -> Interval {
    let mut breaks = vec![a];
    let mut x = if a > 0.0 { 2.0 * a } else { 1.0 / 64.0 };
    while x < b {
        breaks.push(x);
        x *= 2.0;
    }
    breaks.push(b);
    let pieces: Vec<Interval> = breaks
        .par_windows(2)
        .map(|w| adaptive(form, w[0], w[1], params.rel_tol, params.max_depth))
        .collect();
    pieces.into_iter().sum()
}

/// Body integral over `[0, t0]`.
pub fn integrate_body(form: &AlgebraicForm, t0: f64, params: &QuadParams) -> Interval {
    integrate_range(form, 0.0, t0, params)
}

/// Enclosure of the integral of `form` over `domain`. `tail_exponent` must
/// equal the true decay `alpha - k` of the integrand.
pub fn integrate_rigorous(
    form: &AlgebraicForm,
    domain: Domain,
    tail_exponent: (i64, u64),
    params: &QuadParams,
) -> Result<Interval> {
    let (dn, dd) = form.decay();
    if tail_exponent.0 as i128 * dd as i128 != dn as i128 * tail_exponent.1 as i128 {
        return Err(Error::InvalidArgument(format!(
            "tail exponent {}/{} does not match the decay {dn}/{dd}",
            tail_exponent.0, tail_exponent.1
        )));
    }
    if !form.converges() {
        return Err(Error::Nonconvergent(form.alpha().mid()));
    }
    let total = match params.t0 {
        Some(t0) => integrate_body(form, t0, params) + form.tail_bound(t0),
        None => {
            let mut t0 = 64.0;
            let mut body = integrate_body(form, t0, params);
            loop {
                let tail = form.tail_bound(t0);
                if tail.hi() <= params.tail_fraction * body.lo() || t0 > 1e15 {
                    break body + tail;
                }
                body = body + integrate_range(form, t0, 4.0 * t0, params);
                t0 *= 4.0;
            }
        }
    };
    Ok(match domain {
        Domain::HalfLine => total,
        Domain::RealLine => total * Interval::point(2.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn integral(name: &str) -> Interval {
        let (form, domain) = registered_form(name).unwrap();
        integrate_rigorous(&form, domain, form.decay(), &QuadParams::default()).unwrap()
    }

    #[test]
    fn arctan_is_half_pi() {
        let v = integral("arctan");
        assert!(v.contains(std::f64::consts::FRAC_PI_2));
        assert!(v.width() < 2e-3 * v.mid());
    }

    #[test]
    fn rejects_bad_forms() {
        assert!(matches!(registered_form("nope"), Err(Error::UnregisteredForm(_))));
        let f = AlgebraicForm::new(3, 2, vec![Interval::ONE, Interval::ONE]).unwrap();
        assert!(matches!(
            integrate_rigorous(&f, Domain::HalfLine, f.decay(), &QuadParams::default()),
            Err(Error::Nonconvergent(_))
        ));
        let g = AlgebraicForm::new(0, 1, vec![Interval::ONE, Interval::ONE]).unwrap();
        assert!(integrate_rigorous(&g, Domain::HalfLine, (-1, 1), &QuadParams::default()).is_err());
    }
}

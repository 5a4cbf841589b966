//! The smoothed Mellin identity for `a = 1 * chi1`:
//!
//! `sum_{n <= R} a(n) n^{-s0} (1 - n/R)
//!   = L(1,chi1) R^{1-s0} / ((1-s0)(2-s0)) + zeta(s0) L(s0,chi1)
//!   + (1/pi) Re int_0^inf zeta(1/2+it) L(1/2+it,chi1) R^{c+it} / ((c+it)(c+1+it)) dt`
//!
//! with `c = 1/2 - s0`, valid for real `s0` in `(1/2, 1)` and real `chi1`.
//! The integral is computed with panelled Gauss-Legendre plus an explicit
//! tail from `|zeta(1/2+it)| <= 1.5 (1+|t|)^{1/6}` and
//! `|L(1/2+it,psi)| <= 2.97655 (q_psi (1+|t|))^{1/4}` for primitive `psi`.

use rayon::prelude::*;

use super::complex::ComplexInterval;
use super::gauss::{ellipse_box, error_bound, rho_for_height, GaussRule};
use super::series::smoothed_divisor_sum;
use super::zeta::{l_eval, zeta, EvalParams};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::multiplicative::ExceptionalContext;

#[derive(Clone, Copy, Debug)]
pub struct MellinParams {
    /// The contour integral is computed on `[0, t_max]`.
    pub t_max: f64,
    pub panel_width: f64,
    pub nodes: usize,
    /// Half-height of the complex box used to bound the integrand.
    pub box_height: f64,
    pub eval: EvalParams,
}

impl Default for MellinParams {
    fn default() -> Self {
        MellinParams {
            t_max: 200.0,
            panel_width: 0.5,
            nodes: 16,
            box_height: 0.3,
            eval: EvalParams {
                target: 1e-12,
                ..EvalParams::default()
            },
        }
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct MellinReport {
    pub modulus: u64,
    pub s0: Interval,
    pub length: u64,
    pub finite_sum: Interval,
    pub pole_residue: Interval,
    pub origin_residue: Interval,
    pub contour: Interval,
    pub tail_bound: f64,
    pub residues_plus_contour: Interval,
    pub agree: bool,
    pub combined_width: f64,
}

struct Panel {
    weights: Vec<Interval>,
    ts: Vec<Interval>,
    values: Vec<ComplexInterval>,
    half: f64,
    rho: f64,
    box_t: ComplexInterval,
    box_mag: f64,
}

fn f0(s: ComplexInterval, ctx: &ExceptionalContext, params: &EvalParams) -> Result<ComplexInterval> {
    Ok(zeta(s, params)? * l_eval(s, ctx.chi1(), params)?)
}

/// `R^{c + i t} / ((c + i t)(c + 1 + i t))` for complex `t`.
fn kernel(t: ComplexInterval, c: Interval, log_r: Interval) -> ComplexInterval {
    let it = ComplexInterval::new(-t.im, t.re);
    let w = it + c;
    (w.scale(log_r)).exp() / w / (w + Interval::ONE)
}

fn build_panels(ctx: &ExceptionalContext, params: &MellinParams) -> Result<Vec<Panel>> {
    let rule = GaussRule::new(params.nodes)
        .ok_or_else(|| Error::InvalidArgument("Gauss rule construction failed".into()))?;
    let count = (params.t_max / params.panel_width).ceil() as usize;
    let half = params.panel_width / 2.0;
    let rho = rho_for_height(half, params.box_height);
    let (ea, eb) = ellipse_box(half, rho);
    (0..count)
        .into_par_iter()
        .map(|k| {
            let mid = Interval::point(params.panel_width) * (Interval::from_u64(k as u64) + Interval::point(0.5));
            let ts: Vec<Interval> = rule
                .nodes
                .iter()
                .map(|x| mid + *x * Interval::point(half))
                .collect();
            let mut values = Vec::with_capacity(ts.len());
            for t in &ts {
                let s = ComplexInterval::new(Interval::point(0.5), *t);
                values.push(f0(s, ctx, &params.eval)?);
            }
            let box_t = ComplexInterval::new(mid.inflate(ea), Interval::symmetric(eb));
            let s_box = ComplexInterval::new(Interval::point(0.5) - box_t.im, box_t.re);
            let box_mag = f0(s_box, ctx, &params.eval)?.abs_hi();
            let weights = rule.weights.iter().map(|w| *w * Interval::point(half)).collect();
            Ok(Panel {
                weights,
                ts,
                values,
                half,
                rho,
                box_t,
                box_mag,
            })
        })
        .collect()
}

fn tail_bound(ctx: &ExceptionalContext, c: Interval, log_r: Interval, t0: f64) -> f64 {
    let chi1 = ctx.chi1();
    let prim = chi1.primitive();
    let qs = Interval::from_u64(prim.modulus());
    let mut euler = Interval::ONE;
    for p in chi1.group().factorization().primes() {
        if !prim.modulus().is_multiple_of(p) {
            euler = euler * (Interval::ONE + Interval::from_u64(p).sqrt().recip());
        }
    }
    let t0i = Interval::point(t0);
    let alpha = Interval::from_fraction(5, 12);
    let integral = (Interval::ONE + t0i.recip()).pow(&alpha) * t0i.pow(&(alpha - Interval::ONE))
        / (Interval::ONE - alpha);
    let bound = Interval::from_fraction(3, 2)
        * Interval::from_decimal("2.97655").expect("literal")
        * qs.powf(0.25)
        * euler
        * (c * log_r).exp()
        * integral;
    // The contour term is (1/pi) Re of the half-line integral.
    (bound / Interval::pi()).hi()
}

/// Checks the identity for each `s0`, sharing the zeta and L evaluations.
pub fn mellin_identity_check(
    ctx: &ExceptionalContext,
    s0s: &[f64],
    length: u64,
    params: &MellinParams,
) -> Result<Vec<MellinReport>> {
    if !ctx.chi1().is_real() || ctx.chi1().is_principal() {
        return Err(Error::InvalidArgument("chi1 must be a real non-principal character".into()));
    }
    for &s0 in s0s {
        if !(0.5 < s0 && s0 < 1.0) {
            return Err(Error::InvalidArgument(format!("s0 = {s0} must lie in (1/2, 1)")));
        }
    }
    let panels = build_panels(ctx, params)?;
    let log_r = Interval::from_u64(length).ln();
    let chi1 = ctx.chi1();
    let mut out = Vec::with_capacity(s0s.len());
    for &s0v in s0s {
        let s0 = Interval::point(s0v);
        let c = Interval::point(0.5) - s0;
        let mut integral = ComplexInterval::ZERO;
        let mut err = 0.0f64;
        for p in &panels {
            for ((t, w), v) in p.ts.iter().zip(&p.weights).zip(&p.values) {
                integral = integral + (*v * kernel(ComplexInterval::real(*t), c, log_r)).scale(*w);
            }
            let kmag = kernel(p.box_t, c, log_r).abs_hi();
            let m = p.box_mag * kmag;
            err += error_bound(p.ts.len(), p.half, p.rho, m);
        }
        let contour = integral.re.inflate(err) / Interval::pi();
        let tail = tail_bound(ctx, c, log_r, params.t_max);
        let contour = contour.inflate(tail);

        let one = ComplexInterval::point(1.0, 0.0);
        let l1 = l_eval(one, chi1, &params.eval)?.re;
        let one_minus = Interval::ONE - s0;
        let pole_residue = l1 * (one_minus * log_r).exp() / (one_minus * (Interval::from_u64(2) - s0));
        let s0c = ComplexInterval::real(s0);
        let origin_residue = (zeta(s0c, &params.eval)? * l_eval(s0c, chi1, &params.eval)?).re;
        let rhs = pole_residue + origin_residue + contour;
        let lhs = smoothed_divisor_sum(ctx, s0, length);
        out.push(MellinReport {
            modulus: ctx.modulus(),
            s0,
            length,
            finite_sum: lhs,
            pole_residue,
            origin_residue,
            contour,
            tail_bound: tail,
            residues_plus_contour: rhs,
            agree: lhs.overlaps(&rhs),
            combined_width: lhs.width() + rhs.width(),
        });
    }
    Ok(out)
}

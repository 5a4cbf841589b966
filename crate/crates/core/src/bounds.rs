//! The explicit-constant calculator: hypotheses, `M`, `K`, `R`, `N`, the
//! repulsion exponent, corollary forms and the zero-detector right-hand side.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, WindowSide};
use crate::interval::Interval;
use crate::rigor::Verdict;

/// Slack added to `1/6` by the `weyl` preset when none is given.
pub const WEYL_DEFAULT_SLACK: f64 = 0.01;
/// Exponent used by the `siegel` preset when none is given.
pub const SIEGEL_DEFAULT_EPS: f64 = 0.1;

fn dec(s: &str) -> Interval {
    Interval::from_decimal(s).expect("literal")
}

/// Constants of the subconvexity hypothesis (`A`, `theta`) and of the Siegel
/// hypothesis (`B`, `eps`). Missing values stay `None` until resolved.
#[derive(Clone, Debug, Default, Serialize)]
pub struct HypothesisParams {
    #[serde(rename = "A")]
    pub a: Option<Interval>,
    pub theta: Option<Interval>,
    #[serde(rename = "B")]
    pub b: Option<Interval>,
    pub eps: Option<Interval>,
    pub ineffective: bool,
    pub presets: Vec<String>,
}

/// Fully specified hypotheses with ranges checked.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Hypotheses {
    #[serde(rename = "A")]
    pub a: Interval,
    pub theta: Interval,
    #[serde(rename = "B")]
    pub b: Interval,
    pub eps: Interval,
    pub ineffective: bool,
}

impl HypothesisParams {
    pub fn preset(name: &str) -> Result<Self> {
        let mut p = HypothesisParams { presets: vec![name.to_string()], ..Default::default() };
        match name {
            "convexity" => {
                p.a = Some(dec("2.97655"));
                p.theta = Some(Interval::from_fraction(1, 4));
            }
            "weyl" => {
                p.theta = Some(Interval::from_fraction(1, 6) + Interval::point(WEYL_DEFAULT_SLACK));
                p.ineffective = true;
            }
            "bordignon" => {
                p.b = Some(Interval::from_u64(100));
                p.eps = Some(Interval::from_fraction(1, 2));
            }
            "siegel" => {
                p.eps = Some(Interval::point(SIEGEL_DEFAULT_EPS));
                p.ineffective = true;
            }
            other => return Err(Error::InvalidHypothesis(format!("unknown preset {other:?}"))),
        }
        Ok(p)
    }

    /// Parses a comma-separated preset list such as `convexity,bordignon`.
    pub fn from_presets(list: &str) -> Result<Self> {
        let mut out = HypothesisParams::default();
        for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            out = out.merge(&HypothesisParams::preset(name)?);
        }
        Ok(out)
    }

    /// Values set in `other` win.
    pub fn merge(&self, other: &HypothesisParams) -> HypothesisParams {
        let mut presets = self.presets.clone();
        presets.extend(other.presets.iter().cloned());
        HypothesisParams {
            a: other.a.or(self.a),
            theta: other.theta.or(self.theta),
            b: other.b.or(self.b),
            eps: other.eps.or(self.eps),
            ineffective: self.ineffective || other.ineffective,
            presets,
        }
    }

    pub fn with_a(mut self, a: Interval) -> Self {
        self.a = Some(a);
        self
    }

    pub fn with_theta(mut self, theta: Interval) -> Self {
        self.theta = Some(theta);
        self
    }

    pub fn with_b(mut self, b: Interval) -> Self {
        self.b = Some(b);
        self
    }

    pub fn with_eps(mut self, eps: Interval) -> Self {
        self.eps = Some(eps);
        self
    }

    pub fn resolve(&self) -> Result<Hypotheses> {
        let need = |v: Option<Interval>, name: &str| {
            v.ok_or_else(|| Error::InvalidHypothesis(format!("{name} is unspecified")))
        };
        let h = Hypotheses {
            a: need(self.a, "A")?,
            theta: need(self.theta, "theta")?,
            b: need(self.b, "B")?,
            eps: need(self.eps, "eps")?,
            ineffective: self.ineffective,
        };
        if h.a.lo() < 1.0 {
            return Err(Error::InvalidHypothesis("A must be at least 1".into()));
        }
        if !(h.theta.lo() > 0.0 && h.theta.hi() <= 0.25) {
            return Err(Error::InvalidHypothesis("theta must lie in (0, 1/4]".into()));
        }
        if !(h.b.lo() > 0.0) {
            return Err(Error::InvalidHypothesis("B must be positive".into()));
        }
        if !(h.eps.lo() > 0.0 && h.eps.hi() <= 0.5) {
            return Err(Error::InvalidHypothesis("eps must lie in (0, 1/2]".into()));
        }
        Ok(h)
    }
}

/// `1 - 1/(10 log max{q, q|t|, 10})`.
pub fn mccurley_region(q: u64, t: f64) -> Result<Interval> {
    if q < 3 {
        return Err(Error::InvalidArgument("q must be at least 3".into()));
    }
    let qi = Interval::from_u64(q);
    let qt = qi * Interval::point(t.abs());
    let m = qi.max(&qt).max(&Interval::from_u64(10));
    Ok(Interval::ONE - (Interval::from_u64(10) * m.ln()).recip())
}

/// Convexity interpolation between `Re s = 1/2` and `Re s = 1 + eta`. For
/// imprimitive characters the second form applies: `q` replaces `q_psi` and
/// the Euler factors at `p | q` cost `exp((log q)^{(2 - sigma)/2})`.
#[allow(clippy::too_many_arguments)]
pub fn phragmen_bound(
    sigma: f64,
    t: f64,
    q_psi: u64,
    eta: f64,
    a: Interval,
    theta: Interval,
    primitive: bool,
    q: u64,
) -> Result<Interval> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::InvalidArgument("eta must lie in (0, 1)".into()));
    }
    if !(0.5..=1.0 + eta).contains(&sigma) {
        return Err(Error::SigmaOutOfRange { sigma, eta });
    }
    let (s, e, half) = (Interval::point(sigma), Interval::point(eta), Interval::point(0.5));
    let denom = half + e;
    let e1 = (Interval::ONE + e - s) / denom;
    let e2 = (s - half) / denom;
    let modulus = if primitive { q_psi } else { q };
    let base = a * (Interval::from_u64(2 * modulus) * (Interval::ONE + Interval::point(t.abs()))).pow(&theta);
    let mut v = base.pow(&e1) * (Interval::ONE + e.recip()).pow(&e2);
    if !primitive {
        let lq = Interval::from_u64(q).ln();
        v = v * lq.pow(&((Interval::from_u64(2) - s) * half)).exp();
    }
    Ok(v)
}

/// A positive quantity carried with its logarithm, since many of them
/// overflow binary64.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Magnitude {
    pub log: Interval,
    pub value: Interval,
}

impl Magnitude {
    fn from_log(log: Interval) -> Self {
        Magnitude { log, value: log.exp() }
    }
}

fn check_q_t(q: u64, t: f64) -> Result<()> {
    if q <= 400_000 {
        return Err(Error::InvalidArgument("q must exceed 400000".into()));
    }
    if !(t >= 4.0) {
        return Err(Error::InvalidArgument("T must be at least 4".into()));
    }
    Ok(())
}

/// `log K = log(10^25 A^20 B^-2) + 8 (log q)^{3/4} + 28 log log q` and
/// `log M = log K + (8 theta + 2 eps) log q + 4 theta log T`.
pub fn compute_m_k(q: u64, t: f64, h: &Hypotheses) -> Result<(Magnitude, Magnitude)> {
    check_q_t(q, t)?;
    let lq = Interval::from_u64(q).ln();
    let lt = Interval::point(t).ln();
    let log_k = Interval::from_u64(25) * Interval::ln10() + Interval::from_u64(20) * h.a.ln()
        - Interval::from_u64(2) * h.b.ln()
        + Interval::from_u64(8) * lq.powf(0.75)
        + Interval::from_u64(28) * lq.ln();
    let log_m = log_k
        + (Interval::from_u64(8) * h.theta + Interval::from_u64(2) * h.eps) * lq
        + Interval::from_u64(4) * h.theta * lt;
    Ok((Magnitude::from_log(log_m), Magnitude::from_log(log_k)))
}

/// Sifting level `R = 64 A^2 q^{2 theta} e^{2 (log q)^{3/4}} (1 - beta1)^{-2}`,
/// in log form, given `x = 1 - beta1`.
pub fn log_r_choice(lq: Interval, a: Interval, theta: Interval, x: Interval) -> Interval {
    Interval::from_u64(64).ln() + Interval::from_u64(2) * a.ln() + Interval::from_u64(2) * theta * lq
        + Interval::from_u64(2) * lq.powf(0.75)
        - Interval::from_u64(2) * x.ln()
}

/// Detector length
/// `N = 10^25 A^20 e^{8 (log q)^{3/4}} (log q)^24 q^{8 theta} T^{4 theta} (1 - beta1)^{-2}`
/// in log form.
pub fn log_n_choice(lq: Interval, lt: Interval, a: Interval, theta: Interval, x: Interval) -> Interval {
    Interval::from_u64(25) * Interval::ln10() + Interval::from_u64(20) * a.ln()
        + Interval::from_u64(8) * lq.powf(0.75)
        + Interval::from_u64(24) * lq.ln()
        + Interval::from_u64(8) * theta * lq
        + Interval::from_u64(4) * theta * lt
        - Interval::from_u64(2) * x.ln()
}

/// The window `1 - 1/(10 log q) < beta1 < 1 - B/(q^eps (log q)^2)`.
pub fn siegel_window(q: u64, h: &Hypotheses) -> (Interval, Interval) {
    let lq = Interval::from_u64(q).ln();
    let lower = Interval::ONE - (Interval::from_u64(10) * lq).recip();
    let upper = Interval::ONE - h.b / (Interval::from_u64(q).pow(&h.eps) * lq.sqr());
    (lower, upper)
}

/// Which side of the window `beta1` fails, if any.
pub fn window_violation(q: u64, beta1: Interval, h: &Hypotheses) -> Option<WindowSide> {
    let (lower, upper) = siegel_window(q, h);
    if !lower.certainly_lt(&beta1) {
        Some(WindowSide::Lower)
    } else if !beta1.certainly_lt(&upper) {
        Some(WindowSide::Upper)
    } else {
        None
    }
}

/// `1 - log(c / (x L)) / L`, the common shape of the repulsion bounds.
fn repulsion_shape(c: Interval, x: Interval, l: Interval) -> (Interval, Interval) {
    let arg = c / (x * l);
    (Interval::ONE - arg.ln() / l, arg)
}

/// `1 - log(theta / (4 (1 - beta1) log M)) / log M` as a function of `log M`.
pub fn repulsion_exponent(theta: Interval, one_minus_beta1: Interval, log_m: Interval) -> Interval {
    repulsion_shape(theta / Interval::from_u64(4), one_minus_beta1, log_m).0
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundReport {
    pub q: u64,
    #[serde(rename = "T")]
    pub t: f64,
    pub beta1: Interval,
    pub hypotheses: Hypotheses,
    #[serde(rename = "M")]
    pub m: Magnitude,
    #[serde(rename = "K")]
    pub k: Magnitude,
    #[serde(rename = "R")]
    pub r: Magnitude,
    #[serde(rename = "N")]
    pub n: Magnitude,
    /// `theta / (4 (1 - beta1) log M)`.
    pub log_argument: Interval,
    pub repulsion_beta: Interval,
    /// The bound says nothing: the log argument does not exceed 1.
    pub vacuous: bool,
    pub n_le_m: bool,
    pub window_lower: Interval,
    pub window_upper: Interval,
    pub window_violation: Option<WindowSide>,
    pub corollary: Option<CorollaryReport>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub c1: Interval,
    pub c2: Interval,
    pub c3: Interval,
    pub c4: Interval,
    pub linear_form: Interval,
    pub value: Interval,
    pub dominance: Option<Verdict>,
}

/// Bound for any other zero `beta + i gamma` with `|gamma| <= T`, given an
/// exceptional zero `beta1` inside the Siegel window.
pub fn repulsion_bound(q: u64, t: f64, beta1: Interval, params: &HypothesisParams) -> Result<BoundReport> {
    let report = repulsion_bound_unchecked(q, t, beta1, params)?;
    match report.window_violation {
        Some(side) => Err(Error::WindowViolated { side }),
        None => Ok(report),
    }
}

/// As [`repulsion_bound`], but a window violation is recorded in the report
/// instead of returned as an error.
pub fn repulsion_bound_unchecked(q: u64, t: f64, beta1: Interval, params: &HypothesisParams) -> Result<BoundReport> {
    let h = params.resolve()?;
    if !(beta1.lo() > 0.0 && beta1.hi() < 1.0) {
        return Err(Error::BetaOutOfRange(beta1.mid()));
    }
    let (m, k) = compute_m_k(q, t, &h)?;
    let lq = Interval::from_u64(q).ln();
    let lt = Interval::point(t).ln();
    let x = Interval::ONE - beta1;
    let r = Magnitude::from_log(log_r_choice(lq, h.a, h.theta, x));
    let n = Magnitude::from_log(log_n_choice(lq, lt, h.a, h.theta, x));
    let (repulsion_beta, arg) = repulsion_shape(h.theta / Interval::from_u64(4), x, m.log);
    let (window_lower, window_upper) = siegel_window(q, &h);
    Ok(BoundReport {
        q,
        t,
        beta1,
        hypotheses: h,
        m,
        k,
        r,
        n,
        log_argument: arg,
        repulsion_beta,
        vacuous: !(arg.lo() > 1.0),
        n_le_m: n.log.certainly_le(&m.log),
        window_lower,
        window_upper,
        window_violation: window_violation(q, beta1, &h),
        corollary: None,
    })
}

/// `c1 log q + c2 log T + c3`.
pub fn linear_form(q: u64, t: f64, c1: Interval, c2: Interval, c3: Interval) -> Interval {
    c1 * Interval::from_u64(q).ln() + c2 * Interval::point(t).ln() + c3
}

/// `1 - log(c4 / ((1 - beta1) L)) / L` with `L = c1 log q + c2 log T + c3`.
#[allow(clippy::too_many_arguments)]
pub fn corollary_form(
    q: u64,
    t: f64,
    beta1: Interval,
    c1: Interval,
    c2: Interval,
    c3: Interval,
    c4: Interval,
) -> Result<Interval> {
    check_q_t(q, t)?;
    let l = linear_form(q, t, c1, c2, c3);
    Ok(repulsion_shape(c4, Interval::ONE - beta1, l).0)
}

/// Verified iff `log M <= c1 log q + c2 log T + c3` certainly holds.
pub fn corollary_dominance(
    q: u64,
    t: f64,
    params: &HypothesisParams,
    c1: Interval,
    c2: Interval,
    c3: Interval,
) -> Result<Verdict> {
    if params.ineffective {
        return Err(Error::Ineffective(params.presets.join(",")));
    }
    let h = params.resolve()?;
    let (m, _) = compute_m_k(q, t, &h)?;
    Ok(Verdict::le(m.log, linear_form(q, t, c1, c2, c3)))
}

/// Upper bound for `|G(1/2 + it, chi)|`:
/// `12 (1 - beta1)^2 (log q)^4 R + 1.5e7 A^2 q^{2 theta} e^{2 (log q)^{3/4}} log^12(2eR)`.
pub fn g_critical_line_bound(q: u64, beta1: Interval, a: Interval, theta: Interval, r: u64) -> Interval {
    let lq = Interval::from_u64(q).ln();
    let rr = Interval::from_u64(r);
    let x = Interval::ONE - beta1;
    let first = Interval::from_u64(12) * x.sqr() * lq.powi(4) * rr;
    let log2er = (Interval::from_u64(2) * Interval::e() * rr).ln();
    let second = dec("1.5e7")
        * a.sqr()
        * (Interval::from_u64(2) * theta * lq).exp()
        * (Interval::from_u64(2) * lq.powf(0.75)).exp()
        * log2er.powi(12);
    first + second
}

/// `((2 - beta1)/(1 - beta) + 1/(beta - 1/2)) (1 - beta1) N^{1 - beta}`. At
/// `beta = 1/2` the bound is infinite and `hi` is `+inf`.
pub fn detector_rhs(beta: f64, beta1: Interval, n: Interval) -> Result<Interval> {
    if !(0.5..1.0).contains(&beta) {
        return Err(Error::BetaOutOfRange(beta));
    }
    if !(beta1.lo() > 0.0 && beta1.hi() < 1.0) {
        return Err(Error::BetaOutOfRange(beta1.mid()));
    }
    if !(n.lo() >= 1.0) {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    let b = Interval::point(beta);
    let x = Interval::ONE - beta1;
    let scale = x * n.pow(&(Interval::ONE - b));
    if beta == 0.5 {
        let first = (Interval::from_u64(2) - beta1) / (Interval::ONE - b) * scale;
        return Ok(Interval::new(first.lo(), f64::INFINITY));
    }
    let bracket = (Interval::from_u64(2) - beta1) / (Interval::ONE - b) + (b - Interval::point(0.5)).recip();
    Ok(bracket * scale)
}

/// The bracket `0.72 <= L(1, chi1)/(1 - beta1) <= 0.18 (log q)^2`.
pub fn ratio_window(q: u64) -> Result<(Interval, Interval)> {
    if q <= 400_000 {
        return Err(Error::InvalidArgument("q must exceed 400000".into()));
    }
    let lq = Interval::from_u64(q).ln();
    Ok((dec("0.72"), dec("0.18") * lq.sqr()))
}

/// `theta / (4 (1 - beta1)) < N^{1/2 - 5 theta / log N} log N`, the step that
/// lets the endgame assume `beta > 1/2 + 5 theta / log N`.
pub fn threshold_implication(q: u64, t: f64, beta1: Interval, h: &Hypotheses) -> Result<bool> {
    check_q_t(q, t)?;
    let lq = Interval::from_u64(q).ln();
    let lt = Interval::point(t).ln();
    let x = Interval::ONE - beta1;
    let log_n = log_n_choice(lq, lt, h.a, h.theta, x);
    let lhs = (h.theta / (Interval::from_u64(4) * x)).ln();
    let rhs = (Interval::point(0.5) - Interval::from_u64(5) * h.theta / log_n) * log_n + log_n.ln();
    Ok(lhs.certainly_lt(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cb() -> HypothesisParams {
        HypothesisParams::from_presets("convexity,bordignon").unwrap()
    }

    #[test]
    fn presets_combine() {
        let h = cb().resolve().unwrap();
        assert!(h.a.contains(2.97655) && h.b.contains(100.0) && !h.ineffective);
        assert!(HypothesisParams::from_presets("weyl,bordignon").unwrap().resolve().is_err());
        assert!(HypothesisParams::preset("nope").is_err());
    }

    #[test]
    fn mccurley_at_small_modulus() {
        let v = mccurley_region(10, 0.0).unwrap();
        assert!(v.contains(1.0 - 1.0 / (10.0 * 10f64.ln())));
        assert!(mccurley_region(2, 0.0).is_err());
    }

    #[test]
    fn phragmen_endpoints() {
        let (a, th) = (Interval::from_u64(3), Interval::from_fraction(1, 4));
        let v = phragmen_bound(0.5, 2.0, 7, 0.25, a, th, true, 7).unwrap();
        assert!(v.contains(3.0 * (2.0 * 7.0 * 3.0f64).powf(0.25)));
        let w = phragmen_bound(1.25, 2.0, 7, 0.25, a, th, true, 7).unwrap();
        assert!(w.contains(5.0));
        assert!(matches!(
            phragmen_bound(0.4, 0.0, 7, 0.25, a, th, true, 7),
            Err(Error::SigmaOutOfRange { .. })
        ));
    }

    #[test]
    fn window_sides() {
        let h = cb().resolve().unwrap();
        assert_eq!(window_violation(1_000_000, Interval::point(1.0 - 1e-8), &h), Some(WindowSide::Upper));
        assert_eq!(window_violation(1_000_000, Interval::point(0.99), &h), Some(WindowSide::Lower));
        assert_eq!(window_violation(1_000_000, Interval::point(0.999), &h), None);
        assert!(matches!(
            repulsion_bound(1_000_000, 10.0, Interval::point(1.0 - 1e-8), &cb()),
            Err(Error::WindowViolated { side: WindowSide::Upper })
        ));
    }

    #[test]
    fn detector_rhs_diverges_at_half() {
        let v = detector_rhs(0.5, Interval::point(0.999), Interval::from_u64(100)).unwrap();
        assert_eq!(v.hi(), f64::INFINITY);
        assert!(detector_rhs(0.4, Interval::point(0.999), Interval::from_u64(100)).is_err());
    }

    #[test]
    fn weakened_constants_fail() {
        let v = corollary_dominance(400_001, 4.0, &cb(), Interval::from_u64(10), Interval::ONE, Interval::from_u64(107));
        assert_eq!(v.unwrap(), Verdict::Verified);
        let w = corollary_dominance(
            400_001,
            4.0,
            &cb(),
            Interval::from_u64(5),
            Interval::point(0.5),
            Interval::point(53.5),
        );
        assert_eq!(w.unwrap(), Verdict::Failed);
        let ineffective = HypothesisParams::from_presets("weyl,siegel").unwrap();
        assert!(matches!(
            corollary_dominance(400_001, 4.0, &ineffective, Interval::ONE, Interval::ONE, Interval::ONE),
            Err(Error::Ineffective(_))
        ));
    }
}

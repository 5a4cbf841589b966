//! The registry of numerical inequalities and their verification.

use rayon::prelude::*;
use serde::Serialize;

use super::products::{prime_product_rigorous, series_tail_rigorous, PrimeFactor, SeriesTerm};
use super::quadrature::{integrate_rigorous, registered_form, QuadParams};
use super::Verdict;
use crate::analytic::{zeta, ComplexInterval, EvalParams};
use crate::bounds::log_r_choice;
use crate::error::{Error, Result};
use crate::interval::Interval;

/// Whether a verdict covers the whole claimed range or only a sample of it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rigor {
    Proof,
    Sampled,
}

/// One inequality `lhs < rhs` (or `<=`, or equality for exact checks).
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub claim: String,
    pub lhs: Interval,
    pub rhs: Interval,
    pub verdict: Verdict,
}

impl Check {
    fn lt(claim: impl Into<String>, lhs: Interval, rhs: Interval) -> Check {
        Check { claim: claim.into(), lhs, rhs, verdict: Verdict::lt(lhs, rhs) }
    }

    fn le(claim: impl Into<String>, lhs: Interval, rhs: Interval) -> Check {
        Check { claim: claim.into(), lhs, rhs, verdict: Verdict::le(lhs, rhs) }
    }

    fn exact(claim: impl Into<String>, holds: bool, lhs: Interval, rhs: Interval) -> Check {
        let verdict = if holds { Verdict::Verified } else { Verdict::Failed };
        Check { claim: claim.into(), lhs, rhs, verdict }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub name: String,
    pub claim: String,
    pub paper_location: String,
    /// Combined verdict of `checks`; `variants` are reported alongside.
    pub verdict: Verdict,
    pub enclosure: Interval,
    pub rigor: Rigor,
    pub checks: Vec<Check>,
    pub variants: Vec<Check>,
    /// Working precision of the run that produced the verdict.
    pub bits: u32,
}

struct Entry {
    name: &'static str,
    claim: &'static str,
    location: &'static str,
    run: fn(u32) -> Result<Outcome>,
}

struct Outcome {
    enclosure: Interval,
    rigor: Rigor,
    checks: Vec<Check>,
    variants: Vec<Check>,
}

impl Outcome {
    fn proof(enclosure: Interval, checks: Vec<Check>) -> Self {
        Outcome { enclosure, rigor: Rigor::Proof, checks, variants: Vec::new() }
    }
}

const REGISTRY: &[Entry] = &[
    Entry {
        name: "int_4_5",
        claim: "int_0^inf (1+t)^{5/12} / ((0.24+t^2)^{1/2} (0.25+t^2)^{1/2}) dt < 4.5",
        location: "zero-detector contour bound: integral evaluated directly",
        run: int_4_5,
    },
    Entry {
        name: "int_5_8",
        claim: "int_R (1+|t|)^{1/2} / (1+t^2) dt <= 5.8",
        location: "sieve Dirichlet polynomial estimate: integral on the right",
        run: int_5_8,
    },
    Entry {
        name: "series_n2logn",
        claim: "sum_{n>=2} 1/(n^2 log n) < 1",
        location: "convexity interpolation: bound for the Euler factors at p | q",
        run: series_n2logn,
    },
    Entry {
        name: "B1_product",
        claim: "B(1) <= prod_p (1 + p^{-3/2} + 3 p^{-3}) <= 3.15 x 1.1 <= 3.5",
        location: "sieve Dirichlet polynomial estimate: crude bound for B(1)",
        run: b1_product,
    },
    Entry {
        name: "ratio_integral",
        claim: "2 (2.97655)^2 2^{1/2} int_0^inf (1+t)^{1/2} / ((0.492+t^2)^{1/2} (0.500+t^2)^{1/2}) dt < 92.7",
        location: "window for L(1,chi1)/(1-beta1): shifted contour integral",
        run: ratio_integral,
    },
    Entry {
        name: "maple_ineq",
        claim: "8 (log q)^{3/4} + 28 log log q + log(10^25 3^20 100^{-2}) <= 7 log q + 107 for all q > 400000",
        location: "explicit corollary: final inequality checked by computer algebra",
        run: maple_ineq,
    },
    Entry {
        name: "small_arith",
        claim: "0.740 < e^{-3/10}; 1.008 x 125.2 < 126; 4.5 x 1.8/pi < 2.6; 2.6 x 1.008/0.72 <= 3.7 <= 4; 3016 e/pi < 2610; 3^5 1.5 2^{1/6+theta} <= 520 for theta <= 1/4",
        location: "constant bookkeeping in the ratio window, zero detector and sieve estimates",
        run: small_arith,
    },
    Entry {
        name: "logR_bound",
        claim: "log(2eR) <= 2.3 A^{0.42} log q for q > 400000, A >= 1, theta <= 1/4, B = 100, eps = 1/2",
        location: "zero detector: crude bound for the sifting level",
        run: log_r_bound,
    },
    Entry {
        name: "zeta_half_window",
        claim: "|zeta(1/2+it)| <= 1.461 for |t| <= 3",
        location: "explicit convexity bound: value of zeta on the critical line near t = 0",
        run: zeta_half_window,
    },
    Entry {
        name: "theta_endgame",
        claim: "1 - 10^{-25} <= (65/(20 theta)) (1-beta1) N^{1-beta} log N implies beta < 1 - log(theta/(4(1-beta1) log N))/log N",
        location: "main theorem: final combination of the two detector sums",
        run: theta_endgame,
    },
];

/// Registered certificate names in suite order.
pub fn certificate_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|s| s.name).collect()
}

/// `(name, claim, paper_location)` for every registered certificate.
pub fn certificate_catalogue() -> Vec<(&'static str, &'static str, &'static str)> {
    REGISTRY.iter().map(|s| (s.name, s.claim, s.location)).collect()
}

fn run_entry(entry: &Entry, bits: u32) -> Result<Certificate> {
    let out = (entry.run)(bits)?;
    Ok(Certificate {
        name: entry.name.to_string(),
        claim: entry.claim.to_string(),
        paper_location: entry.location.to_string(),
        verdict: Verdict::all(out.checks.iter().map(|c| c.verdict)),
        enclosure: out.enclosure,
        rigor: out.rigor,
        checks: out.checks,
        variants: out.variants,
        bits,
    })
}

/// Runs one certificate, retrying once at doubled precision if inconclusive.
pub fn verify_certificate(name: &str, bits: u32) -> Result<Certificate> {
    let entry = REGISTRY
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownCertificate(name.to_string()))?;
    let cert = run_entry(entry, bits)?;
    if cert.verdict == Verdict::Inconclusive {
        return run_entry(entry, bits * 2);
    }
    Ok(cert)
}

/// Runs the whole registry concurrently; results are in registry order.
pub fn verify_all(bits: u32) -> Result<Vec<Certificate>> {
    REGISTRY.par_iter().map(|s| verify_certificate(s.name, bits)).collect()
}

fn dec(s: &str) -> Interval {
    Interval::from_decimal(s).expect("literal")
}

fn int(n: u64) -> Interval {
    Interval::from_u64(n)
}

/// Integral of a registered form; `t0` overrides the automatic truncation.
pub fn registered_integral(name: &str, bits: u32, t0: Option<f64>) -> Result<Interval> {
    let (form, domain) = registered_form(name)?;
    let mut params = QuadParams::from_bits(bits);
    params.t0 = t0;
    integrate_rigorous(&form, domain, form.decay(), &params)
}

fn int_4_5(bits: u32) -> Result<Outcome> {
    let v = registered_integral("int_4_5", bits, None)?;
    Ok(Outcome::proof(v, vec![Check::lt("integral < 4.5", v, dec("4.5"))]))
}

fn int_5_8(bits: u32) -> Result<Outcome> {
    let v = registered_integral("int_5_8", bits, None)?;
    Ok(Outcome::proof(v, vec![Check::le("integral <= 5.8", v, dec("5.8"))]))
}

fn series_n2logn(_bits: u32) -> Result<Outcome> {
    let v = series_tail_rigorous(&SeriesTerm { exponent: int(2), log_power: 1 }, 2)?;
    Ok(Outcome::proof(v, vec![Check::lt("sum < 1", v, Interval::ONE)]))
}

fn b1_factor() -> PrimeFactor {
    PrimeFactor::new(vec![(Interval::ONE, Interval::from_fraction(3, 2)), (int(3), int(3))]).expect("nonnegative")
}

fn b1_product(_bits: u32) -> Result<Outcome> {
    let f = b1_factor();
    let head = prime_product_rigorous(&f, 2, Some(40_000), 0)?;
    let tail = prime_product_rigorous(&f, 40_001, None, 40_000)?;
    // The route through integer sums, with 3^{omega(n)} <= n^{log 3 / log 2}.
    let e3 = int(3) - int(3).ln() / Interval::ln2();
    let s1 = series_tail_rigorous(&SeriesTerm::power(Interval::from_fraction(3, 2)), 40_000)?;
    let s2 = series_tail_rigorous(&SeriesTerm::power(e3), 40_000)?;
    let tail_sums = (Interval::ONE + s1) * (Interval::ONE + s2);
    let total = head * tail;
    let checks = vec![
        Check::le("prod_{p <= 40000} (1 + p^{-3/2} + 3p^{-3}) <= 3.15", head, dec("3.15")),
        Check::le("prod_{p > 40000} (1 + p^{-3/2} + 3p^{-3}) <= 1.1", tail, dec("1.1")),
        Check::le(
            "(1 + sum_{n>=40000} n^{-3/2}) (1 + sum_{n>=40000} 3^{omega(n)} n^{-3}) <= 1.1",
            tail_sums,
            dec("1.1"),
        ),
        Check::le("3.15 x 1.1 <= 3.5", dec("3.15") * dec("1.1"), dec("3.5")),
        Check::le("prod_p (1 + p^{-3/2} + 3p^{-3}) <= 3.5", total, dec("3.5")),
    ];
    Ok(Outcome::proof(total, checks))
}

fn ratio_integral(bits: u32) -> Result<Outcome> {
    let k = int(2) * dec("2.97655").sqr() * int(2).sqrt();
    let printed = k * registered_integral("ratio_printed", bits, None)?;
    let squared = k * registered_integral("ratio_squared", bits, None)?;
    Ok(Outcome {
        enclosure: printed,
        rigor: Rigor::Proof,
        checks: vec![Check::lt("printed constants 0.492, 0.500: value < 92.7", printed, dec("92.7"))],
        variants: vec![Check::lt("squared constants 0.492^2, 0.500^2: value < 92.7", squared, dec("92.7"))],
    })
}

/// `(lhs, rhs)` of the corollary inequality at `u = log q`.
fn maple_sides(u: Interval) -> (Interval, Interval) {
    let c0 = int(21) * Interval::ln10() + int(20) * int(3).ln();
    let lhs = int(8) * u.powf(0.75) + int(28) * u.ln() + c0;
    let rhs = int(7) * u + int(107);
    (lhs, rhs)
}

fn maple_ineq(_bits: u32) -> Result<Outcome> {
    // Endpoint at q0 = 400001, then d/du (rhs - lhs) = 7 - 6u^{-1/4} - 28/u,
    // which increases with u, is positive at u0 and so for all u >= u0.
    let u0 = int(400_001).ln();
    let (lhs, rhs) = maple_sides(u0);
    let slope = int(7) - int(6) * u0.powf(-0.25) - int(28) / u0;
    let checks = vec![
        Check::le("inequality at q = 400001", lhs, rhs),
        Check::lt("0 < 7 - 6u^{-1/4} - 28/u at u = log 400001", Interval::ZERO, slope),
    ];
    Ok(Outcome::proof(rhs - lhs, checks))
}

fn small_arith(_bits: u32) -> Result<Outcome> {
    let pi = Interval::pi();
    let theta = Interval::new(0.0, 0.25);
    let two_pow = int(2).pow(&(Interval::from_fraction(1, 6) + theta));
    let checks = vec![
        Check::lt("0.740 < e^{-3/10}", dec("0.740"), (-Interval::from_fraction(3, 10)).exp()),
        Check::lt("1.008 x 125.2 < 126", dec("1.008") * dec("125.2"), int(126)),
        Check::lt("4.5 x 1.8 / pi < 2.6", dec("4.5") * dec("1.8") / pi, dec("2.6")),
        Check::le("2.6 x 1.008 / 0.72 <= 3.7", dec("2.6") * dec("1.008") / dec("0.72"), dec("3.7")),
        Check::le("3.7 <= 4", dec("3.7"), int(4)),
        Check::lt("3016 e / pi < 2610", int(3016) * Interval::e() / pi, int(2610)),
        Check::le("3^5 x 1.5 x 2^{1/6+theta} <= 520, 0 <= theta <= 1/4", int(243) * dec("1.5") * two_pow, int(520)),
    ];
    let enclosure = dec("1.008") * dec("125.2");
    Ok(Outcome::proof(enclosure, checks))
}

/// `log(2eR)` at the largest `R` allowed by the Siegel hypothesis with
/// `B = 100`, `eps = 1/2`, that is `1 - beta1 = B / (q^{1/2} (log q)^2)`.
/// With `keep_exp = false` the factor `e^{2 (log q)^{3/4}}` is dropped, as in
/// the displayed chain of estimates.
fn log_2er_worst(u: Interval, a: Interval, theta: Interval, keep_exp: bool) -> Interval {
    let x = (int(100).ln() - Interval::point(0.5) * u - int(2) * u.ln()).exp();
    let mut v = (int(2) * Interval::e()).ln() + log_r_choice(u, a, theta, x);
    if !keep_exp {
        v = v - int(2) * u.powf(0.75);
    }
    v
}

fn log_r_rhs(u: Interval, a: Interval) -> Interval {
    dec("2.3") * a.powf(0.42) * u
}

fn log_r_bound(_bits: u32) -> Result<Outcome> {
    // log(2eR) grows with theta and shrinks relative to the right side as A
    // grows (d/dlog A of the gap is 0.966 A^{0.42} u - 2 > 0), so the worst
    // case is theta = 1/4, A = 1; in u the gap has slope
    // 2.3 A^{0.42} - 2 theta - 1 - 4/u (minus 1.5 u^{-1/4} with the factor kept).
    let u0 = int(400_001).ln();
    let (a1, th) = (Interval::ONE, Interval::from_fraction(1, 4));
    let literal = log_2er_worst(u0, a1, th, true);
    let chain = log_2er_worst(u0, a1, th, false);
    let rhs = log_r_rhs(u0, a1);

    let qs = [400_001f64, 1e6, 1e7, 1e9, 1e12, 1e20, 1e50];
    let a_grid = [dec("1"), dec("2.97655"), dec("3"), dec("10"), dec("100")];
    let th_grid = [Interval::from_fraction(1, 6), Interval::from_fraction(1, 4)];
    let (mut held, mut total, mut chain_held) = (0usize, 0usize, 0usize);
    let mut worst_gap: Option<Interval> = None;
    for &q in &qs {
        let u = Interval::point(q).ln();
        for &a in &a_grid {
            for &t in &th_grid {
                total += 1;
                let gap = log_2er_worst(u, a, t, true) - log_r_rhs(u, a);
                if gap.hi() <= 0.0 {
                    held += 1;
                }
                if (log_2er_worst(u, a, t, false) - log_r_rhs(u, a)).hi() <= 0.0 {
                    chain_held += 1;
                }
                worst_gap = Some(match worst_gap {
                    Some(w) => w.max(&gap),
                    None => gap,
                });
            }
        }
    }
    let slope_chain = dec("2.3") - Interval::point(1.5) - int(4) / u0;
    let checks = vec![
        Check::le("log(2eR) <= 2.3 A^{0.42} log q at q = 400001, A = 1, theta = 1/4", literal, rhs),
        Check::le(
            format!("grid: {held} of {total} points satisfy log(2eR) <= 2.3 A^{{0.42}} log q"),
            worst_gap.expect("grid"),
            Interval::ZERO,
        ),
    ];
    let variants = vec![
        Check::le(
            "without e^{2(log q)^{3/4}} in R: endpoint at q = 400001, A = 1, theta = 1/4",
            chain,
            rhs,
        ),
        Check::lt("without e^{2(log q)^{3/4}} in R: slope in log q is positive", Interval::ZERO, slope_chain),
        Check::exact(
            format!("without e^{{2(log q)^{{3/4}}}} in R: grid {chain_held} of {total}"),
            chain_held == total,
            int(chain_held as u64),
            int(total as u64),
        ),
    ];
    Ok(Outcome { enclosure: literal - rhs, rigor: Rigor::Proof, checks, variants })
}

fn zeta_half_window(bits: u32) -> Result<Outcome> {
    let params = EvalParams::from_bits(bits);
    let values: Vec<Interval> = (-300i32..=300)
        .into_par_iter()
        .map(|k| {
            let s = ComplexInterval::new(Interval::point(0.5), Interval::from_fraction(k as i64, 100));
            zeta(s, &params).map(|z| z.abs())
        })
        .collect::<Result<_>>()?;
    let sup = values.iter().copied().reduce(|a, b| a.max(&b)).expect("grid");
    Ok(Outcome {
        enclosure: sup,
        rigor: Rigor::Sampled,
        checks: vec![Check::le("max over t = k/100, |k| <= 300, of |zeta(1/2+it)| <= 1.461", sup, dec("1.461"))],
        variants: Vec::new(),
    })
}

fn theta_endgame(_bits: u32) -> Result<Outcome> {
    let thetas = [Interval::from_fraction(1, 4), Interval::from_fraction(1, 6) + dec("0.01"), Interval::from_fraction(1, 8)];
    let xs = [dec("1e-3"), dec("1e-6"), dec("1e-12")];
    let extra = [0u64, 10, 100, 1000];
    let one_minus = Interval::ONE - dec("1e-25");
    let mut rearranged: Option<Interval> = None;
    let mut s0_step: Option<Interval> = None;
    let hull = |acc: &mut Option<Interval>, v: Interval| {
        *acc = Some(match *acc {
            Some(a) => a.max(&v),
            None => v,
        });
    };
    for &th in &thetas {
        for &x in &xs {
            for &e in &extra {
                // N >= 10^25 / (1 - beta1).
                let log_n = int(25) * Interval::ln10() - x.ln() + int(e);
                // Largest beta allowed by the final display, against the target.
                let beta_star = Interval::ONE
                    - (one_minus * int(20) * th / (int(65) * x * log_n)).ln() / log_n;
                let target = Interval::ONE - (th / (int(4) * x * log_n)).ln() / log_n;
                hull(&mut rearranged, beta_star - target);
                let s0 = x * log_n + (-log_n).exp() + dec("3.1") * x - x * log_n / (int(2) * th);
                hull(&mut s0_step, s0);
            }
        }
    }
    let lq = int(400_001).ln();
    let checks = vec![
        Check::le("10.08/4 + 1/5 <= 55/20", dec("10.08") / int(4) + Interval::from_fraction(1, 5), Interval::from_fraction(55, 20)),
        Check::exact(
            "1/2 + 55/20 = 65/20",
            num_rational::Ratio::new(1i64, 2) + num_rational::Ratio::new(55, 20) == num_rational::Ratio::new(65, 20),
            Interval::from_fraction(1, 2) + Interval::from_fraction(55, 20),
            Interval::from_fraction(65, 20),
        ),
        Check::lt("1 + 1/(10 log q) < 1.008 for q > 400000", Interval::ONE + (int(10) * lq).recip(), dec("1.008")),
        Check::le(
            "grid: (1-beta1) log N + 1/N + 3.1 (1-beta1) <= (1-beta1) log N / (2 theta)",
            s0_step.expect("grid"),
            Interval::ZERO,
        ),
        Check::lt(
            "grid: rearranged display gives beta below 1 - log(theta/(4(1-beta1) log N))/log N",
            rearranged.expect("grid"),
            Interval::ZERO,
        ),
    ];
    Ok(Outcome::proof(rearranged.expect("grid"), checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_has_ten_entries() {
        assert_eq!(certificate_names().len(), 10);
        assert!(matches!(verify_certificate("nope", 80), Err(Error::UnknownCertificate(_))));
    }

    #[test]
    fn quick_certificates() {
        for name in ["series_n2logn", "maple_ineq", "theta_endgame"] {
            assert_eq!(verify_certificate(name, 80).unwrap().verdict, Verdict::Verified, "{name}");
        }
    }
}

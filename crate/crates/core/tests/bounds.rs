use deuring_core::bounds::{
    compute_m_k, corollary_dominance, corollary_form, detector_rhs, mccurley_region, phragmen_bound,
    ratio_window, repulsion_bound, repulsion_bound_unchecked, repulsion_exponent, siegel_window,
    threshold_implication, window_violation,
};
use deuring_core::{Error, HypothesisParams, Interval, Verdict, WindowSide};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cb() -> HypothesisParams {
    HypothesisParams::from_presets("convexity,bordignon").unwrap()
}

fn dec(s: &str) -> Interval {
    Interval::from_decimal(s).unwrap()
}

fn iv(x: f64) -> Interval {
    Interval::point(x)
}

/// A point strictly inside the Siegel window, at log-position `f` in (0, 1).
fn inside_window(q: u64, params: &HypothesisParams, f: f64) -> Interval {
    let h = params.resolve().unwrap();
    let (lower, upper) = siegel_window(q, &h);
    let (x_hi, x_lo) = (1.0 - lower.lo(), 1.0 - upper.hi());
    assert!(x_lo < x_hi, "window empty at q = {q}");
    let x = (x_lo.ln() + f * (x_hi.ln() - x_lo.ln())).exp();
    Interval::ONE - iv(x)
}

fn log_uniform_q(rng: &mut ChaCha8Rng) -> u64 {
    rng.gen_range(5e8f64.ln()..1e18f64.ln()).exp() as u64
}

#[test]
fn mccurley_examples() {
    let r = mccurley_region(10, 0.0).unwrap();
    assert!(r.overlaps(&(Interval::ONE - (Interval::from_u64(10) * Interval::ln10()).recip())));
    let mut prev = mccurley_region(400_001, 0.0).unwrap();
    for t in [0.5, 1.0, 2.0, 4.0, 100.0, 1e6] {
        let cur = mccurley_region(400_001, t).unwrap();
        assert!(cur.mid() >= prev.mid());
        prev = cur;
    }
    let e = mccurley_region(400_001, 4.0).unwrap();
    assert!(e.contains(1.0 - 1.0 / (10.0 * (1_600_004f64).ln())));
    assert!(mccurley_region(2, 1.0).is_err());
}

#[test]
fn phragmen_endpoints() {
    let (a, theta) = (dec("3"), Interval::from_fraction(1, 4));
    let half = phragmen_bound(0.5, 2.0, 1000, 0.25, a, theta, true, 1000).unwrap();
    let expect = a * (Interval::from_u64(2000) * iv(3.0)).pow(&theta);
    assert!(half.overlaps(&expect));
    let top = phragmen_bound(1.25, 2.0, 1000, 0.25, a, theta, true, 1000).unwrap();
    assert!(top.overlaps(&iv(5.0)));
    let mid = phragmen_bound(0.75, 0.0, 1_000_000, 0.25, a, theta, true, 1_000_000).unwrap();
    assert!(mid.is_finite() && mid.lo() > 1.0 && mid.width() < 1e-9 * mid.mid());
    assert!(matches!(
        phragmen_bound(1.3, 0.0, 10, 0.25, a, theta, true, 10),
        Err(Error::SigmaOutOfRange { .. })
    ));
    let imprimitive = phragmen_bound(0.75, 0.0, 5, 0.25, a, theta, false, 100).unwrap();
    assert!(imprimitive.lo() > phragmen_bound(0.75, 0.0, 5, 0.25, a, theta, true, 100).unwrap().hi());
}

#[test]
fn m_and_k_scaling() {
    let h = cb().resolve().unwrap();
    let (m1, k1) = compute_m_k(1_000_000, 10.0, &h).unwrap();
    let (m2, _) = compute_m_k(1_000_000, 20.0, &h).unwrap();
    let four_theta_ln2 = Interval::from_u64(4) * h.theta * Interval::ln2();
    assert!((m2.log - m1.log).overlaps(&four_theta_ln2));
    let doubled = cb().with_a(h.a * Interval::from_u64(2)).resolve().unwrap();
    let (_, k2) = compute_m_k(1_000_000, 10.0, &doubled).unwrap();
    assert!((k2.log - k1.log).overlaps(&(Interval::from_u64(20) * Interval::ln2())));
    // log M at the example point, by hand.
    let u = (1e6f64).ln();
    let by_hand = (1e25f64 * 2.97655f64.powi(20) / 1e4).ln() + 8.0 * u.powf(0.75) + 28.0 * u.ln() + 3.0 * u + 10f64.ln();
    assert!((m1.log.mid() - by_hand).abs() < 1e-9 * by_hand);
    assert!(compute_m_k(400_000, 10.0, &h).is_err());
    assert!(compute_m_k(400_001, 3.9, &h).is_err());
}

#[test]
fn bound_example_outside_window() {
    let beta1 = Interval::ONE - iv(1e-8);
    assert_eq!(
        repulsion_bound(1_000_000, 10.0, beta1, &cb()).unwrap_err(),
        Error::WindowViolated { side: WindowSide::Upper }
    );
    let r = repulsion_bound_unchecked(1_000_000, 10.0, beta1, &cb()).unwrap();
    assert_eq!(r.window_violation, Some(WindowSide::Upper));
    assert!(r.repulsion_beta.hi() < 1.0 && !r.vacuous);
    let low = repulsion_bound_unchecked(1_000_000, 10.0, iv(0.9), &cb()).unwrap();
    assert_eq!(low.window_violation, Some(WindowSide::Lower));
    assert!(low.vacuous && low.repulsion_beta.lo() >= 1.0);
}

#[test]
fn bound_inside_window() {
    let q = 10_000_000_000u64;
    let r = repulsion_bound(q, 100.0, inside_window(q, &cb(), 0.3), &cb()).unwrap();
    assert!(r.window_violation.is_none() && r.n_le_m);
    assert!(r.repulsion_beta.hi() < 1.0);
}

#[test]
fn repulsion_decreases_as_beta1_approaches_one() {
    for q in [1_000_000_000u64, 1_000_000_000_000, 1_000_000_000_000_000] {
        for t in [4.0, 1e3] {
            let mut prev: Option<Interval> = None;
            // Position 1 is the lower end of the window, so beta1 grows with k.
            for k in 1..20 {
                let beta1 = inside_window(q, &cb(), 1.0 - k as f64 / 20.0);
                let r = repulsion_bound(q, t, beta1, &cb()).unwrap();
                if let Some(p) = prev {
                    assert!(r.repulsion_beta.mid() < p.mid(), "q = {q}, T = {t}, k = {k}");
                }
                prev = Some(r.repulsion_beta);
            }
        }
    }
}

#[test]
fn monotone_in_m() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tested = 0;
    while tested < 1000 {
        let theta = iv(rng.gen_range(0.01..0.25));
        let x = iv(rng.gen_range(-12.0f64..-2.0).exp2());
        let l1 = rng.gen_range(10.0..5000.0);
        let l2 = l1 * (1.0 + rng.gen_range(1e-6..2.0));
        let c = theta / (Interval::from_u64(4) * x);
        if !(c / iv(l2)).certainly_positive() || (c / iv(l2)).lo() <= 1.0 {
            continue;
        }
        let (a, b) = (repulsion_exponent(theta, x, iv(l1)), repulsion_exponent(theta, x, iv(l2)));
        assert!(a.certainly_lt(&b), "L = {l1} -> {l2}");
        tested += 1;
    }
}

#[test]
fn n_at_most_m_inside_window() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..1000 {
        let q = log_uniform_q(&mut rng);
        let a = dec("2.97655") * iv(rng.gen_range(1.0..3.0));
        let theta = iv(rng.gen_range(0.05..0.25));
        let params = cb().with_a(a).with_theta(theta);
        let t = rng.gen_range(4f64.ln()..1e8f64.ln()).exp();
        let beta1 = inside_window(q, &params, rng.gen_range(0.01..0.99));
        let r = repulsion_bound(q, t, beta1, &params).unwrap();
        assert!(r.n_le_m, "q = {q}, T = {t}");
    }
}

#[test]
fn threshold_implication_grid() {
    for q in [500_000_000u64, 10_000_000_000, 100_000_000_000_000, 1_000_000_000_000_000_000] {
        for t in [4.0, 100.0, 1e6] {
            for (a, theta) in [("1", "0.25"), ("2.97655", "0.25"), ("10", "0.17666666"), ("2.97655", "0.125")] {
                let params = cb().with_a(dec(a)).with_theta(dec(theta));
                let h = params.resolve().unwrap();
                for k in 1..10 {
                    let beta1 = inside_window(q, &params, k as f64 / 10.0);
                    assert!(threshold_implication(q, t, beta1, &h).unwrap(), "q = {q}, T = {t}, A = {a}");
                }
            }
        }
    }
}

#[test]
fn corollary_constants() {
    let beta1 = Interval::ONE - iv(1e-6);
    let eps = iv(0.01);
    let forms = [
        (Interval::from_u64(10), Interval::ONE, Interval::from_u64(107), Interval::from_fraction(1, 16)),
        (Interval::from_fraction(4, 3) + eps, Interval::from_fraction(2, 3) + eps, Interval::ZERO, Interval::from_fraction(1, 24)),
        (dec("54.2"), dec("16.9"), dec("104.7"), dec("0.0002")),
    ];
    for (c1, c2, c3, c4) in forms {
        let v = corollary_form(1_000_000, 10.0, beta1, c1, c2, c3, c4).unwrap();
        assert!(v.is_finite() && v.width() < 1e-9);
    }
}

#[test]
fn dominance_examples() {
    let ten = Interval::from_u64(10);
    let (c2, c3) = (Interval::ONE, Interval::from_u64(107));
    assert_eq!(corollary_dominance(400_001, 4.0, &cb(), ten, c2, c3).unwrap(), Verdict::Verified);
    assert_eq!(corollary_dominance(100_000_000, 1e4, &cb(), ten, c2, c3).unwrap(), Verdict::Verified);
    let half = Interval::point(0.5);
    assert_eq!(corollary_dominance(400_001, 4.0, &cb(), ten * half, c2 * half, c3 * half).unwrap(), Verdict::Failed);
    let weyl = HypothesisParams::from_presets("weyl,bordignon").unwrap().with_a(Interval::ONE);
    assert!(matches!(corollary_dominance(400_001, 4.0, &weyl, ten, c2, c3), Err(Error::Ineffective(_))));
}

/// Where log M <= L the corollary exponent dominates the theorem's, as long as
/// the theorem is not vacuous.
#[test]
fn corollary_dominates_repulsion() {
    let (c1, c2, c3, c4) = (Interval::from_u64(10), Interval::ONE, Interval::from_u64(107), Interval::from_fraction(1, 16));
    let mut checked = 0;
    for q in [400_001u64, 1_000_000, 100_000_000, 1_000_000_000_000, 1_000_000_000_000_000_000] {
        for t in [4.0, 1e2, 1e4, 1e8] {
            for e in [3, 5, 6, 8, 9, 12, 15] {
                let beta1 = Interval::ONE - iv(10f64.powi(-e));
                if corollary_dominance(q, t, &cb(), c1, c2, c3).unwrap() != Verdict::Verified {
                    continue;
                }
                let r = repulsion_bound_unchecked(q, t, beta1, &cb()).unwrap();
                let cor = corollary_form(q, t, beta1, c1, c2, c3, c4).unwrap();
                if r.vacuous {
                    // Both exponents are at least 1; the comparison carries no content.
                    assert!(r.repulsion_beta.lo() >= 1.0 - 1e-12 && cor.lo() >= 1.0 - 1e-12);
                    continue;
                }
                assert!(r.repulsion_beta.certainly_le(&cor), "q = {q}, T = {t}, e = {e}");
                checked += 1;
            }
        }
    }
    assert!(checked > 50);
}

#[test]
fn detector_examples() {
    let beta1 = Interval::ONE - iv(1e-6);
    let n = Interval::from_u64(1_000_000);
    let d = detector_rhs(0.75, beta1, n).unwrap();
    let by_hand = ((2.0 - (1.0 - 1e-6)) / 0.25 + 4.0) * 1e-6 * 1e6f64.powf(0.25);
    assert!(d.contains(by_hand) || (d.mid() - by_hand).abs() < 1e-12 * by_hand);
    let d2 = detector_rhs(0.75, beta1, n * Interval::from_u64(2)).unwrap();
    assert!((d2 / d).overlaps(&Interval::from_u64(2).powf(0.25)));
    assert_eq!(detector_rhs(0.5, beta1, n).unwrap().hi(), f64::INFINITY);
    assert_eq!(detector_rhs(0.49, beta1, n), Err(Error::BetaOutOfRange(0.49)));
    assert!(detector_rhs(1.0, beta1, n).is_err());
}

#[test]
fn ratio_window_examples() {
    let (lo, hi) = ratio_window(1_000_000).unwrap();
    assert!(lo.contains(0.72));
    assert!(hi.overlaps(&(dec("0.18") * Interval::from_u64(1_000_000).ln().sqr())));
    let (lo, hi) = ratio_window(400_001).unwrap();
    assert!(lo.certainly_lt(&hi));
    assert!(ratio_window(400_000).is_err());
}

#[test]
fn window_sides() {
    let h = cb().resolve().unwrap();
    let q = 1_000_000_000_000u64;
    assert_eq!(window_violation(q, iv(0.5), &h), Some(WindowSide::Lower));
    assert_eq!(window_violation(q, Interval::ONE - iv(1e-15), &h), Some(WindowSide::Upper));
    assert_eq!(window_violation(q, inside_window(q, &cb(), 0.5), &h), None);
    // With B = 100, eps = 1/2 the window closes once sqrt(q) log q < 1000.
    let (lower, upper) = siegel_window(10_000, &h);
    assert!(upper.certainly_lt(&lower));
    let (lower, upper) = siegel_window(400_001, &h);
    assert!(lower.certainly_lt(&upper));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn repulsion_below_one_inside_window(lq in 20.1f64..41.0, f in 0.01f64..0.99, lt in 1.4f64..20.0) {
        let q = lq.exp() as u64;
        let beta1 = inside_window(q, &cb(), f);
        let r = repulsion_bound(q, lt.exp(), beta1, &cb()).unwrap();
        prop_assert!(r.n_le_m);
        prop_assert!(r.repulsion_beta.lo() > beta1.hi() - 1.0);
        if !r.vacuous {
            prop_assert!(r.repulsion_beta.hi() < 1.0);
        }
    }
}

use std::sync::Arc;
use std::time::Instant;

use deuring_core::analytic::series::mollified_sum;
use deuring_core::analytic::ComplexInterval;
use deuring_core::bounds::{
    corollary_dominance, corollary_form, detector_rhs, linear_form, mccurley_region, repulsion_bound_unchecked,
    CorollaryReport,
};
use deuring_core::rigor::certificates::certificate_catalogue;
use deuring_core::rigor::{verify_all, verify_certificate, Certificate};
use deuring_core::{
    build_weights, enumerate_characters, DirichletCharacter, Error, ExceptionalContext, HypothesisParams, Interval,
    Verdict,
};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::args::{BoundArgs, CharsArgs, DetectArgs, SieveArgs, VerifyArgs};
use crate::config::RunConfig;
use crate::output::{Report, Table};
use crate::CliError;

/// A report plus whether every asserted invariant held.
pub struct Outcome {
    pub report: Report,
    pub ok: bool,
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A decimal literal or a fraction `a/b`, enclosed exactly.
pub fn parse_number(s: &str) -> Result<Interval, CliError> {
    let s = s.trim();
    let bad = || CliError::Usage(format!("not a number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = deuring_core::interval::parse_decimal(n).ok_or_else(bad)?;
        let d = deuring_core::interval::parse_decimal(d).ok_or_else(bad)?;
        if num_traits::Zero::is_zero(&d) {
            return Err(bad());
        }
        return Ok(Interval::from_ratio(&(n / d)));
    }
    Interval::from_decimal(s).ok_or_else(bad)
}

fn character(q: u64, index: usize) -> Result<DirichletCharacter, CliError> {
    let chars = enumerate_characters(q)?;
    let n = chars.len();
    chars
        .into_iter()
        .nth(index)
        .ok_or_else(|| CliError::Usage(format!("character index {index} out of range: {n} characters mod {q}")))
}

fn exceptional(q: u64, index: usize) -> Result<ExceptionalContext, CliError> {
    let chi = character(q, index)?;
    if chi.is_principal() {
        return Err(CliError::Usage(format!("character {index} mod {q} is principal")));
    }
    Ok(ExceptionalContext::new(chi)?)
}

pub fn chars(a: &CharsArgs) -> Result<Outcome, CliError> {
    let all = enumerate_characters(a.modulus)?;
    let mut rows = Vec::new();
    let mut table = Table::new(["index", "exponents", "order", "conductor", "primitive", "parity", "values"]);
    for (i, chi) in all.iter().enumerate() {
        if a.real_only && !(chi.is_real() && !chi.is_principal()) {
            continue;
        }
        let values: Vec<String> = (1..=a.modulus).map(|n| chi.eval_u64(n).to_string()).collect();
        let exps = chi.exponents().iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let parity = if chi.is_odd() { "odd" } else { "even" };
        table.push([
            i.to_string(),
            format!("({exps})"),
            chi.order().to_string(),
            chi.conductor().to_string(),
            chi.is_primitive().to_string(),
            parity.to_string(),
            values.join(" "),
        ]);
        rows.push(json!({
            "index": i,
            "exponents": chi.exponents(),
            "order": chi.order(),
            "conductor": chi.conductor(),
            "primitive": chi.is_primitive(),
            "real": chi.is_real(),
            "parity": parity,
            "values": values,
        }));
    }
    Ok(Outcome { report: Report { json: Value::Array(rows), summary: None, table }, ok: true })
}

/// Below this level the Graham comparison is not claimed.
const GRAHAM_MIN_LEVEL: u64 = 200;

pub fn sieve(a: &SieveArgs) -> Result<Outcome, CliError> {
    let ctx = Arc::new(exceptional(a.q, a.chi1)?);
    let sys = build_weights(ctx, a.r)?;
    let weights = sys.weights();
    let holds = (a.r >= GRAHAM_MIN_LEVEL).then(|| sys.graham_bound_holds());
    let theta_one = sys.theta_one_is_one();
    let bounded = sys.all_weights_bounded();
    let g1 = sys.g1_principal();
    let rhs = sys.graham_rhs();

    let mut table = Table::new(["d", "theta_d"]);
    for (d, w) in &weights {
        table.push([d.to_string(), rational(w)]);
    }
    let summary = Table::fields(vec![
        ("q", a.q.to_string()),
        ("chi1", a.chi1.to_string()),
        ("R", a.r.to_string()),
        ("V(R)", rational(sys.v_of_r())),
        ("g1_principal", rational(&g1)),
        ("lemma41_rhs", rational(&rhs)),
        ("lemma41_holds", holds.map_or("n/a (R < 200)".into(), |h| h.to_string())),
        ("theta_1 = 1", theta_one.to_string()),
        ("|theta_d| <= 1", bounded.to_string()),
    ]);
    let json = json!({
        "q": a.q,
        "chi1": a.chi1,
        "R": a.r,
        "V_R": rational(sys.v_of_r()),
        "g1_principal": rational(&g1),
        "g1_principal_enclosure": Interval::from_ratio(&g1),
        "lemma41_rhs": rational(&rhs),
        "lemma41_rhs_enclosure": Interval::from_ratio(&rhs),
        "lemma41_holds": holds,
        "theta_one_is_one": theta_one,
        "weights_bounded": bounded,
        "weights": weights.iter().map(|(d, w)| json!({"d": d, "theta": rational(w)})).collect::<Vec<_>>(),
    });
    let ok = theta_one && bounded && holds != Some(false);
    Ok(Outcome { report: Report { json, summary: Some(summary), table }, ok })
}

fn parse_rho(s: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Usage(format!("--rho expects RE,IM, got {s:?}"));
    let (re, im) = s.split_once(',').ok_or_else(bad)?;
    let re: f64 = re.trim().parse().map_err(|_| bad())?;
    let im: f64 = im.trim().parse().map_err(|_| bad())?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok((re, im))
}

pub fn detect(a: &DetectArgs) -> Result<Outcome, CliError> {
    let (re, im) = parse_rho(&a.rho)?;
    let chi = character(a.q, a.chi)?;
    let chi1 = match a.chi1 {
        Some(i) => i,
        None => enumerate_characters(a.q)?
            .iter()
            .position(|c| c.is_real() && !c.is_principal())
            .ok_or_else(|| CliError::Usage(format!("no real non-principal character mod {}", a.q)))?,
    };
    let ctx = Arc::new(exceptional(a.q, chi1)?);
    let beta1 = match &a.beta1 {
        Some(s) => parse_number(s)?,
        None => mccurley_region(a.q, im)?,
    };
    let sys = build_weights(ctx, a.r)?;
    let sum = mollified_sum(a.n, ComplexInterval::point(re, im), &chi, &sys)?;
    let rhs = detector_rhs(re, beta1, Interval::from_u64(a.n))?;
    let abs = sum.abs();
    let cmp = Verdict::le(abs, rhs);
    let table = Table::fields(vec![
        ("q", a.q.to_string()),
        ("chi", a.chi.to_string()),
        ("chi1", chi1.to_string()),
        ("rho", format!("{re} + {im}i")),
        ("N", a.n.to_string()),
        ("R", a.r.to_string()),
        ("beta1", beta1.to_string()),
        ("Re S", sum.re.to_string()),
        ("Im S", sum.im.to_string()),
        ("|S|", abs.to_string()),
        ("rhs", rhs.to_string()),
        ("|S| <= rhs", cmp.to_string()),
    ]);
    let json = json!({
        "q": a.q,
        "chi": a.chi,
        "chi1": chi1,
        "rho": {"re": re, "im": im},
        "N": a.n,
        "R": a.r,
        "beta1": beta1,
        "sum": {"re": sum.re, "im": sum.im},
        "abs_sum": abs,
        "rhs": rhs,
        "abs_le_rhs": cmp,
    });
    Ok(Outcome { report: Report { json, summary: None, table }, ok: true })
}

pub fn verify(a: &VerifyArgs, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut runs: Vec<(Certificate, Option<f64>)> = Vec::new();
    let names: Vec<String> = match &a.cert {
        Some(n) => vec![n.clone()],
        None => certificate_catalogue().iter().map(|c| c.0.to_string()).collect(),
    };
    if a.timings {
        for name in &names {
            let start = Instant::now();
            let cert = verify_certificate(name, cfg.precision)?;
            runs.push((cert, Some(start.elapsed().as_secs_f64())));
        }
    } else if a.cert.is_some() {
        runs.push((verify_certificate(&names[0], cfg.precision)?, None));
    } else {
        runs.extend(verify_all(cfg.precision)?.into_iter().map(|c| (c, None)));
    }
    let mut headers = vec!["name", "verdict", "rigor", "enclosure", "claim"];
    if a.timings {
        headers.push("seconds");
    }
    let mut table = Table::new(headers);
    let mut rows = Vec::new();
    for (cert, secs) in &runs {
        let mut row = vec![
            cert.name.clone(),
            cert.verdict.to_string(),
            to_json(&cert.rigor).as_str().unwrap_or_default().to_string(),
            cert.enclosure.to_string(),
            cert.claim.clone(),
        ];
        if let Some(s) = secs {
            row.push(format!("{s:.3}"));
        }
        table.push(row);
        let mut v = to_json(cert);
        v["seconds"] = json!(secs);
        rows.push(v);
    }
    let ok = runs.iter().all(|(c, _)| c.verdict != Verdict::Failed);
    Ok(Outcome { report: Report { json: Value::Array(rows), summary: None, table }, ok })
}

pub fn certs_list() -> Outcome {
    let mut table = Table::new(["name", "claim", "used_in"]);
    let mut rows = Vec::new();
    for (name, claim, loc) in certificate_catalogue() {
        table.push([name, claim, loc]);
        rows.push(json!({"name": name, "claim": claim, "paper_location": loc}));
    }
    Outcome { report: Report { json: Value::Array(rows), summary: None, table }, ok: true }
}

fn corollary_constants(s: &str) -> Result<[Interval; 4], CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::Usage(format!("--corollary expects c1,c2,c3,c4, got {s:?}")));
    }
    Ok([
        parse_number(parts[0])?,
        parse_number(parts[1])?,
        parse_number(parts[2])?,
        parse_number(parts[3])?,
    ])
}

pub fn bound(a: &BoundArgs, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut params = HypothesisParams::from_presets(a.preset.as_deref().unwrap_or(&cfg.preset))?;
    if let Some(s) = &a.a {
        params = params.with_a(parse_number(s)?);
    }
    if let Some(s) = &a.theta {
        params = params.with_theta(parse_number(s)?);
    }
    if let Some(s) = &a.b {
        params = params.with_b(parse_number(s)?);
    }
    if let Some(s) = &a.eps {
        params = params.with_eps(parse_number(s)?);
    }
    let beta1 = parse_number(&a.beta1)?;
    let mut report = repulsion_bound_unchecked(a.q, a.t, beta1, &params)?;
    if let Some(side) = report.window_violation {
        if !a.allow_window_violation {
            return Err(Error::WindowViolated { side }.into());
        }
    }
    if let Some(s) = &a.corollary {
        let [c1, c2, c3, c4] = corollary_constants(s)?;
        let dominance = match corollary_dominance(a.q, a.t, &params, c1, c2, c3) {
            Ok(v) => Some(v),
            Err(Error::Ineffective(_)) => None,
            Err(e) => return Err(e.into()),
        };
        report.corollary = Some(CorollaryReport {
            c1,
            c2,
            c3,
            c4,
            linear_form: linear_form(a.q, a.t, c1, c2, c3),
            value: corollary_form(a.q, a.t, beta1, c1, c2, c3, c4)?,
            dominance,
        });
    }
    let h = &report.hypotheses;
    let mut fields = vec![
        ("q", report.q.to_string()),
        ("T", report.t.to_string()),
        ("beta1", report.beta1.to_string()),
        ("presets", params.presets.join(",")),
        ("A", h.a.to_string()),
        ("theta", h.theta.to_string()),
        ("B", h.b.to_string()),
        ("eps", h.eps.to_string()),
        ("ineffective", h.ineffective.to_string()),
        ("log M", report.m.log.to_string()),
        ("log K", report.k.log.to_string()),
        ("log R", report.r.log.to_string()),
        ("log N", report.n.log.to_string()),
        ("N <= M", report.n_le_m.to_string()),
        ("window", format!("({}, {})", report.window_lower, report.window_upper)),
        ("window_violation", report.window_violation.map_or("none".into(), |s| s.to_string())),
        ("log_argument", report.log_argument.to_string()),
        ("repulsion_beta", report.repulsion_beta.to_string()),
        ("vacuous", report.vacuous.to_string()),
    ];
    if let Some(c) = &report.corollary {
        fields.push(("corollary_L", c.linear_form.to_string()));
        fields.push(("corollary_value", c.value.to_string()));
        fields.push(("dominance", c.dominance.map_or("ineffective".into(), |v| v.to_string())));
    }
    let dominance_failed = report.corollary.as_ref().is_some_and(|c| c.dominance == Some(Verdict::Failed));
    let ok = !dominance_failed && (report.window_violation.is_some() || report.n_le_m);
    let mut json = to_json(&report);
    json["presets"] = json!(params.presets);
    Ok(Outcome { report: Report { json, summary: None, table: Table::fields(fields) }, ok })
}

//! The subcommands. Each returns a finished [`Report`]; only whole-run
//! problems (bad config, unreadable input) surface as [`CliError`].
//!
//! Generated cases come from one [`SampleGen`] per run, so a report is a pure
//! function of the config and the input text.

use std::time::Instant;

use serde_json::{json, Value};

use schwarz_core::cauchy_schwarz::{
    classify, cs1_gap, cs2, first_ratio_witness, metric_axioms_report, replay_proof,
    verify_certificate, CsCertificate, RatVec,
};
use schwarz_core::continuity::{parse_expr, probe, Builtin, Function};
use schwarz_core::gen::SampleGen;
use schwarz_core::laws::{
    inverse_residual, rat_mul_inverse, FieldLaw, FieldSample, HyperrealLaw, HyperrealSample,
    VectorLaw, VectorSample,
};
use schwarz_core::scalar::approx_sqrt;
use schwarz_core::vector::metric_sq;
use schwarz_core::{Error, OrderedField, Rat, Vector};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::input::{parse_probe_file, parse_vector_cases, ParsedCase, TargetInput, TargetSpec, VectorCase};
use crate::report::{ErrorKind, Report, Severity};

/// Exponent range for generated hyperreal entries.
pub const LC_EXPONENTS: std::ops::RangeInclusive<i64> = -2..=3;
/// Truncation orders exercised by the inverse check.
pub const INVERSE_TERMS: [u32; 3] = [1, 4, 16];
/// Precision of the approximate metric oracle.
pub const APPROX_BITS: u32 = 64;

/// A named input file and its contents.
#[derive(Debug, Clone)]
pub struct InputFile {
    pub name: String,
    pub text: String,
}

impl InputFile {
    pub fn read(path: &std::path::Path) -> Result<InputFile, CliError> {
        Ok(InputFile {
            name: path.display().to_string(),
            text: std::fs::read_to_string(path)?,
        })
    }
}

fn elapsed_ms(start: Instant) -> u64 {
    u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX)
}

fn record_error(report: &mut Report, case: usize, line: Option<usize>, err: &Error) {
    let kind = match err {
        Error::LogicFault(_) => ErrorKind::Fault,
        _ => ErrorKind::Input,
    };
    report.error(case, line, kind, err.to_string());
}

fn check_law(report: &mut Report, case: usize, name: &str, result: schwarz_core::Result<bool>) {
    match result {
        Ok(ok) => {
            report.theorem(name, ok);
        }
        Err(e) => {
            report.theorem(name, false);
            report.error(case, None, ErrorKind::Fault, format!("{name}: {e}"));
        }
    }
}

fn vector_sample<S: OrderedField>(
    gen: &mut SampleGen,
    dim: usize,
    scalar: impl Fn(&mut SampleGen) -> S,
) -> VectorSample<S> {
    let a = scalar(gen);
    let b = scalar(gen);
    let vec = |gen: &mut SampleGen| Vector::new((0..dim).map(|_| scalar(gen)).collect());
    let u = vec(gen);
    let v = vec(gen);
    let w = vec(gen);
    VectorSample { a, b, u, v, w }
}

/// Runs every vector-space, inner-product, field and hyperreal law on
/// `config.cases` generated samples, over both scalar fields.
pub fn cmd_axioms(config: &RunConfig) -> Result<Report, CliError> {
    config.validate()?;
    let start = Instant::now();
    let mut report = Report::new("axioms", config, None);
    let mut gen = SampleGen::new(config.seed, config.magnitude);
    let names: Vec<(String, String)> = VectorLaw::ALL
        .iter()
        .map(|l| (format!("rat/{}", l.name()), format!("lc/{}", l.name())))
        .collect();

    for case in 0..config.cases {
        let dim = gen.index(config.dims.range());
        let rs = vector_sample(&mut gen, dim, SampleGen::rat);
        let ls = vector_sample(&mut gen, dim, |g| g.lc(LC_EXPONENTS));
        for (law, (rat_name, lc_name)) in VectorLaw::ALL.iter().zip(&names) {
            check_law(&mut report, case, rat_name, law.check(&rs));
            check_law(&mut report, case, lc_name, law.check(&ls));
        }

        let rf = FieldSample { x: gen.rat(), y: gen.rat(), z: gen.rat() };
        let lf = FieldSample {
            x: gen.lc(LC_EXPONENTS),
            y: gen.lc(LC_EXPONENTS),
            z: gen.lc(LC_EXPONENTS),
        };
        for law in FieldLaw::ALL {
            report.theorem(&format!("rat/{}", law.name()), law.check(&rf));
            report.theorem(&format!("lc/{}", law.name()), law.check(&lf));
        }
        check_law(&mut report, case, "rat/field-mul-inverse", rat_mul_inverse(&rf.x));

        // One unconstrained pair and one drawn inside the laws' hypotheses.
        let samples = [
            HyperrealSample { x: gen.lc(LC_EXPONENTS), y: gen.lc(LC_EXPONENTS) },
            HyperrealSample { x: gen.lc(1..=3), y: gen.lc(0..=3) },
        ];
        for s in &samples {
            for law in HyperrealLaw::ALL {
                check_law(&mut report, case, &format!("lc/{}", law.name()), law.check(s));
            }
        }
        let x = gen.lc(LC_EXPONENTS);
        if !x.is_zero() {
            for terms in INVERSE_TERMS {
                let result = inverse_residual(&x, terms).map(|(_, ok)| ok);
                check_law(&mut report, case, &format!("lc/inverse-residual-k{terms}"), result);
            }
        }
    }
    report.finish(elapsed_ms(start));
    Ok(report)
}

fn generated_pairs(config: &RunConfig) -> Vec<ParsedCase> {
    let mut gen = SampleGen::new(config.seed, config.magnitude);
    (0..config.cases)
        .map(|_| {
            let dim = gen.index(config.dims.range());
            // 0-1 generic, 2 dependent, 3 zero v.
            let kind = gen.index(0..=3);
            let v = if kind == 3 { Vector::zero(dim) } else { gen.rat_vector(dim) };
            let u = if kind == 2 { v.scale(&gen.rat()) } else { gen.rat_vector(dim) };
            Ok(VectorCase { line: None, vectors: vec![u, v] })
        })
        .collect()
}

fn generated_triples(config: &RunConfig) -> Vec<ParsedCase> {
    let mut gen = SampleGen::new(config.seed, config.magnitude);
    (0..config.cases)
        .map(|_| {
            let dim = gen.index(config.dims.range());
            // 0-2 generic, 3 collinear with z between x and y, 4 x = y.
            let kind = gen.index(0..=4);
            let x = gen.rat_vector(dim);
            let y = if kind == 4 { x.clone() } else { gen.rat_vector(dim) };
            let z = if kind == 3 {
                let m = gen.magnitude();
                let t = Rat::new(gen.int(0..=m), m).expect("m ≥ 1");
                let step = y.sub(&x).expect("same dim").scale(&t);
                x.add(&step).expect("same dim")
            } else {
                gen.rat_vector(dim)
            };
            Ok(VectorCase { line: None, vectors: vec![x, y, z] })
        })
        .collect()
}

fn certificate_text(cert: &CsCertificate) -> String {
    match cert {
        CsCertificate::ZeroU => "zero-u".into(),
        CsCertificate::ZeroV => "zero-v".into(),
        CsCertificate::Dependent { witness } => format!("dependent({witness})"),
        CsCertificate::Strict { gap } => format!("strict({gap})"),
    }
}

fn cs_case(
    report: &mut Report,
    u: &RatVec,
    v: &RatVec,
    replay_detail: bool,
) -> schwarz_core::Result<Value> {
    let gap = cs1_gap(u, v)?;
    report.theorem("cs1-gap-nonnegative", !gap.is_negative());
    let out = cs2(u, v)?;
    report.theorem("cs2-holds", out.holds);
    report.theorem("cs2-tight-iff-cs1-tight", out.tight == gap.is_zero());
    let cert = classify(u, v)?;
    report.theorem("certificate-verified", verify_certificate(u, v, &cert)?);
    report.theorem("equality-iff-zero-gap", cert.is_equality() == gap.is_zero());
    if let CsCertificate::Dependent { witness } = &cert {
        let other = first_ratio_witness(u, v)?;
        report.theorem("first-ratio-witness-agrees", other.as_ref() == Some(witness));
    }
    let replay = replay_proof(u, v)?;
    report.theorem("replay-all-steps-hold", replay.all_hold());
    let held = replay.steps.iter().filter(|s| s.holds).count();
    let replay_json = if replay_detail {
        serde_json::to_value(&replay).expect("replay serializes")
    } else {
        json!({ "branch": replay.branch, "steps": replay.steps.len(), "all_hold": replay.all_hold() })
    };
    Ok(json!({
        "u": u,
        "v": v,
        "certificate": cert,
        "cs1_gap": gap,
        "cs2": out,
        "replay": replay_json,
        "summary_tail": format!("{} replay {held}/{}", certificate_text(&cert), replay.steps.len()),
    }))
}

fn case_label(case: usize, line: Option<usize>) -> String {
    match line {
        Some(l) => format!("case {case} (line {l})"),
        None => format!("case {case}"),
    }
}

fn run_vector_cases(
    report: &mut Report,
    cases: Vec<ParsedCase>,
    mut each: impl FnMut(&mut Report, &[RatVec]) -> schwarz_core::Result<Value>,
) {
    for (case, parsed) in cases.into_iter().enumerate() {
        let VectorCase { line, vectors } = match parsed {
            Ok(c) => c,
            Err(e) => {
                report.error(case, e.line, ErrorKind::Input, e.message);
                continue;
            }
        };
        match each(report, &vectors) {
            Ok(mut detail) => {
                let tail = detail
                    .as_object_mut()
                    .and_then(|o| o.remove("summary_tail"))
                    .and_then(|t| t.as_str().map(str::to_owned))
                    .unwrap_or_default();
                let shown: Vec<String> = vectors.iter().map(ToString::to_string).collect();
                let summary = format!("{}: {} -> {tail}", case_label(case, line), shown.join(" "));
                if let Some(o) = detail.as_object_mut() {
                    o.insert("case".into(), json!(case));
                    o.insert("line".into(), json!(line));
                    o.insert("summary".into(), json!(summary));
                }
                report.details.push(detail);
            }
            Err(e) => record_error(report, case, line, &e),
        }
    }
}

/// Classifies each pair, verifies its certificate and replays the proof chain.
///
/// Without an input file, `config.cases` pairs are generated.
pub fn cmd_cs(config: &RunConfig, input: Option<&InputFile>, replay_detail: bool) -> Result<Report, CliError> {
    config.validate()?;
    let start = Instant::now();
    let command = if replay_detail { "replay" } else { "cs" };
    let mut report = Report::new(command, config, input.map(|i| i.name.clone()));
    let cases = match input {
        Some(file) => parse_vector_cases(&file.text, 2)?,
        None => generated_pairs(config),
    };
    run_vector_cases(&mut report, cases, |report, vs| cs_case(report, &vs[0], &vs[1], replay_detail));
    report.finish(elapsed_ms(start));
    Ok(report)
}

pub fn cmd_replay(config: &RunConfig, input: Option<&InputFile>) -> Result<Report, CliError> {
    cmd_cs(config, input, true)
}

fn approx_distance(d_sq: &Rat) -> schwarz_core::Result<Rat> {
    approx_sqrt(d_sq, APPROX_BITS)
}

fn metric_case(report: &mut Report, x: &RatVec, y: &RatVec, z: &RatVec) -> schwarz_core::Result<Value> {
    let m = metric_axioms_report(x, y, z)?;
    report.theorem("metric-commutative", m.commutative);
    report.theorem("metric-positive-definite", m.positive_definite);
    report.theorem("metric-triangle", m.triangle);
    let squared = [metric_sq(x, y)?, metric_sq(x, z)?, metric_sq(z, y)?];
    let approx = squared
        .iter()
        .map(approx_distance)
        .collect::<schwarz_core::Result<Vec<_>>>()?;
    // Each approximation is within 2^-64, so the approximate margin is within 3·2^-64.
    let margin = &(&approx[1] + &approx[2]) - &approx[0];
    let slack = Rat::from(3) * Rat::pow2(-i64::from(APPROX_BITS));
    report.theorem("approximate-triangle-consistent", margin >= -slack);
    let mut tail = String::from("metric axioms hold");
    if m.identical {
        tail.push_str(", x = y");
    }
    if m.triangle_tight {
        tail.push_str(", triangle equality");
    }
    Ok(json!({
        "x": x,
        "y": y,
        "z": z,
        "axioms": m,
        "metric_sq": { "xy": squared[0], "xz": squared[1], "zy": squared[2] },
        "approx_metric": {
            "xy": format!("{:.15}", approx[0].to_f64()),
            "xz": format!("{:.15}", approx[1].to_f64()),
            "zy": format!("{:.15}", approx[2].to_f64()),
        },
        "summary_tail": tail,
    }))
}

/// Checks the three metric axioms on each triple.
///
/// Without an input file, `config.cases` triples are generated.
pub fn cmd_metric(config: &RunConfig, input: Option<&InputFile>) -> Result<Report, CliError> {
    config.validate()?;
    let start = Instant::now();
    let mut report = Report::new("metric", config, input.map(|i| i.name.clone()));
    let cases = match input {
        Some(file) => parse_vector_cases(&file.text, 3)?,
        None => generated_triples(config),
    };
    run_vector_cases(&mut report, cases, |report, vs| metric_case(report, &vs[0], &vs[1], &vs[2]));
    report.finish(elapsed_ms(start));
    Ok(report)
}

/// Reads probe targets from a file, if one is given, followed by the
/// targets named on the command line.
pub fn collect_targets(
    input: Option<&InputFile>,
    exprs: &[(String, usize)],
    builtins: &[String],
) -> Result<Vec<TargetInput>, CliError> {
    let mut targets = match input {
        Some(file) => parse_probe_file(&file.text)?,
        None => Vec::new(),
    };
    targets.extend(exprs.iter().map(|(text, arity)| TargetInput {
        line: None,
        target: TargetSpec::Expr { text: text.clone(), arity: *arity },
        probes: Vec::new(),
    }));
    targets.extend(builtins.iter().map(|name| TargetInput {
        line: None,
        target: TargetSpec::Builtin(name.clone()),
        probes: Vec::new(),
    }));
    if targets.is_empty() {
        return Err(CliError::Usage("no probe targets: give a file, --expr with --arity, or --builtin".into()));
    }
    Ok(targets)
}

fn resolve(target: &TargetSpec) -> schwarz_core::Result<(Function, Option<String>)> {
    match target {
        TargetSpec::Expr { text, arity } => Ok((parse_expr(text, *arity)?, None)),
        TargetSpec::Builtin(name) => {
            let b: Builtin = name.parse()?;
            Ok((b.function(), Some(b.to_string())))
        }
    }
}

/// Probes each target at the listed points, or at `config.cases` generated
/// points along generated directions when it lists none, for every order.
///
/// A violation by an expression containing `sgn` is a refutation (exit 1);
/// a violation by a `sgn`-free one is a fault, since polynomials are continuous.
pub fn cmd_continuity(config: &RunConfig, input_name: Option<String>, targets: &[TargetInput]) -> Result<Report, CliError> {
    config.validate()?;
    let start = Instant::now();
    let mut report = Report::new("continuity", config, input_name);
    let mut gen = SampleGen::new(config.seed, config.magnitude);
    let mut case = 0usize;
    for (t, target) in targets.iter().enumerate() {
        let (f, builtin_name) = match resolve(&target.target) {
            Ok(r) => r,
            Err(e) => {
                record_error(&mut report, case, target.line, &e);
                case += 1;
                continue;
            }
        };
        let listed: Vec<(Option<usize>, RatVec, RatVec, Vec<u32>)> = if target.probes.is_empty() {
            if f.arity() == 0 {
                report.error(case, target.line, ErrorKind::Input, "arity 0 admits no nonzero probe direction");
                case += 1;
                continue;
            }
            (0..config.cases)
                .map(|_| {
                    let x = gen.rat_vector(f.arity());
                    let h = gen.nonzero_rat_vector(f.arity());
                    (None, x, h, config.probe_orders.clone())
                })
                .collect()
        } else {
            target
                .probes
                .iter()
                .map(|p| {
                    let orders = p.order.map_or_else(|| config.probe_orders.clone(), |k| vec![k]);
                    (p.line, p.x.clone(), p.h.clone(), orders)
                })
                .collect()
        };

        let sgn_free = !f.contains_sgn();
        let mut probes = Vec::new();
        let mut violations = Vec::new();
        for (line, x, h, orders) in listed {
            for k in orders {
                let r = match probe(&f, &x, &h, k) {
                    Ok(r) => r,
                    Err(e) => {
                        record_error(&mut report, case, line.or(target.line), &e);
                        case += 1;
                        continue;
                    }
                };
                report.theorem("perturbation-is-infinitesimal", r.metric_sq_small);
                let continuous = !r.is_violation();
                if sgn_free {
                    report.theorem("sgn-free-continuity", continuous);
                } else {
                    report.record("continuity", Severity::Refutation, continuous);
                }
                if !continuous {
                    violations.push(format!("x={} h={} k={} diff={}", r.point, r.direction, k, r.diff));
                }
                probes.push(json!({
                    "case": case,
                    "line": line,
                    "result": r,
                    "diff_text": r.diff.to_string(),
                    "violation": !continuous,
                }));
                case += 1;
            }
        }
        let mut summary = format!("target {t} {}: {} probes, {} violations", f, probes.len(), violations.len());
        if let Some(first) = violations.first() {
            summary.push_str(&format!("; violation at {first}"));
        }
        report.details.push(json!({
            "target": t,
            "line": target.line,
            "function": f.to_string(),
            "builtin": builtin_name,
            "arity": f.arity(),
            "sgn_free": sgn_free,
            "violations": violations.len(),
            "probes": probes,
            "summary": summary,
        }));
    }
    report.finish(elapsed_ms(start));
    Ok(report)
}

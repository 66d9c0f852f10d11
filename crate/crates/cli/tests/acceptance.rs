//! Acceptance suite. Runs as a plain binary (`harness = false`) so that the
//! one-line verdict per criterion is always printed, captured or not.

use std::io::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use astro_float::{BigFloat, RoundingMode};

use schwarz_cli::commands::collect_targets;
use schwarz_cli::report::{EXIT_PASS, EXIT_VIOLATION};
use schwarz_cli::{cmd_axioms, cmd_continuity, DimRange, Report, RunConfig, Verdict};
use schwarz_core::cauchy_schwarz::{
    classify, cs1_gap, first_ratio_witness, metric_axioms_report, replay_proof, verify_certificate,
    CsCertificate, ReplayBranch, STEP_DEPENDENCE,
};
use schwarz_core::continuity::entries_small_check;
use schwarz_core::gen::SampleGen;
use schwarz_core::laws::{inverse_residual, FieldLaw, FieldSample, HyperrealLaw, HyperrealSample};
use schwarz_core::{Rat, Vector};

const SEED: u64 = 20_240_601;
const MAGNITUDE: i64 = 100;
const AXIOM_BUDGET: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! require {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("axiom suite", axiom_suite),
        ("cauchy-schwarz squared form", cs1_with_float_oracle),
        ("equality conditions", equality_conditions),
        ("proof replay", proof_replay),
        ("metric axioms", metric_axioms),
        ("hyperreal laws", hyperreal_laws),
        ("continuity probes", continuity_probes),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
        let _ = std::io::stdout().flush();
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn config(cases: usize) -> RunConfig {
    RunConfig {
        seed: SEED,
        cases,
        dims: DimRange { lo: 0, hi: 8 },
        magnitude: MAGNITUDE,
        ..RunConfig::default()
    }
}

fn clean(report: &Report) -> Outcome {
    require!(report.verdict == Verdict::Pass, "verdict fail:\n{}", report.to_text());
    require!(report.errors.is_empty(), "errors recorded:\n{}", report.to_text());
    Ok(String::new())
}

fn random_pair(gen: &mut SampleGen) -> (Vector<Rat>, Vector<Rat>) {
    let dim = gen.index(0..=8);
    (gen.rat_vector(dim), gen.rat_vector(dim))
}

fn axiom_suite() -> Outcome {
    let start = Instant::now();
    let report = cmd_axioms(&config(10_000)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    clean(&report)?;
    for field in ["rat/", "lc/"] {
        for law in schwarz_core::laws::VectorLaw::ALL {
            let name = format!("{field}{}", law.name());
            let tally = report.checks.iter().find(|c| c.name == name);
            require!(tally.is_some(), "law {name} missing from the report");
            let tally = tally.unwrap();
            require!(tally.cases >= 10_000, "{name} ran {} cases", tally.cases);
            require!(tally.failures == 0, "{name} failed {} times", tally.failures);
        }
    }
    require!(elapsed < AXIOM_BUDGET, "took {:.1}s, budget {}s", elapsed.as_secs_f64(), AXIOM_BUDGET.as_secs());
    Ok(format!("{} checks x 10000 cases", report.checks.len()))
}

const FLOAT_BITS: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

fn float(r: &Rat) -> BigFloat {
    let n = i64::try_from(r.numer()).expect("generated numerators fit i64");
    let d = i64::try_from(r.denom()).expect("generated denominators fit i64");
    BigFloat::from_i64(n, FLOAT_BITS).div(&BigFloat::from_i64(d, FLOAT_BITS), FLOAT_BITS, RM)
}

fn float_dot(u: &[BigFloat], v: &[BigFloat]) -> BigFloat {
    u.iter().zip(v).fold(BigFloat::from_i64(0, FLOAT_BITS), |acc, (a, b)| {
        acc.add(&a.mul(b, FLOAT_BITS, RM), FLOAT_BITS, RM)
    })
}

/// `⟨u,u⟩⟨v,v⟩ - ⟨u,v⟩²` in 256-bit binary floating point.
fn float_gap(u: &Vector<Rat>, v: &Vector<Rat>) -> BigFloat {
    let fu: Vec<BigFloat> = u.entries().iter().map(float).collect();
    let fv: Vec<BigFloat> = v.entries().iter().map(float).collect();
    let uv = float_dot(&fu, &fv);
    let prod = float_dot(&fu, &fu).mul(&float_dot(&fv, &fv), FLOAT_BITS, RM);
    prod.sub(&uv.mul(&uv, FLOAT_BITS, RM), FLOAT_BITS, RM)
}

fn cs1_with_float_oracle() -> Outcome {
    let mut gen = SampleGen::new(SEED, MAGNITUDE);
    let threshold = BigFloat::from_f64(2f64.powi(-200), FLOAT_BITS);
    let (mut compared, mut decisive) = (0, 0);
    for case in 0..10_000 {
        let (u, v) = random_pair(&mut gen);
        let gap = cs1_gap(&u, &v).map_err(|e| format!("case {case}: {e}"))?;
        require!(!gap.is_negative(), "case {case}: negative gap {gap}");
        if case < 1_000 {
            compared += 1;
            let margin = float_gap(&u, &v);
            if margin.abs_cmp(&threshold).is_some_and(|c| c > 0) {
                decisive += 1;
                let approx_holds = margin.is_positive();
                require!(
                    approx_holds == !gap.is_negative() && approx_holds == gap.is_positive(),
                    "case {case}: exact gap {gap} disagrees with float margin {margin}"
                );
            }
        }
    }
    Ok(format!("10000 pairs exact, {compared} float cross-checks ({decisive} above 2^-200)"))
}

fn equality_conditions() -> Outcome {
    let mut gen = SampleGen::new(SEED ^ 3, MAGNITUDE);
    let (mut zero_u, mut zero_v, mut dependent) = (0, 0, 0);
    for case in 0..1_000 {
        let dim = gen.index(0..=8);
        let v = if case % 10 == 0 { Vector::zero(dim) } else { gen.rat_vector(dim) };
        let a = if case % 10 == 1 { Rat::zero() } else { gen.rat() };
        let u = v.scale(&a);
        let cert = classify(&u, &v).map_err(|e| format!("case {case}: {e}"))?;
        match &cert {
            CsCertificate::ZeroU => zero_u += 1,
            CsCertificate::ZeroV => zero_v += 1,
            CsCertificate::Dependent { .. } => dependent += 1,
            CsCertificate::Strict { .. } => return Err(format!("case {case}: dependent pair classified {cert:?}")),
        }
        require!(verify_certificate(&u, &v, &cert).map_err(|e| e.to_string())?, "case {case}: certificate rejected");
        let witness = cert.witness();
        require!(
            witness.as_ref().is_some_and(|w| v.scale(w) == u),
            "case {case}: witness {witness:?} does not rebuild u"
        );
        if !v.is_zero() {
            let closed_form = u.dot(&v).unwrap().checked_div(&v.norm_sq()).unwrap();
            let ratio = first_ratio_witness(&u, &v).map_err(|e| e.to_string())?;
            require!(
                ratio.as_ref() == Some(&closed_form) && witness.as_ref() == Some(&closed_form),
                "case {case}: first ratio {ratio:?}, certificate {witness:?}, closed form {closed_form}"
            );
        }
    }
    for case in 0..1_000 {
        let dim = gen.index(2..=8);
        let draw = |g: &mut SampleGen| Vector::new((0..dim).map(|_| g.nonzero_rat()).collect());
        let (u, v) = (draw(&mut gen), draw(&mut gen));
        let cert = classify(&u, &v).map_err(|e| format!("generic case {case}: {e}"))?;
        require!(
            matches!(&cert, CsCertificate::Strict { gap } if gap.is_positive()),
            "generic case {case}: u = {u}, v = {v} classified {cert:?}"
        );
    }
    Ok(format!("1000 dependent (zero u {zero_u}, zero v {zero_v}, witness {dependent}), 1000 strict"))
}

fn proof_replay() -> Outcome {
    let mut gen = SampleGen::new(SEED ^ 4, MAGNITUDE);
    let (mut zero_v, mut with_dependence) = (0, 0);
    for case in 0..10_000 {
        let dim = gen.index(0..=8);
        let v = match case % 4 {
            3 => Vector::zero(dim),
            _ => gen.rat_vector(dim),
        };
        let u = match case % 4 {
            2 => v.scale(&gen.rat()),
            _ => gen.rat_vector(dim),
        };
        let report = replay_proof(&u, &v).map_err(|e| format!("case {case}: {e}"))?;
        require!(report.all_hold(), "case {case}: u = {u}, v = {v}: {report:?}");
        if report.branch == ReplayBranch::ZeroV {
            zero_v += 1;
        }
        if report.step(STEP_DEPENDENCE).is_some() {
            with_dependence += 1;
        }
    }
    require!(zero_v > 0 && with_dependence > 0, "branches not exercised: zero v {zero_v}, dependence {with_dependence}");
    Ok(format!("10000 pairs, {zero_v} zero-v branches, {with_dependence} dependence steps"))
}

fn metric_axioms() -> Outcome {
    let mut gen = SampleGen::new(SEED ^ 5, MAGNITUDE);
    let (mut collinear, mut identical) = (0, 0);
    for case in 0..10_000 {
        let dim = gen.index(0..=8);
        let x = gen.rat_vector(dim);
        let kind = case % 5;
        let y = if kind == 4 { x.clone() } else { gen.rat_vector(dim) };
        let z = if kind == 3 {
            let t = Rat::new(gen.int(0..=MAGNITUDE), MAGNITUDE).unwrap();
            x.add(&y.sub(&x).unwrap().scale(&t)).unwrap()
        } else {
            gen.rat_vector(dim)
        };
        let m = metric_axioms_report(&x, &y, &z).map_err(|e| format!("case {case}: {e}"))?;
        require!(m.all_hold(), "case {case}: x = {x}, y = {y}, z = {z}: {m:?}");
        require!(m.identical == (x == y), "case {case}: identity misreported");
        if kind == 3 {
            collinear += 1;
            require!(m.triangle_tight, "case {case}: collinear x = {x}, y = {y}, z = {z} not tight");
        }
        if m.identical {
            identical += 1;
        }
    }
    Ok(format!("10000 triples, {collinear} collinear all tight, {identical} identical"))
}

fn hyperreal_laws() -> Outcome {
    let mut gen = SampleGen::new(SEED ^ 6, MAGNITUDE);
    let exps = -2..=3;
    for case in 0..10_000 {
        let f = FieldSample { x: gen.lc(exps.clone()), y: gen.lc(exps.clone()), z: gen.lc(exps.clone()) };
        for law in FieldLaw::ALL {
            require!(law.check(&f), "case {case}: {} fails on {f:?}", law.name());
        }
        let samples = [
            HyperrealSample { x: gen.lc(exps.clone()), y: gen.lc(exps.clone()) },
            HyperrealSample { x: gen.lc(1..=3), y: gen.lc(0..=3) },
            HyperrealSample { x: gen.lc(0..=3), y: gen.lc(0..=3) },
        ];
        for s in &samples {
            for law in HyperrealLaw::ALL {
                let ok = law.check(s).map_err(|e| format!("case {case}: {}: {e}", law.name()))?;
                require!(ok, "case {case}: {} fails on x = {}, y = {}", law.name(), s.x, s.y);
            }
        }
    }
    let mut inverted = 0;
    while inverted < 1_000 {
        let x = gen.lc(exps.clone());
        if x.is_zero() {
            continue;
        }
        for k in [1, 4, 16] {
            let (residual, ok) = inverse_residual(&x, k).map_err(|e| e.to_string())?;
            require!(ok, "x = {x}, K = {k}: residual {residual} has valuation {:?}", residual.val());
        }
        inverted += 1;
    }
    Ok("10000 cases per law, 1000 inverses at K = 1, 4, 16".into())
}

fn schwarz() -> Command {
    Command::new(env!("CARGO_BIN_EXE_schwarz"))
}

fn continuity_probes() -> Outcome {
    let mut names: Vec<String> = vec!["sum(3)".into()];
    names.extend((1..=6).map(|n| format!("sum({n})")));
    names.push("prod2".into());
    names.push("dot_fixed(2, -1/3, 5/7)".into());
    let targets = collect_targets(None, &[], &names).map_err(|e| e.to_string())?;
    let cfg = RunConfig { probe_orders: vec![1, 2], ..config(100) };
    let report = cmd_continuity(&cfg, None, &targets).map_err(|e| e.to_string())?;
    clean(&report)?;
    let probes = report.checks.iter().find(|c| c.name == "sgn-free-continuity");
    let expected = (names.len() * 100 * 2) as u64;
    require!(
        probes.is_some_and(|c| c.cases == expected && c.failures == 0),
        "expected {expected} clean probes, got {probes:?}"
    );

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let file = dir.path().join("sgn.txt");
    std::fs::write(&file, "arity: 1\nexpr: sgn(x1)\nprobe: [0] [1] 1\n").map_err(|e| e.to_string())?;
    let out = schwarz().arg("continuity").arg(&file).output().map_err(|e| e.to_string())?;
    require!(
        out.status.code() == Some(EXIT_VIOLATION),
        "sgn control exited {:?}:\n{}",
        out.status.code(),
        String::from_utf8_lossy(&out.stdout)
    );

    let mut gen = SampleGen::new(SEED ^ 7, MAGNITUDE);
    let (mut close, mut far) = (0, 0);
    for case in 0..1_000 {
        let dim = gen.index(0..=6);
        let x = gen.lc_vector(dim, -2..=3);
        let y = if case % 2 == 0 {
            x.add(&gen.lc_vector(dim, 1..=3)).unwrap()
        } else {
            gen.lc_vector(dim, -2..=3)
        };
        let r = entries_small_check(&x, &y).map_err(|e| format!("case {case}: {e}"))?;
        require!(!r.metric_small || r.entry_small.iter().all(|b| *b), "case {case}: contract broken");
        if r.metric_small {
            close += 1;
        } else {
            far += 1;
        }
    }
    require!(close > 0 && far > 0, "entries_small cases not mixed: {close} close, {far} far");
    Ok(format!("{expected} probes clean, sgn control exit 1, entries_small {close} close / {far} far"))
}

fn strip_timing(report: &str) -> String {
    report
        .lines()
        .filter(|l| !l.trim_start().starts_with("\"elapsed_ms\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn run_structured(args: &[&str], input: Option<&Path>) -> Result<(Option<i32>, String), String> {
    let mut cmd = schwarz();
    cmd.args(["--seed", "7", "--cases", "60", "--format", "structured"]).args(args);
    if let Some(path) = input {
        cmd.arg(path);
    }
    let out = cmd.output().map_err(|e| e.to_string())?;
    Ok((out.status.code(), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let pairs = dir.path().join("pairs.txt");
    std::fs::write(&pairs, "[1, 2] [2, 4]\n[1, 0] [0, 1]\n[] []\n[1/2, -3] [0, 0]\n").map_err(|e| e.to_string())?;
    let triples = dir.path().join("triples.txt");
    std::fs::write(&triples, "[0, 0] [2, 2] [1, 1]\n[1] [1] [5]\n").map_err(|e| e.to_string())?;
    let probes = dir.path().join("probes.txt");
    std::fs::write(&probes, "arity: 2\nexpr: x1 * x2 - 3\nprobe: [1, 2] [0, 1]\nbuiltin: sum(2)\n")
        .map_err(|e| e.to_string())?;

    let runs: [(&[&str], Option<&Path>); 9] = [
        (&["axioms"], None),
        (&["cs"], None),
        (&["cs"], Some(&pairs)),
        (&["replay"], None),
        (&["replay"], Some(&pairs)),
        (&["metric"], None),
        (&["metric"], Some(&triples)),
        (&["continuity", "--builtin", "prod2", "--expr", "sgn(x1) * x1", "--arity", "1"], None),
        (&["continuity"], Some(&probes)),
    ];
    for (args, input) in runs {
        let (code_a, a) = run_structured(args, input)?;
        let (code_b, b) = run_structured(args, input)?;
        require!(!a.is_empty(), "{args:?}: empty report");
        require!(code_a == code_b, "{args:?}: exit codes {code_a:?} and {code_b:?}");
        require!(code_a == Some(EXIT_PASS) || args[0] == "continuity", "{args:?}: exit {code_a:?}");
        require!(strip_timing(&a) == strip_timing(&b), "{args:?}: reports differ");
    }
    Ok(format!("{} runs repeated byte-identical modulo elapsed_ms", runs.len()))
}

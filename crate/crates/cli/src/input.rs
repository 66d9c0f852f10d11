//! Input files.
//!
//! Two encodings are accepted for every file kind. A file whose first
//! non-blank character is `{` is structured (JSON); anything else is
//! line-oriented text where `#` starts a comment.
//!
//! Vector files hold pairs (`cs`, `replay`) or triples (`metric`):
//!
//! ```text
//! [2, 4] [1, 2]
//! [1/2, -3] [0.25, 7]
//! ```
//!
//! ```json
//! {"cases": [[["2", "4"], ["1", "2"]], [[1, 2], [2, 1]]]}
//! ```
//!
//! Probe files list one or more target functions, each followed by its probes
//! (`probe: X H [K]`; without `K` every configured order is used):
//!
//! ```text
//! arity: 1
//! expr: sgn(x1)
//! probe: [0] [1] 1
//! builtin: sum(3)
//! ```
//!
//! ```json
//! {"targets": [{"expr": "sgn(x1)", "arity": 1, "probes": [{"x": ["0"], "h": ["1"], "k": 1}]},
//!              {"builtin": "prod2"}]}
//! ```

use serde::Deserialize;

use schwarz_core::{Rat, Vector};

use crate::error::CliError;

/// One group of vectors read from a numbered line (or structured entry).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorCase {
    /// 1-based line number; `None` for structured input.
    pub line: Option<usize>,
    pub vectors: Vec<Vector<Rat>>,
}

/// A case that failed to parse, recorded without stopping the run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseParseError {
    pub line: Option<usize>,
    pub message: String,
}

pub type ParsedCase = Result<VectorCase, CaseParseError>;

fn is_structured(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn parse_rat_token(tok: &str) -> Result<Rat, String> {
    let tok = tok.trim().trim_matches('"');
    tok.parse::<Rat>().map_err(|e| e.to_string())
}

/// Parses every `[...]` group in `text`. Only separators may appear between groups.
pub fn parse_bracketed_vectors(text: &str) -> Result<(Vec<Vector<Rat>>, &str), String> {
    let mut out = Vec::new();
    let mut rest = text.trim_start();
    while let Some(after) = rest.strip_prefix('[') {
        let close = after.find(']').ok_or("unclosed '['")?;
        let body = &after[..close];
        let entries = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(parse_rat_token)
            .collect::<Result<Vec<_>, _>>()?;
        out.push(Vector::new(entries));
        rest = after[close + 1..].trim_start_matches(|c: char| c == ',' || c == ';' || c.is_whitespace());
    }
    Ok((out, rest))
}

/// Reads a file of vector groups, each of which must hold `arity` vectors.
pub fn parse_vector_cases(text: &str, arity: usize) -> Result<Vec<ParsedCase>, CliError> {
    if is_structured(text) {
        #[derive(Deserialize)]
        struct File {
            cases: Vec<Vec<Vec<serde_json::Value>>>,
        }
        let file: File = serde_json::from_str(text)?;
        return Ok(file
            .cases
            .into_iter()
            .map(|group| {
                let vectors = group
                    .into_iter()
                    .map(|v| v.iter().map(json_rat).collect::<Result<Vec<_>, _>>().map(Vector::new))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|message| CaseParseError { line: None, message })?;
                check_group(None, vectors, arity)
            })
            .collect());
    }
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let lineno = Some(i + 1);
        let parsed = match parse_bracketed_vectors(line) {
            Ok((vectors, "")) => check_group(lineno, vectors, arity),
            Ok((_, rest)) => Err(CaseParseError {
                line: lineno,
                message: format!("unexpected text {rest:?}"),
            }),
            Err(message) => Err(CaseParseError { line: lineno, message }),
        };
        out.push(parsed);
    }
    Ok(out)
}

fn check_group(line: Option<usize>, vectors: Vec<Vector<Rat>>, arity: usize) -> ParsedCase {
    if vectors.len() != arity {
        return Err(CaseParseError {
            line,
            message: format!("expected {arity} vectors, found {}", vectors.len()),
        });
    }
    Ok(VectorCase { line, vectors })
}

fn json_rat(v: &serde_json::Value) -> Result<Rat, String> {
    match v {
        serde_json::Value::String(s) => parse_rat_token(s),
        serde_json::Value::Number(n) if n.is_i64() => Ok(Rat::from(n.as_i64().unwrap_or_default())),
        other => Err(format!("expected a rational string or integer, found {other}")),
    }
}

/// A function to probe, as written in the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetSpec {
    Expr { text: String, arity: usize },
    Builtin(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeSpec {
    pub line: Option<usize>,
    pub x: Vector<Rat>,
    pub h: Vector<Rat>,
    /// `None` means every configured order.
    pub order: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetInput {
    pub line: Option<usize>,
    pub target: TargetSpec,
    pub probes: Vec<ProbeSpec>,
}

pub fn parse_probe_file(text: &str) -> Result<Vec<TargetInput>, CliError> {
    if is_structured(text) {
        return parse_probe_json(text);
    }
    let mut targets: Vec<TargetInput> = Vec::new();
    let mut arity: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let lineno = i + 1;
        let err = |message: String| CliError::Input { line: lineno, message };
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| err("expected `key: value`".into()))?;
        let value = value.trim();
        match key.trim() {
            "arity" => {
                arity = Some(value.parse().map_err(|_| err(format!("invalid arity {value:?}")))?);
            }
            "expr" => {
                let arity = arity.ok_or_else(|| err("`expr` needs a preceding `arity`".into()))?;
                targets.push(TargetInput {
                    line: Some(lineno),
                    target: TargetSpec::Expr { text: value.to_string(), arity },
                    probes: Vec::new(),
                });
            }
            "builtin" => targets.push(TargetInput {
                line: Some(lineno),
                target: TargetSpec::Builtin(value.to_string()),
                probes: Vec::new(),
            }),
            "probe" => {
                let target = targets
                    .last_mut()
                    .ok_or_else(|| err("`probe` before any `expr` or `builtin`".into()))?;
                let (vectors, rest) = parse_bracketed_vectors(value).map_err(err)?;
                let [x, h]: [Vector<Rat>; 2] = vectors
                    .try_into()
                    .map_err(|_| err("a probe needs a point and a direction".into()))?;
                let order = match rest.trim() {
                    "" => None,
                    k => Some(k.parse().map_err(|_| err(format!("invalid order {k:?}")))?),
                };
                target.probes.push(ProbeSpec { line: Some(lineno), x, h, order });
            }
            other => return Err(err(format!("unknown key {other:?}"))),
        }
    }
    Ok(targets)
}

fn parse_probe_json(text: &str) -> Result<Vec<TargetInput>, CliError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Probe {
        x: Vec<Rat>,
        h: Vec<Rat>,
        k: Option<u32>,
    }
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Target {
        expr: Option<String>,
        arity: Option<usize>,
        builtin: Option<String>,
        #[serde(default)]
        probes: Vec<Probe>,
    }
    #[derive(Deserialize)]
    struct File {
        targets: Vec<Target>,
    }
    let file: File = serde_json::from_str(text)?;
    file.targets
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            let bad = |message: &str| CliError::Usage(format!("target {}: {message}", i + 1));
            let target = match (t.expr, t.arity, t.builtin) {
                (Some(text), Some(arity), None) => TargetSpec::Expr { text, arity },
                (None, None, Some(name)) => TargetSpec::Builtin(name),
                (Some(_), None, None) => return Err(bad("`expr` needs `arity`")),
                _ => return Err(bad("give either `expr` with `arity` or `builtin`")),
            };
            let probes = t
                .probes
                .into_iter()
                .map(|p| ProbeSpec {
                    line: None,
                    x: Vector::new(p.x),
                    h: Vector::new(p.h),
                    order: p.k,
                })
                .collect();
            Ok(TargetInput { line: None, target, probes })
        })
        .collect()
}

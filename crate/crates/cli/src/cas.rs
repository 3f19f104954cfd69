//! Optional cross-checking against an external computer-algebra
//! system.
//!
//! The adapter is a command template containing a `{script}`
//! placeholder, e.g. `M2 --script {script}`. The query is rendered to a
//! temporary file in a plain-text format:
//!
//! ```text
//! op closure
//! power 2
//! dim 2
//! gen 2 0
//! gen 0 2
//! ```
//!
//! and the reply protocol is one value per line: exponent rows
//! (`a b ...`) for ideal-valued operations, a single integer for
//! `colength`. The adapter command comes from `--adapter` or the
//! `MONOFILT_CAS_CMD` environment variable; if neither is set, or the
//! executable is missing, the check is skipped rather than failed.

use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use monofilt_core::{
    hilbert, integral_closure_power, saturation, ExponentVector, MonomialIdeal,
};

use crate::parse::print_monomial;

pub const ADAPTER_ENV: &str = "MONOFILT_CAS_CMD";
pub const TIMEOUT_ENV: &str = "MONOFILT_CAS_TIMEOUT_SECS";
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(60);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CasOperation {
    /// Minimal generators of the integral closure of `I^n`.
    Closure,
    /// Minimal generators of `I : m^\infty`.
    Saturation,
    /// `lambda(A/I)` for an m-primary ideal.
    Colength,
}

impl CasOperation {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "closure" => Some(CasOperation::Closure),
            "saturation" => Some(CasOperation::Saturation),
            "colength" => Some(CasOperation::Colength),
            _ => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            CasOperation::Closure => "closure",
            CasOperation::Saturation => "saturation",
            CasOperation::Colength => "colength",
        }
    }
}

#[derive(Debug, Clone)]
pub struct AdapterConfig {
    /// Command template with a `{script}` placeholder, split on
    /// whitespace.
    pub command: Option<String>,
    pub timeout: Duration,
}

impl AdapterConfig {
    pub fn from_env() -> Self {
        let timeout = std::env::var(TIMEOUT_ENV)
            .ok()
            .and_then(|s| s.parse::<u64>().ok())
            .map(Duration::from_secs)
            .unwrap_or(DEFAULT_TIMEOUT);
        AdapterConfig { command: std::env::var(ADAPTER_ENV).ok(), timeout }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrosscheckOutcome {
    /// Internal and external answers agree exactly.
    Match,
    /// Disagreement; monomials on exactly one side are listed.
    Mismatch { only_internal: Vec<String>, only_external: Vec<String>, detail: String },
    /// No adapter configured or executable not present.
    Skipped { reason: String },
    /// Adapter ran but its output could not be used.
    AdapterError { reason: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub operation: String,
    pub instance: String,
    pub power: u64,
    pub outcome: CrosscheckOutcome,
}

pub fn render_script(ideal: &MonomialIdeal, op: CasOperation, power: u64) -> String {
    let mut out = String::new();
    out.push_str(&format!("op {}\n", op.tag()));
    out.push_str(&format!("power {power}\n"));
    out.push_str(&format!("dim {}\n", ideal.ambient_dim()));
    for g in ideal.gens() {
        let coords: Vec<String> = g.coords().iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("gen {}\n", coords.join(" ")));
    }
    out
}

fn internal_answer(
    ideal: &MonomialIdeal,
    op: CasOperation,
    power: u64,
) -> monofilt_core::Result<InternalAnswer> {
    match op {
        CasOperation::Closure => Ok(InternalAnswer::Ideal(integral_closure_power(ideal, power)?)),
        CasOperation::Saturation => Ok(InternalAnswer::Ideal(saturation(&ideal.power(power)?)?)),
        CasOperation::Colength => {
            Ok(InternalAnswer::Integer(hilbert::length_quotient(&ideal.power(power)?)?))
        }
    }
}

enum InternalAnswer {
    Ideal(MonomialIdeal),
    Integer(u64),
}

fn parse_reply_ideal(reply: &str, dim: usize) -> Result<MonomialIdeal, String> {
    let mut gens = Vec::new();
    for (lineno, line) in reply.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let coords: Result<Vec<u64>, _> =
            line.split_whitespace().map(|t| t.parse::<u64>()).collect();
        let coords = coords.map_err(|e| format!("reply line {}: {e}", lineno + 1))?;
        if coords.len() != dim {
            return Err(format!(
                "reply line {}: expected {dim} exponents, found {}",
                lineno + 1,
                coords.len()
            ));
        }
        gens.push(ExponentVector::new(coords));
    }
    if gens.is_empty() {
        return Err("reply holds no generators".to_string());
    }
    MonomialIdeal::minimalize(gens, dim).map_err(|e| e.to_string())
}

fn run_adapter(template: &str, script: &str, timeout: Duration) -> Result<String, CrosscheckOutcome> {
    let mut file = tempfile_in_tmp().map_err(|e| CrosscheckOutcome::AdapterError {
        reason: format!("cannot create script file: {e}"),
    })?;
    file.1
        .write_all(script.as_bytes())
        .map_err(|e| CrosscheckOutcome::AdapterError { reason: format!("cannot write script: {e}") })?;
    let script_path = file.0.clone();

    let parts: Vec<String> = template
        .split_whitespace()
        .map(|t| if t == "{script}" { script_path.clone() } else { t.to_string() })
        .collect();
    let Some((program, args)) = parts.split_first() else {
        return Err(CrosscheckOutcome::Skipped { reason: "empty adapter command".to_string() });
    };

    let child = Command::new(program)
        .args(args)
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn();
    let mut child = match child {
        Ok(c) => c,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            return Err(CrosscheckOutcome::Skipped {
                reason: format!("adapter executable '{program}' not found"),
            });
        }
        Err(e) => {
            return Err(CrosscheckOutcome::AdapterError { reason: format!("spawn failed: {e}") });
        }
    };

    let start = Instant::now();
    loop {
        match child.try_wait() {
            Ok(Some(_)) => break,
            Ok(None) => {
                if start.elapsed() > timeout {
                    let _ = child.kill();
                    let _ = child.wait();
                    return Err(CrosscheckOutcome::AdapterError {
                        reason: format!("adapter timed out after {} s", timeout.as_secs()),
                    });
                }
                std::thread::sleep(Duration::from_millis(10));
            }
            Err(e) => {
                return Err(CrosscheckOutcome::AdapterError { reason: format!("wait failed: {e}") });
            }
        }
    }
    let output = child
        .wait_with_output()
        .map_err(|e| CrosscheckOutcome::AdapterError { reason: format!("output read failed: {e}") })?;
    if !output.status.success() {
        return Err(CrosscheckOutcome::AdapterError {
            reason: format!(
                "adapter exited with {}: {}",
                output.status,
                String::from_utf8_lossy(&output.stderr).trim()
            ),
        });
    }
    String::from_utf8(output.stdout)
        .map_err(|_| CrosscheckOutcome::AdapterError { reason: "non-UTF8 reply".to_string() })
}

fn tempfile_in_tmp() -> std::io::Result<(String, std::fs::File)> {
    use std::time::{SystemTime, UNIX_EPOCH};
    let nanos = SystemTime::now().duration_since(UNIX_EPOCH).unwrap().as_nanos();
    let path = std::env::temp_dir().join(format!("monofilt-cas-{}-{nanos}.txt", std::process::id()));
    let file = std::fs::File::create(&path)?;
    Ok((path.to_string_lossy().into_owned(), file))
}

/// Renders the query, invokes the adapter, and diffs the reply against
/// the internal answer.
pub fn cas_crosscheck(
    ideal: &MonomialIdeal,
    vars: &[String],
    op: CasOperation,
    power: u64,
    adapter: &AdapterConfig,
) -> CrosscheckReport {
    let instance = crate::parse::print_ideal(ideal, vars);
    let outcome = crosscheck_outcome(ideal, vars, op, power, adapter);
    CrosscheckReport { operation: op.tag().to_string(), instance, power, outcome }
}

fn crosscheck_outcome(
    ideal: &MonomialIdeal,
    vars: &[String],
    op: CasOperation,
    power: u64,
    adapter: &AdapterConfig,
) -> CrosscheckOutcome {
    let Some(template) = adapter.command.as_deref() else {
        return CrosscheckOutcome::Skipped { reason: "no adapter configured".to_string() };
    };
    let internal = match internal_answer(ideal, op, power) {
        Ok(a) => a,
        Err(e) => return CrosscheckOutcome::AdapterError { reason: format!("internal: {e}") },
    };
    let script = render_script(ideal, op, power);
    let reply = match run_adapter(template, &script, adapter.timeout) {
        Ok(r) => r,
        Err(outcome) => return outcome,
    };

    match internal {
        InternalAnswer::Integer(ours) => {
            let theirs: Result<u64, _> = reply.trim().parse();
            match theirs {
                Ok(t) if t == ours => CrosscheckOutcome::Match,
                Ok(t) => CrosscheckOutcome::Mismatch {
                    only_internal: vec![ours.to_string()],
                    only_external: vec![t.to_string()],
                    detail: format!("colength differs: internal {ours}, external {t}"),
                },
                Err(e) => CrosscheckOutcome::AdapterError { reason: format!("bad integer reply: {e}") },
            }
        }
        InternalAnswer::Ideal(ours) => {
            let theirs = match parse_reply_ideal(&reply, ideal.ambient_dim()) {
                Ok(t) => t,
                Err(reason) => return CrosscheckOutcome::AdapterError { reason },
            };
            if ours == theirs {
                return CrosscheckOutcome::Match;
            }
            let name = |g: &ExponentVector| print_monomial(g, vars);
            let only_internal: Vec<String> =
                ours.gens().iter().filter(|g| !theirs.gens().contains(g)).map(name).collect();
            let only_external: Vec<String> =
                theirs.gens().iter().filter(|g| !ours.gens().contains(g)).map(name).collect();
            CrosscheckOutcome::Mismatch {
                detail: format!(
                    "{} generator sets differ ({} internal-only, {} external-only)",
                    op.tag(),
                    only_internal.len(),
                    only_external.len()
                ),
                only_internal,
                only_external,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ideal;

    fn vars() -> Vec<String> {
        vec!["x".to_string(), "y".to_string()]
    }

    fn fake_adapter(body: &str) -> (tempfile::TempDir, AdapterConfig) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fake.sh");
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(f, "#!/bin/sh\n{body}").unwrap();
        let config = AdapterConfig {
            command: Some(format!("sh {} {{script}}", path.display())),
            timeout: Duration::from_secs(10),
        };
        (dir, config)
    }

    #[test]
    fn missing_adapter_is_skipped() {
        let i = parse_ideal("(x^2, y^2)", &vars()).unwrap();
        let r = cas_crosscheck(
            &i,
            &vars(),
            CasOperation::Closure,
            1,
            &AdapterConfig { command: None, timeout: DEFAULT_TIMEOUT },
        );
        assert!(matches!(r.outcome, CrosscheckOutcome::Skipped { .. }));

        let r = cas_crosscheck(
            &i,
            &vars(),
            CasOperation::Closure,
            1,
            &AdapterConfig {
                command: Some("definitely-not-a-cas {script}".to_string()),
                timeout: DEFAULT_TIMEOUT,
            },
        );
        assert!(matches!(r.outcome, CrosscheckOutcome::Skipped { .. }));
    }

    #[test]
    fn matching_closure_reply() {
        // Closure of (x^2, y^2) is (x^2, xy, y^2).
        let (_dir, config) = fake_adapter("printf '2 0\\n1 1\\n0 2\\n'");
        let i = parse_ideal("(x^2, y^2)", &vars()).unwrap();
        let r = cas_crosscheck(&i, &vars(), CasOperation::Closure, 1, &config);
        assert_eq!(r.outcome, CrosscheckOutcome::Match);
    }

    #[test]
    fn matching_colength_reply() {
        let (_dir, config) = fake_adapter("echo 4");
        let i = parse_ideal("(x^2, y^2)", &vars()).unwrap();
        let r = cas_crosscheck(&i, &vars(), CasOperation::Colength, 1, &config);
        assert_eq!(r.outcome, CrosscheckOutcome::Match);
    }

    #[test]
    fn injected_mismatch_names_monomials() {
        // Deliberately wrong reply: missing xy, extra x.
        let (_dir, config) = fake_adapter("printf '2 0\\n0 2\\n1 0\\n'");
        let i = parse_ideal("(x^2, y^2)", &vars()).unwrap();
        let r = cas_crosscheck(&i, &vars(), CasOperation::Closure, 1, &config);
        match r.outcome {
            CrosscheckOutcome::Mismatch { only_internal, only_external, .. } => {
                assert!(only_internal.contains(&"x*y".to_string()) || only_internal.contains(&"x^2".to_string()));
                assert!(only_external.contains(&"x".to_string()));
            }
            other => panic!("expected mismatch, got {other:?}"),
        }
    }

    #[test]
    fn malformed_reply_is_adapter_error() {
        let (_dir, config) = fake_adapter("echo 'not numbers'");
        let i = parse_ideal("(x^2, y^2)", &vars()).unwrap();
        let r = cas_crosscheck(&i, &vars(), CasOperation::Closure, 1, &config);
        assert!(matches!(r.outcome, CrosscheckOutcome::AdapterError { .. }));
    }

    #[test]
    fn script_rendering_is_stable() {
        let i = parse_ideal("(x^2, y^2)", &vars()).unwrap();
        let s = render_script(&i, CasOperation::Closure, 2);
        assert_eq!(s, "op closure\npower 2\ndim 2\ngen 0 2\ngen 2 0\n");
    }
}

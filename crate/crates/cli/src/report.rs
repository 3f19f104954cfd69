//! Analysis orchestration and machine-readable reports.
//!
//! JSON output is canonical: serialization goes through a
//! `serde_json::Value`, whose object maps are ordered, so keys come out
//! sorted and the bytes are deterministic for a fixed input. The
//! `timing_ms` field is the one exception to determinism and is
//! stripped by [`canonical_json`] when a determinism comparison is
//! wanted.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use monofilt_core::{
    gap_function, hilbert_profile, ratliff_rush, verify, Filtration, FiltrationKind, GapAnalysis,
    HilbertProfile, MonomialIdeal, TheoremReport, WindowPolicy,
};

use crate::parse::print_ideal;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InputEcho {
    pub source: String,
    pub vars: Vec<String>,
    pub generators: Vec<Vec<u64>>,
    pub ambient_dim: usize,
    pub m_primary: bool,
    pub complete_intersection: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindowEcho {
    pub confirm_window: usize,
    pub max_window: u64,
    pub report_window: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RatliffRushSummary {
    pub closure: String,
    pub equals_base: bool,
    pub chain_length: usize,
    pub heuristic: bool,
    pub multiplication_check_passed: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: String,
    pub engine_version: String,
    pub input: InputEcho,
    pub window: WindowEcho,
    pub profiles: Vec<HilbertProfile>,
    pub gaps: Vec<GapAnalysis>,
    pub theorems: Vec<TheoremReport>,
    pub ratliff_rush: Option<RatliffRushSummary>,
    pub saturation: Option<String>,
    pub analytic_spread: Option<u64>,
    pub errors: Vec<String>,
    pub timing_ms: u64,
}

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub policy: WindowPolicy,
    /// Number of terms echoed in sequences; defaults to the policy's
    /// initial window for the ambient dimension.
    pub report_window: Option<u64>,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { policy: WindowPolicy::default(), report_window: None }
    }
}

/// Runs every applicable profile, gap, and theorem check on one ideal.
/// Individual failures land in `errors` instead of aborting the run.
pub fn analyze(
    ideal: &MonomialIdeal,
    vars: &[String],
    source: &str,
    options: &AnalyzeOptions,
) -> AnalysisReport {
    let start = Instant::now();
    let policy = &options.policy;
    let dim = ideal.ambient_dim();
    let report_window = options.report_window.unwrap_or_else(|| policy.initial_window(dim));
    let m_primary = ideal.is_m_primary();
    let ci = ideal.is_monomial_regular_sequence();

    let mut errors: Vec<String> = Vec::new();
    let mut profiles = Vec::new();
    let mut gaps = Vec::new();
    let mut theorems = Vec::new();

    let tag = |what: &str, e: &dyn std::fmt::Display| format!("{what} on {}: {e}", print_ideal(ideal, vars));

    if m_primary {
        for kind in FiltrationKind::ALL {
            match Filtration::new(kind, ideal.clone())
                .and_then(|mut f| hilbert_profile(&mut f, policy))
            {
                Ok(p) => profiles.push(p),
                Err(e) => errors.push(tag(&format!("{} profile", kind.name()), &e)),
            }
        }
        for upper in [
            FiltrationKind::IntegralClosure,
            FiltrationKind::RatliffRush,
            FiltrationKind::Saturation,
            FiltrationKind::TightClosure,
        ] {
            let gap = Filtration::new(upper, ideal.clone()).and_then(|mut u| {
                let mut l = Filtration::new(FiltrationKind::Adic, ideal.clone())?;
                gap_function(&mut u, &mut l, policy)
            });
            match gap {
                Ok(g) => gaps.push(g),
                Err(e) => errors.push(tag(&format!("{} gap", upper.name()), &e)),
            }
        }
        let checks: [(&str, monofilt_core::Result<TheoremReport>); 5] = [
            ("dichotomy", verify::check_dichotomy(ideal, policy)),
            ("counterwitness", verify::unmixedness_counterwitness(ideal, policy)),
            ("e1 identities", verify::check_e1_identities(ideal, policy)),
            (
                "gap bound",
                verify::check_upper_bound_lemma(
                    ideal,
                    FiltrationKind::IntegralClosure,
                    FiltrationKind::Adic,
                    policy,
                ),
            ),
            ("tight closure", verify::check_tight_closure(ideal, policy)),
        ];
        for (what, r) in checks {
            match r {
                Ok(r) => theorems.push(r),
                Err(e) => errors.push(tag(what, &e)),
            }
        }
    } else {
        // Saturation against the adic filtration stays finite for any
        // proper nonzero ideal; the colength-based profiles do not.
        let gap = Filtration::new(FiltrationKind::Saturation, ideal.clone()).and_then(|mut u| {
            let mut l = Filtration::new(FiltrationKind::Adic, ideal.clone())?;
            gap_function(&mut u, &mut l, policy)
        });
        match gap {
            Ok(g) => gaps.push(g),
            Err(e) => errors.push(tag("saturation gap", &e)),
        }
    }

    match verify::check_saturation_dichotomy(ideal, policy) {
        Ok(r) => theorems.push(r),
        Err(e) => errors.push(tag("saturation dichotomy", &e)),
    }

    let ratliff_rush = match ratliff_rush(ideal, 3) {
        Ok(r) => Some(RatliffRushSummary {
            closure: print_ideal(&r.closure, vars),
            equals_base: r.closure == *ideal,
            chain_length: r.chain.len(),
            heuristic: r.heuristic,
            multiplication_check_passed: r.multiplication_check_passed,
        }),
        Err(e) => {
            errors.push(tag("ratliff-rush", &e));
            None
        }
    };

    let saturation = match monofilt_core::saturation(ideal) {
        Ok(s) => Some(print_ideal(&s, vars)),
        Err(e) => {
            errors.push(tag("saturation", &e));
            None
        }
    };

    let analytic_spread = match monofilt_core::analytic_spread(ideal, policy) {
        Ok(s) => s,
        Err(e) => {
            errors.push(tag("analytic spread", &e));
            None
        }
    };

    AnalysisReport {
        schema_version: SCHEMA_VERSION.to_string(),
        engine_version: env!("CARGO_PKG_VERSION").to_string(),
        input: InputEcho {
            source: source.to_string(),
            vars: vars.to_vec(),
            generators: ideal.gens().iter().map(|g| g.coords().to_vec()).collect(),
            ambient_dim: dim,
            m_primary,
            complete_intersection: ci,
        },
        window: WindowEcho {
            confirm_window: policy.confirm_window,
            max_window: policy.max_window,
            report_window,
        },
        profiles,
        gaps,
        theorems,
        ratliff_rush,
        saturation,
        analytic_spread,
        errors,
        timing_ms: start.elapsed().as_millis() as u64,
    }
}

/// Canonical JSON bytes: keys sorted, two-space indentation. With
/// `include_timing` off, the `timing_ms` field is removed so two runs of
/// the same input compare byte-for-byte.
pub fn canonical_json<T: Serialize>(value: &T, include_timing: bool) -> serde_json::Result<String> {
    let mut v = serde_json::to_value(value)?;
    if !include_timing {
        strip_timing(&mut v);
    }
    serde_json::to_string_pretty(&v)
}

fn strip_timing(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(map) => {
            map.remove("timing_ms");
            for child in map.values_mut() {
                strip_timing(child);
            }
        }
        serde_json::Value::Array(items) => {
            for child in items.iter_mut() {
                strip_timing(child);
            }
        }
        _ => {}
    }
}

/// CSV export: fixed columns `instance,series,n,value`, one row per
/// term of every profile and gap series.
pub fn to_csv(reports: &[AnalysisReport]) -> Result<String, Box<dyn std::error::Error>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["instance", "series", "n", "value"])?;
    for report in reports {
        let instance = &report.input.source;
        for p in &report.profiles {
            for (n, v) in p.values.iter().enumerate() {
                w.write_record([
                    instance.as_str(),
                    &format!("colength:{}", p.kind.name()),
                    &n.to_string(),
                    &v.to_string(),
                ])?;
            }
        }
        for g in &report.gaps {
            for (i, v) in g.gap_values.iter().enumerate() {
                w.write_record([
                    instance.as_str(),
                    &format!("gap:{}-vs-{}", g.upper.name(), g.lower.name()),
                    &(i + 1).to_string(),
                    &v.to_string(),
                ])?;
            }
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ideal;
    use monofilt_core::{DichotomyVerdict, TheoremStatus};

    fn frame() -> Vec<String> {
        vec!["x".to_string(), "y".to_string()]
    }

    #[test]
    fn analyze_two_squares() {
        let vars = frame();
        let i = parse_ideal("(x^2, y^2)", &vars).unwrap();
        let r = analyze(&i, &vars, "(x^2, y^2)", &AnalyzeOptions::default());
        assert!(r.errors.is_empty(), "{:?}", r.errors);
        assert_eq!(r.profiles.len(), 5);
        let gap = r
            .gaps
            .iter()
            .find(|g| g.upper == FiltrationKind::IntegralClosure)
            .unwrap();
        let expected: Vec<u64> = (1..=gap.gap_values.len() as u64).collect();
        assert_eq!(gap.gap_values, expected);
        assert_eq!(gap.verdict, Some(DichotomyVerdict::EventuallyDegree(1)));
        assert_eq!(r.analytic_spread, Some(2));
        assert_eq!(r.saturation.as_deref(), Some("(1)"));
        assert!(r.ratliff_rush.as_ref().unwrap().equals_base);
        assert!(r
            .theorems
            .iter()
            .any(|t| t.check == "integral-closure-dichotomy" && t.status == TheoremStatus::Holds));
    }

    #[test]
    fn analyze_non_primary_stays_clean() {
        let vars = frame();
        let i = parse_ideal("(x*y)", &vars).unwrap();
        let r = analyze(&i, &vars, "(x*y)", &AnalyzeOptions::default());
        assert!(r.profiles.is_empty());
        assert!(r.gaps.iter().all(|g| g.all_zero()));
        assert!(r.errors.is_empty(), "{:?}", r.errors);
        assert_eq!(r.analytic_spread, Some(1));
    }

    #[test]
    fn canonical_json_sorted_and_timing_free() {
        let vars = frame();
        let i = parse_ideal("(x^2, y^2)", &vars).unwrap();
        let r = analyze(&i, &vars, "(x^2, y^2)", &AnalyzeOptions::default());
        let s = canonical_json(&r, false).unwrap();
        assert!(!s.contains("timing_ms"));
        let with = canonical_json(&r, true).unwrap();
        assert!(with.contains("timing_ms"));
        // Keys in a canonical object come out sorted.
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn csv_has_fixed_columns() {
        let vars = frame();
        let i = parse_ideal("(x^2, y^2)", &vars).unwrap();
        let r = analyze(&i, &vars, "(x^2, y^2)", &AnalyzeOptions::default());
        let csv = to_csv(std::slice::from_ref(&r)).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("instance,series,n,value"));
        assert!(csv.lines().count() > 5);
    }
}

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use monofilt_core::{
    hilbert, hilbert_profile, ratliff_rush, verify, Filtration, FiltrationKind, MonomialIdeal,
    WindowPolicy,
};
use monofilt_cli::cas::{self, AdapterConfig, CasOperation, CrosscheckOutcome};
use monofilt_cli::config::{resolve, FileConfig};
use monofilt_cli::corpus::{corpus_run, CorpusConfig, Family};
use monofilt_cli::parse::{infer_vars, parse_ideal, print_ideal};
use monofilt_cli::report::{analyze, canonical_json, to_csv, AnalyzeOptions};
use monofilt_cli::schema;

const EXIT_USAGE: u8 = 1;
const EXIT_COMPUTE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

/// Exact engine for monomial ideal filtrations: closures, Hilbert
/// functions, gap analysis, and dichotomy verification.
#[derive(Parser)]
#[command(name = "monofilt", version, disable_help_subcommand = true)]
struct Cli {
    /// Flat `key = value` config file; command-line flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Comma-separated variable names, e.g. `x,y`. Inferred from the
    /// expression when omitted.
    #[arg(long, global = true, value_delimiter = ',')]
    vars: Option<Vec<String>>,

    /// Number of terms reported in sequences.
    #[arg(long, global = true)]
    window: Option<u64>,

    /// Hard cap on the adaptive fitting window.
    #[arg(long = "max-window", global = true)]
    max_window: Option<u64>,

    /// Trailing terms a polynomial fit must reproduce exactly.
    #[arg(long, global = true)]
    confirm: Option<usize>,

    /// Corpus seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output format: json, csv, or text.
    #[arg(long, global = true)]
    format: Option<String>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct IdealArg {
    /// Ideal expression, e.g. "(x^2, y^2)".
    expr: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full report: profiles, gaps, theorem checks.
    Analyze(IdealArg),
    /// Minimal generators of I^n.
    Power {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(short = 'n', long, default_value_t = 1)]
        power: u64,
    },
    /// Minimal generators of the integral closure of I^n.
    Closure {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(short = 'n', long, default_value_t = 1)]
        power: u64,
    },
    /// Ratliff-Rush closure via the colon chain.
    Rr(IdealArg),
    /// Saturation I : m^infinity.
    Saturate(IdealArg),
    /// Hilbert-Samuel sequence, fit, and coefficients.
    Hilbert {
        #[command(flatten)]
        ideal: IdealArg,
        /// adic | integral-closure | ratliff-rush | saturation | tight-closure
        #[arg(long, default_value = "adic")]
        kind: String,
    },
    /// Gap sequence between two filtrations of the same ideal.
    Gap {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long, default_value = "integral-closure")]
        upper: String,
        #[arg(long, default_value = "adic")]
        lower: String,
    },
    /// Dichotomy verdict and counterwitness check.
    Dichotomy(IdealArg),
    /// Analytic spread from the generator-count polynomial.
    Spread(IdealArg),
    /// Deterministic corpus of analyzed instances.
    Corpus {
        #[arg(long)]
        count: Option<u32>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long = "min-gens")]
        min_gens: Option<u32>,
        #[arg(long = "max-gens")]
        max_gens: Option<u32>,
        #[arg(long = "max-exp")]
        max_exponent: Option<u64>,
        /// random | complete-intersection | equigenerated
        #[arg(long)]
        family: Option<String>,
    },
    /// Built-in fixture suites with known closed-form answers.
    VerifyPaper {
        /// Fixture names; defaults to all.
        #[arg(long)]
        fixture: Vec<String>,
    },
    /// Compare one operation against an external computer-algebra
    /// system adapter.
    Crosscheck {
        #[command(flatten)]
        ideal: IdealArg,
        /// closure | saturation | colength
        #[arg(long)]
        op: String,
        #[arg(short = 'n', long, default_value_t = 1)]
        power: u64,
        /// Command template with a {script} placeholder; falls back to
        /// the MONOFILT_CAS_CMD environment variable.
        #[arg(long)]
        adapter: Option<String>,
        #[arg(long = "timeout-secs")]
        timeout_secs: Option<u64>,
    },
}

enum CliError {
    Usage(String),
    Compute(String),
    Mismatch(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Compute(_) => EXIT_COMPUTE,
            CliError::Mismatch(_) => EXIT_MISMATCH,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Compute(m) | CliError::Mismatch(m) => m,
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn compute<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Compute(e.to_string())
}

struct Context {
    file: FileConfig,
    vars: Option<Vec<String>>,
    policy: WindowPolicy,
    report_window: Option<u64>,
    seed: Option<u64>,
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

impl Context {
    fn build(cli: &Cli) -> Result<Context, CliError> {
        let file = match &cli.config {
            Some(path) => FileConfig::load(path).map_err(CliError::Usage)?,
            None => FileConfig::default(),
        };
        let defaults = WindowPolicy::default();
        let policy = WindowPolicy {
            confirm_window: resolve(
                cli.confirm,
                file.get_parsed("confirm").map_err(CliError::Usage)?,
                defaults.confirm_window,
            ),
            max_window: resolve(
                cli.max_window,
                file.get_parsed("max_window").map_err(CliError::Usage)?,
                defaults.max_window,
            ),
        };
        let vars = cli.vars.clone().or_else(|| {
            file.get("vars")
                .map(|v| v.split(',').map(|s| s.trim().to_string()).collect())
        });
        let report_window =
            cli.window.or(file.get_parsed("window").map_err(CliError::Usage)?);
        let seed = cli.seed.or(file.get_parsed("seed").map_err(CliError::Usage)?);
        let format_name = cli
            .format
            .clone()
            .or_else(|| file.get("format").map(str::to_string))
            .unwrap_or_else(|| "json".to_string());
        let format = match format_name.as_str() {
            "json" => Format::Json,
            "csv" => Format::Csv,
            "text" => Format::Text,
            other => return Err(CliError::Usage(format!("unknown format '{other}'"))),
        };
        Ok(Context { file, vars, policy, report_window, seed, format })
    }

    fn parse(&self, expr: &str) -> Result<(MonomialIdeal, Vec<String>), CliError> {
        let vars = match &self.vars {
            Some(v) => v.clone(),
            None => {
                let inferred = infer_vars(expr);
                if inferred.is_empty() {
                    return Err(CliError::Usage(
                        "no variables given and none found in the expression".to_string(),
                    ));
                }
                inferred
            }
        };
        let ideal = parse_ideal(expr, &vars).map_err(usage)?;
        Ok((ideal, vars))
    }

    fn options(&self) -> AnalyzeOptions {
        AnalyzeOptions { policy: self.policy, report_window: self.report_window }
    }

    fn emit<T: serde::Serialize>(&self, value: &T, text: impl FnOnce() -> String) -> Result<(), CliError> {
        match self.format {
            Format::Json => println!("{}", canonical_json(value, true).map_err(compute)?),
            Format::Text | Format::Csv => println!("{}", text()),
            // CSV only differs for report-shaped output; handled by
            // callers that have rows, otherwise it degrades to text.
        }
        Ok(())
    }
}

fn parse_kind(name: &str) -> Result<FiltrationKind, CliError> {
    FiltrationKind::ALL
        .into_iter()
        .find(|k| k.name() == name)
        .ok_or_else(|| CliError::Usage(format!("unknown filtration kind '{name}'")))
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let ctx = Context::build(cli)?;
    match &cli.command {
        Cmd::Analyze(arg) => {
            let (ideal, vars) = ctx.parse(&arg.expr)?;
            let report = analyze(&ideal, &vars, &arg.expr, &ctx.options());
            match ctx.format {
                Format::Csv => print!("{}", to_csv(std::slice::from_ref(&report)).map_err(compute)?),
                _ => ctx.emit(&report, || summarize(&report))?,
            }
        }
        Cmd::Power { ideal, power } => {
            let (i, vars) = ctx.parse(&ideal.expr)?;
            let p = i.power(*power).map_err(compute)?;
            println!("{}", print_ideal(&p, &vars));
        }
        Cmd::Closure { ideal, power } => {
            let (i, vars) = ctx.parse(&ideal.expr)?;
            let c = monofilt_core::integral_closure_power(&i, *power).map_err(compute)?;
            println!("{}", print_ideal(&c, &vars));
        }
        Cmd::Rr(arg) => {
            let (i, vars) = ctx.parse(&arg.expr)?;
            let r = ratliff_rush(&i, 3).map_err(compute)?;
            println!("{}", print_ideal(&r.closure, &vars));
            if ctx.format == Format::Text {
                println!(
                    "chain length {}; heuristic stop: {}; multiplication check: {}",
                    r.chain.len(),
                    r.heuristic,
                    r.multiplication_check_passed
                );
            }
        }
        Cmd::Saturate(arg) => {
            let (i, vars) = ctx.parse(&arg.expr)?;
            let s = monofilt_core::saturation(&i).map_err(compute)?;
            println!("{}", print_ideal(&s, &vars));
        }
        Cmd::Hilbert { ideal, kind } => {
            let (i, _) = ctx.parse(&ideal.expr)?;
            let kind = parse_kind(kind)?;
            let mut f = Filtration::new(kind, i).map_err(compute)?;
            let profile = hilbert_profile(&mut f, &ctx.policy).map_err(compute)?;
            ctx.emit(&profile, || {
                let coeffs = profile
                    .hilbert_coeffs
                    .as_ref()
                    .map(|c| format!("{c:?}"))
                    .unwrap_or_else(|| "unstabilized".to_string());
                format!("{}: values {:?}; coefficients {}", profile.kind.name(), profile.values, coeffs)
            })?;
        }
        Cmd::Gap { ideal, upper, lower } => {
            let (i, _) = ctx.parse(&ideal.expr)?;
            let mut u = Filtration::new(parse_kind(upper)?, i.clone()).map_err(compute)?;
            let mut l = Filtration::new(parse_kind(lower)?, i).map_err(compute)?;
            let gap = monofilt_core::gap_function(&mut u, &mut l, &ctx.policy).map_err(compute)?;
            ctx.emit(&gap, || {
                format!(
                    "gap {}-vs-{}: {:?}; verdict {:?}",
                    gap.upper.name(),
                    gap.lower.name(),
                    gap.gap_values,
                    gap.verdict
                )
            })?;
        }
        Cmd::Dichotomy(arg) => {
            let (i, _) = ctx.parse(&arg.expr)?;
            let reports = vec![
                verify::check_dichotomy(&i, &ctx.policy).map_err(compute)?,
                verify::unmixedness_counterwitness(&i, &ctx.policy).map_err(compute)?,
            ];
            ctx.emit(&reports, || {
                reports
                    .iter()
                    .map(|r| format!("{}: {:?} — {}", r.check, r.status, r.detail))
                    .collect::<Vec<_>>()
                    .join("\n")
            })?;
        }
        Cmd::Spread(arg) => {
            let (i, _) = ctx.parse(&arg.expr)?;
            match hilbert::analytic_spread(&i, &ctx.policy).map_err(compute)? {
                Some(l) => println!("{l}"),
                None => return Err(CliError::Compute("analytic spread did not stabilize".to_string())),
            }
        }
        Cmd::Corpus { count, dim, min_gens, max_gens, max_exponent, family } => {
            let d = CorpusConfig::default();
            let family = match family
                .clone()
                .or_else(|| ctx.file.get("family").map(str::to_string))
            {
                None => d.family,
                Some(name) => Family::parse(&name)
                    .ok_or_else(|| CliError::Usage(format!("unknown family '{name}'")))?,
            };
            let config = CorpusConfig {
                seed: ctx.seed.unwrap_or(d.seed),
                count: resolve(*count, ctx.file.get_parsed("count").map_err(CliError::Usage)?, d.count),
                dim: resolve(*dim, ctx.file.get_parsed("dim").map_err(CliError::Usage)?, d.dim),
                min_gens: resolve(
                    *min_gens,
                    ctx.file.get_parsed("min_gens").map_err(CliError::Usage)?,
                    d.min_gens,
                ),
                max_gens: resolve(
                    *max_gens,
                    ctx.file.get_parsed("max_gens").map_err(CliError::Usage)?,
                    d.max_gens,
                ),
                max_exponent: resolve(
                    *max_exponent,
                    ctx.file.get_parsed("max_exponent").map_err(CliError::Usage)?,
                    d.max_exponent,
                ),
                family,
            };
            if config.min_gens > config.max_gens {
                return Err(CliError::Usage("min-gens exceeds max-gens".to_string()));
            }
            let reports = corpus_run(&config, &ctx.options());
            match ctx.format {
                Format::Csv => print!("{}", to_csv(&reports).map_err(compute)?),
                _ => ctx.emit(&reports, || {
                    reports
                        .iter()
                        .map(|r| format!("{}: {} theorem checks, {} errors", r.input.source, r.theorems.len(), r.errors.len()))
                        .collect::<Vec<_>>()
                        .join("\n")
                })?,
            }
        }
        Cmd::VerifyPaper { fixture } => {
            let names: Vec<&str> = if fixture.is_empty() {
                verify::FIXTURES.to_vec()
            } else {
                fixture.iter().map(String::as_str).collect()
            };
            let reports = verify::run_paper_fixtures(&names, &ctx.policy).map_err(usage)?;
            ctx.emit(&reports, || {
                reports
                    .iter()
                    .map(|r| format!("{}: {:?} — {}", r.check, r.status, r.detail))
                    .collect::<Vec<_>>()
                    .join("\n")
            })?;
            if reports
                .iter()
                .any(|r| r.status == monofilt_core::TheoremStatus::Inconclusive)
            {
                return Err(CliError::Compute("a fixture check did not verify".to_string()));
            }
        }
        Cmd::Crosscheck { ideal, op, power, adapter, timeout_secs } => {
            let (i, vars) = ctx.parse(&ideal.expr)?;
            let op = CasOperation::parse(op)
                .ok_or_else(|| CliError::Usage(format!("unknown operation '{op}'")))?;
            let mut config = AdapterConfig::from_env();
            if let Some(cmd) = adapter.clone().or_else(|| ctx.file.get("adapter").map(str::to_string)) {
                config.command = Some(cmd);
            }
            if let Some(secs) =
                timeout_secs.or(ctx.file.get_parsed("timeout_secs").map_err(CliError::Usage)?)
            {
                config.timeout = Duration::from_secs(secs);
            }
            let report = cas::cas_crosscheck(&i, &vars, op, *power, &config);
            ctx.emit(&report, || format!("{}: {:?}", report.operation, report.outcome))?;
            match &report.outcome {
                CrosscheckOutcome::Match | CrosscheckOutcome::Skipped { .. } => {}
                CrosscheckOutcome::Mismatch { detail, .. } => {
                    return Err(CliError::Mismatch(detail.clone()));
                }
                CrosscheckOutcome::AdapterError { reason } => {
                    return Err(CliError::Compute(reason.clone()));
                }
            }
        }
    }
    Ok(())
}

fn summarize(report: &monofilt_cli::AnalysisReport) -> String {
    let mut lines = Vec::new();
    lines.push(format!(
        "{} in {} variables; m-primary: {}; complete intersection: {}",
        report.input.source, report.input.ambient_dim, report.input.m_primary, report.input.complete_intersection
    ));
    for p in &report.profiles {
        lines.push(format!(
            "  colength[{}]: {:?} coefficients {:?}",
            p.kind.name(),
            p.values,
            p.hilbert_coeffs
        ));
    }
    for g in &report.gaps {
        lines.push(format!(
            "  gap[{}-vs-{}]: {:?} verdict {:?}",
            g.upper.name(),
            g.lower.name(),
            g.gap_values,
            g.verdict
        ));
    }
    for t in &report.theorems {
        lines.push(format!("  {}: {:?} — {}", t.check, t.status, t.detail));
    }
    if let Some(l) = report.analytic_spread {
        lines.push(format!("  analytic spread: {l}"));
    }
    for e in &report.errors {
        lines.push(format!("  error: {e}"));
    }
    lines.join("\n")
}

// Exit codes: 0 ok, 1 usage, 2 computation error, 3 crosscheck
// mismatch.
fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful exits, not usage errors.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

// The schema module is exercised by tests; reference it so the binary
// build keeps it honest too.
#[allow(dead_code)]
fn _schema_is_wired() -> serde_json::Value {
    schema::report_schema()
}

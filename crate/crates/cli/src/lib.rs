//! Std companion to `monofilt-core`: expression parsing, analysis
//! reports, deterministic corpora, config files, and the optional
//! external cross-check adapter. The `monofilt` binary is a thin shell
//! over this library.

pub mod cas;
pub mod config;
pub mod corpus;
pub mod parse;
pub mod report;
pub mod schema;

pub use cas::{cas_crosscheck, AdapterConfig, CasOperation, CrosscheckOutcome, CrosscheckReport};
pub use corpus::{corpus_run, generate_instance, CorpusConfig, Family};
pub use parse::{infer_vars, parse_ideal, print_ideal, print_monomial, IdealExpression, ParseError};
pub use report::{analyze, canonical_json, to_csv, AnalysisReport, AnalyzeOptions};

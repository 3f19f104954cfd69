//! Deterministic instance corpora.
//!
//! Instance `i` of a corpus is drawn from a ChaCha8 stream keyed by
//! `(seed, i)`: the generator is seeded with the corpus seed and the
//! stream index is set to `i`. The draw for one instance therefore
//! never depends on the others, instances can run on a worker pool in
//! any order, and the assembled output is identical for identical
//! configs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use monofilt_core::{ExponentVector, MonomialIdeal};

use crate::parse::{default_vars, print_ideal};
use crate::report::{analyze, AnalysisReport, AnalyzeOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Arbitrary minimal generating sets.
    Random,
    /// Pure variable powers: pairwise disjoint supports, m-primary.
    CompleteIntersection,
    /// All generators of one common total degree.
    Equigenerated,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "random" => Some(Family::Random),
            "complete-intersection" => Some(Family::CompleteIntersection),
            "equigenerated" => Some(Family::Equigenerated),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusConfig {
    pub seed: u64,
    pub count: u32,
    pub dim: usize,
    pub min_gens: u32,
    pub max_gens: u32,
    pub max_exponent: u64,
    pub family: Family,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            seed: 42,
            count: 10,
            dim: 2,
            min_gens: 2,
            max_gens: 4,
            max_exponent: 5,
            family: Family::Random,
        }
    }
}

fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Draws instance `index` of the configured stream. Always yields a
/// proper nonzero ideal.
pub fn generate_instance(config: &CorpusConfig, index: u64) -> MonomialIdeal {
    let mut rng = instance_rng(config.seed, index);
    loop {
        if let Some(ideal) = try_draw(config, &mut rng) {
            if !ideal.is_zero() && !ideal.is_unit() {
                return ideal;
            }
        }
    }
}

fn try_draw(config: &CorpusConfig, rng: &mut ChaCha8Rng) -> Option<MonomialIdeal> {
    let d = config.dim;
    let gens: Vec<ExponentVector> = match config.family {
        Family::CompleteIntersection => (0..d)
            .map(|i| {
                let mut coords = vec![0u64; d];
                coords[i] = rng.gen_range(1..=config.max_exponent);
                ExponentVector::new(coords)
            })
            .collect(),
        Family::Random => {
            let count = rng.gen_range(config.min_gens..=config.max_gens.max(config.min_gens));
            (0..count)
                .map(|_| loop {
                    let coords: Vec<u64> =
                        (0..d).map(|_| rng.gen_range(0..=config.max_exponent)).collect();
                    if coords.iter().any(|&c| c > 0) {
                        break ExponentVector::new(coords);
                    }
                })
                .collect()
        }
        Family::Equigenerated => {
            let degree = rng.gen_range(2..=config.max_exponent.max(2));
            let count = rng.gen_range(config.min_gens..=config.max_gens.max(config.min_gens));
            (0..count)
                .map(|_| {
                    // Random weak composition of `degree` into d parts.
                    let mut coords = vec![0u64; d];
                    for _ in 0..degree {
                        coords[rng.gen_range(0..d)] += 1;
                    }
                    ExponentVector::new(coords)
                })
                .collect()
        }
    };
    MonomialIdeal::minimalize(gens, d).ok()
}

/// Streams the whole corpus in index order. Instances run on the rayon
/// pool; assembly preserves the stream order, so output depends only on
/// the config. A failing instance contributes its error report rather
/// than aborting the run.
pub fn corpus_run(config: &CorpusConfig, options: &AnalyzeOptions) -> Vec<AnalysisReport> {
    let vars = default_vars(config.dim);
    (0..config.count as u64)
        .into_par_iter()
        .map(|index| {
            let ideal = generate_instance(config, index);
            let source = print_ideal(&ideal, &vars);
            analyze(&ideal, &vars, &source, options)
        })
        .collect()
}

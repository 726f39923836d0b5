//! Parallel generation with a deterministic merge.
//!
//! Pairs are processed in fixed-size chunks. Within a chunk the pairs run on
//! the worker pool; results are then fed to the builder in corpus order, so
//! the output does not depend on how many workers ran.

use rayon::prelude::*;
use rtqa_core::dataset::{answer_pairs, generate_one, split_validation, AnswerPair, DatasetBuilder, QAExample};
use rtqa_core::{Corpus, GenerationConfig, InvertedIndex, WhPriorTable};

use crate::error::Result;

const CHUNK: usize = 512;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct GenerationRun {
    pub train: Vec<QAExample>,
    pub validation: Vec<QAExample>,
    /// Pairs visited before the budget filled or the corpus ran out.
    pub pairs: usize,
    pub skipped: usize,
    pub duplicates: usize,
    /// Set when fewer examples were produced than the validation size asked for.
    pub validation_clamped: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Generated {
    pub examples: Vec<QAExample>,
    pub pairs: usize,
    pub skipped: usize,
    pub duplicates: usize,
}

/// Generate up to `config.target_size` examples on `jobs` threads (0 means
/// one per core). Identical to the sequential generator for any `jobs`.
pub fn generate(
    corpus: &Corpus,
    index: &InvertedIndex,
    config: &GenerationConfig,
    prior: &WhPriorTable,
    jobs: usize,
) -> Result<Generated> {
    config.validate()?;
    if config.use_retrieved {
        index.check_aligned(corpus)?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let pairs: Vec<AnswerPair> = answer_pairs(corpus).collect();
    let mut builder = DatasetBuilder::new(config.target_size);
    let mut visited = 0;
    if !builder.is_full() {
        'outer: for chunk in pairs.chunks(CHUNK) {
            let results: Vec<_> = pool.install(|| {
                chunk
                    .par_iter()
                    .map(|&p| generate_one(corpus, index, config, prior, p))
                    .collect()
            });
            for r in results {
                visited += 1;
                if builder.push(r?) {
                    break 'outer;
                }
            }
        }
    }
    Ok(Generated {
        pairs: visited,
        skipped: builder.skipped(),
        duplicates: builder.duplicates(),
        examples: builder.finish(),
    })
}

/// Generate, then carve the validation set out of the result. A validation
/// size larger than the output is reduced to fit and reported.
pub fn run(
    corpus: &Corpus,
    index: &InvertedIndex,
    config: &GenerationConfig,
    prior: &WhPriorTable,
    jobs: usize,
) -> Result<GenerationRun> {
    let Generated { examples, pairs, skipped, duplicates } = generate(corpus, index, config, prior, jobs)?;
    let mut val_size = config.validation_size;
    let mut validation_clamped = None;
    if val_size > examples.len() {
        val_size = examples.len();
        validation_clamped = Some(val_size);
    }
    let (train, validation) = split_validation(&examples, val_size, config.seed)?;
    Ok(GenerationRun { train, validation, pairs, skipped, duplicates, validation_clamped })
}

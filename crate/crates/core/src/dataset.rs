//! End-to-end generation of `(context, question, answer)` examples, plus the
//! validation split and per-context subsampling used for training sets.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::corpus::Corpus;
use crate::entity::Entity;
use crate::error::{Error, Result};
use crate::index::InvertedIndex;
use crate::question::{render_question, split_fragments, TemplateVariant, WhPriorTable};
use crate::retrieve::{retrieve, MatchingMode, RetrievalParams};
use crate::text::{char_len, char_slice};

/// One SQuAD-shaped training instance. `answer_start` counts scalar values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QAExample {
    pub qid: String,
    pub context: String,
    pub question: String,
    pub answer_text: String,
    pub answer_start: usize,
}

impl QAExample {
    /// The answer must be the literal context substring at `answer_start`,
    /// and the question must be non-empty.
    pub fn check(&self) -> Result<()> {
        let fail = |reason: String| Error::NotExtractive { qid: self.qid.clone(), reason };
        if self.question.is_empty() {
            return Err(fail("empty question".into()));
        }
        if self.answer_text.is_empty() {
            return Err(fail("empty answer".into()));
        }
        let end = self.answer_start + char_len(&self.answer_text);
        match char_slice(&self.context, self.answer_start, end) {
            Some(s) if s == self.answer_text => Ok(()),
            found => Err(fail(format!(
                "context[{}..{}] is {:?}, expected {:?}",
                self.answer_start, end, found, self.answer_text
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenerationConfig {
    pub variant: TemplateVariant,
    pub mode: MatchingMode,
    /// Build questions from a retrieved sentence (true) or from the context
    /// sentence itself (false).
    pub use_retrieved: bool,
    /// Total examples to produce, validation included.
    pub target_size: usize,
    pub validation_size: usize,
    pub seed: u64,
    pub f1_cap: f64,
    pub top_k: usize,
    pub exclude_document: bool,
}

impl Default for GenerationConfig {
    fn default() -> Self {
        GenerationConfig {
            variant: TemplateVariant::WhBA,
            mode: MatchingMode::QueryAndContext,
            use_retrieved: true,
            target_size: 50_000,
            validation_size: 1_000,
            seed: 42,
            f1_cap: 0.95,
            top_k: 100,
            exclude_document: false,
        }
    }
}

impl GenerationConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.f1_cap > 0.0 && self.f1_cap <= 1.0) {
            return Err(Error::InvalidConfig(format!("f1_cap {} is outside (0, 1]", self.f1_cap)));
        }
        if self.validation_size > self.target_size {
            return Err(Error::InvalidConfig(format!(
                "validation size {} exceeds target size {}",
                self.validation_size, self.target_size
            )));
        }
        if self.use_retrieved && self.top_k == 0 {
            return Err(Error::InvalidConfig("top_k must be positive".into()));
        }
        Ok(())
    }

    pub fn retrieval_params(&self) -> RetrievalParams {
        RetrievalParams {
            mode: self.mode,
            top_k: self.top_k,
            f1_cap: self.f1_cap,
            exclude_document: self.exclude_document,
        }
    }
}

/// A `(context sentence, answer entity)` candidate. `ordinal` is its
/// position in corpus order and seeds its random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnswerPair {
    pub ordinal: u64,
    pub slot: usize,
    pub entity: usize,
}

pub fn answer_pairs(corpus: &Corpus) -> impl Iterator<Item = AnswerPair> + '_ {
    corpus
        .sentences()
        .iter()
        .enumerate()
        .flat_map(|(slot, s)| (0..s.entities.len()).map(move |entity| (slot, entity)))
        .enumerate()
        .map(|(ordinal, (slot, entity))| AnswerPair { ordinal: ordinal as u64, slot, entity })
}

/// Independent generator for one pair: the global seed picks the key, the
/// ordinal picks the stream.
pub fn pair_rng(seed: u64, ordinal: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(ordinal);
    rng
}

/// `VARIANT:LABEL:hash`, the hash covering the pair's provenance.
pub fn make_qid(doc_id: &str, para_index: usize, sent_id: &str, answer: &Entity, variant: TemplateVariant) -> String {
    let mut h = Sha256::new();
    for part in [
        doc_id,
        &para_index.to_string(),
        sent_id,
        &answer.char_start.to_string(),
        &answer.char_end.to_string(),
        variant.name(),
    ] {
        h.update(part.as_bytes());
        h.update([0x1f]);
    }
    let digest = h.finalize();
    let mut qid = format!("{}:{}:", variant.name(), answer.label);
    for b in &digest[..8] {
        let _ = write!(qid, "{b:02x}");
    }
    qid
}

/// Variant and label encoded in a generated qid.
pub fn parse_qid(qid: &str) -> Option<(&str, &str)> {
    let (variant, rest) = qid.split_once(':')?;
    let (label, _) = rest.rsplit_once(':')?;
    Some((variant, label))
}

/// Build the example for one pair; `Ok(None)` when retrieval finds nothing.
pub fn generate_one(
    corpus: &Corpus,
    index: &InvertedIndex,
    config: &GenerationConfig,
    prior: &WhPriorTable,
    pair: AnswerPair,
) -> Result<Option<QAExample>> {
    let query = &corpus.sentences()[pair.slot];
    let answer = &query.entities[pair.entity];

    let parts = if config.use_retrieved {
        let Some(hit) = retrieve(index, corpus, &query.sent_id, answer, &config.retrieval_params())? else {
            return Ok(None);
        };
        let source = &corpus.sentences()[hit.slot];
        let occurrence = source
            .entities
            .iter()
            .find(|e| e.matches(answer))
            .ok_or_else(|| Error::IndexMismatch(format!("`{}` lost its answer entity", source.sent_id)))?;
        split_fragments(&source.text, occurrence)?
    } else {
        split_fragments(&query.text, answer)?
    };

    let mut rng = pair_rng(config.seed, pair.ordinal);
    let question = render_question(&parts, &answer.label, config.variant, prior, &mut rng)?;
    let paragraph = corpus.paragraph_of(pair.slot);
    let example = QAExample {
        qid: make_qid(&query.doc_id, query.para_index, &query.sent_id, answer, config.variant),
        context: paragraph.text.clone(),
        question,
        answer_text: answer.surface.clone(),
        answer_start: query.para_char_start + answer.char_start,
    };
    example.check()?;
    Ok(Some(example))
}

/// Collects examples in corpus order, dropping repeats of
/// `(context, question, answer_start)`, until the budget is full.
#[derive(Debug, Default)]
pub struct DatasetBuilder {
    target: usize,
    seen: BTreeSet<(String, String, usize)>,
    examples: Vec<QAExample>,
    skipped: usize,
    duplicates: usize,
}

impl DatasetBuilder {
    pub fn new(target: usize) -> Self {
        DatasetBuilder { target, ..Default::default() }
    }

    pub fn is_full(&self) -> bool {
        self.examples.len() >= self.target
    }

    /// Feed the outcome of one pair. Returns whether the budget is now full.
    pub fn push(&mut self, outcome: Option<QAExample>) -> bool {
        if self.is_full() {
            return true;
        }
        match outcome {
            None => self.skipped += 1,
            Some(ex) => {
                let key = (ex.context.clone(), ex.question.clone(), ex.answer_start);
                if self.seen.insert(key) {
                    self.examples.push(ex);
                } else {
                    self.duplicates += 1;
                }
            }
        }
        self.is_full()
    }

    /// Pairs without a surviving retrieval so far.
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    pub fn duplicates(&self) -> usize {
        self.duplicates
    }

    pub fn finish(self) -> Vec<QAExample> {
        self.examples
    }
}

/// Sequential generation over every answer pair in corpus order.
pub fn generate_dataset(
    corpus: &Corpus,
    index: &InvertedIndex,
    config: &GenerationConfig,
    prior: &WhPriorTable,
) -> Result<Vec<QAExample>> {
    config.validate()?;
    if config.use_retrieved {
        index.check_aligned(corpus)?;
    }
    let mut builder = DatasetBuilder::new(config.target_size);
    if builder.is_full() {
        return Ok(Vec::new());
    }
    for pair in answer_pairs(corpus) {
        if builder.push(generate_one(corpus, index, config, prior, pair)?) {
            break;
        }
    }
    Ok(builder.finish())
}

fn sorted_pick<T: Clone>(items: &[T], mut picked: Vec<usize>) -> Vec<T> {
    picked.sort_unstable();
    picked.into_iter().map(|i| items[i].clone()).collect()
}

/// Uniform sample of `validation_size` examples without replacement. Both
/// halves keep the input order.
pub fn split_validation(
    examples: &[QAExample],
    validation_size: usize,
    seed: u64,
) -> Result<(Vec<QAExample>, Vec<QAExample>)> {
    if validation_size > examples.len() {
        return Err(Error::ValidationTooLarge { requested: validation_size, available: examples.len() });
    }
    let mut order: Vec<usize> = (0..examples.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let (val, train) = order.split_at(validation_size);
    Ok((sorted_pick(examples, train.to_vec()), sorted_pick(examples, val.to_vec())))
}

/// One uniformly chosen example per distinct context, then `n` of those
/// contexts chosen uniformly (all when fewer). Output keeps input order.
pub fn subsample_per_context(examples: &[QAExample], n: usize, seed: u64) -> Vec<QAExample> {
    let mut groups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    let mut first_seen: Vec<&str> = Vec::new();
    for (i, ex) in examples.iter().enumerate() {
        groups
            .entry(ex.context.as_str())
            .or_insert_with(|| {
                first_seen.push(ex.context.as_str());
                Vec::new()
            })
            .push(i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: Vec<usize> = first_seen
        .iter()
        .map(|ctx| {
            let members = &groups[ctx];
            members[rng.random_range(0..members.len())]
        })
        .collect();
    chosen.shuffle(&mut rng);
    chosen.truncate(n);
    sorted_pick(examples, chosen)
}

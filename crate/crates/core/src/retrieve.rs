//! Query-by-sentence retrieval under answer and entity constraints.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::corpus::Corpus;
use crate::entity::Entity;
use crate::error::{Error, Result};
use crate::index::InvertedIndex;
use crate::text::{tokenize, TokenBag};

/// Which auxiliary entity a retrieved sentence must share besides the answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatchingMode {
    None,
    Query,
    Context,
    QueryAndContext,
}

impl MatchingMode {
    pub const ALL: [MatchingMode; 4] = [
        MatchingMode::None,
        MatchingMode::Query,
        MatchingMode::Context,
        MatchingMode::QueryAndContext,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MatchingMode::None => "none",
            MatchingMode::Query => "query",
            MatchingMode::Context => "context",
            MatchingMode::QueryAndContext => "both",
        }
    }
}

impl fmt::Display for MatchingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MatchingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "none" => Ok(MatchingMode::None),
            "query" => Ok(MatchingMode::Query),
            "context" => Ok(MatchingMode::Context),
            "both" | "query_and_context" | "query_context" => Ok(MatchingMode::QueryAndContext),
            _ => Err(Error::UnknownMode(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RetrievalParams {
    pub mode: MatchingMode,
    pub top_k: usize,
    /// Candidates with token F1 against the query at or above this are dropped.
    pub f1_cap: f64,
    /// Exclude the query's whole document rather than only its paragraph.
    pub exclude_document: bool,
}

impl Default for RetrievalParams {
    fn default() -> Self {
        RetrievalParams {
            mode: MatchingMode::QueryAndContext,
            top_k: 100,
            f1_cap: 0.95,
            exclude_document: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RetrievalCandidate {
    pub sent_id: String,
    pub slot: usize,
    pub score: f64,
    pub contains_answer: bool,
    pub outside_context: bool,
    pub below_f1_cap: bool,
    pub aux_match_ok: bool,
}

impl RetrievalCandidate {
    pub fn accepted(&self) -> bool {
        self.contains_answer && self.outside_context && self.below_f1_cap && self.aux_match_ok
    }
}

/// Is there an entity of `retrieved`, other than the answer surface, that
/// matches one of `pool`?
fn shares_additional<'a, I>(retrieved: &[Entity], answer: &Entity, pool: I) -> bool
where
    I: Iterator<Item = &'a Entity> + Clone,
{
    retrieved
        .iter()
        .filter(|e| !e.same_surface(answer))
        .any(|e| pool.clone().any(|p| p.matches(e)))
}

/// Flags for one candidate sentence against a query sentence and answer.
pub fn evaluate_candidate(
    corpus: &Corpus,
    query_slot: usize,
    answer: &Entity,
    cand_slot: usize,
    score: f64,
    params: &RetrievalParams,
) -> RetrievalCandidate {
    let sents = corpus.sentences();
    let query = &sents[query_slot];
    let cand = &sents[cand_slot];

    let contains_answer = cand.entities.iter().any(|e| e.matches(answer));
    let outside_context = if params.exclude_document {
        cand.doc_id != query.doc_id
    } else {
        (cand.doc_id.as_str(), cand.para_index) != (query.doc_id.as_str(), query.para_index)
    };
    let below_f1_cap = TokenBag::new(&cand.text).f1(&TokenBag::new(&query.text)) < params.f1_cap;
    let query_match = || shares_additional(&cand.entities, answer, query.entities.iter());
    let context_match = || {
        let ctx = corpus.siblings(query_slot).iter().flat_map(|&s| sents[s].entities.iter());
        shares_additional(&cand.entities, answer, ctx)
    };
    let aux_match_ok = match params.mode {
        MatchingMode::None => true,
        MatchingMode::Query => query_match(),
        MatchingMode::Context => context_match(),
        MatchingMode::QueryAndContext => query_match() && context_match(),
    };
    RetrievalCandidate {
        sent_id: cand.sent_id.clone(),
        slot: cand_slot,
        score,
        contains_answer,
        outside_context,
        below_f1_cap,
        aux_match_ok,
    }
}

/// Slot of `query_sent_id`, after checking `answer` is one of its entities.
fn query_slot(corpus: &Corpus, query_sent_id: &str, answer: &Entity) -> Result<usize> {
    let slot = corpus.slot(query_sent_id)?;
    if !corpus.sentences()[slot].entities.contains(answer) {
        return Err(Error::AnswerNotInQuery {
            sent_id: query_sent_id.to_string(),
            surface: answer.surface.clone(),
            label: answer.label.clone(),
            start: answer.char_start,
            end: answer.char_end,
        });
    }
    Ok(slot)
}

/// The `top_k` best BM25 candidates for the query sentence, with flags.
pub fn candidates(
    index: &InvertedIndex,
    corpus: &Corpus,
    query_sent_id: &str,
    answer: &Entity,
    params: &RetrievalParams,
) -> Result<Vec<RetrievalCandidate>> {
    let qslot = query_slot(corpus, query_sent_id, answer)?;
    if index.slot(query_sent_id)? != qslot {
        return Err(Error::IndexMismatch(format!("sentence `{query_sent_id}` has a different slot")));
    }
    let tokens = tokenize(&corpus.sentences()[qslot].text);
    Ok(index
        .rank(&tokens, params.top_k)
        .into_iter()
        .map(|(slot, score)| evaluate_candidate(corpus, qslot, answer, slot, score, params))
        .collect())
}

/// Best-ranked candidate passing every constraint, if any.
///
/// The index must be aligned with the corpus (see
/// [`InvertedIndex::check_aligned`]).
pub fn retrieve(
    index: &InvertedIndex,
    corpus: &Corpus,
    query_sent_id: &str,
    answer: &Entity,
    params: &RetrievalParams,
) -> Result<Option<RetrievalCandidate>> {
    let qslot = query_slot(corpus, query_sent_id, answer)?;
    if index.slot(query_sent_id)? != qslot {
        return Err(Error::IndexMismatch(format!("sentence `{query_sent_id}` has a different slot")));
    }
    let tokens = tokenize(&corpus.sentences()[qslot].text);
    let sents = corpus.sentences();
    for (slot, score) in index.rank(&tokens, params.top_k) {
        // cheap structural flags before the F1 and entity checks
        if !sents[slot].entities.iter().any(|e| e.matches(answer)) {
            continue;
        }
        let cand = evaluate_candidate(corpus, qslot, answer, slot, score, params);
        if cand.accepted() {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

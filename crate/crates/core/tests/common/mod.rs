//! Random corpora and brute-force reference implementations shared by the
//! test targets. The references are deliberately naive: they rescan every
//! sentence for every query and share no code with the library beyond the
//! public data types.
#![allow(dead_code)]

use std::collections::HashMap;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rtqa_core::{Corpus, Document, Entity, Gazetteer, HeuristicAnnotator, MatchingMode, RetrievalParams};

const WORDS: &[&str] = &[
    "river", "museum", "old", "city", "north", "bridge", "library", "king", "visited", "built", "near", "famous", "of",
    "music", "garden", "station", "painted", "wrote", "lived", "small", "tower", "the", "in",
];

/// Surfaces that collide case-insensitively on purpose: `Jordan`/`JORDAN`
/// differ in label, `Paris`/`PARIS` do not.
const ENTITIES: &[(&str, &str)] = &[
    ("Paris", "GPE"),
    ("PARIS", "GPE"),
    ("London", "GPE"),
    ("Jordan", "GPE"),
    ("JORDAN", "PERSON"),
    ("Ada Lovelace", "PERSON"),
    ("Alan Turing", "PERSON"),
    ("Louvre", "FAC"),
    ("Thames", "LOC"),
    ("Bauhaus", "ORG"),
    ("Acme Works", "ORG"),
];

pub fn gazetteer() -> Gazetteer {
    let mut g = Gazetteer::new();
    for (surface, label) in ENTITIES {
        g.insert(label, surface);
    }
    g
}

fn capitalize(w: &str) -> String {
    let mut c = w.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

fn sentence(rng: &mut ChaCha8Rng) -> String {
    let len = rng.random_range(2..=9);
    let mut toks: Vec<String> = Vec::with_capacity(len + 1);
    for i in 0..len {
        let roll: f64 = rng.random();
        let tok = if roll < 0.35 {
            ENTITIES.choose(rng).unwrap().0.to_string()
        } else if roll < 0.42 {
            rng.random_range(1800..2020).to_string()
        } else {
            WORDS.choose(rng).unwrap().to_string()
        };
        toks.push(if i == 0 { capitalize(&tok) } else { tok });
    }
    format!("{}.", toks.join(" "))
}

/// A corpus of at most `max_sentences` sentences, annotated with the
/// heuristic annotator over [`gazetteer`]. About a fifth of the sentences
/// repeat an earlier one verbatim, so duplicate texts and exact score ties
/// are common.
pub fn random_corpus(seed: u64, max_sentences: usize) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<String> = Vec::new();
    let mut docs = Vec::new();
    let mut total = 0;
    let n_docs = rng.random_range(1..=(max_sentences / 12).max(2));
    'docs: for d in 0..n_docs {
        let mut paragraphs = Vec::new();
        for _ in 0..rng.random_range(1..=4) {
            let mut sents = Vec::new();
            for _ in 0..rng.random_range(1..=6) {
                if total == max_sentences {
                    break;
                }
                let s = if !pool.is_empty() && rng.random_bool(0.2) {
                    pool.choose(&mut rng).unwrap().clone()
                } else {
                    sentence(&mut rng)
                };
                pool.push(s.clone());
                sents.push(s);
                total += 1;
            }
            if sents.is_empty() {
                break;
            }
            paragraphs.push(sents.join(" "));
        }
        if !paragraphs.is_empty() {
            docs.push(Document { doc_id: format!("doc{d:02}"), title: String::new(), paragraphs });
        }
        if total == max_sentences {
            break 'docs;
        }
    }
    let mut corpus = Corpus::ingest(docs).expect("generated corpus ingests");
    assert_eq!(corpus.len(), total, "generated sentences must split back exactly");
    corpus.annotate_with(&HeuristicAnnotator::new(&gazetteer()));
    corpus
}

pub fn norm_tokens(s: &str) -> Vec<String> {
    rtqa_core::text::normalize_text(s).split_whitespace().map(str::to_string).collect()
}

/// Okapi BM25 of every sentence against `query`, recomputing N, df and
/// avgdl from scratch.
pub fn brute_bm25(sentences: &[&str], query: &str) -> Vec<f64> {
    let docs: Vec<Vec<String>> = sentences.iter().map(|s| norm_tokens(s)).collect();
    bm25_over(&docs, &norm_tokens(query))
}

fn bm25_over(docs: &[Vec<String>], q: &[String]) -> Vec<f64> {
    const K1: f64 = 1.2;
    const B: f64 = 0.75;
    let n = docs.len();
    let total: usize = docs.iter().map(Vec::len).sum();
    let avgdl = if n == 0 { 0.0 } else { total as f64 / n as f64 };
    let df: HashMap<&str, usize> =
        q.iter().map(|t| (t.as_str(), docs.iter().filter(|d| d.contains(t)).count())).collect();
    docs.iter()
        .map(|doc| {
            let mut score = 0.0;
            for t in q {
                let tf = doc.iter().filter(|w| *w == t).count();
                if tf == 0 {
                    continue;
                }
                let df = df[t.as_str()];
                let idf = (1.0 + (n as f64 - df as f64 + 0.5) / (df as f64 + 0.5)).ln();
                let tf = tf as f64;
                let norm = if avgdl > 0.0 { doc.len() as f64 / avgdl } else { 0.0 };
                score += idf * (tf * (K1 + 1.0)) / (tf + K1 * (1.0 - B + B * norm));
            }
            score
        })
        .collect()
}

pub fn brute_f1(a: &str, b: &str) -> f64 {
    f1_tokens(&norm_tokens(a), &norm_tokens(b))
}

fn f1_tokens(x: &[String], y: &[String]) -> f64 {
    if x.is_empty() && y.is_empty() {
        return 1.0;
    }
    let mut counts: HashMap<&str, i64> = HashMap::new();
    for t in y {
        *counts.entry(t).or_default() += 1;
    }
    let mut same = 0;
    for t in x {
        if let Some(c) = counts.get_mut(t.as_str()) {
            if *c > 0 {
                *c -= 1;
                same += 1;
            }
        }
    }
    if same == 0 {
        return 0.0;
    }
    let p = same as f64 / x.len() as f64;
    let r = same as f64 / y.len() as f64;
    2.0 * p * r / (p + r)
}

fn same_entity(a: &Entity, b: &Entity) -> bool {
    a.surface.to_lowercase() == b.surface.to_lowercase() && a.label == b.label
}

fn shares_other(cand: &[Entity], answer: &Entity, pool: &[&Entity]) -> bool {
    cand.iter()
        .filter(|e| e.surface.to_lowercase() != answer.surface.to_lowercase())
        .any(|e| pool.iter().any(|p| same_entity(p, e)))
}

/// Exhaustive retrieval over one corpus: every sentence is scored and
/// checked against every constraint. Tokens are computed once up front.
pub struct Reference<'a> {
    corpus: &'a Corpus,
    tokens: Vec<Vec<String>>,
}

impl<'a> Reference<'a> {
    pub fn new(corpus: &'a Corpus) -> Self {
        let tokens = corpus.sentences().iter().map(|s| norm_tokens(&s.text)).collect();
        Reference { corpus, tokens }
    }

    /// BM25 of every sentence against sentence `query`.
    pub fn scores(&self, query: usize) -> Vec<f64> {
        bm25_over(&self.tokens, &self.tokens[query])
    }

    /// Slots by score descending, then sent_id ascending.
    pub fn ranking(&self, scores: &[f64]) -> Vec<usize> {
        let sents = self.corpus.sentences();
        let mut order: Vec<usize> = (0..sents.len()).collect();
        order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then_with(|| sents[a].sent_id.cmp(&sents[b].sent_id)));
        order
    }

    /// Accept/reject every sentence as a candidate for `(query, answer)`.
    pub fn accepted(&self, query: usize, answer: &Entity, params: &RetrievalParams) -> Vec<bool> {
        let sents = self.corpus.sentences();
        let q = &sents[query];
        let context: Vec<&Entity> = sents
            .iter()
            .filter(|s| s.doc_id == q.doc_id && s.para_index == q.para_index)
            .flat_map(|s| s.entities.iter())
            .collect();
        let query_pool: Vec<&Entity> = q.entities.iter().collect();
        sents
            .iter()
            .zip(&self.tokens)
            .map(|(c, toks)| {
                let contains = c.entities.iter().any(|e| same_entity(e, answer));
                let outside = if params.exclude_document {
                    c.doc_id != q.doc_id
                } else {
                    c.doc_id != q.doc_id || c.para_index != q.para_index
                };
                let below = f1_tokens(toks, &self.tokens[query]) < params.f1_cap;
                let by_query = shares_other(&c.entities, answer, &query_pool);
                let by_context = shares_other(&c.entities, answer, &context);
                let aux = match params.mode {
                    MatchingMode::None => true,
                    MatchingMode::Query => by_query,
                    MatchingMode::Context => by_context,
                    MatchingMode::QueryAndContext => by_query && by_context,
                };
                contains && outside && below && aux
            })
            .collect()
    }

    /// First accepted slot within the top `params.top_k` of `ranking`.
    pub fn select(&self, ranking: &[usize], query: usize, answer: &Entity, params: &RetrievalParams) -> Option<usize> {
        let ok = self.accepted(query, answer, params);
        ranking.iter().take(params.top_k).copied().find(|&s| ok[s])
    }
}

/// One-shot form of [`Reference`]: the selected slot and its score.
pub fn brute_retrieve(
    corpus: &Corpus,
    query: usize,
    answer: &Entity,
    params: &RetrievalParams,
) -> Option<(usize, f64)> {
    let r = Reference::new(corpus);
    let scores = r.scores(query);
    let ranking = r.ranking(&scores);
    r.select(&ranking, query, answer, params).map(|s| (s, scores[s]))
}

/// A query and a candidate sentence whose token F1 is
/// `2 * shared / (cand_len + query_len)`. Both open with `Paris London`, so
/// they share the answer `Paris` and the extra entity `London`; every
/// other token is unique to its position.
pub fn cap_pair(shared: usize, cand_len: usize, query_len: usize) -> (String, String) {
    assert!(shared >= 2 && cand_len >= shared && query_len >= shared);
    let common: Vec<String> = ["Paris".to_string(), "London".to_string()]
        .into_iter()
        .chain((2..shared).map(|i| format!("w{i}")))
        .collect();
    let cand: Vec<String> = common.iter().cloned().chain((shared..cand_len).map(|i| format!("c{i}"))).collect();
    let query: Vec<String> = common.into_iter().chain((shared..query_len).map(|i| format!("q{i}"))).collect();
    (format!("{}.", query.join(" ")), format!("{}.", cand.join(" ")))
}

//! Sentence-level inverted index with Okapi BM25 ranking.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::text::tokenize;

pub const K1: f64 = 1.2;
pub const B: f64 = 0.75;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Posting {
    /// Sentence slot (position in the corpus sentence order).
    pub doc: u32,
    pub tf: u32,
}

/// `ln(1 + (N - df + 0.5) / (df + 0.5))`, always positive.
pub fn idf(n: usize, df: usize) -> f64 {
    let (n, df) = (n as f64, df as f64);
    crate::ln(1.0 + (n - df + 0.5) / (df + 0.5))
}

/// Contribution of one query token occurrence to a sentence's score.
#[inline]
pub fn term_weight(idf: f64, tf: u32, doc_len: u32, avgdl: f64) -> f64 {
    let tf = tf as f64;
    let norm = if avgdl > 0.0 { doc_len as f64 / avgdl } else { 0.0 };
    idf * (tf * (K1 + 1.0)) / (tf + K1 * (1.0 - B + B * norm))
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvertedIndex {
    sent_ids: Vec<String>,
    doc_lengths: Vec<u32>,
    postings: BTreeMap<String, Vec<Posting>>,
    avgdl: f64,
    // slots sorted by sent_id, for the zero-score tail of a ranking
    id_order: Vec<u32>,
    slot_of: BTreeMap<String, u32>,
}

impl InvertedIndex {
    pub fn build(corpus: &Corpus) -> InvertedIndex {
        Self::from_texts(corpus.sentences().iter().map(|s| (s.sent_id.as_str(), s.text.as_str())))
    }

    /// Index `(sent_id, text)` pairs; slots follow iteration order.
    pub fn from_texts<'a, I>(docs: I) -> InvertedIndex
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut sent_ids = Vec::new();
        let mut doc_lengths = Vec::new();
        let mut postings: BTreeMap<String, Vec<Posting>> = BTreeMap::new();
        for (slot, (id, text)) in docs.into_iter().enumerate() {
            let toks = tokenize(text);
            let mut tf: BTreeMap<String, u32> = BTreeMap::new();
            for t in &toks {
                *tf.entry(t.clone()).or_insert(0) += 1;
            }
            for (t, n) in tf {
                postings.entry(t).or_default().push(Posting { doc: slot as u32, tf: n });
            }
            sent_ids.push(id.to_string());
            doc_lengths.push(toks.len() as u32);
        }
        Self::assemble(sent_ids, doc_lengths, postings)
    }

    /// Rebuild from persisted parts, checking every structural invariant.
    pub fn from_parts(
        sent_ids: Vec<String>,
        doc_lengths: Vec<u32>,
        postings: BTreeMap<String, Vec<Posting>>,
    ) -> Result<InvertedIndex> {
        let n = sent_ids.len();
        if doc_lengths.len() != n {
            return Err(Error::InvalidIndex(format!("{} ids but {} lengths", n, doc_lengths.len())));
        }
        let mut token_sum = alloc::vec![0u64; n];
        for (term, list) in &postings {
            if term.is_empty() || term.contains(char::is_whitespace) || list.is_empty() {
                return Err(Error::InvalidIndex(format!("bad term {term:?}")));
            }
            let mut prev = None;
            for p in list {
                if p.tf == 0 || (p.doc as usize) >= n || prev.is_some_and(|d| d >= p.doc) {
                    return Err(Error::InvalidIndex(format!("bad posting list for {term:?}")));
                }
                prev = Some(p.doc);
                token_sum[p.doc as usize] += p.tf as u64;
            }
        }
        if token_sum.iter().zip(&doc_lengths).any(|(&a, &b)| a != b as u64) {
            return Err(Error::InvalidIndex("postings disagree with sentence lengths".into()));
        }
        let mut seen = BTreeMap::new();
        for (i, id) in sent_ids.iter().enumerate() {
            if seen.insert(id.clone(), i).is_some() {
                return Err(Error::InvalidIndex(format!("duplicate sentence id {id:?}")));
            }
        }
        Ok(Self::assemble(sent_ids, doc_lengths, postings))
    }

    fn assemble(sent_ids: Vec<String>, doc_lengths: Vec<u32>, postings: BTreeMap<String, Vec<Posting>>) -> Self {
        let n = sent_ids.len();
        let total: u64 = doc_lengths.iter().map(|&l| l as u64).sum();
        let avgdl = if n == 0 { 0.0 } else { total as f64 / n as f64 };
        let mut id_order: Vec<u32> = (0..n as u32).collect();
        id_order.sort_by(|&a, &b| sent_ids[a as usize].cmp(&sent_ids[b as usize]));
        let slot_of = sent_ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i as u32))
            .collect();
        InvertedIndex { sent_ids, doc_lengths, postings, avgdl, id_order, slot_of }
    }

    /// Number of indexed sentences.
    pub fn len(&self) -> usize {
        self.sent_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sent_ids.is_empty()
    }

    pub fn avgdl(&self) -> f64 {
        self.avgdl
    }

    pub fn sent_ids(&self) -> &[String] {
        &self.sent_ids
    }

    pub fn doc_lengths(&self) -> &[u32] {
        &self.doc_lengths
    }

    pub fn postings(&self) -> &BTreeMap<String, Vec<Posting>> {
        &self.postings
    }

    pub fn df(&self, token: &str) -> usize {
        self.postings.get(token).map_or(0, Vec::len)
    }

    pub fn slot(&self, sent_id: &str) -> Result<usize> {
        self.slot_of
            .get(sent_id)
            .map(|&s| s as usize)
            .ok_or_else(|| Error::UnknownSentence(sent_id.to_string()))
    }

    /// Check that slot `i` of the index is sentence `i` of `corpus`.
    pub fn check_aligned(&self, corpus: &Corpus) -> Result<()> {
        if self.len() != corpus.len() {
            return Err(Error::IndexMismatch(format!(
                "index has {} sentences, corpus has {}",
                self.len(),
                corpus.len()
            )));
        }
        for (i, s) in corpus.sentences().iter().enumerate() {
            if self.sent_ids[i] != s.sent_id || self.doc_lengths[i] as usize != tokenize(&s.text).len() {
                return Err(Error::IndexMismatch(format!("sentence `{}` differs", s.sent_id)));
            }
        }
        Ok(())
    }

    fn tf(&self, token: &str, slot: u32) -> u32 {
        self.postings
            .get(token)
            .and_then(|l| l.binary_search_by_key(&slot, |p| p.doc).ok().map(|i| l[i].tf))
            .unwrap_or(0)
    }

    /// BM25 of one sentence; every query token occurrence contributes.
    pub fn bm25_score(&self, query_tokens: &[String], sent_id: &str) -> Result<f64> {
        let slot = self.slot(sent_id)? as u32;
        let n = self.len();
        let dl = self.doc_lengths[slot as usize];
        let mut score = 0.0;
        for t in query_tokens {
            let tf = self.tf(t, slot);
            if tf > 0 {
                score += term_weight(idf(n, self.df(t)), tf, dl, self.avgdl);
            }
        }
        Ok(score)
    }

    /// All sentences ranked by BM25 against `query_tokens`, cut to `top_k`:
    /// score descending, then sent_id ascending. Sentences sharing no token
    /// score zero and fill the tail in sent_id order.
    pub fn rank(&self, query_tokens: &[String], top_k: usize) -> Vec<(usize, f64)> {
        let n = self.len();
        if top_k == 0 || n == 0 {
            return Vec::new();
        }
        let mut acc = alloc::vec![0.0f64; n];
        let mut touched = Vec::new();
        for t in query_tokens {
            let Some(list) = self.postings.get(t) else { continue };
            let w_idf = idf(n, list.len());
            for p in list {
                let d = p.doc as usize;
                if acc[d] == 0.0 {
                    touched.push(d);
                }
                acc[d] += term_weight(w_idf, p.tf, self.doc_lengths[d], self.avgdl);
            }
        }
        let cmp = |a: &usize, b: &usize| -> Ordering {
            acc[*b].total_cmp(&acc[*a]).then_with(|| self.sent_ids[*a].cmp(&self.sent_ids[*b]))
        };
        if touched.len() > top_k {
            touched.select_nth_unstable_by(top_k - 1, cmp);
            touched.truncate(top_k);
        }
        touched.sort_by(cmp);
        let mut out: Vec<(usize, f64)> = touched.iter().map(|&d| (d, acc[d])).collect();
        if out.len() < top_k {
            for &d in &self.id_order {
                if out.len() == top_k {
                    break;
                }
                if acc[d as usize] == 0.0 {
                    out.push((d as usize, 0.0));
                }
            }
        }
        out
    }
}

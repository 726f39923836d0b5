//! SQuAD-style answer normalization and token-level EM / F1.
//!
//! These are the same functions used by the official SQuAD v1.1 evaluation
//! script: lowercase, drop ASCII punctuation, drop the articles `a`, `an`,
//! `the`, then collapse whitespace. Retrieval uses them too, both for
//! tokenizing sentences and for the near-duplicate filter.
//!
//! All character offsets in this crate count Unicode scalar values, not
//! bytes. The helpers at the bottom convert between the two.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

/// Python's `string.punctuation`.
const PUNCTUATION: &str = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";

fn is_punct(c: char) -> bool {
    c.is_ascii() && PUNCTUATION.contains(c)
}

// `\w` for a Python `str` pattern.
fn is_word_char(c: char) -> bool {
    c == '_' || c.is_alphanumeric()
}

fn remove_articles(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(c) = rest.chars().next() {
        if is_word_char(c) {
            let end = rest
                .char_indices()
                .find(|&(_, c)| !is_word_char(c))
                .map_or(rest.len(), |(i, _)| i);
            let word = &rest[..end];
            if matches!(word, "a" | "an" | "the") {
                out.push(' ');
            } else {
                out.push_str(word);
            }
            rest = &rest[end..];
        } else {
            out.push(c);
            rest = &rest[c.len_utf8()..];
        }
    }
    out
}

/// Lowercase, strip punctuation and articles, collapse whitespace.
pub fn normalize_text(s: &str) -> String {
    let lowered: String = s.to_lowercase().chars().filter(|&c| !is_punct(c)).collect();
    let stripped = remove_articles(&lowered);
    let mut out = String::with_capacity(stripped.len());
    for tok in stripped.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(tok);
    }
    out
}

/// Normalized tokens of `s`; the tokenization shared by the index and the metrics.
pub fn tokenize(s: &str) -> Vec<String> {
    normalize_text(s)
        .split_whitespace()
        .map(String::from)
        .collect()
}

/// Multiset of normalized tokens.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenBag {
    counts: BTreeMap<String, usize>,
    len: usize,
}

impl TokenBag {
    pub fn new(s: &str) -> Self {
        let mut bag = TokenBag::default();
        for tok in tokenize(s) {
            *bag.counts.entry(tok).or_insert(0) += 1;
            bag.len += 1;
        }
        bag
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count(&self, token: &str) -> usize {
        self.counts.get(token).copied().unwrap_or(0)
    }

    /// Size of the multiset intersection.
    pub fn overlap(&self, other: &TokenBag) -> usize {
        self.counts
            .iter()
            .map(|(tok, &n)| n.min(other.count(tok)))
            .sum()
    }

    pub fn f1(&self, other: &TokenBag) -> f64 {
        match (self.is_empty(), other.is_empty()) {
            (true, true) => return 1.0,
            (true, false) | (false, true) => return 0.0,
            _ => {}
        }
        let same = self.overlap(other);
        if same == 0 {
            return 0.0;
        }
        let precision = same as f64 / self.len as f64;
        let recall = same as f64 / other.len as f64;
        2.0 * precision * recall / (precision + recall)
    }
}

/// Token F1 between `a` (prediction side) and `b` (reference side).
///
/// Both empty after normalization gives 1.0, exactly one empty gives 0.0.
pub fn token_f1(a: &str, b: &str) -> f64 {
    TokenBag::new(a).f1(&TokenBag::new(b))
}

pub fn exact_match(pred: &str, gold: &str) -> bool {
    normalize_text(pred) == normalize_text(gold)
}

/// Number of Unicode scalar values in `s`.
pub fn char_len(s: &str) -> usize {
    s.chars().count()
}

/// Byte offset of the `char_idx`-th scalar value (or `s.len()` at the end).
pub fn byte_offset(s: &str, char_idx: usize) -> Option<usize> {
    if char_idx == 0 {
        return Some(0);
    }
    let mut seen = 0;
    for (i, _) in s.char_indices() {
        if seen == char_idx {
            return Some(i);
        }
        seen += 1;
    }
    (seen == char_idx).then_some(s.len())
}

/// Substring by scalar-value offsets, `None` when out of range.
pub fn char_slice(s: &str, start: usize, end: usize) -> Option<&str> {
    if start > end {
        return None;
    }
    let b0 = byte_offset(s, start)?;
    let b1 = b0 + byte_offset(&s[b0..], end - start)?;
    Some(&s[b0..b1])
}

//! Template question generation.
//!
//! A source sentence is cut around the answer into `[Fragment A] [Answer]
//! [Fragment B]`. A cloze question masks the answer in place; the wh
//! templates drop the answer, prepend (or insert) an interrogative chosen
//! from the answer's entity label, and reorder the fragments.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::Rng;

use crate::entity::Entity;
use crate::error::{Error, Result};
use crate::text::char_slice;

pub const MASK: &str = "[MASK]";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateParts {
    pub fragment_a: String,
    pub answer_surface: String,
    pub fragment_b: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TemplateVariant {
    /// `A [MASK] B.`
    Cloze,
    /// `A wh B?`
    AWhB,
    /// `Wh A B?`
    WhAB,
    /// `Wh B A?`
    WhBA,
    /// `B A?`
    BANoWh,
    /// `Wh B A`
    WhBANoQmark,
    /// `Wh B A?` with the wh word from the five-category table.
    WhSimpleBA,
    /// `What B A?`
    WhatBA,
}

impl TemplateVariant {
    pub const ALL: [TemplateVariant; 8] = [
        TemplateVariant::Cloze,
        TemplateVariant::AWhB,
        TemplateVariant::WhAB,
        TemplateVariant::WhBA,
        TemplateVariant::BANoWh,
        TemplateVariant::WhBANoQmark,
        TemplateVariant::WhSimpleBA,
        TemplateVariant::WhatBA,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TemplateVariant::Cloze => "CLOZE",
            TemplateVariant::AWhB => "A_WH_B",
            TemplateVariant::WhAB => "WH_A_B",
            TemplateVariant::WhBA => "WH_B_A",
            TemplateVariant::BANoWh => "B_A_NO_WH",
            TemplateVariant::WhBANoQmark => "WH_B_A_NO_QMARK",
            TemplateVariant::WhSimpleBA => "WH_SIMPLE_B_A",
            TemplateVariant::WhatBA => "WHAT_B_A",
        }
    }

    /// Whether the wh component is sampled from a [`WhPriorTable`].
    pub fn uses_prior(self) -> bool {
        matches!(
            self,
            TemplateVariant::AWhB | TemplateVariant::WhAB | TemplateVariant::WhBA | TemplateVariant::WhBANoQmark
        )
    }

    pub fn ends_with_question_mark(self) -> bool {
        !matches!(self, TemplateVariant::Cloze | TemplateVariant::WhBANoQmark)
    }

    pub fn allowed_names() -> String {
        Self::ALL.iter().map(|v| v.name()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for TemplateVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TemplateVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_uppercase().replace('-', "_");
        Self::ALL
            .iter()
            .copied()
            .find(|v| v.name() == key)
            .ok_or_else(|| Error::UnknownVariant(s.to_string()))
    }
}

/// Cut `text` around `answer`. The fragment that ends the sentence loses
/// one trailing `.`, `!` or `?`.
pub fn split_fragments(text: &str, answer: &Entity) -> Result<TemplateParts> {
    if !answer.is_valid_in(text) {
        return Err(Error::InvalidSpan {
            start: answer.char_start,
            end: answer.char_end,
            surface: answer.surface.clone(),
        });
    }
    let n = crate::text::char_len(text);
    let before = char_slice(text, 0, answer.char_start).unwrap_or_default();
    let after = char_slice(text, answer.char_end, n).unwrap_or_default();
    let mut fragment_b = after.trim();
    if let Some(stripped) = fragment_b.strip_suffix(['.', '!', '?']) {
        fragment_b = stripped.trim_end();
    }
    Ok(TemplateParts {
        fragment_a: before.trim().to_string(),
        answer_surface: answer.surface.clone(),
        fragment_b: fragment_b.to_string(),
    })
}

fn join(pieces: &[&str]) -> String {
    let mut out = String::new();
    for p in pieces.iter().filter(|p| !p.is_empty()) {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(p);
    }
    out
}

fn capitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

pub fn make_cloze(parts: &TemplateParts) -> String {
    let mut q = join(&[&parts.fragment_a, MASK, &parts.fragment_b]);
    q.push('.');
    q
}

/// Assemble a wh template. `wh` is ignored by `B_A_NO_WH`; `CLOZE` falls
/// back to [`make_cloze`].
pub fn make_wh_question(parts: &TemplateParts, variant: TemplateVariant, wh: &str) -> String {
    let (a, b) = (parts.fragment_a.as_str(), parts.fragment_b.as_str());
    let body = match variant {
        TemplateVariant::Cloze => return make_cloze(parts),
        TemplateVariant::AWhB => join(&[a, wh, b]),
        TemplateVariant::WhAB => join(&[wh, a, b]),
        TemplateVariant::BANoWh => join(&[b, a]),
        TemplateVariant::WhBA
        | TemplateVariant::WhBANoQmark
        | TemplateVariant::WhSimpleBA
        | TemplateVariant::WhatBA => join(&[wh, b, a]),
    };
    let mut q = capitalize(&body);
    if variant.ends_with_question_mark() {
        q.push('?');
    }
    q
}

/// Most common wh word for five coarse entity groups.
pub fn wh_simple(label: &str) -> &'static str {
    match label {
        "PERSON" | "NORP" | "ORG" => "who",
        "GPE" | "LOC" | "FAC" => "where",
        "DATE" | "TIME" => "when",
        "CARDINAL" | "ORDINAL" | "QUANTITY" | "MONEY" | "PERCENT" => "how many",
        _ => "what",
    }
}

/// Distribution over question-initial bigrams per entity label. The `*`
/// entry, when present, serves labels without their own entry.
#[derive(Debug, Clone, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "BTreeMap<String, Vec<(String, f64)>>"))]
#[cfg_attr(feature = "serde", serde(into = "BTreeMap<String, Vec<(String, f64)>>"))]
pub struct WhPriorTable {
    table: BTreeMap<String, Vec<(String, f64)>>,
}

pub const FALLBACK_LABEL: &str = "*";

impl WhPriorTable {
    pub fn new(table: BTreeMap<String, Vec<(String, f64)>>) -> Result<Self> {
        for (label, list) in &table {
            let mut sum = 0.0;
            for (bigram, p) in list {
                if bigram.split_whitespace().count() != 2 {
                    return Err(Error::InvalidPriors(format!("`{label}`: {bigram:?} is not two words")));
                }
                if !(p.is_finite() && *p >= 0.0) {
                    return Err(Error::InvalidPriors(format!("`{label}`: bad probability {p} for {bigram:?}")));
                }
                sum += p;
            }
            if !list.is_empty() && (sum - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidPriors(format!("`{label}`: probabilities sum to {sum}")));
            }
        }
        Ok(WhPriorTable { table })
    }

    pub fn get(&self, label: &str) -> Option<&[(String, f64)]> {
        self.table.get(label).map(Vec::as_slice)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.table.keys().map(String::as_str)
    }

    fn distribution(&self, label: &str) -> Result<&[(String, f64)]> {
        self.table
            .get(label)
            .filter(|l| !l.is_empty())
            .or_else(|| self.table.get(FALLBACK_LABEL).filter(|l| !l.is_empty()))
            .map(Vec::as_slice)
            .ok_or_else(|| Error::MissingPrior(label.to_string()))
    }

    /// Draw a bigram by inverting the cumulative distribution at one uniform draw.
    pub fn sample<R: Rng + ?Sized>(&self, label: &str, rng: &mut R) -> Result<&str> {
        let dist = self.distribution(label)?;
        let total: f64 = dist.iter().map(|(_, p)| p).sum();
        let u = rng.random::<f64>() * total;
        let mut cum = 0.0;
        for (bigram, p) in dist {
            cum += p;
            if u < cum {
                return Ok(bigram);
            }
        }
        let last = dist.iter().rev().find(|(_, p)| *p > 0.0).unwrap_or(&dist[dist.len() - 1]);
        Ok(&last.0)
    }

    /// Estimate a table from `(answer label, question)` pairs by counting
    /// the first two words of each question. Keeps the `top_n` most frequent
    /// bigrams per label (all when `None`) and adds a pooled `*` entry.
    pub fn from_questions<'a, I>(pairs: I, top_n: Option<usize>) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut counts: BTreeMap<String, BTreeMap<String, u64>> = BTreeMap::new();
        for (label, question) in pairs {
            let Some(bigram) = question_bigram(question) else { continue };
            for key in [label, FALLBACK_LABEL] {
                *counts.entry(key.to_string()).or_default().entry(bigram.clone()).or_insert(0) += 1;
            }
        }
        let mut table = BTreeMap::new();
        for (label, bigrams) in counts {
            let mut ranked: Vec<(String, u64)> = bigrams.into_iter().collect();
            ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
            if let Some(n) = top_n {
                ranked.truncate(n.max(1));
            }
            let total: u64 = ranked.iter().map(|r| r.1).sum();
            let list = ranked
                .into_iter()
                .map(|(b, c)| (b, c as f64 / total as f64))
                .collect();
            table.insert(label, list);
        }
        WhPriorTable::new(table)
    }
}

impl TryFrom<BTreeMap<String, Vec<(String, f64)>>> for WhPriorTable {
    type Error = Error;

    fn try_from(table: BTreeMap<String, Vec<(String, f64)>>) -> Result<Self> {
        WhPriorTable::new(table)
    }
}

impl From<WhPriorTable> for BTreeMap<String, Vec<(String, f64)>> {
    fn from(t: WhPriorTable) -> Self {
        t.table
    }
}

/// First two words of a question, lowercased, edge punctuation removed.
pub fn question_bigram(question: &str) -> Option<String> {
    let mut words = question
        .split_whitespace()
        .map(|w| w.trim_matches(|c: char| c.is_ascii_punctuation()).to_lowercase())
        .filter(|w| !w.is_empty());
    let first = words.next()?;
    let second = words.next()?;
    Some(format!("{first} {second}"))
}

/// Pick the wh component for `variant`. Variants without one return "".
pub fn choose_wh<R: Rng + ?Sized>(
    label: &str,
    variant: TemplateVariant,
    prior: &WhPriorTable,
    rng: &mut R,
) -> Result<String> {
    Ok(match variant {
        TemplateVariant::Cloze | TemplateVariant::BANoWh => String::new(),
        TemplateVariant::WhSimpleBA => wh_simple(label).to_string(),
        TemplateVariant::WhatBA => "what".to_string(),
        _ => prior.sample(label, rng)?.to_string(),
    })
}

/// Full question for `parts` under `variant`, drawing the wh component if needed.
pub fn render_question<R: Rng + ?Sized>(
    parts: &TemplateParts,
    label: &str,
    variant: TemplateVariant,
    prior: &WhPriorTable,
    rng: &mut R,
) -> Result<String> {
    if variant == TemplateVariant::Cloze {
        return Ok(make_cloze(parts));
    }
    let wh = choose_wh(label, variant, prior, rng)?;
    Ok(make_wh_question(parts, variant, &wh))
}

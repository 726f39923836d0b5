//! SQuAD v1.1 scoring and the named-entity answer subset.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use sha2::{Digest, Sha256};

use crate::entity::{surface_eq, Entity};
use crate::error::{Error, Result};
use crate::squad::{Article, SquadDataset, SquadParagraph};
use crate::text::{exact_match, token_f1};

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    /// Percent, 0..=100.
    pub exact_match: f64,
    /// Percent, 0..=100.
    pub f1: f64,
    /// Gold questions scored.
    pub n: usize,
    /// Gold qids with no prediction; they score zero.
    pub missing: Vec<String>,
}

/// Per question, the best EM and F1 over the gold answers; averaged over all
/// gold questions and scaled to percent.
pub fn evaluate(gold: &SquadDataset, predictions: &BTreeMap<String, String>) -> EvalReport {
    let mut em_sum = 0.0;
    let mut f1_sum = 0.0;
    let mut n = 0;
    let mut missing = Vec::new();
    for (_, qa) in gold.questions() {
        n += 1;
        let Some(pred) = predictions.get(&qa.id) else {
            missing.push(qa.id.clone());
            continue;
        };
        let em = qa
            .answers
            .iter()
            .map(|a| if exact_match(pred, &a.text) { 1.0 } else { 0.0 })
            .fold(0.0, f64::max);
        let f1 = qa.answers.iter().map(|a| token_f1(pred, &a.text)).fold(0.0, f64::max);
        em_sum += em;
        f1_sum += f1;
    }
    let scale = |s: f64| if n == 0 { 0.0 } else { 100.0 * s / n as f64 };
    EvalReport { exact_match: scale(em_sum), f1: scale(f1_sum), n, missing }
}

/// Content-derived key for a context paragraph, stable under subsetting.
pub fn context_id(context: &str) -> String {
    let digest = Sha256::digest(context.as_bytes());
    let mut id = String::from("ctx-");
    for b in &digest[..8] {
        let _ = write!(id, "{b:02x}");
    }
    id
}

/// Keep the questions with at least one gold answer equal (ignoring case)
/// to the surface of an entity of its context. `annotations` is keyed by
/// [`context_id`]. Paragraphs and articles left empty are dropped.
pub fn ner_subset(gold: &SquadDataset, annotations: &BTreeMap<String, Vec<Entity>>) -> Result<SquadDataset> {
    let mut missing: Vec<String> = gold
        .data
        .iter()
        .flat_map(|a| &a.paragraphs)
        .map(|p| context_id(&p.context))
        .filter(|id| !annotations.contains_key(id))
        .collect();
    if !missing.is_empty() {
        missing.sort();
        missing.dedup();
        return Err(Error::MissingContextAnnotations(missing));
    }
    let data = gold
        .data
        .iter()
        .filter_map(|article| {
            let paragraphs: Vec<SquadParagraph> = article
                .paragraphs
                .iter()
                .filter_map(|p| {
                    let ents = &annotations[&context_id(&p.context)];
                    let qas: Vec<_> = p
                        .qas
                        .iter()
                        .filter(|qa| qa.answers.iter().any(|a| ents.iter().any(|e| surface_eq(&a.text, &e.surface))))
                        .cloned()
                        .collect();
                    (!qas.is_empty()).then(|| SquadParagraph { context: p.context.clone(), qas })
                })
                .collect();
            (!paragraphs.is_empty()).then(|| Article { title: article.title.clone(), paragraphs })
        })
        .collect();
    Ok(SquadDataset { version: gold.version.clone(), data })
}

//! The annotation interchange file, shared with external taggers.
//!
//! One JSON object per sentence:
//! `{"sent_id": "d1:0:0", "entities": [{"surface": "Paris", "start": 0, "end": 5, "label": "GPE"}]}`.
//! Offsets are Unicode scalar values into the sentence text, `end` exclusive.
//! A leading `{"kind":"header", ...}` line, if present, is skipped.

use std::io::{BufRead, Write};
use std::path::Path;

use rtqa_core::{Corpus, Entity, Gazetteer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fsio;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnotationRecord {
    pub sent_id: String,
    pub entities: Vec<Entity>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Line {
    Header { kind: String },
    Record(AnnotationRecord),
}

pub fn read_annotations<R: BufRead>(reader: R, origin: &Path) -> Result<Vec<AnnotationRecord>> {
    let mut out = Vec::new();
    for (line, rec) in fsio::read_records::<_, Line>(reader, origin)? {
        match rec {
            Line::Header { kind } if kind == "header" => {}
            Line::Header { kind } => {
                return Err(Error::format(origin, format!("line {line}: unknown record kind `{kind}`")));
            }
            Line::Record(r) => out.push(r),
        }
    }
    Ok(out)
}

pub fn load_annotations(path: &Path) -> Result<Vec<AnnotationRecord>> {
    read_annotations(fsio::open(path)?, path)
}

/// Attach the records at `path` to `corpus`, validating every span.
pub fn apply_annotations(corpus: &mut Corpus, path: &Path) -> Result<()> {
    let records = load_annotations(path)?;
    corpus.load_annotations(records.into_iter().map(|r| (r.sent_id, r.entities)))?;
    Ok(())
}

pub fn write_annotations(corpus: &Corpus, w: &mut dyn Write) -> std::io::Result<()> {
    for s in corpus.sentences() {
        fsio::write_jsonl_line(
            w,
            &AnnotationRecord { sent_id: s.sent_id.clone(), entities: s.entities.clone() },
        )?;
    }
    Ok(())
}

pub fn save_annotations(corpus: &Corpus, path: &Path) -> Result<()> {
    fsio::write_atomic(path, |w| write_annotations(corpus, w))
}

/// `{"LABEL": ["phrase", ...], ...}`
pub fn load_gazetteer(path: &Path) -> Result<Gazetteer> {
    fsio::read_json(path)
}

//! Corpus input and the sentence store.
//!
//! The store is JSON Lines: a header, then every paragraph followed by its
//! sentences. Offsets count Unicode scalar values, as the header declares.
//!
//! ```text
//! {"kind":"header","format":"rtqa-sentence-store","version":1,"offset_unit":"unicode_scalar"}
//! {"kind":"paragraph","doc_id":"d1","title":"T","para_index":0,"text":"A cat sat. It purred."}
//! {"kind":"sentence","sent_id":"d1:0:0","doc_id":"d1","para_index":0,"para_char_start":0,"text":"A cat sat."}
//! ```

use std::io::{BufRead, Write};
use std::path::Path;

use rtqa_core::corpus::{AnnotatedSentence, Corpus, Document, Paragraph};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fsio;

pub const STORE_FORMAT: &str = "rtqa-sentence-store";
pub const STORE_VERSION: u32 = 1;
pub const OFFSET_UNIT: &str = "unicode_scalar";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StoreHeader {
    pub format: String,
    pub version: u32,
    pub offset_unit: String,
}

impl Default for StoreHeader {
    fn default() -> Self {
        StoreHeader {
            format: STORE_FORMAT.into(),
            version: STORE_VERSION,
            offset_unit: OFFSET_UNIT.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentenceRecord {
    pub sent_id: String,
    pub doc_id: String,
    pub para_index: usize,
    pub para_char_start: usize,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StoreRecord {
    Header(StoreHeader),
    Paragraph(Paragraph),
    Sentence(SentenceRecord),
}

pub fn read_documents<R: BufRead>(reader: R, origin: &Path) -> Result<Vec<Document>> {
    Ok(fsio::read_records(reader, origin)?.into_iter().map(|(_, d)| d).collect())
}

/// Parse a corpus file and split it into sentences.
pub fn ingest_file(path: &Path) -> Result<Corpus> {
    let docs = read_documents(fsio::open(path)?, path)?;
    Ok(Corpus::ingest(docs)?)
}

pub fn write_store(corpus: &Corpus, w: &mut dyn Write) -> std::io::Result<()> {
    fsio::write_jsonl_line(w, &StoreRecord::Header(StoreHeader::default()))?;
    let sents = corpus.sentences();
    let mut next = 0;
    for p in corpus.paragraphs() {
        fsio::write_jsonl_line(w, &StoreRecord::Paragraph(p.clone()))?;
        while next < sents.len() && sents[next].doc_id == p.doc_id && sents[next].para_index == p.para_index {
            let s = &sents[next];
            fsio::write_jsonl_line(
                w,
                &StoreRecord::Sentence(SentenceRecord {
                    sent_id: s.sent_id.clone(),
                    doc_id: s.doc_id.clone(),
                    para_index: s.para_index,
                    para_char_start: s.para_char_start,
                    text: s.text.clone(),
                }),
            )?;
            next += 1;
        }
    }
    // sentences not grouped behind their paragraph (only for hand-built corpora)
    for s in &sents[next..] {
        fsio::write_jsonl_line(
            w,
            &StoreRecord::Sentence(SentenceRecord {
                sent_id: s.sent_id.clone(),
                doc_id: s.doc_id.clone(),
                para_index: s.para_index,
                para_char_start: s.para_char_start,
                text: s.text.clone(),
            }),
        )?;
    }
    Ok(())
}

pub fn save_store(corpus: &Corpus, path: &Path) -> Result<()> {
    fsio::write_atomic(path, |w| write_store(corpus, w))
}

pub fn read_store<R: BufRead>(reader: R, origin: &Path) -> Result<Corpus> {
    let records: Vec<(usize, StoreRecord)> = fsio::read_records(reader, origin)?;
    let mut iter = records.into_iter();
    match iter.next() {
        Some((_, StoreRecord::Header(h))) => {
            if h.format != STORE_FORMAT || h.version != STORE_VERSION || h.offset_unit != OFFSET_UNIT {
                return Err(Error::format(origin, format!("unsupported store header {h:?}")));
            }
        }
        None => return Ok(Corpus::default()),
        Some((line, _)) => {
            return Err(Error::format(origin, format!("line {line}: expected a header record")));
        }
    }
    let mut paragraphs = Vec::new();
    let mut sentences = Vec::new();
    for (line, rec) in iter {
        match rec {
            StoreRecord::Header(_) => {
                return Err(Error::format(origin, format!("line {line}: unexpected second header")));
            }
            StoreRecord::Paragraph(p) => paragraphs.push(p),
            StoreRecord::Sentence(s) => sentences.push(AnnotatedSentence {
                sent_id: s.sent_id,
                doc_id: s.doc_id,
                para_index: s.para_index,
                para_char_start: s.para_char_start,
                text: s.text,
                entities: Vec::new(),
            }),
        }
    }
    Ok(Corpus::from_parts(paragraphs, sentences)?)
}

pub fn load_store(path: &Path) -> Result<Corpus> {
    read_store(fsio::open(path)?, path)
}

//! On-disk form of the BM25 index.
//!
//! ```text
//! {"format":"rtqa-index","version":1,"sentences":2,"terms":3}
//! {"sent_id":"d:0:0","len":2}
//! {"sent_id":"d:0:1","len":1}
//! {"term":"cat","postings":[[0,1],[1,1]]}
//! ...
//! ```
//!
//! Sentence lines come in slot order, term lines in byte order of the term,
//! so the same index always serializes to the same bytes.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::Path;

use rtqa_core::index::Posting;
use rtqa_core::InvertedIndex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fsio;

pub const INDEX_FORMAT: &str = "rtqa-index";
pub const INDEX_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
    sentences: usize,
    terms: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct SentenceLine {
    sent_id: String,
    len: u32,
}

#[derive(Debug, Serialize, Deserialize)]
struct TermLine {
    term: String,
    postings: Vec<(u32, u32)>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Line {
    Header(Header),
    Sentence(SentenceLine),
    Term(TermLine),
}

pub fn write_index(index: &InvertedIndex, w: &mut dyn Write) -> std::io::Result<()> {
    fsio::write_jsonl_line(
        w,
        &Header {
            format: INDEX_FORMAT.into(),
            version: INDEX_VERSION,
            sentences: index.len(),
            terms: index.postings().len(),
        },
    )?;
    for (id, len) in index.sent_ids().iter().zip(index.doc_lengths()) {
        fsio::write_jsonl_line(w, &SentenceLine { sent_id: id.clone(), len: *len })?;
    }
    for (term, plist) in index.postings() {
        let postings = plist.iter().map(|p| (p.doc, p.tf)).collect();
        fsio::write_jsonl_line(w, &TermLine { term: term.clone(), postings })?;
    }
    Ok(())
}

pub fn save_index(index: &InvertedIndex, path: &Path) -> Result<()> {
    fsio::write_atomic(path, |w| write_index(index, w))
}

pub fn read_index<R: BufRead>(reader: R, origin: &Path) -> Result<InvertedIndex> {
    let mut lines = fsio::read_records::<_, Line>(reader, origin)?.into_iter();
    let header = match lines.next() {
        Some((_, Line::Header(h))) => h,
        _ => return Err(Error::format(origin, "missing index header")),
    };
    if header.format != INDEX_FORMAT || header.version != INDEX_VERSION {
        return Err(Error::format(
            origin,
            format!("unsupported index format {} v{}", header.format, header.version),
        ));
    }
    let mut sent_ids = Vec::with_capacity(header.sentences);
    let mut lengths = Vec::with_capacity(header.sentences);
    let mut postings = BTreeMap::new();
    for (line, rec) in lines {
        match rec {
            Line::Sentence(s) if postings.is_empty() => {
                sent_ids.push(s.sent_id);
                lengths.push(s.len);
            }
            Line::Term(t) => {
                let plist = t.postings.into_iter().map(|(doc, tf)| Posting { doc, tf }).collect();
                if postings.insert(t.term.clone(), plist).is_some() {
                    return Err(Error::format(origin, format!("line {line}: term `{}` repeated", t.term)));
                }
            }
            _ => return Err(Error::format(origin, format!("line {line}: record out of place"))),
        }
    }
    if sent_ids.len() != header.sentences || postings.len() != header.terms {
        return Err(Error::format(
            origin,
            format!(
                "header declares {} sentences and {} terms, found {} and {}",
                header.sentences,
                header.terms,
                sent_ids.len(),
                postings.len()
            ),
        ));
    }
    Ok(InvertedIndex::from_parts(sent_ids, lengths, postings)?)
}

pub fn load_index(path: &Path) -> Result<InvertedIndex> {
    read_index(fsio::open(path)?, path)
}

//! Documents, paragraphs and the sentence store.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::entity::{Entity, HeuristicAnnotator};
use crate::error::{Error, Result};
use crate::sentence::split_sentences;
use crate::text::{char_len, char_slice};

/// A raw input document.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Document {
    pub doc_id: String,
    #[cfg_attr(feature = "serde", serde(default))]
    pub title: String,
    pub paragraphs: Vec<String>,
}

/// A paragraph, the unit that serves as a QA context.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Paragraph {
    pub doc_id: String,
    #[cfg_attr(feature = "serde", serde(default))]
    pub title: String,
    pub para_index: usize,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedSentence {
    pub sent_id: String,
    pub doc_id: String,
    pub para_index: usize,
    /// Offset of the first character of `text` within its paragraph.
    pub para_char_start: usize,
    pub text: String,
    pub entities: Vec<Entity>,
}

/// In-memory corpus: paragraphs plus their sentences, addressable by
/// `sent_id` and by `(doc_id, para_index)`. Immutable once annotated.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Corpus {
    paragraphs: Vec<Paragraph>,
    sentences: Vec<AnnotatedSentence>,
    sentence_para: Vec<usize>,
    para_sentences: Vec<Vec<usize>>,
    by_sent_id: BTreeMap<String, usize>,
    by_para: BTreeMap<(String, usize), usize>,
}

pub fn sentence_id(doc_id: &str, para_index: usize, ordinal: usize) -> String {
    format!("{doc_id}:{para_index}:{ordinal}")
}

impl Corpus {
    /// Split every paragraph into sentences. Ids are `doc:para:n`, so the
    /// same input always produces the same ids.
    pub fn ingest<I>(documents: I) -> Result<Corpus>
    where
        I: IntoIterator<Item = Document>,
    {
        let mut seen = BTreeSet::new();
        let mut paragraphs = Vec::new();
        let mut sentences = Vec::new();
        for doc in documents {
            if !seen.insert(doc.doc_id.clone()) {
                return Err(Error::DuplicateDocument(doc.doc_id));
            }
            for (para_index, text) in doc.paragraphs.into_iter().enumerate() {
                if text.is_empty() {
                    return Err(Error::EmptyParagraph { doc_id: doc.doc_id, para_index });
                }
                for (k, (s, start)) in split_sentences(&text).into_iter().enumerate() {
                    sentences.push(AnnotatedSentence {
                        sent_id: sentence_id(&doc.doc_id, para_index, k),
                        doc_id: doc.doc_id.clone(),
                        para_index,
                        para_char_start: start,
                        text: s,
                        entities: Vec::new(),
                    });
                }
                paragraphs.push(Paragraph {
                    doc_id: doc.doc_id.clone(),
                    title: doc.title.clone(),
                    para_index,
                    text,
                });
            }
        }
        Corpus::from_parts(paragraphs, sentences)
    }

    /// Reassemble a corpus from stored paragraphs and sentences, checking
    /// offset exactness, id uniqueness and entity spans.
    pub fn from_parts(paragraphs: Vec<Paragraph>, sentences: Vec<AnnotatedSentence>) -> Result<Corpus> {
        let mut by_para = BTreeMap::new();
        for (slot, p) in paragraphs.iter().enumerate() {
            if by_para.insert((p.doc_id.clone(), p.para_index), slot).is_some() {
                return Err(Error::DuplicateDocument(format!("{}#{}", p.doc_id, p.para_index)));
            }
        }
        let mut by_sent_id = BTreeMap::new();
        let mut sentence_para = Vec::with_capacity(sentences.len());
        let mut para_sentences = alloc::vec![Vec::new(); paragraphs.len()];
        for (slot, s) in sentences.iter().enumerate() {
            if by_sent_id.insert(s.sent_id.clone(), slot).is_some() {
                return Err(Error::DuplicateSentence(s.sent_id.clone()));
            }
            let para = by_para
                .get(&(s.doc_id.clone(), s.para_index))
                .copied()
                .ok_or_else(|| mismatch(s))?;
            let end = s.para_char_start + char_len(&s.text);
            if s.text.is_empty() || char_slice(&paragraphs[para].text, s.para_char_start, end) != Some(s.text.as_str()) {
                return Err(mismatch(s));
            }
            for e in &s.entities {
                check_entity(&s.sent_id, &s.text, e)?;
            }
            sentence_para.push(para);
            para_sentences[para].push(slot);
        }
        Ok(Corpus {
            paragraphs,
            sentences,
            sentence_para,
            para_sentences,
            by_sent_id,
            by_para,
        })
    }

    pub fn paragraphs(&self) -> &[Paragraph] {
        &self.paragraphs
    }

    pub fn sentences(&self) -> &[AnnotatedSentence] {
        &self.sentences
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn slot(&self, sent_id: &str) -> Result<usize> {
        self.by_sent_id
            .get(sent_id)
            .copied()
            .ok_or_else(|| Error::UnknownSentence(sent_id.to_string()))
    }

    pub fn sentence(&self, sent_id: &str) -> Result<&AnnotatedSentence> {
        Ok(&self.sentences[self.slot(sent_id)?])
    }

    pub fn paragraph(&self, doc_id: &str, para_index: usize) -> Option<&Paragraph> {
        self.by_para
            .get(&(doc_id.to_string(), para_index))
            .map(|&p| &self.paragraphs[p])
    }

    /// Paragraph containing the sentence at `slot`.
    pub fn paragraph_of(&self, slot: usize) -> &Paragraph {
        &self.paragraphs[self.sentence_para[slot]]
    }

    /// Sentence slots of the paragraph containing `slot`, in order.
    pub fn siblings(&self, slot: usize) -> &[usize] {
        &self.para_sentences[self.sentence_para[slot]]
    }

    /// `(paragraph text, doc_id, para_index)` for a sentence.
    pub fn get_context(&self, sent_id: &str) -> Result<(&str, &str, usize)> {
        let slot = self.slot(sent_id)?;
        let p = self.paragraph_of(slot);
        Ok((&p.text, &p.doc_id, p.para_index))
    }

    pub fn entities_of(&self, sent_id: &str) -> Result<&[Entity]> {
        Ok(&self.sentence(sent_id)?.entities)
    }

    /// Replace all entity lists with `records`; sentences without a record
    /// end up with no entities. Nothing changes if any record is rejected.
    pub fn load_annotations<I>(&mut self, records: I) -> Result<()>
    where
        I: IntoIterator<Item = (String, Vec<Entity>)>,
    {
        let mut staged: BTreeMap<usize, Vec<Entity>> = BTreeMap::new();
        for (sent_id, mut ents) in records {
            let slot = self.slot(&sent_id)?;
            let text = &self.sentences[slot].text;
            for e in &ents {
                check_entity(&sent_id, text, e)?;
            }
            sort_entities(&mut ents);
            if staged.insert(slot, ents).is_some() {
                return Err(Error::DuplicateAnnotation(sent_id));
            }
        }
        for (slot, s) in self.sentences.iter_mut().enumerate() {
            s.entities = staged.remove(&slot).unwrap_or_default();
        }
        Ok(())
    }

    pub fn annotate_with(&mut self, annotator: &HeuristicAnnotator) {
        for s in &mut self.sentences {
            s.entities = annotator.annotate(&s.text);
        }
    }
}

pub(crate) fn sort_entities(ents: &mut [Entity]) {
    ents.sort_by(|a, b| {
        (a.char_start, a.char_end, &a.label, &a.surface).cmp(&(b.char_start, b.char_end, &b.label, &b.surface))
    });
}

fn mismatch(s: &AnnotatedSentence) -> Error {
    Error::ParagraphMismatch {
        sent_id: s.sent_id.clone(),
        doc_id: s.doc_id.clone(),
        para_index: s.para_index,
    }
}

fn check_entity(sent_id: &str, text: &str, e: &Entity) -> Result<()> {
    if e.is_valid_in(text) {
        return Ok(());
    }
    Err(Error::SpanMismatch {
        sent_id: sent_id.to_string(),
        start: e.char_start,
        end: e.char_end,
        surface: e.surface.clone(),
        found: char_slice(text, e.char_start, e.char_end.max(e.char_start))
            .unwrap_or("<out of range>")
            .to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn doc(id: &str, paras: &[&str]) -> Document {
        Document {
            doc_id: id.into(),
            title: id.to_uppercase(),
            paragraphs: paras.iter().map(|p| p.to_string()).collect(),
        }
    }

    #[test]
    fn ingest_addresses_paragraphs() {
        let c = Corpus::ingest(vec![doc("d1", &["A cat sat. It purred.", "Second one."])]).unwrap();
        assert_eq!(c.paragraphs().len(), 2);
        assert_eq!(c.len(), 3);
        assert_eq!(c.sentences()[1].sent_id, "d1:0:1");
        assert_eq!(c.sentences()[1].para_char_start, 11);
        assert_eq!(c.paragraph("d1", 1).unwrap().text, "Second one.");
    }

    #[test]
    fn ingest_empty_and_duplicates() {
        assert!(Corpus::ingest(Vec::new()).unwrap().is_empty());
        let err = Corpus::ingest(vec![doc("d1", &["x"]), doc("d1", &["y"])]).unwrap_err();
        assert_eq!(err, Error::DuplicateDocument("d1".into()));
        assert!(err.to_string().contains("d1"));
        assert!(matches!(
            Corpus::ingest(vec![doc("d2", &["ok", ""])]),
            Err(Error::EmptyParagraph { para_index: 1, .. })
        ));
    }

    #[test]
    fn context_lookup() {
        let c = Corpus::ingest(vec![doc("d1", &["A cat sat. It purred.", "Other."])]).unwrap();
        let a = c.get_context("d1:0:0").unwrap();
        let b = c.get_context("d1:0:1").unwrap();
        assert_eq!(a, ("A cat sat. It purred.", "d1", 0));
        assert_eq!(a, b);
        assert_eq!(c.get_context("nope"), Err(Error::UnknownSentence("nope".into())));
    }

    #[test]
    fn annotations_load_and_validate() {
        let mut c = Corpus::ingest(vec![doc("d", &["Alan Turing was born in London in 1912."])]).unwrap();
        c.load_annotations(vec![("d:0:0".into(), vec![Entity::new("London", 24, 30, "GPE")])])
            .unwrap();
        assert_eq!(c.entities_of("d:0:0").unwrap().len(), 1);

        let bad = c.load_annotations(vec![("d:0:0".into(), vec![Entity::new("Paris", 24, 30, "GPE")])]);
        assert!(matches!(bad, Err(Error::SpanMismatch { ref sent_id, start: 24, .. }) if sent_id == "d:0:0"));
        // a rejected load leaves the previous annotations in place
        assert_eq!(c.entities_of("d:0:0").unwrap().len(), 1);

        assert!(matches!(
            c.load_annotations(vec![("zz".into(), vec![])]),
            Err(Error::UnknownSentence(_))
        ));

        c.load_annotations(Vec::new()).unwrap();
        assert!(c.entities_of("d:0:0").unwrap().is_empty());
        assert!(c.entities_of("missing").is_err());
    }

    #[test]
    fn from_parts_rejects_offset_drift() {
        let p = Paragraph { doc_id: "d".into(), title: String::new(), para_index: 0, text: "Ab. Cd.".into() };
        let s = AnnotatedSentence {
            sent_id: "s".into(),
            doc_id: "d".into(),
            para_index: 0,
            para_char_start: 3,
            text: "Cd.".into(),
            entities: vec![],
        };
        assert!(Corpus::from_parts(vec![p.clone()], vec![s.clone()]).is_err());
        let s = AnnotatedSentence { para_char_start: 4, ..s };
        assert!(Corpus::from_parts(vec![p], vec![s]).is_ok());
    }
}

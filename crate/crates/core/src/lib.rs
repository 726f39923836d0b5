//! Synthesis of extractive question-answering training data without human
//! labels.
//!
//! A context sentence containing an answer entity is used as a BM25 query
//! against every sentence of a corpus. The best-ranked sentence that shares
//! the answer, comes from another paragraph, is not a near duplicate and
//! (optionally) shares an auxiliary entity is rewritten into a question by a
//! template. The resulting `(context, question, answer)` triples are
//! emitted in SQuAD v1.1 shape and scored with the SQuAD EM/F1 metric.
//!
//! The crate is `no_std` (with `alloc`). File formats, the command line
//! tool and parallel generation live in the `rtqa` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod corpus;
pub mod dataset;
pub mod entity;
pub mod error;
pub mod eval;
pub mod index;
pub mod question;
pub mod retrieve;
pub mod sentence;
pub mod squad;
pub mod text;

pub use corpus::{AnnotatedSentence, Corpus, Document, Paragraph};
pub use dataset::{GenerationConfig, QAExample};
pub use entity::{Entity, Gazetteer, HeuristicAnnotator};
pub use error::{Error, Result};
pub use index::InvertedIndex;
pub use question::{TemplateParts, TemplateVariant, WhPriorTable};
pub use retrieve::{MatchingMode, RetrievalCandidate, RetrievalParams};
pub use squad::SquadDataset;

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.ln()
    }
    #[cfg(not(feature = "std"))]
    {
        libm::log(x)
    }
}

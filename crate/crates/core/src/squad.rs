//! In-memory model of the SQuAD v1.1 JSON layout.

use alloc::string::String;
use alloc::vec::Vec;

use crate::dataset::QAExample;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SquadDataset {
    pub version: String,
    pub data: Vec<Article>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Article {
    #[cfg_attr(feature = "serde", serde(default))]
    pub title: String,
    pub paragraphs: Vec<SquadParagraph>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SquadParagraph {
    pub context: String,
    pub qas: Vec<Qa>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Qa {
    pub id: String,
    pub question: String,
    pub answers: Vec<Answer>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Answer {
    pub text: String,
    pub answer_start: usize,
}

impl SquadDataset {
    /// One article titled `title`; examples that share a context share a
    /// paragraph, paragraphs ordered by first appearance. Every example is
    /// checked before anything is built.
    pub fn from_examples(examples: &[QAExample], title: &str) -> Result<SquadDataset> {
        for ex in examples {
            ex.check()?;
        }
        let mut paragraphs: Vec<SquadParagraph> = Vec::new();
        let mut slot_of: alloc::collections::BTreeMap<&str, usize> = Default::default();
        for ex in examples {
            let slot = *slot_of.entry(ex.context.as_str()).or_insert_with(|| {
                paragraphs.push(SquadParagraph { context: ex.context.clone(), qas: Vec::new() });
                paragraphs.len() - 1
            });
            paragraphs[slot].qas.push(Qa {
                id: ex.qid.clone(),
                question: ex.question.clone(),
                answers: alloc::vec![Answer { text: ex.answer_text.clone(), answer_start: ex.answer_start }],
            });
        }
        Ok(SquadDataset {
            version: "1.1".into(),
            data: alloc::vec![Article { title: title.into(), paragraphs }],
        })
    }

    /// Flatten back to examples, taking the first answer of each question.
    pub fn to_examples(&self) -> Vec<QAExample> {
        self.questions()
            .filter_map(|(para, qa)| {
                let a = qa.answers.first()?;
                Some(QAExample {
                    qid: qa.id.clone(),
                    context: para.context.clone(),
                    question: qa.question.clone(),
                    answer_text: a.text.clone(),
                    answer_start: a.answer_start,
                })
            })
            .collect()
    }

    pub fn questions(&self) -> impl Iterator<Item = (&SquadParagraph, &Qa)> {
        self.data
            .iter()
            .flat_map(|a| a.paragraphs.iter())
            .flat_map(|p| p.qas.iter().map(move |q| (p, q)))
    }

    pub fn question_count(&self) -> usize {
        self.questions().count()
    }
}

use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("duplicate document id `{0}`")]
    DuplicateDocument(String),

    #[error("document `{doc_id}` paragraph {para_index} is empty")]
    EmptyParagraph { doc_id: String, para_index: usize },

    #[error("unknown sentence id `{0}`")]
    UnknownSentence(String),

    #[error("sentence `{sent_id}`: entity span {start}..{end} does not match surface {surface:?} (text slice is {found:?})")]
    SpanMismatch {
        sent_id: String,
        start: usize,
        end: usize,
        surface: String,
        found: String,
    },

    #[error("sentence `{sent_id}` is not an annotated sentence of paragraph ({doc_id}, {para_index})")]
    ParagraphMismatch {
        sent_id: String,
        doc_id: String,
        para_index: usize,
    },

    #[error("answer {surface:?} ({label}) at {start}..{end} is not an entity of query sentence `{sent_id}`")]
    AnswerNotInQuery {
        sent_id: String,
        surface: String,
        label: String,
        start: usize,
        end: usize,
    },

    #[error("duplicate annotation record for sentence `{0}`")]
    DuplicateAnnotation(String),

    #[error("duplicate sentence id `{0}`")]
    DuplicateSentence(String),

    #[error("entity span {start}..{end} ({surface:?}) does not fit the sentence")]
    InvalidSpan { start: usize, end: usize, surface: String },

    #[error("index does not match corpus: {0}")]
    IndexMismatch(String),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("invalid wh prior table: {0}")]
    InvalidPriors(String),

    #[error("no wh prior for label `{0}` and no `*` fallback")]
    MissingPrior(String),

    #[error("unknown template variant `{0}` (expected one of: {allowed})", allowed = crate::question::TemplateVariant::allowed_names())]
    UnknownVariant(String),

    #[error("unknown matching mode `{0}` (expected one of: none, query, context, both)")]
    UnknownMode(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("validation size {requested} exceeds the {available} available examples")]
    ValidationTooLarge { requested: usize, available: usize },

    #[error("example `{qid}` violates the extractive invariant: {reason}")]
    NotExtractive { qid: String, reason: String },

    #[error("missing annotations for {} context(s): {}", .0.len(), .0.join(", "))]
    MissingContextAnnotations(Vec<String>),
}

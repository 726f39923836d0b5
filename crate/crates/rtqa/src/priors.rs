//! Wh-bigram prior tables.
//!
//! Each label maps to `[bigram, probability]` pairs summing to one, e.g.
//! `{"PERSON": [["who was", 0.6], ["who is", 0.4]], "*": [...]}`. The `*`
//! entry, when present, serves labels that have no row of their own.

use std::path::Path;

use rtqa_core::WhPriorTable;

use crate::error::Result;
use crate::fsio;

/// A small built-in table. It is hand-written, not estimated from a real
/// question corpus; use `rtqa wh-priors` to fit one from SQuAD.
pub const DEFAULT_PRIORS_JSON: &str = include_str!("../data/wh_priors.json");

pub fn default_priors() -> WhPriorTable {
    serde_json::from_str(DEFAULT_PRIORS_JSON).expect("built-in prior table is valid")
}

pub fn load_priors(path: &Path) -> Result<WhPriorTable> {
    fsio::read_json(path)
}

pub fn save_priors(table: &WhPriorTable, path: &Path) -> Result<()> {
    fsio::write_atomic(path, |w| {
        serde_json::to_writer_pretty(&mut *w, table)?;
        w.write_all(b"\n")
    })
}

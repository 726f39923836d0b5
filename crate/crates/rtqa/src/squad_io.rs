//! SQuAD v1.1 JSON files, prediction maps and evaluation reports.

use std::collections::BTreeMap;
use std::path::Path;

use rtqa_core::eval::EvalReport;
use rtqa_core::SquadDataset;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fsio;

pub fn load_squad(path: &Path) -> Result<SquadDataset> {
    fsio::read_json(path)
}

pub fn save_squad(data: &SquadDataset, path: &Path) -> Result<()> {
    fsio::write_json(path, data)
}

/// `{"qid": "predicted answer", ...}`
pub fn load_predictions(path: &Path) -> Result<BTreeMap<String, String>> {
    fsio::read_json(path)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub exact_match: f64,
    pub f1: f64,
    pub n: usize,
}

impl From<&EvalReport> for ReportFile {
    fn from(r: &EvalReport) -> Self {
        ReportFile { exact_match: r.exact_match, f1: r.f1, n: r.n }
    }
}

pub fn save_report(report: &EvalReport, path: &Path) -> Result<()> {
    fsio::write_json(path, &ReportFile::from(report))
}

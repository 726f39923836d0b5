//! TOML run configuration. Every key is optional and mirrors a generation
//! setting; command-line flags take precedence over anything set here.
//!
//! ```toml
//! variant = "WH_B_A"
//! mode = "both"
//! use_retrieved = true
//! target_size = 51000
//! validation_size = 1000
//! seed = 42
//! f1_cap = 0.95
//! top_k = 100
//! exclude_document = false
//! wh_priors = "priors.json"   # relative to this file
//! jobs = 8
//! ```

use std::path::{Path, PathBuf};

use rtqa_core::GenerationConfig;
use serde::Deserialize;

use crate::error::{Error, Result};

/// Environment variable naming the config file used when `--config` is absent.
pub const CONFIG_ENV: &str = "RTQA_CONFIG";

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub variant: Option<String>,
    pub mode: Option<String>,
    pub use_retrieved: Option<bool>,
    pub target_size: Option<usize>,
    pub validation_size: Option<usize>,
    pub seed: Option<u64>,
    pub f1_cap: Option<f64>,
    pub top_k: Option<usize>,
    pub exclude_document: Option<bool>,
    pub wh_priors: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl FileConfig {
    pub fn parse(text: &str, origin: &Path) -> Result<FileConfig> {
        let mut cfg: FileConfig =
            toml::from_str(text).map_err(|source| Error::Config { path: origin.to_path_buf(), source })?;
        if let (Some(p), Some(dir)) = (&cfg.wh_priors, origin.parent()) {
            if p.is_relative() {
                cfg.wh_priors = Some(dir.join(p));
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<FileConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    /// Overlay the keys present here onto `base`.
    pub fn apply(&self, mut base: GenerationConfig) -> Result<GenerationConfig> {
        if let Some(v) = &self.variant {
            base.variant = v.parse()?;
        }
        if let Some(m) = &self.mode {
            base.mode = m.parse()?;
        }
        macro_rules! copy {
            ($($field:ident),*) => { $( if let Some(v) = self.$field { base.$field = v; } )* };
        }
        copy!(use_retrieved, target_size, validation_size, seed, f1_cap, top_k, exclude_document);
        Ok(base)
    }
}

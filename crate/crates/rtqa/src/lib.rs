//! File formats, pipeline orchestration and the `rtqa` command line for the
//! retrieval-based QA data generator in [`rtqa_core`].

pub mod annotations;
pub mod config;
pub mod error;
pub mod fsio;
pub mod index_file;
pub mod pipeline;
pub mod priors;
pub mod squad_io;
pub mod store;

pub use error::{Error, Result};

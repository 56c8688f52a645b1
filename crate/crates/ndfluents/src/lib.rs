//! File formats, CSV ingestion and configuration around `ndfluents-core`.

pub mod config;
pub mod ingest;
pub mod queryfile;
pub mod rdf;

pub use ndfluents_core as core;

pub use config::{Config, ConfigError, Settings};
pub use ingest::CsvError;
pub use queryfile::{parse_query, QueryFileError};
pub use rdf::{Format, ParseError};

//! Lexical engagement analytics.
//!
//! Load WordNet, SentiWordNet and a word-frequency table, extract per-word
//! features, score them with linear or logistic engagement models, train new
//! models, run the hypothesis tests behind experiment labeling, and rewrite
//! text by swapping in higher-scoring synonyms.

pub mod error;
pub mod exec;
pub mod features;
pub mod lexicon;
pub mod model;
pub mod report;
pub mod rewrite;
pub mod stats;

pub use error::{Error, Result};
pub use exec::Execution;
pub use features::{extract_features, Feature, ReadFeatures, ResourceBundle};

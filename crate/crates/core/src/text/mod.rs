//! Textual features: sentiment, sarcasm/thwarting, and reading difficulty.

pub mod lexicon;
pub mod readability;
pub mod sarcasm;
pub mod sentiment;

pub use lexicon::Lexicons;
pub use readability::{flesch_reading_ease, readability_features, sentence_count, syllable_count};
pub use sarcasm::{implicit_presence, longest_run, sarcasm_features, LexicalPolarityModel, SarcasmFeatures};
pub use sentiment::{flip_count, sentiment_features, SentimentFeatures, Vocabulary};

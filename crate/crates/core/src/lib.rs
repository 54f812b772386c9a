//! Eye-movement and textual features for sentiment classification, with
//! from-scratch learners and a cross-validation harness.

pub mod corpus;
mod error;
pub mod eval;
pub mod features;
pub mod gaze;
pub mod learners;
pub mod pca;
pub mod synth;
pub mod text;

pub use error::{Error, Result};

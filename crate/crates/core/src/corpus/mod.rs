//! Domain types for annotated snippets and their eye-movement records, plus
//! JSON-lines ingestion and a fallback tokenizer/tagger.

mod io;
mod tagging;
mod tokenize;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use io::{parse_corpus, parse_gaze, write_corpus, write_gaze};
pub use tagging::{effective_tags, fallback_pos_tag, named_entity_mentions};
pub use tokenize::{is_punctuation, is_punctuation_token, tokenize};

/// Binary sentiment polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Polarity {
    #[serde(rename = "pos")]
    Positive,
    #[serde(rename = "neg")]
    Negative,
}

impl Polarity {
    pub fn is_positive(self) -> bool {
        matches!(self, Polarity::Positive)
    }

    pub fn from_positive(positive: bool) -> Self {
        if positive {
            Polarity::Positive
        } else {
            Polarity::Negative
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Polarity::Positive => "pos",
            Polarity::Negative => "neg",
        }
    }

    /// +1 / -1 encoding.
    pub fn sign(self) -> i8 {
        match self {
            Polarity::Positive => 1,
            Polarity::Negative => -1,
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Polarity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "pos" | "positive" | "1" | "+1" => Ok(Polarity::Positive),
            "neg" | "negative" | "-1" | "−1" => Ok(Polarity::Negative),
            other => Err(format!("unknown polarity `{other}`")),
        }
    }
}

/// Coarse part-of-speech tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PosTag {
    Noun,
    Verb,
    Adj,
    Adv,
    Other,
}

impl PosTag {
    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::Noun => "NOUN",
            PosTag::Verb => "VERB",
            PosTag::Adj => "ADJ",
            PosTag::Adv => "ADV",
            PosTag::Other => "OTHER",
        }
    }
}

impl FromStr for PosTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "NOUN" | "NN" | "NNS" | "NNP" | "NNPS" | "PROPN" => Ok(PosTag::Noun),
            "VERB" | "VB" | "VBD" | "VBG" | "VBN" | "VBP" | "VBZ" => Ok(PosTag::Verb),
            "ADJ" | "JJ" | "JJR" | "JJS" => Ok(PosTag::Adj),
            "ADV" | "RB" | "RBR" | "RBS" => Ok(PosTag::Adv),
            "OTHER" | "X" => Ok(PosTag::Other),
            other => Err(format!("unknown POS tag `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub surface: String,
    /// Start position in the snippet text, in Unicode scalar values.
    pub char_offset: usize,
    pub pos_tag: Option<PosTag>,
    pub is_named_entity: Option<bool>,
}

impl Token {
    pub fn new(surface: impl Into<String>, char_offset: usize) -> Self {
        Token {
            surface: surface.into(),
            char_offset,
            pos_tag: None,
            is_named_entity: None,
        }
    }

    pub fn is_punctuation(&self) -> bool {
        is_punctuation_token(&self.surface)
    }

    /// Lowercased surface used for all lexicon and vocabulary lookups.
    pub fn normalized(&self) -> String {
        self.surface.to_lowercase()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snippet {
    pub snippet_id: String,
    pub text: String,
    pub tokens: Vec<Token>,
    pub label: Polarity,
    pub source: String,
    /// Irony/sarcasm flag used to stratify held-out analysis.
    pub is_complex: Option<bool>,
}

impl Snippet {
    /// Builds a snippet from raw text using the fallback tokenizer.
    pub fn from_text(
        snippet_id: impl Into<String>,
        text: impl Into<String>,
        label: Polarity,
    ) -> Self {
        let text = text.into();
        let tokens = tokenize(&text);
        Snippet {
            snippet_id: snippet_id.into(),
            text,
            tokens,
            label,
            source: String::new(),
            is_complex: None,
        }
    }

    pub fn token_count(&self) -> usize {
        self.tokens.len()
    }

    /// Tokens that are not pure punctuation.
    pub fn words(&self) -> impl Iterator<Item = &Token> {
        self.tokens.iter().filter(|t| !t.is_punctuation())
    }

    pub fn char_offsets(&self) -> Vec<usize> {
        self.tokens.iter().map(|t| t.char_offset).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Fixation {
    pub token_index: usize,
    pub duration_ms: f64,
    pub order: usize,
}

impl Fixation {
    pub fn new(token_index: usize, duration_ms: f64, order: usize) -> Self {
        Fixation {
            token_index,
            duration_ms,
            order,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scanpath {
    pub snippet_id: String,
    pub participant_id: String,
    pub fixations: Vec<Fixation>,
}

impl Scanpath {
    /// Builds a scanpath from `(token_index, duration_ms)` pairs in reading order.
    pub fn from_pairs(
        snippet_id: impl Into<String>,
        participant_id: impl Into<String>,
        pairs: &[(usize, f64)],
    ) -> Self {
        Scanpath {
            snippet_id: snippet_id.into(),
            participant_id: participant_id.into(),
            fixations: pairs
                .iter()
                .enumerate()
                .map(|(order, &(t, d))| Fixation::new(t, d, order))
                .collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.fixations.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Saccade {
    pub from_index: usize,
    pub to_index: usize,
    pub distance_words: usize,
    pub is_regression: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassCounts {
    pub positive: usize,
    pub negative: usize,
}

impl ClassCounts {
    pub fn total(&self) -> usize {
        self.positive + self.negative
    }
}

/// Snippets plus their per-participant scanpaths.
///
/// Scanpaths for a snippet are kept sorted by participant id, so iteration
/// order is independent of input line order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Dataset {
    snippets: Vec<Snippet>,
    index: HashMap<String, usize>,
    gaze: BTreeMap<String, Vec<Scanpath>>,
}

impl Dataset {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a dataset from snippets, rejecting duplicate ids.
    pub fn from_snippets(snippets: Vec<Snippet>) -> crate::Result<Self> {
        let mut ds = Dataset::new();
        for (i, s) in snippets.into_iter().enumerate() {
            ds.push_snippet(s, i + 1)?;
        }
        Ok(ds)
    }

    pub(crate) fn push_snippet(&mut self, snippet: Snippet, line: usize) -> crate::Result<()> {
        if self.index.contains_key(&snippet.snippet_id) {
            return Err(crate::Error::DuplicateSnippet {
                line,
                id: snippet.snippet_id,
            });
        }
        self.index
            .insert(snippet.snippet_id.clone(), self.snippets.len());
        self.snippets.push(snippet);
        Ok(())
    }

    pub fn snippets(&self) -> &[Snippet] {
        &self.snippets
    }

    pub fn len(&self) -> usize {
        self.snippets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snippets.is_empty()
    }

    pub fn get(&self, snippet_id: &str) -> Option<&Snippet> {
        self.index.get(snippet_id).map(|&i| &self.snippets[i])
    }

    pub fn position(&self, snippet_id: &str) -> Option<usize> {
        self.index.get(snippet_id).copied()
    }

    pub fn class_counts(&self) -> ClassCounts {
        let mut counts = ClassCounts::default();
        for s in &self.snippets {
            match s.label {
                Polarity::Positive => counts.positive += 1,
                Polarity::Negative => counts.negative += 1,
            }
        }
        counts
    }

    pub fn labels(&self) -> Vec<Polarity> {
        self.snippets.iter().map(|s| s.label).collect()
    }

    /// Scanpaths recorded for a snippet, sorted by participant id.
    pub fn scanpaths(&self, snippet_id: &str) -> &[Scanpath] {
        self.gaze.get(snippet_id).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn gaze(&self) -> &BTreeMap<String, Vec<Scanpath>> {
        &self.gaze
    }

    pub fn has_gaze(&self) -> bool {
        !self.gaze.is_empty()
    }

    /// Attaches a validated scanpath, replacing any previous one of the same participant.
    pub fn insert_scanpath(&mut self, scanpath: Scanpath) -> crate::Result<()> {
        let snippet = self
            .get(&scanpath.snippet_id)
            .ok_or_else(|| crate::Error::UnknownSnippet {
                line: 0,
                id: scanpath.snippet_id.clone(),
            })?;
        let n = snippet.token_count();
        for f in &scanpath.fixations {
            if f.token_index >= n {
                return Err(crate::Error::TokenIndexOutOfRange {
                    line: 0,
                    id: scanpath.snippet_id.clone(),
                    index: f.token_index,
                    token_count: n,
                });
            }
            if !(f.duration_ms > 0.0 && f.duration_ms.is_finite()) {
                return Err(crate::Error::NonPositiveDuration {
                    line: 0,
                    duration: f.duration_ms,
                });
            }
        }
        let paths = self.gaze.entry(scanpath.snippet_id.clone()).or_default();
        match paths.binary_search_by(|p| p.participant_id.cmp(&scanpath.participant_id)) {
            Ok(i) => paths[i] = scanpath,
            Err(i) => paths.insert(i, scanpath),
        }
        Ok(())
    }

    /// New dataset holding the snippets at `indices` (in that order) and their gaze.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        let mut out = Dataset::new();
        for &i in indices {
            let s = &self.snippets[i];
            out.index.insert(s.snippet_id.clone(), out.snippets.len());
            out.snippets.push(s.clone());
            if let Some(paths) = self.gaze.get(&s.snippet_id) {
                out.gaze.insert(s.snippet_id.clone(), paths.clone());
            }
        }
        out
    }
}

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::corpus::{effective_tags, named_entity_mentions, PosTag, Snippet};
use crate::text::Lexicons;

/// Unigram vocabulary built from training snippets.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<String>", into = "Vec<String>")]
pub struct Vocabulary {
    words: Vec<String>,
    index: HashMap<String, usize>,
}

impl From<Vec<String>> for Vocabulary {
    fn from(words: Vec<String>) -> Self {
        Vocabulary::from_words(words)
    }
}

impl From<Vocabulary> for Vec<String> {
    fn from(v: Vocabulary) -> Self {
        v.words
    }
}

impl Vocabulary {
    pub const DEFAULT_MIN_FREQUENCY: usize = 2;

    /// Lowercased non-punctuation tokens occurring at least `min_frequency`
    /// times in total across `snippets`, sorted alphabetically.
    pub fn build<'a>(snippets: impl IntoIterator<Item = &'a Snippet>, min_frequency: usize) -> Self {
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        for s in snippets {
            for t in s.words() {
                *counts.entry(t.normalized()).or_default() += 1;
            }
        }
        Self::from_words(
            counts
                .into_iter()
                .filter(|&(_, c)| c >= min_frequency)
                .map(|(w, _)| w)
                .collect(),
        )
    }

    pub fn from_words(words: Vec<String>) -> Self {
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Vocabulary { words, index }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    /// Sorted, de-duplicated vocabulary indices of the words present in the snippet.
    pub fn presence(&self, snippet: &Snippet) -> Vec<usize> {
        let mut idx: Vec<usize> = snippet
            .words()
            .filter_map(|t| self.index.get(&t.normalized()).copied())
            .collect();
        idx.sort_unstable();
        idx.dedup();
        idx
    }

    /// Dense 0/1 presence vector.
    pub fn presence_dense(&self, snippet: &Snippet) -> Vec<f64> {
        let mut v = vec![0.0; self.len()];
        for i in self.presence(snippet) {
            v[i] = 1.0;
        }
        v
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SentimentFeatures {
    /// Vocabulary indices present in the snippet (sparse 0/1 vector).
    pub ngram_presence: Vec<usize>,
    pub positive_words: usize,
    pub negative_words: usize,
    pub pos_score: f64,
    pub neg_score: f64,
    pub flip: usize,
    pub verb: f64,
    pub noun: f64,
    pub adj: f64,
    pub adv: f64,
    pub ne: usize,
    pub dc: usize,
}

impl SentimentFeatures {
    /// Dense lexical features, excluding the n-gram block.
    pub const NAMES: [&'static str; 11] = [
        "Positive_words",
        "Negative_words",
        "PosScore",
        "NegScore",
        "FLIP",
        "VERB",
        "NOUN",
        "ADJ",
        "ADV",
        "NE",
        "DC",
    ];

    pub fn values(&self) -> [f64; 11] {
        [
            self.positive_words as f64,
            self.negative_words as f64,
            self.pos_score,
            self.neg_score,
            self.flip as f64,
            self.verb,
            self.noun,
            self.adj,
            self.adv,
            self.ne as f64,
            self.dc as f64,
        ]
    }
}

/// Number of sign changes between consecutive polar words.
pub fn flip_count(signs: &[i8]) -> usize {
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

pub fn sentiment_features(
    snippet: &Snippet,
    lexicons: &Lexicons,
    vocabulary: &Vocabulary,
) -> SentimentFeatures {
    let words: Vec<String> = snippet.tokens.iter().map(|t| t.normalized()).collect();
    let signs = lexicons.polar_signs(&snippet.tokens);

    let (mut pos_score, mut neg_score) = (0.0, 0.0);
    for w in &words {
        if let Some(&(p, n)) = lexicons.subjectivity_scores.get(w) {
            pos_score += p;
            neg_score += n;
        }
    }

    let tags = effective_tags(snippet);
    let total = tags.len().max(1) as f64;
    let ratio = |tag: PosTag| tags.iter().filter(|(t, _)| *t == tag).count() as f64 / total;

    SentimentFeatures {
        ngram_presence: vocabulary.presence(snippet),
        positive_words: signs.iter().filter(|&&s| s > 0).count(),
        negative_words: signs.iter().filter(|&&s| s < 0).count(),
        pos_score,
        neg_score,
        flip: flip_count(&signs),
        verb: ratio(PosTag::Verb),
        noun: ratio(PosTag::Noun),
        adj: ratio(PosTag::Adj),
        adv: ratio(PosTag::Adv),
        ne: named_entity_mentions(snippet),
        dc: lexicons
            .discourse_connectors
            .iter()
            .map(|p| p.count_in(&words))
            .sum(),
    }
}

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::corpus::{is_punctuation, Snippet};
use crate::learners::LogisticRegression;
use crate::text::{Lexicons, Vocabulary};
use crate::{Error, Result};

/// Unigram-presence logistic regression giving the lexical polarity (LP) of a
/// snippet as a positive-class probability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LexicalPolarityModel {
    pub vocabulary: Vocabulary,
    pub model: LogisticRegression,
}

impl LexicalPolarityModel {
    pub const LAMBDA: f64 = 1e-4;
    pub const TOLERANCE: f64 = 1e-6;
    pub const MAX_ITER: usize = 2_000;

    pub fn train(snippets: &[&Snippet]) -> Result<Self> {
        if snippets.len() < 2 {
            return Err(Error::TooFewRows {
                needed: 2,
                actual: snippets.len(),
            });
        }
        let y: Vec<bool> = snippets.iter().map(|s| s.label.is_positive()).collect();
        if y.iter().all(|&b| b) || y.iter().all(|&b| !b) {
            return Err(Error::SingleClass);
        }
        let vocabulary = Vocabulary::build(snippets.iter().copied(), Vocabulary::DEFAULT_MIN_FREQUENCY);
        let mut x = Array2::zeros((snippets.len(), vocabulary.len()));
        for (i, s) in snippets.iter().enumerate() {
            for j in vocabulary.presence(s) {
                x[[i, j]] = 1.0;
            }
        }
        let model = LogisticRegression::fit(x.view(), &y, Self::LAMBDA, Self::TOLERANCE, Self::MAX_ITER);
        Ok(LexicalPolarityModel { vocabulary, model })
    }

    pub fn probability(&self, snippet: &Snippet) -> f64 {
        self.model.score(&self.vocabulary.presence_dense(snippet))
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SarcasmFeatures {
    /// Indices of incongruity phrases present (sparse 0/1 vector).
    pub implicit_presence: Vec<usize>,
    pub punc: usize,
    pub lar: usize,
    pub lp: f64,
}

impl SarcasmFeatures {
    pub const NAMES: [&'static str; 3] = ["PUNC", "LAR", "LP"];

    pub fn values(&self) -> [f64; 3] {
        [self.punc as f64, self.lar as f64, self.lp]
    }
}

/// Length of the longest run of equal consecutive signs.
pub fn longest_run(signs: &[i8]) -> usize {
    let mut best = 0;
    let mut run = 0;
    for (i, s) in signs.iter().enumerate() {
        run = if i > 0 && signs[i - 1] == *s { run + 1 } else { 1 };
        best = best.max(run);
    }
    best
}

pub fn implicit_presence(snippet: &Snippet, lexicons: &Lexicons) -> Vec<usize> {
    let words: Vec<String> = snippet.tokens.iter().map(|t| t.normalized()).collect();
    lexicons
        .incongruity_phrases
        .iter()
        .enumerate()
        .filter(|(_, p)| p.count_in(&words) > 0)
        .map(|(i, _)| i)
        .collect()
}

pub fn sarcasm_features(
    snippet: &Snippet,
    lexicons: &Lexicons,
    lp_model: Option<&LexicalPolarityModel>,
) -> Result<SarcasmFeatures> {
    let lp = lp_model.ok_or(Error::MissingLpModel)?.probability(snippet);
    Ok(SarcasmFeatures {
        implicit_presence: implicit_presence(snippet, lexicons),
        punc: snippet.text.chars().filter(|&c| is_punctuation(c)).count(),
        lar: longest_run(&lexicons.polar_signs(&snippet.tokens)),
        lp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Polarity;
    use crate::text::lexicon::{Phrase, PolarityEntry};

    fn lexicons() -> Lexicons {
        let mut lex = Lexicons::default();
        for (w, s) in [("good", 1), ("bad", -1)] {
            lex.polarity.insert(w.into(), PolarityEntry { sign: s, strong: false });
        }
        lex.incongruity_phrases = vec![Phrase::parse("love waiting"), Phrase::parse("great , another")];
        lex
    }

    fn snippet(text: &str, label: Polarity) -> Snippet {
        Snippet::from_text("s", text, label)
    }

    fn lp() -> LexicalPolarityModel {
        let docs = [
            snippet("good fun good", Polarity::Positive),
            snippet("fun and good", Polarity::Positive),
            snippet("bad dull bad", Polarity::Negative),
            snippet("dull and bad", Polarity::Negative),
        ];
        let refs: Vec<&Snippet> = docs.iter().collect();
        LexicalPolarityModel::train(&refs).unwrap()
    }

    #[test]
    fn longest_same_sign_run() {
        let f = sarcasm_features(&snippet("good good bad good", Polarity::Positive), &lexicons(), Some(&lp())).unwrap();
        assert_eq!(f.lar, 2);
        assert_eq!(longest_run(&[]), 0);
        assert_eq!(longest_run(&[-1, -1, -1]), 3);
    }

    #[test]
    fn punctuation_characters() {
        let f = sarcasm_features(&snippet("Wow!!! Really?", Polarity::Positive), &lexicons(), Some(&lp())).unwrap();
        assert_eq!(f.punc, 4);
        assert_eq!(f.lar, 0);
    }

    #[test]
    fn implicit_phrases() {
        let s = snippet("I love waiting. Great, another delay", Polarity::Negative);
        assert_eq!(implicit_presence(&s, &lexicons()), [0, 1]);
    }

    #[test]
    fn lp_model_required() {
        let s = snippet("good", Polarity::Positive);
        assert!(matches!(sarcasm_features(&s, &lexicons(), None), Err(Error::MissingLpModel)));
    }

    #[test]
    fn lp_orders_polar_snippets() {
        let m = lp();
        let pos = m.probability(&snippet("good fun", Polarity::Positive));
        let neg = m.probability(&snippet("bad dull", Polarity::Negative));
        assert!(pos > 0.5 && neg < 0.5);
    }
}

use crate::corpus::Snippet;
use crate::{Error, Result};

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

/// Vowel-group syllable estimate with a silent final `e` (kept for a
/// consonant + `le` ending). Never less than 1.
pub fn syllable_count(word: &str) -> usize {
    let letters: Vec<char> = word
        .to_lowercase()
        .chars()
        .filter(|c| c.is_alphabetic())
        .collect();
    let mut groups = 0;
    let mut in_group = false;
    for &c in &letters {
        let v = is_vowel(c);
        if v && !in_group {
            groups += 1;
        }
        in_group = v;
    }
    let n = letters.len();
    if groups > 1 && n >= 2 && letters[n - 1] == 'e' && !is_vowel(letters[n - 2]) {
        let consonant_le = n >= 3 && letters[n - 2] == 'l' && !is_vowel(letters[n - 3]);
        if !consonant_le {
            groups -= 1;
        }
    }
    groups.max(1)
}

pub fn flesch_reading_ease(words: usize, sentences: usize, syllables: usize) -> f64 {
    206.835 - 1.015 * (words as f64 / sentences as f64) - 84.6 * (syllables as f64 / words as f64)
}

fn is_terminal(surface: &str) -> bool {
    matches!(surface, "." | "!" | "?" | "…")
}

/// Runs of sentence-terminal punctuation tokens, at least 1.
pub fn sentence_count(snippet: &Snippet) -> usize {
    let mut count = 0;
    let mut prev_terminal = false;
    for t in &snippet.tokens {
        let terminal = is_terminal(&t.surface);
        if terminal && !prev_terminal {
            count += 1;
        }
        prev_terminal = terminal;
    }
    count.max(1)
}

/// Flesch reading ease and word count (punctuation tokens excluded).
pub fn readability_features(snippet: &Snippet) -> Result<(f64, usize)> {
    let words: Vec<_> = snippet.words().collect();
    if words.is_empty() {
        return Err(Error::ZeroWordCount);
    }
    let syllables: usize = words.iter().map(|t| syllable_count(&t.surface)).sum();
    let red = flesch_reading_ease(words.len(), sentence_count(snippet), syllables);
    Ok((red, words.len()))
}

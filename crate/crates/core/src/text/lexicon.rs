//! File-based lexicons.
//!
//! A lexicon directory holds:
//!
//! | file               | format                                         |
//! |--------------------|------------------------------------------------|
//! | `polarity.tsv`     | `word \t +1|-1 \t weak|strong` (required)      |
//! | `scores.tsv`       | `word \t pos_score \t neg_score`, first wins   |
//! | `negators.txt`     | one word per line                              |
//! | `intensifiers.txt` | one word per line                              |
//! | `connectors.txt`   | one phrase per line                            |
//! | `incongruity.txt`  | one phrase per line, order defines columns     |
//!
//! Blank lines and lines starting with `#` are ignored everywhere.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use crate::corpus::{tokenize, Token};
use crate::{Error, Result};

pub const POLARITY_FILE: &str = "polarity.tsv";
pub const SCORES_FILE: &str = "scores.tsv";
pub const NEGATORS_FILE: &str = "negators.txt";
pub const INTENSIFIERS_FILE: &str = "intensifiers.txt";
pub const CONNECTORS_FILE: &str = "connectors.txt";
pub const INCONGRUITY_FILE: &str = "incongruity.txt";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolarityEntry {
    /// +1 or -1.
    pub sign: i8,
    pub strong: bool,
}

/// A multi-word phrase stored as lowercased tokens.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Phrase(pub Vec<String>);

impl Phrase {
    pub fn parse(text: &str) -> Phrase {
        Phrase(tokenize(text).into_iter().map(|t| t.normalized()).collect())
    }

    pub fn text(&self) -> String {
        self.0.join(" ")
    }

    /// Occurrences of this phrase in a lowercased token sequence.
    pub fn count_in(&self, words: &[String]) -> usize {
        if self.0.is_empty() || self.0.len() > words.len() {
            return 0;
        }
        words.windows(self.0.len()).filter(|w| *w == self.0.as_slice()).count()
    }
}

#[derive(Debug, Clone, Default)]
pub struct Lexicons {
    pub polarity: HashMap<String, PolarityEntry>,
    pub subjectivity_scores: HashMap<String, (f64, f64)>,
    pub negators: HashSet<String>,
    pub intensifiers: HashSet<String>,
    pub discourse_connectors: Vec<Phrase>,
    pub incongruity_phrases: Vec<Phrase>,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

fn lexicon_error(file: &str, line: usize, message: impl Into<String>) -> Error {
    Error::Lexicon {
        file: file.to_string(),
        line,
        message: message.into(),
    }
}

pub fn parse_polarity_tsv(text: &str, file: &str) -> Result<HashMap<String, PolarityEntry>> {
    let mut out = HashMap::new();
    for (line, l) in content_lines(text) {
        let cols: Vec<&str> = l.split('\t').map(str::trim).collect();
        if cols.len() < 2 {
            return Err(lexicon_error(file, line, "expected word<TAB>polarity[<TAB>strength]"));
        }
        let sign = match cols[1] {
            "+1" | "1" | "+" | "positive" => 1,
            "-1" | "−1" | "-" | "negative" => -1,
            other => return Err(lexicon_error(file, line, format!("bad polarity `{other}`"))),
        };
        let strong = match cols.get(2).copied().unwrap_or("weak") {
            "strong" | "strongsubj" => true,
            "weak" | "weaksubj" | "" => false,
            other => return Err(lexicon_error(file, line, format!("bad strength `{other}`"))),
        };
        out.entry(cols[0].to_lowercase())
            .or_insert(PolarityEntry { sign, strong });
    }
    Ok(out)
}

pub fn parse_scores_tsv(text: &str, file: &str) -> Result<HashMap<String, (f64, f64)>> {
    let mut out = HashMap::new();
    for (line, l) in content_lines(text) {
        let cols: Vec<&str> = l.split('\t').map(str::trim).collect();
        if cols.len() < 3 {
            return Err(lexicon_error(file, line, "expected word<TAB>pos<TAB>neg"));
        }
        let parse = |s: &str| -> Result<f64> {
            let v: f64 = s
                .parse()
                .map_err(|_| lexicon_error(file, line, format!("bad score `{s}`")))?;
            if !(0.0..=1.0).contains(&v) {
                return Err(lexicon_error(file, line, format!("score {v} outside [0, 1]")));
            }
            Ok(v)
        };
        let scores = (parse(cols[1])?, parse(cols[2])?);
        out.entry(cols[0].to_lowercase()).or_insert(scores);
    }
    Ok(out)
}

pub fn parse_word_list(text: &str) -> HashSet<String> {
    content_lines(text)
        .map(|(_, l)| l.trim().to_lowercase())
        .collect()
}

/// Phrases in file order, duplicates dropped.
pub fn parse_phrase_list(text: &str) -> Vec<Phrase> {
    let mut seen = HashSet::new();
    content_lines(text)
        .map(|(_, l)| Phrase::parse(l))
        .filter(|p| !p.0.is_empty() && seen.insert(p.clone()))
        .collect()
}

fn read_optional(dir: &Path, name: &str) -> Result<String> {
    let path = dir.join(name);
    if path.exists() {
        Ok(fs::read_to_string(path)?)
    } else {
        Ok(String::new())
    }
}

impl Lexicons {
    pub fn load_dir(dir: impl AsRef<Path>) -> Result<Lexicons> {
        let dir = dir.as_ref();
        let polarity_path = dir.join(POLARITY_FILE);
        let polarity_text = fs::read_to_string(&polarity_path).map_err(|e| {
            std::io::Error::new(e.kind(), format!("{}: {e}", polarity_path.display()))
        })?;
        let lex = Lexicons {
            polarity: parse_polarity_tsv(&polarity_text, POLARITY_FILE)?,
            subjectivity_scores: parse_scores_tsv(&read_optional(dir, SCORES_FILE)?, SCORES_FILE)?,
            negators: parse_word_list(&read_optional(dir, NEGATORS_FILE)?),
            intensifiers: parse_word_list(&read_optional(dir, INTENSIFIERS_FILE)?),
            discourse_connectors: parse_phrase_list(&read_optional(dir, CONNECTORS_FILE)?),
            incongruity_phrases: parse_phrase_list(&read_optional(dir, INCONGRUITY_FILE)?),
        };
        log::info!(
            "lexicons: {} polar words, {} scored words, {} incongruity phrases",
            lex.polarity.len(),
            lex.subjectivity_scores.len(),
            lex.incongruity_phrases.len()
        );
        Ok(lex)
    }

    /// Writes the lexicon directory in the format `load_dir` reads. Map-backed
    /// lists are written in sorted order.
    pub fn write_dir(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir)?;

        let mut words: Vec<_> = self.polarity.iter().collect();
        words.sort_by(|a, b| a.0.cmp(b.0));
        let mut polarity = String::new();
        for (w, e) in words {
            let sign = if e.sign > 0 { "+1" } else { "-1" };
            let strength = if e.strong { "strong" } else { "weak" };
            polarity.push_str(&format!("{w}\t{sign}\t{strength}\n"));
        }
        fs::write(dir.join(POLARITY_FILE), polarity)?;

        let mut scored: Vec<_> = self.subjectivity_scores.iter().collect();
        scored.sort_by(|a, b| a.0.cmp(b.0));
        let scores: String = scored
            .into_iter()
            .map(|(w, (p, n))| format!("{w}\t{p}\t{n}\n"))
            .collect();
        fs::write(dir.join(SCORES_FILE), scores)?;

        let sorted_set = |set: &HashSet<String>| {
            let mut v: Vec<&String> = set.iter().collect();
            v.sort();
            v.into_iter().map(|w| format!("{w}\n")).collect::<String>()
        };
        fs::write(dir.join(NEGATORS_FILE), sorted_set(&self.negators))?;
        fs::write(dir.join(INTENSIFIERS_FILE), sorted_set(&self.intensifiers))?;

        let phrases = |list: &[Phrase]| list.iter().map(|p| p.text() + "\n").collect::<String>();
        fs::write(dir.join(CONNECTORS_FILE), phrases(&self.discourse_connectors))?;
        fs::write(dir.join(INCONGRUITY_FILE), phrases(&self.incongruity_phrases))?;
        Ok(())
    }

    pub fn polarity_of(&self, word: &str) -> Option<i8> {
        self.polarity.get(word).map(|e| e.sign)
    }

    /// Signs of the polar words of a token sequence, in reading order.
    pub fn polar_signs(&self, tokens: &[Token]) -> Vec<i8> {
        tokens
            .iter()
            .filter_map(|t| self.polarity_of(&t.normalized()))
            .collect()
    }
}

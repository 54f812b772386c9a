//! JSON-lines readers and writers for corpus and gaze files.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::{tokenize, Dataset, Fixation, Polarity, PosTag, Scanpath, Snippet, Token};
use crate::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct CorpusRecord {
    snippet_id: String,
    text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tokens: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pos_tags: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ne_flags: Option<Vec<bool>>,
    #[serde(default)]
    label: Option<String>,
    #[serde(default)]
    source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    is_complex: Option<bool>,
}

#[derive(Debug, Serialize, Deserialize)]
struct FixationRecord {
    t: usize,
    d: f64,
    o: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct GazeRecord {
    snippet_id: String,
    participant_id: String,
    fixations: Vec<FixationRecord>,
}

fn malformed(line: usize, message: impl Into<String>) -> Error {
    Error::MalformedLine {
        line,
        message: message.into(),
    }
}

/// Places pretokenized surfaces onto the text. A surface that cannot be found
/// (normalized text) is placed right after the previous token.
fn align_tokens(text: &str, surfaces: Vec<String>, line: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut cursor = 0usize;
    let mut prev: Option<usize> = None;
    let mut tokens = Vec::with_capacity(surfaces.len());
    for surface in surfaces {
        if surface.is_empty() {
            return Err(malformed(line, "empty token surface"));
        }
        let needle: Vec<char> = surface.chars().collect();
        let found = (cursor..chars.len().saturating_sub(needle.len() - 1))
            .find(|&p| chars[p..p + needle.len()] == needle[..]);
        let offset = match found {
            Some(p) => p,
            None => prev.map_or(cursor, |p| cursor.max(p + 1)),
        };
        cursor = offset + needle.len();
        prev = Some(offset);
        tokens.push(Token::new(surface, offset));
    }
    Ok(tokens)
}

fn snippet_from_record(rec: CorpusRecord, line: usize) -> Result<Snippet> {
    let label = match rec.label.as_deref() {
        None | Some("") => {
            return Err(Error::MissingLabel {
                line,
                id: rec.snippet_id,
            })
        }
        Some(l) => l
            .parse::<Polarity>()
            .map_err(|e| malformed(line, e))?,
    };
    let mut tokens = match rec.tokens {
        Some(t) if !t.is_empty() => align_tokens(&rec.text, t, line)?,
        _ => tokenize(&rec.text),
    };
    if let Some(tags) = rec.pos_tags {
        if tags.len() != tokens.len() {
            return Err(malformed(
                line,
                format!("{} POS tags for {} tokens", tags.len(), tokens.len()),
            ));
        }
        for (tok, tag) in tokens.iter_mut().zip(tags) {
            tok.pos_tag = Some(tag.parse::<PosTag>().map_err(|e| malformed(line, e))?);
        }
    }
    if let Some(flags) = rec.ne_flags {
        if flags.len() != tokens.len() {
            return Err(malformed(
                line,
                format!("{} NE flags for {} tokens", flags.len(), tokens.len()),
            ));
        }
        for (tok, ne) in tokens.iter_mut().zip(flags) {
            tok.is_named_entity = Some(ne);
        }
    }
    Ok(Snippet {
        snippet_id: rec.snippet_id,
        text: rec.text,
        tokens,
        label,
        source: rec.source,
        is_complex: rec.is_complex,
    })
}

/// Reads a corpus file (one JSON object per line). Blank lines are ignored.
pub fn parse_corpus<R: BufRead>(reader: R) -> Result<Dataset> {
    let mut dataset = Dataset::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: CorpusRecord =
            serde_json::from_str(&line).map_err(|e| malformed(line_no, e.to_string()))?;
        let snippet = snippet_from_record(rec, line_no)?;
        dataset.push_snippet(snippet, line_no)?;
    }
    let counts = dataset.class_counts();
    log::info!(
        "corpus: {} snippets ({} positive, {} negative)",
        counts.total(),
        counts.positive,
        counts.negative
    );
    Ok(dataset)
}

/// Reads a gaze file and attaches scanpaths to `dataset`.
///
/// Records for the same (snippet, participant) are merged and their fixations
/// sorted by the order field, then renumbered 0..n-1. Ties on order are broken
/// by token index and duration so the result does not depend on line order.
pub fn parse_gaze<R: BufRead>(reader: R, mut dataset: Dataset) -> Result<Dataset> {
    let mut groups: BTreeMap<(String, String), Vec<Fixation>> = BTreeMap::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: GazeRecord =
            serde_json::from_str(&line).map_err(|e| malformed(line_no, e.to_string()))?;
        let snippet = dataset
            .get(&rec.snippet_id)
            .ok_or_else(|| Error::UnknownSnippet {
                line: line_no,
                id: rec.snippet_id.clone(),
            })?;
        let n = snippet.token_count();
        let group = groups
            .entry((rec.snippet_id.clone(), rec.participant_id.clone()))
            .or_default();
        for f in rec.fixations {
            if f.t >= n {
                return Err(Error::TokenIndexOutOfRange {
                    line: line_no,
                    id: rec.snippet_id,
                    index: f.t,
                    token_count: n,
                });
            }
            if !(f.d > 0.0 && f.d.is_finite()) {
                return Err(Error::NonPositiveDuration {
                    line: line_no,
                    duration: f.d,
                });
            }
            group.push(Fixation::new(f.t, f.d, f.o));
        }
    }

    for ((snippet_id, participant_id), mut fixations) in groups {
        if let Some(existing) = dataset
            .scanpaths(&snippet_id)
            .iter()
            .find(|p| p.participant_id == participant_id)
        {
            let base = existing.fixations.len();
            let mut merged = existing.fixations.clone();
            merged.extend(fixations.into_iter().map(|f| Fixation {
                order: f.order + base,
                ..f
            }));
            fixations = merged;
        }
        fixations.sort_by(|a, b| {
            a.order
                .cmp(&b.order)
                .then(a.token_index.cmp(&b.token_index))
                .then(a.duration_ms.total_cmp(&b.duration_ms))
        });
        for (o, f) in fixations.iter_mut().enumerate() {
            f.order = o;
        }
        dataset.insert_scanpath(Scanpath {
            snippet_id,
            participant_id,
            fixations,
        })?;
    }
    Ok(dataset)
}

/// Writes the snippets in corpus format. POS tags and NE flags are emitted
/// only when every token carries one.
pub fn write_corpus<W: Write>(dataset: &Dataset, mut writer: W) -> Result<()> {
    for s in dataset.snippets() {
        let pos_tags = s
            .tokens
            .iter()
            .map(|t| t.pos_tag.map(|p| p.as_str().to_string()))
            .collect::<Option<Vec<_>>>();
        let ne_flags = s
            .tokens
            .iter()
            .map(|t| t.is_named_entity)
            .collect::<Option<Vec<_>>>();
        let rec = CorpusRecord {
            snippet_id: s.snippet_id.clone(),
            text: s.text.clone(),
            tokens: Some(s.tokens.iter().map(|t| t.surface.clone()).collect()),
            pos_tags: pos_tags.filter(|v| !v.is_empty()),
            ne_flags: ne_flags.filter(|v| !v.is_empty()),
            label: Some(s.label.as_str().to_string()),
            source: s.source.clone(),
            is_complex: s.is_complex,
        };
        serde_json::to_writer(&mut writer, &rec)?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}

/// Writes every scanpath as one gaze record, in snippet then participant order.
pub fn write_gaze<W: Write>(dataset: &Dataset, mut writer: W) -> Result<()> {
    for s in dataset.snippets() {
        for path in dataset.scanpaths(&s.snippet_id) {
            let rec = GazeRecord {
                snippet_id: path.snippet_id.clone(),
                participant_id: path.participant_id.clone(),
                fixations: path
                    .fixations
                    .iter()
                    .map(|f| FixationRecord {
                        t: f.token_index,
                        d: f.duration_ms,
                        o: f.order,
                    })
                    .collect(),
            };
            serde_json::to_writer(&mut writer, &rec)?;
            writer.write_all(b"\n")?;
        }
    }
    Ok(())
}

//! Deterministic stand-in tagger used when a corpus ships without POS tags or
//! named-entity flags. Suffix rules only; no statistical model.

use super::{is_punctuation_token, PosTag, Snippet, Token};

const ADV_SUFFIXES: &[&str] = &["ly"];
const ADJ_SUFFIXES: &[&str] = &[
    "able", "ible", "ous", "ful", "ive", "less", "ish", "ical", "ic", "al", "est",
];
const VERB_SUFFIXES: &[&str] = &["ing", "ed", "ize", "ise", "ify", "ate"];
const NOUN_SUFFIXES: &[&str] = &[
    "tion", "sion", "ment", "ness", "ity", "ship", "ance", "ence", "ism", "ist", "er", "or",
];

/// Suffix-based coarse tag. Words shorter than four letters and anything not
/// matching a suffix list are `OTHER`.
pub fn fallback_pos_tag(surface: &str) -> PosTag {
    let lower = surface.to_lowercase();
    if lower.chars().count() < 4 || !lower.chars().all(char::is_alphabetic) {
        return PosTag::Other;
    }
    let ends = |list: &[&str]| list.iter().any(|s| lower.ends_with(s));
    if ends(ADV_SUFFIXES) {
        PosTag::Adv
    } else if ends(ADJ_SUFFIXES) {
        PosTag::Adj
    } else if ends(VERB_SUFFIXES) {
        PosTag::Verb
    } else if ends(NOUN_SUFFIXES) {
        PosTag::Noun
    } else {
        PosTag::Other
    }
}

fn is_sentence_end(token: &Token) -> bool {
    matches!(token.surface.as_str(), "." | "!" | "?")
}

/// Mid-sentence capitalized alphabetic word other than "I".
fn fallback_named_entity(tokens: &[Token], i: usize) -> bool {
    let t = &tokens[i];
    let mut chars = t.surface.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    if !first.is_uppercase() || t.surface == "I" || !t.surface.chars().all(char::is_alphabetic) {
        return false;
    }
    let sentence_initial = tokens[..i]
        .iter()
        .rev()
        .find(|p| !matches!(p.surface.as_str(), "\"" | "'" | "(" | "“" | "‘"))
        .is_none_or(is_sentence_end);
    !sentence_initial
}

/// Per-token (POS, NE) pairs, preferring corpus-provided values.
pub fn effective_tags(snippet: &Snippet) -> Vec<(PosTag, bool)> {
    let tokens = &snippet.tokens;
    tokens
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let pos = t.pos_tag.unwrap_or_else(|| {
                if is_punctuation_token(&t.surface) {
                    PosTag::Other
                } else {
                    fallback_pos_tag(&t.surface)
                }
            });
            let ne = t
                .is_named_entity
                .unwrap_or_else(|| fallback_named_entity(tokens, i));
            (pos, ne)
        })
        .collect()
}

/// Number of maximal runs of consecutive named-entity tokens.
pub fn named_entity_mentions(snippet: &Snippet) -> usize {
    let mut mentions = 0;
    let mut inside = false;
    for (_, ne) in effective_tags(snippet) {
        if ne && !inside {
            mentions += 1;
        }
        inside = ne;
    }
    mentions
}

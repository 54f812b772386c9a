use unicode_general_category::{get_general_category, GeneralCategory};

use super::Token;

/// True for characters in the Unicode punctuation categories (Pc, Pd, Ps, Pe, Pi, Pf, Po).
pub fn is_punctuation(c: char) -> bool {
    matches!(
        get_general_category(c),
        GeneralCategory::ConnectorPunctuation
            | GeneralCategory::DashPunctuation
            | GeneralCategory::OpenPunctuation
            | GeneralCategory::ClosePunctuation
            | GeneralCategory::InitialPunctuation
            | GeneralCategory::FinalPunctuation
            | GeneralCategory::OtherPunctuation
    )
}

/// A token consisting solely of punctuation characters.
pub fn is_punctuation_token(surface: &str) -> bool {
    !surface.is_empty() && surface.chars().all(is_punctuation)
}

/// Whitespace tokenization with every punctuation character split into its
/// own token. Offsets count Unicode scalar values.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut start = 0usize;

    for (pos, c) in text.chars().enumerate() {
        if c.is_whitespace() || is_punctuation(c) {
            if !current.is_empty() {
                tokens.push(Token::new(std::mem::take(&mut current), start));
            }
            if !c.is_whitespace() {
                tokens.push(Token::new(c.to_string(), pos));
            }
        } else {
            if current.is_empty() {
                start = pos;
            }
            current.push(c);
        }
    }
    if !current.is_empty() {
        tokens.push(Token::new(current, start));
    }
    tokens
}

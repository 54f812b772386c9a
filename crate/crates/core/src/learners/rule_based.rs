use crate::corpus::Snippet;
use crate::text::Lexicons;

/// Tokens scanned before a polar word for a negator.
pub const NEGATOR_WINDOW: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuleOutcome {
    /// -1, 0 (undefined) or +1.
    pub label: i8,
    pub score: f64,
}

/// Lexicon vote: each polar word counts ±1, doubled after an intensifier and
/// flipped when a negator occurs among the preceding tokens.
pub fn rule_based_classify(snippet: &Snippet, lexicons: &Lexicons) -> RuleOutcome {
    let words: Vec<String> = snippet.tokens.iter().map(|t| t.normalized()).collect();
    let mut score = 0.0;
    for (i, w) in words.iter().enumerate() {
        let Some(sign) = lexicons.polarity_of(w) else {
            continue;
        };
        let mut v = f64::from(sign);
        if i > 0 && lexicons.intensifiers.contains(&words[i - 1]) {
            v *= 2.0;
        }
        let start = i.saturating_sub(NEGATOR_WINDOW);
        if words[start..i].iter().any(|p| lexicons.negators.contains(p)) {
            v = -v;
        }
        score += v;
    }
    let label = if score > 0.0 {
        1
    } else if score < 0.0 {
        -1
    } else {
        0
    };
    RuleOutcome { label, score }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Polarity;
    use crate::text::lexicon::PolarityEntry;

    fn lex() -> Lexicons {
        let mut l = Lexicons::default();
        for (w, s) in [("happy", 1), ("good", 1), ("bad", -1)] {
            l.polarity.insert(w.into(), PolarityEntry { sign: s, strong: false });
        }
        l.negators.insert("not".into());
        l.intensifiers.insert("very".into());
        l
    }

    fn run(text: &str) -> RuleOutcome {
        rule_based_classify(&Snippet::from_text("s", text, Polarity::Positive), &lex())
    }

    #[test]
    fn negation_flips() {
        assert_eq!(run("I am not happy").label, -1);
    }

    #[test]
    fn intensifier_doubles() {
        assert_eq!(run("very good"), RuleOutcome { label: 1, score: 2.0 });
    }

    #[test]
    fn tie_is_undefined() {
        assert_eq!(run("good bad").label, 0);
        assert_eq!(run("nothing here").label, 0);
    }

    #[test]
    fn negator_outside_window() {
        assert_eq!(run("not a b c good").label, 1);
        assert_eq!(run("not a b good").label, -1);
    }
}

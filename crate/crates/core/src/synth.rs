//! Seeded synthetic corpora with planted gaze signal.
//!
//! Every snippet draws its length independently of its class. Polar words
//! follow the snippet's surface polarity: positive for positive and ironic
//! snippets, negative otherwise. Ironic snippets are negative snippets worded
//! positively and flagged `is_complex`; some of them carry an incongruity
//! phrase. Scanpaths read left to right with skips, refixations and short
//! regressions. For an ironic snippet, each participant's scanpath
//! additionally contains, with probability `signal_strength`, a long regression
//! from the second half back into the first half with refixations at its
//! landing site.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Dataset, Polarity, Scanpath, Snippet};
use crate::text::lexicon::{Phrase, PolarityEntry};
use crate::text::Lexicons;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub snippet_count: usize,
    /// Zero produces a text-only corpus.
    pub participants: usize,
    pub min_words: usize,
    pub max_words: usize,
    pub positive_fraction: f64,
    /// Probability that a word slot holds a polar word, for positive-worded
    /// and negative-worded snippets respectively.
    pub positive_density: f64,
    pub negative_density: f64,
    /// Probability that a polar word agrees with the surface polarity.
    pub purity: f64,
    /// Fraction of negative snippets that are ironic.
    pub irony_fraction: f64,
    /// Probability that an ironic snippet contains an incongruity phrase.
    pub irony_cue_rate: f64,
    /// Probability that any other snippet contains one.
    pub cue_noise_rate: f64,
    pub signal_strength: f64,
    pub seed: u64,
    pub id_prefix: String,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            snippet_count: 400,
            participants: 5,
            min_words: 8,
            max_words: 16,
            positive_fraction: 0.5,
            positive_density: 0.3,
            negative_density: 0.3,
            purity: 0.85,
            irony_fraction: 0.3,
            irony_cue_rate: 0.5,
            cue_noise_rate: 0.05,
            signal_strength: 0.9,
            seed: 0,
            id_prefix: "s".into(),
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        let probs = [
            ("positive_fraction", self.positive_fraction),
            ("positive_density", self.positive_density),
            ("negative_density", self.negative_density),
            ("purity", self.purity),
            ("irony_fraction", self.irony_fraction),
            ("irony_cue_rate", self.irony_cue_rate),
            ("cue_noise_rate", self.cue_noise_rate),
            ("signal_strength", self.signal_strength),
        ];
        for (name, p) in probs {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Config(format!("{name} must lie in [0, 1], got {p}")));
            }
        }
        if self.snippet_count == 0 {
            return Err(Error::Config("snippet_count must be positive".into()));
        }
        if self.min_words < 4 || self.min_words > self.max_words {
            return Err(Error::Config(format!(
                "word range must satisfy 4 <= min <= max, got {}..={}",
                self.min_words, self.max_words
            )));
        }
        Ok(())
    }
}

pub const POSITIVE_WORDS: [&str; 12] = [
    "good", "great", "excellent", "wonderful", "brilliant", "lovely", "superb", "enjoyable", "delightful",
    "charming", "amazing", "pleasant",
];
pub const NEGATIVE_WORDS: [&str; 12] = [
    "bad", "awful", "terrible", "boring", "dull", "poor", "horrible", "weak", "mediocre", "painful", "tedious",
    "annoying",
];
const STRONG: [&str; 6] = ["excellent", "brilliant", "superb", "awful", "terrible", "horrible"];
const NEUTRAL_WORDS: [&str; 32] = [
    "the", "movie", "film", "plot", "actor", "story", "scene", "music", "a", "was", "is", "and", "with", "of",
    "this", "it", "ending", "cast", "director", "script", "camera", "dialogue", "character", "quite", "just",
    "performance", "but", "however", "acting", "Nolan", "Paris", "watching",
];
pub const INCONGRUITY_PHRASES: [&str; 6] = [
    "waiting forever",
    "another delay",
    "being ignored",
    "broken again",
    "stuck again",
    "losing everything",
];
pub const INTENSIFIERS: [&str; 3] = ["very", "really", "extremely"];
pub const NEGATORS: [&str; 3] = ["not", "never", "no"];
pub const CONNECTORS: [&str; 4] = ["but", "however", "although", "yet"];

/// Lexicons covering the generator's vocabulary.
pub fn builtin_lexicons() -> Lexicons {
    let mut lex = Lexicons::default();
    for (words, sign) in [(&POSITIVE_WORDS, 1i8), (&NEGATIVE_WORDS, -1i8)] {
        for (i, w) in words.iter().enumerate() {
            lex.polarity.insert(
                w.to_string(),
                PolarityEntry {
                    sign,
                    strong: STRONG.contains(w),
                },
            );
            let score = 0.5 + 0.125 * (i % 4) as f64;
            let scores = if sign > 0 { (score, 0.0) } else { (0.0, score) };
            lex.subjectivity_scores.insert(w.to_string(), scores);
        }
    }
    lex.negators = NEGATORS.iter().map(|s| s.to_string()).collect();
    lex.intensifiers = INTENSIFIERS.iter().map(|s| s.to_string()).collect();
    lex.discourse_connectors = CONNECTORS.iter().map(|s| Phrase::parse(s)).collect();
    lex.incongruity_phrases = INCONGRUITY_PHRASES.iter().map(|s| Phrase::parse(s)).collect();
    lex
}

fn duration(rng: &mut ChaCha8Rng) -> f64 {
    ((120.0 + 180.0 * rng.random::<f64>()) * 10.0).round() / 10.0
}

fn text_for(rng: &mut ChaCha8Rng, cfg: &SynthConfig, positive_surface: bool, cue: bool) -> String {
    let len = rng.random_range(cfg.min_words..=cfg.max_words);
    let density = if positive_surface {
        cfg.positive_density
    } else {
        cfg.negative_density
    };
    let mut words: Vec<String> = Vec::with_capacity(len);
    while words.len() < len {
        if rng.random_bool(density) {
            let agree = rng.random_bool(cfg.purity);
            let list = if agree == positive_surface {
                &POSITIVE_WORDS
            } else {
                &NEGATIVE_WORDS
            };
            let w = list.choose(rng).expect("non-empty");
            if let Some(prev) = words.last_mut() {
                if rng.random_bool(0.2) && NEUTRAL_WORDS.contains(&prev.as_str()) && !prev.chars().any(|c| c.is_uppercase()) {
                    *prev = INTENSIFIERS.choose(rng).expect("non-empty").to_string();
                }
            }
            words.push(w.to_string());
        } else {
            words.push(NEUTRAL_WORDS.choose(rng).expect("non-empty").to_string());
        }
    }
    if cue {
        let phrase: Vec<&str> = INCONGRUITY_PHRASES.choose(rng).expect("non-empty").split(' ').collect();
        let start = rng.random_range(len / 2..=len - phrase.len());
        for (k, w) in phrase.iter().enumerate() {
            words[start + k] = w.to_string();
        }
    }
    let mut first = words[0].chars();
    let head: String = first.next().map(|c| c.to_uppercase().collect::<String>()).unwrap_or_default();
    words[0] = head + first.as_str();
    format!("{}.", words.join(" "))
}

fn scanpath_for(rng: &mut ChaCha8Rng, snippet: &Snippet, participant: &str, ironic: bool, s: f64) -> Scanpath {
    let n = snippet.token_count();
    let words = snippet.words().count();
    let half = n.div_ceil(2);
    let induced = ironic && rng.random_bool(s);
    let (source, target) = if induced {
        let source = rng.random_range(half..words);
        let target = rng.random_range(0..half.min(source - 1));
        (source, target)
    } else {
        (usize::MAX, usize::MAX)
    };
    let mut pairs: Vec<(usize, f64)> = Vec::new();
    for i in 0..words {
        if i > 0 && i != source && rng.random_bool(0.15) {
            continue;
        }
        pairs.push((i, duration(rng)));
        if rng.random_bool(0.08) {
            pairs.push((i, duration(rng)));
        }
        if i == source {
            pairs.push((target, duration(rng)));
            pairs.push((target, duration(rng)));
            pairs.push((target + 1, duration(rng)));
        } else if i >= 2 && rng.random_bool(0.08) {
            let back = rng.random_range(1..=2);
            pairs.push((i - back, duration(rng)));
        }
    }
    Scanpath::from_pairs(snippet.snippet_id.clone(), participant, &pairs)
}

pub fn generate(cfg: &SynthConfig) -> Result<Dataset> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.snippet_count;
    let positives = (n as f64 * cfg.positive_fraction).round() as usize;
    let mut labels: Vec<Polarity> = (0..n).map(|i| Polarity::from_positive(i < positives)).collect();
    labels.shuffle(&mut rng);
    let mut negatives: Vec<usize> = (0..n).filter(|&i| !labels[i].is_positive()).collect();
    negatives.shuffle(&mut rng);
    let ironic_count = (negatives.len() as f64 * cfg.irony_fraction).round() as usize;
    let mut ironic = vec![false; n];
    for &i in &negatives[..ironic_count] {
        ironic[i] = true;
    }

    let mut snippets = Vec::with_capacity(n);
    for i in 0..n {
        let positive_surface = labels[i].is_positive() || ironic[i];
        let cue_rate = if ironic[i] { cfg.irony_cue_rate } else { cfg.cue_noise_rate };
        let cue = rng.random_bool(cue_rate);
        let text = text_for(&mut rng, cfg, positive_surface, cue);
        let mut s = Snippet::from_text(format!("{}{:05}", cfg.id_prefix, i), text, labels[i]);
        s.source = "synth".into();
        s.is_complex = Some(ironic[i]);
        snippets.push(s);
    }
    let mut dataset = Dataset::from_snippets(snippets)?;
    let participants: Vec<String> = (1..=cfg.participants).map(|p| format!("p{p}")).collect();
    for i in 0..n {
        for p in &participants {
            let path = scanpath_for(&mut rng, &dataset.snippets()[i], p, ironic[i], cfg.signal_strength);
            dataset.insert_scanpath(path)?;
        }
    }
    Ok(dataset)
}

/// Text-only polarity corpus for fitting the LP model.
pub fn generate_auxiliary(snippet_count: usize, seed: u64) -> Result<Dataset> {
    generate(&SynthConfig {
        snippet_count,
        participants: 0,
        irony_fraction: 0.0,
        cue_noise_rate: 0.0,
        seed,
        id_prefix: "aux".into(),
        ..SynthConfig::default()
    })
}

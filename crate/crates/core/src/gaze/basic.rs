//! Fixation/saccade aggregates for one participant's reading of a snippet.

use crate::corpus::{Saccade, Scanpath};
use crate::gaze::FeatureRow;
use crate::{Error, Result};

/// One participant's basic reading measures over a snippet.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BasicGazeFeatures {
    /// First-pass first-fixation duration per word (ms/word).
    pub fdur: f64,
    /// Fixations per word.
    pub fc: f64,
    /// Saccade length in words, per word.
    pub sl: f64,
    /// Number of regressive saccades.
    pub reg: f64,
    /// Fraction of words never fixated.
    pub skip: f64,
    /// Regressions from the second half of the snippet into the first half.
    pub rsf: f64,
    /// 1-based source position of the largest-amplitude regression, over word count.
    pub lreg: f64,
}

impl BasicGazeFeatures {
    pub const NAMES: [&'static str; 7] = ["FDUR", "FC", "SL", "REG", "SKIP", "RSF", "LREG"];

    pub fn values(&self) -> [f64; 7] {
        [
            self.fdur, self.fc, self.sl, self.reg, self.skip, self.rsf, self.lreg,
        ]
    }

    pub fn to_row(&self) -> FeatureRow {
        Self::NAMES
            .iter()
            .zip(self.values())
            .map(|(n, v)| (n.to_string(), v))
            .collect()
    }
}

/// One saccade per consecutive fixation pair landing on different words.
pub fn derive_saccades(scanpath: &Scanpath) -> Vec<Saccade> {
    scanpath
        .fixations
        .windows(2)
        .filter(|w| w[0].token_index != w[1].token_index)
        .map(|w| {
            let (from, to) = (w[0].token_index, w[1].token_index);
            Saccade {
                from_index: from,
                to_index: to,
                distance_words: from.abs_diff(to),
                is_regression: to < from,
            }
        })
        .collect()
}

/// Computes the basic measures. `char_offsets` holds one entry per token of
/// the snippet; its length is the word count used for normalization and the
/// offsets give regression amplitudes in characters.
pub fn basic_features(scanpath: &Scanpath, char_offsets: &[usize]) -> Result<BasicGazeFeatures> {
    let n = char_offsets.len();
    if n == 0 {
        return Err(Error::ZeroWordCount);
    }
    if let Some(f) = scanpath.fixations.iter().find(|f| f.token_index >= n) {
        return Err(Error::TokenIndexOutOfRange {
            line: 0,
            id: scanpath.snippet_id.clone(),
            index: f.token_index,
            token_count: n,
        });
    }
    if scanpath.fixations.is_empty() {
        return Ok(BasicGazeFeatures::default());
    }
    let words = n as f64;

    let mut first_pass_duration = 0.0;
    let mut seen = vec![false; n];
    let mut rightmost: Option<usize> = None;
    for f in &scanpath.fixations {
        let w = f.token_index;
        if !seen[w] && rightmost.is_none_or(|r| r <= w) {
            first_pass_duration += f.duration_ms;
        }
        seen[w] = true;
        rightmost = Some(rightmost.map_or(w, |r| r.max(w)));
    }
    let fixated = seen.iter().filter(|&&s| s).count();

    let saccades = derive_saccades(scanpath);
    let total_distance: usize = saccades.iter().map(|s| s.distance_words).sum();
    let first_half = n.div_ceil(2);

    let mut reg = 0usize;
    let mut rsf = 0usize;
    let mut largest: Option<(usize, usize)> = None;
    for s in saccades.iter().filter(|s| s.is_regression) {
        reg += 1;
        if s.from_index >= first_half && s.to_index < first_half {
            rsf += 1;
        }
        let amplitude = char_offsets[s.from_index].abs_diff(char_offsets[s.to_index]);
        if largest.is_none_or(|(a, _)| amplitude > a) {
            largest = Some((amplitude, s.from_index));
        }
    }

    Ok(BasicGazeFeatures {
        fdur: first_pass_duration / words,
        fc: scanpath.fixations.len() as f64 / words,
        sl: total_distance as f64 / words,
        reg: reg as f64,
        skip: (n - fixated) as f64 / words,
        rsf: rsf as f64,
        lreg: largest.map_or(0.0, |(_, src)| (src + 1) as f64 / words),
    })
}

/// Arithmetic mean per feature name. Every row must carry the same names;
/// the output keeps the order of the first row.
pub fn average_over_participants(rows: &[FeatureRow]) -> Result<FeatureRow> {
    let first = rows.first().ok_or(Error::EmptyAverage)?;
    let mut out = FeatureRow::with_capacity(first.len());
    for name in first.keys() {
        let mut sum = 0.0;
        for row in rows {
            if row.len() != first.len() {
                return Err(Error::FeatureNameMismatch);
            }
            sum += *row.get(name).ok_or(Error::FeatureNameMismatch)?;
        }
        out.insert(name.clone(), sum / rows.len() as f64);
    }
    Ok(out)
}

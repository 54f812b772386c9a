use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::corpus::Polarity;
use crate::{Error, Result};

/// Precision, recall and F1 in percent, averaged over classes weighted by
/// gold frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f: f64,
}

fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

fn f1(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

/// Weighted P/R/F. A `None` prediction counts as wrong for its gold class
/// and as a prediction of neither class.
pub fn prf_partial(predicted: &[Option<Polarity>], gold: &[Polarity]) -> Result<Prf> {
    if predicted.len() != gold.len() {
        return Err(Error::LengthMismatch {
            left: predicted.len(),
            right: gold.len(),
        });
    }
    if gold.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = gold.len() as f64;
    let mut out = Prf {
        precision: 0.0,
        recall: 0.0,
        f: 0.0,
    };
    for class in [Polarity::Positive, Polarity::Negative] {
        let support = gold.iter().filter(|&&g| g == class).count();
        let predicted_as = predicted.iter().filter(|&&p| p == Some(class)).count();
        let tp = predicted
            .iter()
            .zip(gold)
            .filter(|&(&p, &g)| p == Some(class) && g == class)
            .count();
        let p = ratio(tp, predicted_as);
        let r = ratio(tp, support);
        let w = support as f64 / n;
        out.precision += w * p;
        out.recall += w * r;
        out.f += w * f1(p, r);
    }
    out.precision *= 100.0;
    out.recall *= 100.0;
    out.f *= 100.0;
    Ok(out)
}

pub fn prf(predicted: &[Polarity], gold: &[Polarity]) -> Result<Prf> {
    let p: Vec<Option<Polarity>> = predicted.iter().copied().map(Some).collect();
    prf_partial(&p, gold)
}

/// Expected weighted F (percent) of a predictor that guesses each class with
/// its gold frequency: per class, expected precision and recall both equal
/// that frequency, so the weighted F is the sum of squared frequencies.
pub fn class_frequency_baseline(gold: &[Polarity]) -> Result<f64> {
    if gold.is_empty() {
        return Err(Error::EmptyInput);
    }
    let p = gold.iter().filter(|g| g.is_positive()).count() as f64 / gold.len() as f64;
    Ok(100.0 * (p * p + (1.0 - p) * (1.0 - p)))
}

/// Monte Carlo estimate of the same baseline, averaged over `trials` runs.
pub fn simulate_random_baseline(gold: &[Polarity], trials: usize, seed: u64) -> Result<Prf> {
    if gold.is_empty() || trials == 0 {
        return Err(Error::EmptyInput);
    }
    let p = gold.iter().filter(|g| g.is_positive()).count() as f64 / gold.len() as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = Prf {
        precision: 0.0,
        recall: 0.0,
        f: 0.0,
    };
    for _ in 0..trials {
        let guess: Vec<Polarity> = (0..gold.len())
            .map(|_| Polarity::from_positive(rng.random_bool(p)))
            .collect();
        let r = prf(&guess, gold)?;
        sum.precision += r.precision;
        sum.recall += r.recall;
        sum.f += r.f;
    }
    let t = trials as f64;
    Ok(Prf {
        precision: sum.precision / t,
        recall: sum.recall / t,
        f: sum.f / t,
    })
}

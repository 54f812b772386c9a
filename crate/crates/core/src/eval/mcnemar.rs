use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::corpus::Polarity;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McNemar {
    /// A correct, B wrong.
    pub b: usize,
    /// A wrong, B correct.
    pub c: usize,
    pub statistic: f64,
    pub p_value: f64,
    pub odds_ratio: f64,
}

/// Continuity-corrected test from the discordant counts.
pub fn mcnemar_counts(b: usize, c: usize) -> McNemar {
    let (statistic, p_value) = if b + c == 0 {
        (0.0, 1.0)
    } else {
        let d = (b as f64 - c as f64).abs() - 1.0;
        let d = d.max(0.0);
        let stat = d * d / (b + c) as f64;
        (stat, ChiSquared::new(1.0).expect("1 dof").sf(stat))
    };
    let odds_ratio = match (b, c) {
        (0, 0) => f64::NAN,
        (_, 0) => f64::INFINITY,
        _ => b as f64 / c as f64,
    };
    McNemar {
        b,
        c,
        statistic,
        p_value,
        odds_ratio,
    }
}

pub fn mcnemar(pred_a: &[Polarity], pred_b: &[Polarity], gold: &[Polarity]) -> Result<McNemar> {
    if pred_a.len() != gold.len() {
        return Err(Error::LengthMismatch {
            left: pred_a.len(),
            right: gold.len(),
        });
    }
    if pred_b.len() != gold.len() {
        return Err(Error::LengthMismatch {
            left: pred_b.len(),
            right: gold.len(),
        });
    }
    let (mut b, mut c) = (0, 0);
    for ((a, bb), g) in pred_a.iter().zip(pred_b).zip(gold) {
        match (a == g, bb == g) {
            (true, false) => b += 1,
            (false, true) => c += 1,
            _ => {}
        }
    }
    Ok(mcnemar_counts(b, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Polarity::{Negative as N, Positive as P};

    #[test]
    fn fixture() {
        let m = mcnemar_counts(10, 2);
        assert!((m.statistic - 49.0 / 12.0).abs() < 1e-12);
        assert!((m.p_value - 0.0433).abs() < 1e-3);
        assert_eq!(m.odds_ratio, 5.0);
    }

    #[test]
    fn identical_predictions() {
        let p = [P, N, P];
        let m = mcnemar(&p, &p, &[P, P, N]).unwrap();
        assert_eq!((m.b, m.c, m.p_value), (0, 0, 1.0));
        assert!(m.odds_ratio.is_nan());
    }

    #[test]
    fn swap_symmetry() {
        let gold = [P, P, N, N, P];
        let a = [P, N, N, P, P];
        let b = [N, P, N, N, N];
        let ab = mcnemar(&a, &b, &gold).unwrap();
        let ba = mcnemar(&b, &a, &gold).unwrap();
        assert_eq!((ab.b, ab.c), (ba.c, ba.b));
        assert_eq!(ab.statistic, ba.statistic);
        assert_eq!(mcnemar_counts(3, 0).odds_ratio, f64::INFINITY);
    }

    #[test]
    fn p_decreases_with_imbalance() {
        let total = 30;
        let mut last = f64::INFINITY;
        for b in (total / 2)..=total {
            let m = mcnemar_counts(b, total - b);
            assert!(m.p_value <= last);
            last = m.p_value;
        }
    }
}

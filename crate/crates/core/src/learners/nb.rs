use ndarray::ArrayView2;
use serde::{Deserialize, Serialize};

/// Gaussian naive Bayes over raw feature values. Index 0 is the negative
/// class, index 1 the positive class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianNb {
    pub log_priors: [f64; 2],
    pub means: [Vec<f64>; 2],
    pub variances: [Vec<f64>; 2],
}

impl GaussianNb {
    pub fn fit(x: ArrayView2<'_, f64>, y: &[bool], var_floor: f64) -> Self {
        let d = x.ncols();
        let mut counts = [0usize; 2];
        let mut means = [vec![0.0; d], vec![0.0; d]];
        for (row, &label) in x.outer_iter().zip(y) {
            let c = label as usize;
            counts[c] += 1;
            for (m, v) in means[c].iter_mut().zip(row) {
                *m += v;
            }
        }
        for c in 0..2 {
            for m in &mut means[c] {
                *m /= counts[c] as f64;
            }
        }
        let mut variances = [vec![0.0; d], vec![0.0; d]];
        for (row, &label) in x.outer_iter().zip(y) {
            let c = label as usize;
            for ((s, v), m) in variances[c].iter_mut().zip(row).zip(&means[c]) {
                *s += (v - m) * (v - m);
            }
        }
        for c in 0..2 {
            for s in &mut variances[c] {
                *s = (*s / counts[c] as f64).max(var_floor);
            }
        }
        let n = y.len() as f64;
        GaussianNb {
            log_priors: [
                (counts[0] as f64 / n).ln(),
                (counts[1] as f64 / n).ln(),
            ],
            means,
            variances,
        }
    }

    /// Log prior plus Gaussian log-likelihood per class.
    pub fn log_joint(&self, row: &[f64]) -> [f64; 2] {
        let mut out = self.log_priors;
        for (c, lj) in out.iter_mut().enumerate() {
            for ((v, m), s) in row.iter().zip(&self.means[c]).zip(&self.variances[c]) {
                *lj -= 0.5 * ((2.0 * std::f64::consts::PI * s).ln() + (v - m) * (v - m) / s);
            }
        }
        out
    }

    /// Posterior probability of the positive class.
    pub fn score(&self, row: &[f64]) -> f64 {
        let [neg, pos] = self.log_joint(row);
        1.0 / (1.0 + (neg - pos).exp())
    }
}

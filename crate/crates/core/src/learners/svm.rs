//! Linear max-margin classifier trained by stochastic subgradient descent on
//! `1/2 |w|^2 + C * sum(hinge)` (Pegasos schedule with lambda = 1 / (C n)).

use ndarray::ArrayView2;
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearSvm {
    pub weights: Vec<f64>,
    pub bias: f64,
}

fn dot(a: &[f64], b: impl IntoIterator<Item = f64>) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl LinearSvm {
    /// `epochs` passes over the data, each in a freshly shuffled order. The
    /// bias is folded in as a constant feature and regularized with the weights.
    /// The returned hyperplane is the average of the iterates of the final epoch.
    pub fn fit(x: ArrayView2<'_, f64>, y: &[bool], c: f64, epochs: usize, rng: &mut ChaCha8Rng) -> Self {
        let (n, d) = x.dim();
        let lambda = 1.0 / (c * n as f64);
        let radius = 1.0 / lambda.sqrt();
        let mut w = vec![0.0; d];
        let mut b = 0.0;
        let mut order: Vec<usize> = (0..n).collect();
        let mut t = 0usize;
        let (mut avg_w, mut avg_b, mut averaged) = (vec![0.0; d], 0.0, 0usize);
        for epoch in 0..epochs {
            order.shuffle(rng);
            for &i in &order {
                t += 1;
                let eta = 1.0 / (lambda * t as f64);
                let yi = if y[i] { 1.0 } else { -1.0 };
                let row = x.row(i);
                let margin = yi * (dot(&w, row.iter().copied()) + b);
                let shrink = 1.0 - eta * lambda;
                for wj in &mut w {
                    *wj *= shrink;
                }
                b *= shrink;
                if margin < 1.0 {
                    for (wj, xj) in w.iter_mut().zip(row) {
                        *wj += eta * yi * xj;
                    }
                    b += eta * yi;
                }
                let norm = (w.iter().map(|v| v * v).sum::<f64>() + b * b).sqrt();
                if norm > radius {
                    let s = radius / norm;
                    for wj in &mut w {
                        *wj *= s;
                    }
                    b *= s;
                }
                if epoch + 1 == epochs {
                    averaged += 1;
                    let k = averaged as f64;
                    for (a, v) in avg_w.iter_mut().zip(&w) {
                        *a += (v - *a) / k;
                    }
                    avg_b += (b - avg_b) / k;
                }
            }
        }
        if averaged == 0 {
            return LinearSvm { weights: w, bias: b };
        }
        LinearSvm {
            weights: avg_w,
            bias: avg_b,
        }
    }

    pub fn decision(&self, row: &[f64]) -> f64 {
        dot(&self.weights, row.iter().copied()) + self.bias
    }
}

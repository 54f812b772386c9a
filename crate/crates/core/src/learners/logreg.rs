//! L2-regularized logistic regression fitted by gradient descent.
//!
//! Objective: mean log-loss + lambda/2 |w|^2 (bias unregularized). Steps use
//! a Barzilai-Borwein length with Armijo backtracking, iterating until the
//! gradient norm drops below the tolerance or the iteration cap is hit.

use ndarray::ArrayView2;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogisticRegression {
    pub weights: Vec<f64>,
    pub bias: f64,
    /// Iterations used and final gradient norm, kept for diagnostics.
    pub iterations: usize,
    pub gradient_norm: f64,
}

pub(crate) fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// log(1 + exp(z)) without overflow.
pub(crate) fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// Objective value and gradient at `params = [w..., b]`.
pub fn objective(params: &[f64], x: ArrayView2<'_, f64>, y: &[bool], lambda: f64) -> (f64, Vec<f64>) {
    let (n, d) = x.dim();
    let (w, b) = (&params[..d], params[d]);
    let mut loss = 0.0;
    let mut grad = vec![0.0; d + 1];
    for (row, &label) in x.outer_iter().zip(y) {
        let z: f64 = row.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() + b;
        let t = if label { 1.0 } else { 0.0 };
        // -[t log p + (1 - t) log(1 - p)] = softplus(z) - t z
        loss += softplus(z) - t * z;
        let r = sigmoid(z) - t;
        for (g, xv) in grad.iter_mut().zip(row) {
            *g += r * xv;
        }
        grad[d] += r;
    }
    let inv = 1.0 / n as f64;
    loss *= inv;
    for g in &mut grad {
        *g *= inv;
    }
    for j in 0..d {
        loss += 0.5 * lambda * w[j] * w[j];
        grad[j] += lambda * w[j];
    }
    (loss, grad)
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

impl LogisticRegression {
    pub fn fit(x: ArrayView2<'_, f64>, y: &[bool], lambda: f64, tolerance: f64, max_iter: usize) -> Self {
        let d = x.ncols();
        let mut params = vec![0.0; d + 1];
        let (mut f, mut g) = objective(&params, x, y, lambda);
        let mut step = 1.0;
        let mut iterations = 0;
        while iterations < max_iter && norm(&g) >= tolerance {
            iterations += 1;
            let g2: f64 = g.iter().map(|v| v * v).sum();
            let (mut cand, mut fc, mut gc);
            loop {
                cand = params.iter().zip(&g).map(|(p, gi)| p - step * gi).collect::<Vec<_>>();
                (fc, gc) = objective(&cand, x, y, lambda);
                if fc <= f - 1e-4 * step * g2 || step < 1e-14 {
                    break;
                }
                step *= 0.5;
            }
            let s: Vec<f64> = cand.iter().zip(&params).map(|(a, b)| a - b).collect();
            let yv: Vec<f64> = gc.iter().zip(&g).map(|(a, b)| a - b).collect();
            let sy: f64 = s.iter().zip(&yv).map(|(a, b)| a * b).sum();
            let ss: f64 = s.iter().map(|v| v * v).sum();
            step = if sy > 0.0 { (ss / sy).clamp(1e-10, 1e10) } else { step * 2.0 };
            params = cand;
            f = fc;
            g = gc;
            if ss == 0.0 {
                break;
            }
        }
        let gradient_norm = norm(&g);
        if gradient_norm >= tolerance {
            log::debug!(
                "logistic regression stopped after {iterations} iterations with gradient norm {gradient_norm:.3e}"
            );
        }
        let bias = params.pop().unwrap_or(0.0);
        LogisticRegression {
            weights: params,
            bias,
            iterations,
            gradient_norm,
        }
    }

    pub fn score(&self, row: &[f64]) -> f64 {
        let z: f64 = row.iter().zip(&self.weights).map(|(a, b)| a * b).sum::<f64>() + self.bias;
        sigmoid(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn zero_weights_score_half() {
        let m = LogisticRegression {
            weights: vec![0.0; 3],
            bias: 0.0,
            iterations: 0,
            gradient_norm: 0.0,
        };
        assert_eq!(m.score(&[1.0, -4.0, 9.0]), 0.5);
    }

    #[test]
    fn converges_to_tolerance() {
        let x = array![[0.0, 1.0], [1.0, 0.5], [2.0, 0.0], [3.0, 1.5], [0.5, 2.0], [2.5, 2.0]];
        let y = [false, false, true, true, false, true];
        let m = LogisticRegression::fit(x.view(), &y, 1e-2, 1e-6, 100_000);
        assert!(m.gradient_norm < 1e-6);
        let acc = x
            .outer_iter()
            .zip(&y)
            .filter(|(r, &t)| (m.score(r.as_slice().unwrap()) >= 0.5) == t)
            .count();
        assert!(acc >= 5);
    }

    #[test]
    fn stable_helpers() {
        assert_eq!(sigmoid(-1000.0), 0.0);
        assert_eq!(sigmoid(1000.0), 1.0);
        assert!((softplus(800.0) - 800.0).abs() < 1e-12);
        assert!((softplus(0.0) - 2f64.ln()).abs() < 1e-15);
    }
}

//! One-hidden-layer network: sigmoid hidden units, logistic output, mean
//! cross-entropy loss, full-batch gradient descent.

use ndarray::ArrayView2;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::logreg::{sigmoid, softplus};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mlp {
    pub inputs: usize,
    pub hidden: usize,
    /// Row-major `hidden x inputs`.
    pub w1: Vec<f64>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: f64,
}

/// Default hidden width: ceil((d + 2) / 2).
pub fn default_hidden(inputs: usize) -> usize {
    (inputs + 2).div_ceil(2)
}

impl Mlp {
    /// Uniform initialization in ±1/sqrt(fan_in); zero biases.
    pub fn init(inputs: usize, hidden: usize, rng: &mut ChaCha8Rng) -> Self {
        let r1 = 1.0 / (inputs.max(1) as f64).sqrt();
        let r2 = 1.0 / (hidden.max(1) as f64).sqrt();
        Mlp {
            inputs,
            hidden,
            w1: (0..hidden * inputs).map(|_| rng.random_range(-r1..=r1)).collect(),
            b1: vec![0.0; hidden],
            w2: (0..hidden).map(|_| rng.random_range(-r2..=r2)).collect(),
            b2: 0.0,
        }
    }

    pub fn param_count(&self) -> usize {
        self.w1.len() + self.b1.len() + self.w2.len() + 1
    }

    pub fn params(&self) -> Vec<f64> {
        let mut p = Vec::with_capacity(self.param_count());
        p.extend(&self.w1);
        p.extend(&self.b1);
        p.extend(&self.w2);
        p.push(self.b2);
        p
    }

    pub fn set_params(&mut self, p: &[f64]) {
        let (h, d) = (self.hidden, self.inputs);
        self.w1.copy_from_slice(&p[..h * d]);
        self.b1.copy_from_slice(&p[h * d..h * d + h]);
        self.w2.copy_from_slice(&p[h * d + h..h * d + 2 * h]);
        self.b2 = p[h * d + 2 * h];
    }

    fn hidden_activations(&self, row: &[f64], out: &mut [f64]) {
        for (j, a) in out.iter_mut().enumerate() {
            let w = &self.w1[j * self.inputs..(j + 1) * self.inputs];
            let z: f64 = w.iter().zip(row).map(|(a, b)| a * b).sum::<f64>() + self.b1[j];
            *a = sigmoid(z);
        }
    }

    fn output_logit(&self, act: &[f64]) -> f64 {
        act.iter().zip(&self.w2).map(|(a, b)| a * b).sum::<f64>() + self.b2
    }

    pub fn score(&self, row: &[f64]) -> f64 {
        let mut act = vec![0.0; self.hidden];
        self.hidden_activations(row, &mut act);
        sigmoid(self.output_logit(&act))
    }

    /// Mean cross-entropy and its gradient in `params()` layout.
    pub fn loss_and_gradient(&self, x: ArrayView2<'_, f64>, y: &[bool]) -> (f64, Vec<f64>) {
        let (h, d) = (self.hidden, self.inputs);
        let mut grad = vec![0.0; self.param_count()];
        let mut loss = 0.0;
        let mut act = vec![0.0; h];
        for (row, &label) in x.outer_iter().zip(y) {
            let row = row.to_slice().map(std::borrow::Cow::Borrowed).unwrap_or_else(|| {
                std::borrow::Cow::Owned(row.to_vec())
            });
            self.hidden_activations(&row, &mut act);
            let z = self.output_logit(&act);
            let t = if label { 1.0 } else { 0.0 };
            loss += softplus(z) - t * z;
            let delta_out = sigmoid(z) - t;
            let (gw1, rest) = grad.split_at_mut(h * d);
            let (gb1, rest) = rest.split_at_mut(h);
            let (gw2, gb2) = rest.split_at_mut(h);
            gb2[0] += delta_out;
            for j in 0..h {
                gw2[j] += delta_out * act[j];
                let delta_h = delta_out * self.w2[j] * act[j] * (1.0 - act[j]);
                gb1[j] += delta_h;
                for (g, xv) in gw1[j * d..(j + 1) * d].iter_mut().zip(row.iter()) {
                    *g += delta_h * xv;
                }
            }
        }
        let inv = 1.0 / x.nrows() as f64;
        for g in &mut grad {
            *g *= inv;
        }
        (loss * inv, grad)
    }

    pub fn fit(
        x: ArrayView2<'_, f64>,
        y: &[bool],
        hidden: usize,
        learning_rate: f64,
        epochs: usize,
        rng: &mut ChaCha8Rng,
    ) -> Self {
        let mut net = Mlp::init(x.ncols(), hidden, rng);
        let mut params = net.params();
        for _ in 0..epochs {
            let (_, grad) = net.loss_and_gradient(x, y);
            for (p, g) in params.iter_mut().zip(&grad) {
                *p -= learning_rate * g;
            }
            net.set_params(&params);
        }
        net
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use rand::SeedableRng;

    #[test]
    fn hidden_width() {
        assert_eq!(default_hidden(1), 2);
        assert_eq!(default_hidden(4), 3);
        assert_eq!(default_hidden(5), 4);
    }

    #[test]
    fn param_round_trip() {
        let mut net = Mlp::init(3, 2, &mut ChaCha8Rng::seed_from_u64(0));
        let p: Vec<f64> = (0..net.param_count()).map(|i| i as f64).collect();
        net.set_params(&p);
        assert_eq!(net.params(), p);
    }

    #[test]
    fn learns_xor_free_problem() {
        let x = array![[-2.0, -1.0], [-1.0, -2.0], [1.0, 2.0], [2.0, 1.0]];
        let y = [false, false, true, true];
        let net = Mlp::fit(x.view(), &y, 2, 0.3, 500, &mut ChaCha8Rng::seed_from_u64(5));
        for (row, &t) in x.outer_iter().zip(&y) {
            assert_eq!(net.score(row.as_slice().unwrap()) >= 0.5, t);
        }
    }
}

//! Principal component analysis by symmetric eigendecomposition.
//!
//! With `d <= n` the `d x d` covariance is decomposed directly; otherwise the
//! `n x n` Gram matrix of the centered rows is decomposed and its eigenvectors
//! mapped back to feature space. Components are sorted by decreasing variance
//! and signed so that each one's largest-magnitude entry is positive.

use nalgebra::{DMatrix, SymmetricEigen};
use ndarray::{Array1, Array2, ArrayView2, Axis};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PcaModel {
    pub mean: Array1<f64>,
    /// `k x d`, one unit-norm component per row.
    pub components: Array2<f64>,
    pub explained_variance: Vec<f64>,
    pub k: usize,
}

/// Eigenvalues under this fraction of the largest are treated as zero.
const RANK_TOLERANCE: f64 = 1e-10;

fn to_nalgebra(a: &Array2<f64>) -> DMatrix<f64> {
    let (r, c) = a.dim();
    DMatrix::from_fn(r, c, |i, j| a[[i, j]])
}

/// Eigenpairs sorted by decreasing eigenvalue, ties by original position.
fn sorted_eigen(m: DMatrix<f64>) -> Vec<(f64, Vec<f64>)> {
    let eig = SymmetricEigen::new(m);
    let mut pairs: Vec<(usize, f64)> = eig.eigenvalues.iter().copied().enumerate().collect();
    pairs.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    pairs
        .into_iter()
        .map(|(i, v)| (v, eig.eigenvectors.column(i).iter().copied().collect()))
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Removes the projections onto `basis` (twice, for stability) and normalizes.
/// Returns `None` if nothing substantial remains.
fn orthonormalize(mut v: Vec<f64>, basis: &[Vec<f64>]) -> Option<Vec<f64>> {
    let before = dot(&v, &v).sqrt();
    for _ in 0..2 {
        for b in basis {
            let p = dot(&v, b);
            for (x, y) in v.iter_mut().zip(b) {
                *x -= p * y;
            }
        }
    }
    let norm = dot(&v, &v).sqrt();
    if norm <= 1e-8 * before.max(f64::MIN_POSITIVE) {
        return None;
    }
    v.iter_mut().for_each(|x| *x /= norm);
    Some(v)
}

fn fix_sign(v: &mut [f64]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v[best] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

impl PcaModel {
    pub fn fit(x: ArrayView2<'_, f64>, k: usize) -> Result<PcaModel> {
        let (n, d) = x.dim();
        if n < 2 {
            return Err(Error::TooFewRows { needed: 2, actual: n });
        }
        let mean = x.mean_axis(Axis(0)).expect("n >= 2");
        let centered = &x - &mean;
        let scale = 1.0 / (n - 1) as f64;

        let total_variance: f64 = centered.iter().map(|v| v * v).sum::<f64>() * scale;
        if total_variance <= 0.0 {
            return Ok(PcaModel {
                mean,
                components: Array2::zeros((0, d)),
                explained_variance: Vec::new(),
                k: 0,
            });
        }

        let limit = k.min(n - 1).min(d);
        if limit < k {
            log::warn!("requested {k} principal components, clamped to {limit} (n = {n}, d = {d})");
        }

        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(limit);
        let mut variances = Vec::with_capacity(limit);
        if d <= n {
            let cov = centered.t().dot(&centered) * scale;
            for (value, vector) in sorted_eigen(to_nalgebra(&cov)).into_iter().take(limit) {
                variances.push(value.max(0.0));
                basis.push(vector);
            }
        } else {
            let gram = centered.dot(&centered.t()) * scale;
            let pairs = sorted_eigen(to_nalgebra(&gram));
            let top = pairs.first().map_or(0.0, |p| p.0).max(0.0);
            for (value, u) in pairs.into_iter().take(limit) {
                if value <= RANK_TOLERANCE * top {
                    break;
                }
                let u = Array1::from(u);
                let v = centered.t().dot(&u).to_vec();
                if let Some(v) = orthonormalize(v, &basis) {
                    basis.push(v);
                    variances.push(value);
                }
            }
        }
        // Null directions: complete the basis deterministically.
        let mut axis = 0;
        while basis.len() < limit && axis < d {
            let mut e = vec![0.0; d];
            e[axis] = 1.0;
            if let Some(v) = orthonormalize(e, &basis) {
                basis.push(v);
                variances.push(0.0);
            }
            axis += 1;
        }

        let mut components = Array2::zeros((basis.len(), d));
        for (i, mut v) in basis.into_iter().enumerate() {
            fix_sign(&mut v);
            components.row_mut(i).assign(&Array1::from(v));
        }
        let k = components.nrows();
        Ok(PcaModel {
            mean,
            components,
            explained_variance: variances,
            k,
        })
    }

    pub fn dimension(&self) -> usize {
        self.mean.len()
    }

    pub fn transform(&self, x: ArrayView2<'_, f64>) -> Result<Array2<f64>> {
        if x.ncols() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                actual: x.ncols(),
            });
        }
        Ok((&x - &self.mean).dot(&self.components.t()))
    }

    pub fn inverse_transform(&self, z: ArrayView2<'_, f64>) -> Result<Array2<f64>> {
        if z.ncols() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                actual: z.ncols(),
            });
        }
        Ok(z.dot(&self.components) + &self.mean)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(n: usize, d: usize, seed: u64) -> Array2<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Array2::from_shape_fn((n, d), |_| rng.random_range(-1.0..1.0))
    }

    fn max_orthonormality_error(c: &Array2<f64>) -> f64 {
        let g = c.dot(&c.t());
        let mut worst = 0.0f64;
        for ((i, j), v) in g.indexed_iter() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((v - target).abs());
        }
        worst
    }

    #[test]
    fn diagonal_points() {
        let x = array![[1.0, 1.0], [2.0, 2.0], [3.0, 3.0], [-1.0, -1.0]];
        let m = PcaModel::fit(x.view(), 2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((m.components[[0, 0]] - h).abs() < 1e-12);
        assert!((m.components[[0, 1]] - h).abs() < 1e-12);
        assert!(m.explained_variance[1].abs() < 1e-12);
        let z = m.transform(array![[2.0, 2.0]].view()).unwrap();
        assert!((z[[0, 0]] - 0.75 * 2f64.sqrt()).abs() < 1e-12);
        let at_mean = m.transform(array![[1.25, 1.25]].view()).unwrap();
        assert!(at_mean.iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn unit_projection() {
        let x = array![[0.0], [2.0]];
        let m = PcaModel::fit(x.view(), 1).unwrap();
        let z = m.transform(array![[2.0]].view()).unwrap();
        assert!((z[[0, 0]] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn clamps_k() {
        let m = PcaModel::fit(random_matrix(100, 50, 1).view(), 500).unwrap();
        assert_eq!(m.k, 50);
        assert!(max_orthonormality_error(&m.components) < 1e-9);
    }

    #[test]
    fn zero_variance_gives_no_components() {
        let x = Array2::from_elem((5, 3), 2.0);
        let m = PcaModel::fit(x.view(), 2).unwrap();
        assert_eq!(m.k, 0);
        assert_eq!(m.transform(x.view()).unwrap().dim(), (5, 0));
    }

    #[test]
    fn too_few_rows() {
        assert!(matches!(
            PcaModel::fit(array![[1.0, 2.0]].view(), 1),
            Err(Error::TooFewRows { .. })
        ));
    }

    #[test]
    fn identity_regime_reconstructs() {
        let x = random_matrix(30, 6, 2);
        let m = PcaModel::fit(x.view(), 6).unwrap();
        let back = m.inverse_transform(m.transform(x.view()).unwrap().view()).unwrap();
        let err = (&back - &x).iter().fold(0.0f64, |a, v| a.max(v.abs()));
        assert!(err < 1e-9, "{err}");
    }

    #[test]
    fn wide_matrix_uses_gram_route() {
        let x = random_matrix(12, 40, 3);
        let m = PcaModel::fit(x.view(), 500).unwrap();
        assert_eq!(m.k, 11);
        assert!(max_orthonormality_error(&m.components) < 1e-9);
        // Agrees with the covariance route on the transposed problem size.
        let cov_route = PcaModel::fit(x.view(), 11).unwrap();
        assert_eq!(cov_route.k, 11);
        for (a, b) in m.explained_variance.iter().zip(&cov_route.explained_variance) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn wide_rank_deficient() {
        // Three distinct rows repeated: rank 2 after centering.
        let base = random_matrix(3, 20, 4);
        let x = ndarray::concatenate![Axis(0), base, base];
        let m = PcaModel::fit(x.view(), 5).unwrap();
        assert_eq!(m.k, 5);
        assert!(max_orthonormality_error(&m.components) < 1e-9);
        assert!(m.explained_variance[2..].iter().all(|&v| v == 0.0));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn invariants(seed in 0u64..10_000, n in 3usize..25, d in 1usize..12, k in 1usize..15) {
            let x = random_matrix(n, d, seed);
            let m = PcaModel::fit(x.view(), k).unwrap();
            prop_assert!(max_orthonormality_error(&m.components) < 1e-9);
            prop_assert!(m.explained_variance.windows(2).all(|w| w[0] >= w[1]));
            let centered = &x - &m.mean;
            let total = centered.iter().map(|v| v * v).sum::<f64>() / (n - 1) as f64;
            prop_assert!(m.explained_variance.iter().sum::<f64>() <= total + 1e-9);

            let z = m.transform(x.view()).unwrap();
            for a in 0..m.k {
                for b in (a + 1)..m.k {
                    let cov = z.column(a).dot(&z.column(b)) / (n - 1) as f64;
                    prop_assert!(cov.abs() < 1e-6);
                }
            }

            let mut rows: Vec<usize> = (0..n).collect();
            rows.reverse();
            let shuffled = x.select(Axis(0), &rows);
            let m2 = PcaModel::fit(shuffled.view(), k).unwrap();
            for (a, b) in m.explained_variance.iter().zip(&m2.explained_variance) {
                prop_assert!((a - b).abs() < 1e-9);
            }
        }
    }
}

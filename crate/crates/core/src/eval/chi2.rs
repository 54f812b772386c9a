use ndarray::ArrayView2;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::corpus::Polarity;
use crate::{Error, Result};

pub const DEFAULT_BINS: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedFeature {
    pub rank: usize,
    pub feature: String,
    pub chi2: f64,
    pub p_value: f64,
}

/// Equal-frequency bin index per value. Cut points are taken at the
/// `i * n / bins` order statistics; coinciding cuts collapse into one.
pub fn equal_frequency_bins(values: &[f64], bins: usize) -> Vec<usize> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let mut cuts: Vec<f64> = (1..bins).filter_map(|i| sorted.get(i * n / bins).copied()).collect();
    cuts.dedup();
    if let Some(&min) = sorted.first() {
        cuts.retain(|&c| c > min);
    }
    values
        .iter()
        .map(|v| cuts.partition_point(|&c| c <= *v))
        .collect()
}

/// Pearson chi-squared statistic and p-value of a bins x 2 contingency table.
pub fn chi2_statistic(bins: &[usize], labels: &[Polarity]) -> (f64, f64) {
    let width = bins.iter().max().map_or(0, |m| m + 1);
    let mut table = vec![[0usize; 2]; width];
    for (&b, l) in bins.iter().zip(labels) {
        table[b][l.is_positive() as usize] += 1;
    }
    table.retain(|row| row[0] + row[1] > 0);
    let n = labels.len() as f64;
    let col = [0, 1].map(|c| table.iter().map(|r| r[c]).sum::<usize>() as f64);
    let mut stat = 0.0;
    for row in &table {
        let total = (row[0] + row[1]) as f64;
        for c in 0..2 {
            let expected = total * col[c] / n;
            if expected > 0.0 {
                let d = row[c] as f64 - expected;
                stat += d * d / expected;
            }
        }
    }
    let dof = table.len().saturating_sub(1) * (col.iter().filter(|&&c| c > 0.0).count().saturating_sub(1));
    let p = if dof == 0 {
        1.0
    } else {
        ChiSquared::new(dof as f64).expect("positive dof").sf(stat)
    };
    (stat, p)
}

/// Features ranked by decreasing chi-squared association with the label;
/// ties broken by feature name.
pub fn chi2_rank(x: ArrayView2<'_, f64>, names: &[String], labels: &[Polarity], bins: usize) -> Result<Vec<RankedFeature>> {
    if bins < 2 {
        return Err(Error::Config(format!("need at least 2 bins, got {bins}")));
    }
    if names.len() != x.ncols() {
        return Err(Error::DimensionMismatch {
            expected: names.len(),
            actual: x.ncols(),
        });
    }
    if labels.len() != x.nrows() {
        return Err(Error::LengthMismatch {
            left: x.nrows(),
            right: labels.len(),
        });
    }
    if labels.iter().all(|l| l.is_positive()) || labels.iter().all(|l| !l.is_positive()) {
        return Err(Error::SingleClass);
    }
    let mut out: Vec<RankedFeature> = names
        .iter()
        .enumerate()
        .map(|(j, name)| {
            let col: Vec<f64> = x.column(j).to_vec();
            let (chi2, p_value) = chi2_statistic(&equal_frequency_bins(&col, bins), labels);
            RankedFeature {
                rank: 0,
                feature: name.clone(),
                chi2,
                p_value,
            }
        })
        .collect();
    out.sort_by(|a, b| b.chi2.total_cmp(&a.chi2).then_with(|| a.feature.cmp(&b.feature)));
    for (i, r) in out.iter_mut().enumerate() {
        r.rank = i + 1;
    }
    Ok(out)
}

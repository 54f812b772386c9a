use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::Polarity;
use crate::{Error, Result};

/// Fold index per instance. Each class is shuffled with one seeded stream
/// (positives first) and dealt round-robin; the dealing offset carries over
/// from one class to the next so fold sizes stay within one of each other.
pub fn stratified_kfold(labels: &[Polarity], k: usize, seed: u64) -> Result<Vec<usize>> {
    if k < 2 {
        return Err(Error::Config(format!("fold count must be at least 2, got {k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![0; labels.len()];
    let mut offset = 0;
    for class in [Polarity::Positive, Polarity::Negative] {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        if members.len() < k {
            return Err(Error::ClassTooSmall {
                class: class.to_string(),
                count: members.len(),
                folds: k,
            });
        }
        members.shuffle(&mut rng);
        for (j, &i) in members.iter().enumerate() {
            assignment[i] = (offset + j) % k;
        }
        offset = (offset + members.len()) % k;
    }
    Ok(assignment)
}

/// Stable per-fold seed derived from a run seed (SplitMix64 finalizer).
pub fn fold_seed(seed: u64, fold: usize) -> u64 {
    let mut z = seed ^ (fold as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

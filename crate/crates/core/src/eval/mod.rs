//! Evaluation protocol: folds, weighted P/R/F, feature ranking, paired
//! significance, cross-validation and the held-out stratified experiment.

mod chi2;
mod cv;
mod folds;
mod mcnemar;
mod metrics;

pub use chi2::{chi2_rank, chi2_statistic, equal_frequency_bins, RankedFeature, DEFAULT_BINS};
pub use cv::{
    cross_validate, cross_validate_matrix, heldout_experiment, with_jobs, ComboSpec, HeldoutPredictions, HeldoutRow,
    ResultRow,
};
pub use folds::{fold_seed, stratified_kfold};
pub use mcnemar::{mcnemar, mcnemar_counts, McNemar};
pub use metrics::{class_frequency_baseline, prf, prf_partial, simulate_random_baseline, Prf};

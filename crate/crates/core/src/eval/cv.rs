use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{Dataset, Polarity, Snippet};
use crate::eval::{fold_seed, prf, stratified_kfold, Prf};
use crate::features::{BlockSet, FeatureMatrix, FeaturePipeline, PipelineConfig};
use crate::learners::{train, Hyperparams, ModelKind};
use crate::text::{LexicalPolarityModel, Lexicons};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComboSpec {
    pub blocks: BlockSet,
    pub model: ModelKind,
    pub seed: u64,
    pub folds: usize,
}

impl ComboSpec {
    pub fn new(blocks: BlockSet, model: ModelKind, seed: u64, folds: usize) -> Self {
        ComboSpec {
            blocks,
            model,
            seed,
            folds,
        }
    }

    pub fn name(&self) -> String {
        format!("{}/{}", self.blocks, self.model)
    }
}

impl fmt::Display for ComboSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub combo: String,
    pub blocks: String,
    pub model: String,
    pub seed: u64,
    pub folds: usize,
    #[serde(flatten)]
    pub prf: Prf,
    /// Out-of-fold prediction per instance, in dataset order.
    #[serde(skip)]
    pub predictions: Vec<Polarity>,
    #[serde(skip)]
    pub fold_of: Vec<usize>,
}

/// Runs `f` on a dedicated pool of `jobs` threads (0 = rayon default).
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

struct FoldOutput {
    test: Vec<usize>,
    /// Per combo index: labels predicted for `test`.
    predictions: Vec<(usize, Vec<Polarity>)>,
}

fn assemble(combo: &ComboSpec, fold_of: &[usize], gold: &[Polarity], outputs: &[FoldOutput], slot: usize) -> Result<ResultRow> {
    let mut predictions = vec![Polarity::Negative; gold.len()];
    let mut seen = vec![false; gold.len()];
    for out in outputs {
        let (_, preds) = out
            .predictions
            .iter()
            .find(|(c, _)| *c == slot)
            .expect("every fold predicts every combo of its group");
        for (&i, &p) in out.test.iter().zip(preds) {
            predictions[i] = p;
            seen[i] = true;
        }
    }
    debug_assert!(seen.iter().all(|&s| s));
    Ok(ResultRow {
        combo: combo.name(),
        blocks: combo.blocks.to_string(),
        model: combo.model.to_string(),
        seed: combo.seed,
        folds: combo.folds,
        prf: prf(&predictions, gold)?,
        predictions,
        fold_of: fold_of.to_vec(),
    })
}

fn train_predict(
    combo: &ComboSpec,
    train_m: &FeatureMatrix,
    test_m: &FeatureMatrix,
    hyper: &Hyperparams,
    seed: u64,
) -> Result<Vec<Polarity>> {
    let tr = train_m.select(&combo.blocks);
    let te = test_m.select(&combo.blocks);
    let model = train(combo.model, tr.data.view(), &tr.labels, hyper, seed, tr.names.clone())?;
    Ok(model.predict(te.data.view())?.into_iter().map(|p| p.label).collect())
}

/// Groups combos by (seed, folds) so folds and fitted pipelines are shared.
fn groups(combos: &[ComboSpec]) -> BTreeMap<(u64, usize), Vec<usize>> {
    let mut g: BTreeMap<(u64, usize), Vec<usize>> = BTreeMap::new();
    for (i, c) in combos.iter().enumerate() {
        g.entry((c.seed, c.folds)).or_default().push(i);
    }
    g
}

/// Stratified cross-validation on a corpus. Vocabulary, PCA blocks, the LP
/// model (unless auxiliary) and feature standardization are all fitted inside
/// each training fold.
pub fn cross_validate(
    dataset: &Dataset,
    lexicons: &Lexicons,
    auxiliary_lp: Option<&LexicalPolarityModel>,
    combos: &[ComboSpec],
    pipeline: &PipelineConfig,
    hyper: &Hyperparams,
) -> Result<Vec<ResultRow>> {
    let gold = dataset.labels();
    let mut rows: Vec<Option<ResultRow>> = vec![None; combos.len()];
    for ((seed, folds), members) in groups(combos) {
        let fold_of = stratified_kfold(&gold, folds, seed)?;
        let outputs: Vec<FoldOutput> = (0..folds)
            .into_par_iter()
            .map(|fold| -> Result<FoldOutput> {
                let train_idx: Vec<usize> = (0..gold.len()).filter(|&i| fold_of[i] != fold).collect();
                let test: Vec<usize> = (0..gold.len()).filter(|&i| fold_of[i] == fold).collect();
                let snippets: Vec<&Snippet> = train_idx.iter().map(|&i| &dataset.snippets()[i]).collect();
                let cfg = PipelineConfig {
                    seed: fold_seed(seed, fold),
                    ..*pipeline
                };
                let p = FeaturePipeline::fit(&snippets, lexicons, auxiliary_lp, &cfg)?;
                let train_m = p.transform(dataset, &train_idx, lexicons)?;
                let test_m = p.transform(dataset, &test, lexicons)?;
                let predictions = members
                    .iter()
                    .map(|&c| Ok((c, train_predict(&combos[c], &train_m, &test_m, hyper, fold_seed(combos[c].seed, fold))?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(FoldOutput { test, predictions })
            })
            .collect::<Result<_>>()?;
        for &c in &members {
            rows[c] = Some(assemble(&combos[c], &fold_of, &gold, &outputs, c)?);
        }
    }
    Ok(rows.into_iter().map(|r| r.expect("all combos evaluated")).collect())
}

/// Cross-validation over precomputed feature columns.
pub fn cross_validate_matrix(matrix: &FeatureMatrix, combos: &[ComboSpec], hyper: &Hyperparams) -> Result<Vec<ResultRow>> {
    let gold = matrix.labels.clone();
    let mut rows: Vec<Option<ResultRow>> = vec![None; combos.len()];
    for ((seed, folds), members) in groups(combos) {
        let fold_of = stratified_kfold(&gold, folds, seed)?;
        let outputs: Vec<FoldOutput> = (0..folds)
            .into_par_iter()
            .map(|fold| -> Result<FoldOutput> {
                let train_idx: Vec<usize> = (0..gold.len()).filter(|&i| fold_of[i] != fold).collect();
                let test: Vec<usize> = (0..gold.len()).filter(|&i| fold_of[i] == fold).collect();
                let train_m = matrix.rows(&train_idx);
                let test_m = matrix.rows(&test);
                let predictions = members
                    .iter()
                    .map(|&c| Ok((c, train_predict(&combos[c], &train_m, &test_m, hyper, fold_seed(combos[c].seed, fold))?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(FoldOutput { test, predictions })
            })
            .collect::<Result<_>>()?;
        for &c in &members {
            rows[c] = Some(assemble(&combos[c], &fold_of, &gold, &outputs, c)?);
        }
    }
    Ok(rows.into_iter().map(|r| r.expect("all combos evaluated")).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeldoutRow {
    pub combo: String,
    pub stratum: String,
    pub instances: usize,
    pub f: f64,
}

/// Predictions of one combo on the held-out set, in held-out order.
#[derive(Debug, Clone, PartialEq)]
pub struct HeldoutPredictions {
    pub combo: String,
    pub predictions: Vec<Polarity>,
}

/// Trains one model per combo on `train_set` and scores the held-out
/// snippets separately on the complex (`is_complex = true`) and simple strata.
pub fn heldout_experiment(
    train_set: &Dataset,
    heldout: &Dataset,
    lexicons: &Lexicons,
    auxiliary_lp: Option<&LexicalPolarityModel>,
    combos: &[ComboSpec],
    pipeline: &PipelineConfig,
    hyper: &Hyperparams,
) -> Result<(Vec<HeldoutRow>, Vec<HeldoutPredictions>)> {
    for s in heldout.snippets() {
        if train_set.get(&s.snippet_id).is_some() {
            return Err(Error::Config(format!(
                "held-out snippet `{}` also appears in the training set",
                s.snippet_id
            )));
        }
    }
    let mut strata: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for (i, s) in heldout.snippets().iter().enumerate() {
        match s.is_complex {
            Some(true) => strata[0].push(i),
            Some(false) => strata[1].push(i),
            None => {
                return Err(Error::Config(format!(
                    "held-out snippet `{}` has no is_complex flag",
                    s.snippet_id
                )))
            }
        }
    }
    for (name, idx) in ["complex", "simple"].iter().zip(&strata) {
        if idx.is_empty() {
            return Err(Error::EmptyStratum(name.to_string()));
        }
    }

    let train_snippets: Vec<&Snippet> = train_set.snippets().iter().collect();
    let p = FeaturePipeline::fit(&train_snippets, lexicons, auxiliary_lp, pipeline)?;
    let all_train: Vec<usize> = (0..train_set.len()).collect();
    let all_held: Vec<usize> = (0..heldout.len()).collect();
    let train_m = p.transform(train_set, &all_train, lexicons)?;
    let held_m = p.transform(heldout, &all_held, lexicons)?;
    let gold = heldout.labels();

    let per_combo: Vec<Vec<Polarity>> = combos
        .par_iter()
        .map(|c| train_predict(c, &train_m, &held_m, hyper, c.seed))
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    let mut preds = Vec::new();
    for (c, predicted) in combos.iter().zip(per_combo) {
        for (name, idx) in ["complex", "simple"].iter().zip(&strata) {
            let p: Vec<Polarity> = idx.iter().map(|&i| predicted[i]).collect();
            let g: Vec<Polarity> = idx.iter().map(|&i| gold[i]).collect();
            rows.push(HeldoutRow {
                combo: c.name(),
                stratum: name.to_string(),
                instances: idx.len(),
                f: prf(&p, &g)?.f,
            });
        }
        preds.push(HeldoutPredictions {
            combo: c.name(),
            predictions: predicted,
        });
    }
    Ok((rows, preds))
}

use std::path::{Path, PathBuf};

use anyhow::Context;
use cogsent_core::corpus::{write_corpus, write_gaze, Polarity};
use cogsent_core::eval::{
    chi2_rank, cross_validate, cross_validate_matrix, heldout_experiment, mcnemar as mcnemar_test, prf_partial,
    with_jobs, ComboSpec, ResultRow,
};
use cogsent_core::features::{extract_all, BlockSet, FeatureMatrix};
use cogsent_core::learners::{rule_based_classify, train as fit_model, Model, ModelKind};
use cogsent_core::synth::{builtin_lexicons, generate, SynthConfig};
use ndarray::Array2;
use serde::Serialize;

use crate::args::*;
use crate::files::{self, PredictionRecord};
use crate::manifest::RunManifest;
use crate::usage;

fn optional<const N: usize>(paths: [Option<&PathBuf>; N]) -> Vec<&Path> {
    paths.into_iter().flatten().map(|p| p.as_path()).collect()
}

pub fn extract(a: ExtractArgs, jobs: usize) -> anyhow::Result<()> {
    let Some(corpus) = &a.input.corpus else {
        return usage("extract needs --corpus");
    };
    let lex_dir = files::lexicon_dir(a.input.lexicons.as_ref())?;
    let lexicons = files::load_lexicons(lex_dir)?;
    let data = files::load_dataset(corpus, a.input.gaze.as_deref())?;
    if !data.has_gaze() {
        log::warn!("no gaze records: Gz_ gaze columns will be zero");
    }
    let lp = files::load_lp(a.input.lp_corpus.as_deref())?;
    let matrix = with_jobs(jobs, || extract_all(&data, &lexicons, lp.as_ref(), &a.pipeline.config(a.seed)))?;
    matrix.write_csv(files::create(&a.out)?)?;
    log::info!("{} snippets, {} features -> {}", matrix.len(), matrix.names.len(), a.out.display());

    let inputs = optional([Some(corpus), a.input.gaze.as_ref(), Some(lex_dir), a.input.lp_corpus.as_ref()]);
    RunManifest::new("extract", &a, Some(a.seed), &inputs)?.write_for(&a.out)
}

pub fn train(a: TrainArgs) -> anyhow::Result<()> {
    let blocks: BlockSet = a.combo.parse()?;
    let kind: ModelKind = a.model.parse()?;
    let m = files::read_features(&a.features)?.select(&blocks);
    if m.names.is_empty() {
        return usage(format!("no columns of {} in {}", a.combo, a.features.display()));
    }
    let model = fit_model(kind, m.data.view(), &m.labels, &a.hyper.hyperparams(), a.seed, m.names.clone())?;
    model.save(files::create(&a.out)?)?;
    RunManifest::new("train", &a, Some(a.seed), &[&a.features])?.write_for(&a.out)
}

/// Columns of `m` in the order the model was trained on.
fn columns_for(model: &Model, m: &FeatureMatrix) -> anyhow::Result<Array2<f64>> {
    let mut idx = Vec::with_capacity(model.feature_names.len());
    for name in &model.feature_names {
        match m.names.iter().position(|n| n == name) {
            Some(i) => idx.push(i),
            None => {
                return Err(cogsent_core::Error::FeatureFile(format!("feature `{name}` missing from input")).into())
            }
        }
    }
    Ok(m.data.select(ndarray::Axis(1), &idx))
}

pub fn predict(a: PredictArgs) -> anyhow::Result<()> {
    let model = Model::load(std::fs::File::open(&a.model).with_context(|| format!("opening {}", a.model.display()))?)
        .with_context(|| format!("model {}", a.model.display()))?;
    let m = files::read_features(&a.features)?;
    let x = columns_for(&model, &m)?;
    let rows: Vec<PredictionRecord> = model
        .predict(x.view())?
        .into_iter()
        .zip(&m.ids)
        .map(|(p, id)| PredictionRecord {
            snippet_id: id.clone(),
            label: p.label.as_str().to_string(),
            score: Some(p.score),
        })
        .collect();
    files::write_records(&a.out, &rows)?;
    RunManifest::new("predict", &a, Some(model.seed), &[&a.model, &a.features])?.write_for(&a.out)
}

#[derive(Serialize)]
struct ResultRecord<'a> {
    combo: &'a str,
    #[serde(rename = "P")]
    precision: f64,
    #[serde(rename = "R")]
    recall: f64,
    #[serde(rename = "F")]
    f: f64,
    seed: u64,
}

fn combos(blocks: &[String], models: &[String], seeds: &[u64], folds: usize) -> anyhow::Result<Vec<ComboSpec>> {
    let mut out = Vec::new();
    for b in blocks {
        let set: BlockSet = b.parse()?;
        for m in models {
            let kind: ModelKind = m.parse()?;
            for &seed in seeds {
                out.push(ComboSpec::new(set.clone(), kind, seed, folds));
            }
        }
    }
    Ok(out)
}

fn print_table(header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        println!("{}", parts.join("  ").trim_end());
    };
    line(header.to_vec());
    for r in rows {
        line(r.iter().map(String::as_str).collect());
    }
}

fn write_cv_predictions(dir: &Path, ids: &[String], gold: &[Polarity], rows: &[ResultRow]) -> anyhow::Result<()> {
    std::fs::create_dir_all(dir)?;
    let record = |labels: &[Polarity]| -> Vec<PredictionRecord> {
        ids.iter()
            .zip(labels)
            .map(|(id, l)| PredictionRecord {
                snippet_id: id.clone(),
                label: l.as_str().to_string(),
                score: None,
            })
            .collect()
    };
    files::write_records(&dir.join("gold.csv"), &record(gold))?;
    for r in rows {
        let name = format!("{}_{}_seed{}.csv", r.blocks, r.model, r.seed);
        files::write_records(&dir.join(name), &record(&r.predictions))?;
    }
    Ok(())
}

pub fn cv(a: CvArgs, jobs: usize) -> anyhow::Result<()> {
    let specs = combos(&a.combo, &a.model, &a.seed, a.folds)?;
    let hyper = a.hyper.hyperparams();
    let (rows, ids, gold, inputs): (Vec<ResultRow>, Vec<String>, Vec<Polarity>, Vec<PathBuf>) =
        match (&a.features, &a.input.corpus) {
            (Some(f), None) => {
                let m = files::read_features(f)?;
                let rows = with_jobs(jobs, || cross_validate_matrix(&m, &specs, &hyper))?;
                (rows, m.ids, m.labels, vec![f.clone()])
            }
            (None, Some(c)) => {
                let lex_dir = files::lexicon_dir(a.input.lexicons.as_ref())?;
                let lexicons = files::load_lexicons(lex_dir)?;
                let data = files::load_dataset(c, a.input.gaze.as_deref())?;
                let lp = files::load_lp(a.input.lp_corpus.as_deref())?;
                let cfg = a.pipeline.config(a.seed[0]);
                let rows = with_jobs(jobs, || cross_validate(&data, &lexicons, lp.as_ref(), &specs, &cfg, &hyper))?;
                let ids = data.snippets().iter().map(|s| s.snippet_id.clone()).collect();
                let inputs = [Some(c), a.input.gaze.as_ref(), Some(lex_dir), a.input.lp_corpus.as_ref()]
                    .into_iter()
                    .flatten()
                    .cloned()
                    .collect();
                (rows, ids, data.labels(), inputs)
            }
            _ => return usage("cv needs exactly one of --features or --corpus"),
        };

    let records: Vec<ResultRecord> = rows
        .iter()
        .map(|r| ResultRecord {
            combo: &r.combo,
            precision: r.prf.precision,
            recall: r.prf.recall,
            f: r.prf.f,
            seed: r.seed,
        })
        .collect();
    files::write_records(&a.out, &records)?;
    print_table(
        &["combo", "P", "R", "F", "seed"],
        &records
            .iter()
            .map(|r| {
                vec![
                    r.combo.to_string(),
                    format!("{:.2}", r.precision),
                    format!("{:.2}", r.recall),
                    format!("{:.2}", r.f),
                    r.seed.to_string(),
                ]
            })
            .collect::<Vec<_>>(),
    );

    let input_refs: Vec<&Path> = inputs.iter().map(PathBuf::as_path).collect();
    let manifest = RunManifest::new("cv", &a, a.seed.first().copied(), &input_refs)?;
    manifest.write_for(&a.out)?;
    if let Some(dir) = &a.predictions {
        write_cv_predictions(dir, &ids, &gold, &rows)?;
        manifest.write_for(dir)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct RankRecord<'a> {
    rank: usize,
    feature: &'a str,
    chi2: f64,
    p: f64,
}

pub fn rank(a: RankArgs) -> anyhow::Result<()> {
    let mut m = files::read_features(&a.features)?;
    if let Some(c) = &a.combo {
        m = m.select(&c.parse()?);
    }
    let ranked = chi2_rank(m.data.view(), &m.names, &m.labels, a.bins)?;
    let records: Vec<RankRecord> = ranked
        .iter()
        .map(|r| RankRecord {
            rank: r.rank,
            feature: &r.feature,
            chi2: r.chi2,
            p: r.p_value,
        })
        .collect();
    files::write_records(&a.out, &records)?;
    print_table(
        &["rank", "feature", "chi2", "p"],
        &records
            .iter()
            .take(a.top)
            .map(|r| vec![r.rank.to_string(), r.feature.to_string(), format!("{:.4}", r.chi2), format!("{:.4e}", r.p)])
            .collect::<Vec<_>>(),
    );
    RunManifest::new("rank", &a, None, &[&a.features])?.write_for(&a.out)
}

#[derive(Serialize)]
struct McnemarRecord {
    b: usize,
    c: usize,
    statistic: f64,
    p_value: f64,
    /// b / c as text, since it may be infinite or undefined.
    odds_ratio: String,
}

pub fn mcnemar(a: McnemarArgs) -> anyhow::Result<()> {
    let gold = files::read_labels(&a.gold)?;
    let order: Vec<String> = gold.iter().map(|(id, _)| id.clone()).collect();
    let gold: Vec<Polarity> = gold.into_iter().map(|(_, l)| l).collect();
    let pa = files::align(&order, files::read_labels(&a.a)?, &a.a)?;
    let pb = files::align(&order, files::read_labels(&a.b)?, &a.b)?;
    let r = mcnemar_test(&pa, &pb, &gold)?;
    println!(
        "b = {}  c = {}  statistic = {:.4}  p = {:.4}  odds ratio = {}",
        r.b, r.c, r.statistic, r.p_value, r.odds_ratio
    );
    if let Some(out) = &a.out {
        let rec = McnemarRecord {
            b: r.b,
            c: r.c,
            statistic: r.statistic,
            p_value: r.p_value,
            odds_ratio: r.odds_ratio.to_string(),
        };
        let mut text = serde_json::to_string_pretty(&rec)?;
        text.push('\n');
        std::fs::write(out, text).with_context(|| format!("writing {}", out.display()))?;
        RunManifest::new("mcnemar", &a, None, &[&a.a, &a.b, &a.gold])?.write_for(out)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct HeldoutRecord<'a> {
    combo: &'a str,
    stratum: &'a str,
    instances: usize,
    #[serde(rename = "F")]
    f: f64,
    seed: u64,
}

pub fn heldout(a: HeldoutArgs, jobs: usize) -> anyhow::Result<()> {
    let specs = combos(&a.combo, &a.model, &[a.seed], 10)?;
    let lex_dir = files::lexicon_dir(a.lexicons.as_ref())?;
    let lexicons = files::load_lexicons(lex_dir)?;
    let train_set = files::load_dataset(&a.train_corpus, a.train_gaze.as_deref())?;
    let held = files::load_dataset(&a.heldout_corpus, a.heldout_gaze.as_deref())?;
    let lp = files::load_lp(a.lp_corpus.as_deref())?;
    let (rows, _) = with_jobs(jobs, || {
        heldout_experiment(
            &train_set,
            &held,
            &lexicons,
            lp.as_ref(),
            &specs,
            &a.pipeline.config(a.seed),
            &a.hyper.hyperparams(),
        )
    })?;
    let records: Vec<HeldoutRecord> = rows
        .iter()
        .map(|r| HeldoutRecord {
            combo: &r.combo,
            stratum: &r.stratum,
            instances: r.instances,
            f: r.f,
            seed: a.seed,
        })
        .collect();
    files::write_records(&a.out, &records)?;
    print_table(
        &["combo", "stratum", "n", "F"],
        &records
            .iter()
            .map(|r| vec![r.combo.to_string(), r.stratum.to_string(), r.instances.to_string(), format!("{:.2}", r.f)])
            .collect::<Vec<_>>(),
    );
    let inputs = optional([
        Some(&a.train_corpus),
        a.train_gaze.as_ref(),
        Some(&a.heldout_corpus),
        a.heldout_gaze.as_ref(),
        Some(lex_dir),
        a.lp_corpus.as_ref(),
    ]);
    RunManifest::new("heldout", &a, Some(a.seed), &inputs)?.write_for(&a.out)
}

pub fn synth(a: SynthArgs) -> anyhow::Result<()> {
    let cfg = SynthConfig {
        snippet_count: a.snippets,
        participants: a.participants,
        min_words: a.min_words,
        max_words: a.max_words,
        positive_fraction: a.positive_fraction,
        positive_density: a.positive_density,
        negative_density: a.negative_density,
        purity: a.purity,
        irony_fraction: a.irony_fraction,
        irony_cue_rate: a.irony_cue_rate,
        cue_noise_rate: a.cue_noise_rate,
        signal_strength: a.signal,
        seed: a.seed,
        id_prefix: a.id_prefix.clone(),
    };
    let data = generate(&cfg)?;
    let manifest = RunManifest::new("synth", &a, Some(a.seed), &[])?;
    write_corpus(&data, std::io::BufWriter::new(files::create(&a.out_corpus)?))?;
    manifest.write_for(&a.out_corpus)?;
    if let Some(g) = &a.out_gaze {
        write_gaze(&data, std::io::BufWriter::new(files::create(g)?))?;
        manifest.write_for(g)?;
    }
    if let Some(dir) = &a.out_lexicons {
        builtin_lexicons().write_dir(dir)?;
        manifest.write_for(dir)?;
    }
    Ok(())
}

pub fn baseline_rb(a: BaselineArgs) -> anyhow::Result<()> {
    let lex_dir = files::lexicon_dir(a.lexicons.as_ref())?;
    let lexicons = files::load_lexicons(lex_dir)?;
    let data = files::load_dataset(&a.corpus, None)?;
    let mut predicted = Vec::with_capacity(data.len());
    let mut rows = Vec::with_capacity(data.len());
    for s in data.snippets() {
        let out = rule_based_classify(s, &lexicons);
        let label = match out.label {
            0 => None,
            l => Some(Polarity::from_positive(l > 0)),
        };
        predicted.push(label);
        rows.push(PredictionRecord {
            snippet_id: s.snippet_id.clone(),
            label: label.map_or(String::new(), |l| l.as_str().to_string()),
            score: Some(out.score),
        });
    }
    let r = prf_partial(&predicted, &data.labels())?;
    let undecided = predicted.iter().filter(|p| p.is_none()).count();
    println!(
        "P = {:.2}  R = {:.2}  F = {:.2}  undecided = {undecided}/{}",
        r.precision,
        r.recall,
        r.f,
        data.len()
    );
    files::write_records(&a.out, &rows)?;
    RunManifest::new("baseline-rb", &a, None, &[&a.corpus, lex_dir])?.write_for(&a.out)
}

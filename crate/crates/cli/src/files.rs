//! Reading inputs and writing the small tabular outputs.

use std::collections::HashMap;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use anyhow::Context;
use cogsent_core::corpus::{parse_corpus, parse_gaze, Dataset, Polarity};
use cogsent_core::features::FeatureMatrix;
use cogsent_core::text::{LexicalPolarityModel, Lexicons};
use serde::{Deserialize, Serialize};

use crate::args::LEXICONS_ENV;
use crate::usage;

fn open(path: &Path) -> anyhow::Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path).with_context(|| format!("opening {}", path.display()))?))
}

pub fn load_dataset(corpus: &Path, gaze: Option<&Path>) -> anyhow::Result<Dataset> {
    let data = parse_corpus(open(corpus)?).with_context(|| format!("corpus {}", corpus.display()))?;
    match gaze {
        Some(g) => Ok(parse_gaze(open(g)?, data).with_context(|| format!("gaze {}", g.display()))?),
        None => Ok(data),
    }
}

pub fn lexicon_dir(dir: Option<&PathBuf>) -> anyhow::Result<&PathBuf> {
    match dir {
        Some(d) => Ok(d),
        None => usage(format!("a lexicon directory is required (--lexicons or {LEXICONS_ENV})")),
    }
}

pub fn load_lexicons(dir: &Path) -> anyhow::Result<Lexicons> {
    Lexicons::load_dir(dir).with_context(|| format!("lexicons {}", dir.display()))
}

/// LP model from an auxiliary corpus, if one is given.
pub fn load_lp(corpus: Option<&Path>) -> anyhow::Result<Option<LexicalPolarityModel>> {
    let Some(path) = corpus else { return Ok(None) };
    let data = load_dataset(path, None)?;
    let snippets: Vec<_> = data.snippets().iter().collect();
    Ok(Some(LexicalPolarityModel::train(&snippets)?))
}

pub fn read_features(path: &Path) -> anyhow::Result<FeatureMatrix> {
    FeatureMatrix::read_csv(open(path)?).with_context(|| format!("features {}", path.display()))
}

pub fn create(path: &Path) -> anyhow::Result<File> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    File::create(path).with_context(|| format!("creating {}", path.display()))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub snippet_id: String,
    /// Empty when the predictor abstains.
    pub label: String,
    #[serde(default)]
    pub score: Option<f64>,
}

pub fn write_records<T: Serialize>(path: &Path, rows: &[T]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Labels keyed by snippet id, in file order.
pub fn read_labels(path: &Path) -> anyhow::Result<Vec<(String, Polarity)>> {
    let mut r = csv::Reader::from_reader(open(path)?);
    let mut out = Vec::new();
    for rec in r.deserialize::<PredictionRecord>() {
        let rec = rec.with_context(|| format!("reading {}", path.display()))?;
        let label = rec.label.parse::<Polarity>().map_err(|e| {
            cogsent_core::Error::FeatureFile(format!("{}: snippet `{}`: {e}", path.display(), rec.snippet_id))
        })?;
        out.push((rec.snippet_id, label));
    }
    Ok(out)
}

/// Reorders `labels` to follow `order`, failing on missing or extra ids.
pub fn align(order: &[String], labels: Vec<(String, Polarity)>, what: &Path) -> anyhow::Result<Vec<Polarity>> {
    let n = labels.len();
    let map: HashMap<String, Polarity> = labels.into_iter().collect();
    if map.len() != n {
        return Err(cogsent_core::Error::FeatureFile(format!("{}: duplicate snippet ids", what.display())).into());
    }
    if map.len() != order.len() {
        return Err(cogsent_core::Error::LengthMismatch { left: order.len(), right: map.len() }.into());
    }
    order
        .iter()
        .map(|id| {
            map.get(id).copied().ok_or_else(|| {
                cogsent_core::Error::FeatureFile(format!("{}: no prediction for `{id}`", what.display())).into()
            })
        })
        .collect()
}

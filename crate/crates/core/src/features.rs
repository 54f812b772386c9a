//! Feature pipeline: fitted text models, block selection, and the feature
//! matrix CSV format.
//!
//! Column names carry a block prefix: `Sn_` (sentiment, including the
//! `Sn_NGRAM_PCA_*` components that make up the Uni block), `Sr_` (sarcasm
//! and thwarting) and `Gz_` (gaze plus reading difficulty).

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use ndarray::{Array2, Axis};
use rayon::prelude::*;

use crate::corpus::{Dataset, Polarity, Snippet};
use crate::eval::stratified_kfold;
use crate::gaze::snippet_gaze_features;
use crate::pca::PcaModel;
use crate::text::{
    implicit_presence, readability_features, sarcasm_features, sentiment_features, LexicalPolarityModel,
    Lexicons, SarcasmFeatures, SentimentFeatures, Vocabulary,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    Uni,
    Sn,
    Sr,
    Gz,
}

const NGRAM_PREFIX: &str = "Sn_NGRAM_PCA_";

impl Block {
    pub fn as_str(self) -> &'static str {
        match self {
            Block::Uni => "Uni",
            Block::Sn => "Sn",
            Block::Sr => "Sr",
            Block::Gz => "Gz",
        }
    }

    pub fn contains(self, column: &str) -> bool {
        match self {
            Block::Uni => column.starts_with(NGRAM_PREFIX),
            Block::Sn => column.starts_with("Sn_"),
            Block::Sr => column.starts_with("Sr_"),
            Block::Gz => column.starts_with("Gz_"),
        }
    }
}

impl FromStr for Block {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "uni" => Ok(Block::Uni),
            "sn" => Ok(Block::Sn),
            "sr" => Ok(Block::Sr),
            "gz" => Ok(Block::Gz),
            other => Err(Error::Config(format!("unknown feature block `{other}`"))),
        }
    }
}

/// A non-empty set of blocks, written `Sn+Sr+Gz`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockSet(BTreeSet<Block>);

impl BlockSet {
    pub fn new(blocks: impl IntoIterator<Item = Block>) -> Result<Self> {
        let set: BTreeSet<Block> = blocks.into_iter().collect();
        if set.is_empty() {
            return Err(Error::Config("empty feature block set".into()));
        }
        Ok(BlockSet(set))
    }

    pub fn blocks(&self) -> impl Iterator<Item = Block> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, column: &str) -> bool {
        self.0.iter().any(|b| b.contains(column))
    }
}

impl FromStr for BlockSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BlockSet::new(s.split('+').map(Block::from_str).collect::<Result<Vec<_>>>()?)
    }
}

impl fmt::Display for BlockSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(|b| b.as_str()).collect();
        f.write_str(&names.join("+"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    pub ids: Vec<String>,
    pub names: Vec<String>,
    pub data: Array2<f64>,
    pub labels: Vec<Polarity>,
}

impl FeatureMatrix {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Columns belonging to any of the blocks, in their original order.
    pub fn select(&self, blocks: &BlockSet) -> FeatureMatrix {
        let cols: Vec<usize> = (0..self.names.len()).filter(|&j| blocks.contains(&self.names[j])).collect();
        FeatureMatrix {
            ids: self.ids.clone(),
            names: cols.iter().map(|&j| self.names[j].clone()).collect(),
            data: self.data.select(Axis(1), &cols),
            labels: self.labels.clone(),
        }
    }

    pub fn rows(&self, indices: &[usize]) -> FeatureMatrix {
        FeatureMatrix {
            ids: indices.iter().map(|&i| self.ids[i].clone()).collect(),
            names: self.names.clone(),
            data: self.data.select(Axis(0), indices),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
        }
    }

    /// Header `snippet_id,<features...>,label`. Values use the shortest
    /// representation that parses back to the same bits.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header = vec!["snippet_id".to_string()];
        header.extend(self.names.iter().cloned());
        header.push("label".into());
        w.write_record(&header)?;
        for (i, id) in self.ids.iter().enumerate() {
            let mut rec = Vec::with_capacity(self.names.len() + 2);
            rec.push(id.clone());
            rec.extend(self.data.row(i).iter().map(|v| v.to_string()));
            rec.push(self.labels[i].as_str().to_string());
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<FeatureMatrix> {
        let mut r = csv::Reader::from_reader(reader);
        let header = r.headers()?.clone();
        let cols: Vec<&str> = header.iter().collect();
        if cols.len() < 2 || cols[0] != "snippet_id" || cols[cols.len() - 1] != "label" {
            return Err(Error::FeatureFile(
                "header must start with `snippet_id` and end with `label`".into(),
            ));
        }
        let names: Vec<String> = cols[1..cols.len() - 1].iter().map(|s| s.to_string()).collect();
        let d = names.len();
        let mut ids = Vec::new();
        let mut labels = Vec::new();
        let mut values = Vec::new();
        for (i, rec) in r.records().enumerate() {
            let rec = rec?;
            let line = i + 2;
            if rec.len() != d + 2 {
                return Err(Error::FeatureFile(format!(
                    "line {line}: expected {} fields, found {}",
                    d + 2,
                    rec.len()
                )));
            }
            ids.push(rec[0].to_string());
            for (j, field) in rec.iter().skip(1).take(d).enumerate() {
                let v: f64 = field.trim().parse().map_err(|_| {
                    Error::FeatureFile(format!("line {line}: column `{}` is not a number: `{field}`", names[j]))
                })?;
                values.push(v);
            }
            labels.push(
                rec[d + 1]
                    .parse::<Polarity>()
                    .map_err(|_| Error::FeatureFile(format!("line {line}: bad label `{}`", &rec[d + 1])))?,
            );
        }
        let data = Array2::from_shape_vec((ids.len(), d), values).expect("row lengths checked");
        Ok(FeatureMatrix {
            ids,
            names,
            data,
            labels,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineConfig {
    pub ngram_components: usize,
    pub implicit_components: usize,
    pub min_frequency: usize,
    /// Inner folds used to give training rows out-of-fold LP values when the
    /// LP model is fitted on the same snippets.
    pub lp_crossfit_folds: usize,
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            ngram_components: 500,
            implicit_components: 500,
            min_frequency: Vocabulary::DEFAULT_MIN_FREQUENCY,
            lp_crossfit_folds: 5,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
enum LpSource {
    Auxiliary(LexicalPolarityModel),
    Fitted {
        model: LexicalPolarityModel,
        out_of_fold: HashMap<String, f64>,
    },
}

/// Text models fitted on training snippets only.
#[derive(Debug, Clone)]
pub struct FeaturePipeline {
    pub vocabulary: Vocabulary,
    pub ngram_pca: PcaModel,
    pub implicit_pca: PcaModel,
    lp: LpSource,
}

fn presence_matrix(rows: &[Vec<usize>], width: usize) -> Array2<f64> {
    let mut x = Array2::zeros((rows.len(), width));
    for (i, r) in rows.iter().enumerate() {
        for &j in r {
            x[[i, j]] = 1.0;
        }
    }
    x
}

fn fit_pca(x: Array2<f64>, k: usize) -> Result<PcaModel> {
    PcaModel::fit(x.view(), k)
}

/// Out-of-fold LP probabilities for `snippets` plus a model on all of them.
fn crossfit_lp(snippets: &[&Snippet], folds: usize, seed: u64) -> Result<(LexicalPolarityModel, HashMap<String, f64>)> {
    let model = LexicalPolarityModel::train(snippets)?;
    let labels: Vec<Polarity> = snippets.iter().map(|s| s.label).collect();
    let counts = labels.iter().filter(|l| l.is_positive()).count();
    let min_class = counts.min(labels.len() - counts);
    let k = folds.min(min_class);
    let mut out = HashMap::with_capacity(snippets.len());
    if k < 2 {
        for s in snippets {
            out.insert(s.snippet_id.clone(), model.probability(s));
        }
        return Ok((model, out));
    }
    let assignment = stratified_kfold(&labels, k, seed)?;
    for fold in 0..k {
        let train: Vec<&Snippet> = (0..snippets.len())
            .filter(|&i| assignment[i] != fold)
            .map(|i| snippets[i])
            .collect();
        let inner = LexicalPolarityModel::train(&train)?;
        for i in (0..snippets.len()).filter(|&i| assignment[i] == fold) {
            out.insert(snippets[i].snippet_id.clone(), inner.probability(snippets[i]));
        }
    }
    Ok((model, out))
}

impl FeaturePipeline {
    /// Fits vocabulary, PCA blocks and (unless `auxiliary_lp` is given) the
    /// LP model on `train` only.
    pub fn fit(
        train: &[&Snippet],
        lexicons: &Lexicons,
        auxiliary_lp: Option<&LexicalPolarityModel>,
        config: &PipelineConfig,
    ) -> Result<FeaturePipeline> {
        let vocabulary = Vocabulary::build(train.iter().copied(), config.min_frequency);
        let ngram_rows: Vec<Vec<usize>> = train.iter().map(|s| vocabulary.presence(s)).collect();
        let ngram_pca = fit_pca(presence_matrix(&ngram_rows, vocabulary.len()), config.ngram_components)?;
        let implicit_rows: Vec<Vec<usize>> = train.iter().map(|s| implicit_presence(s, lexicons)).collect();
        let implicit_pca = fit_pca(
            presence_matrix(&implicit_rows, lexicons.incongruity_phrases.len()),
            config.implicit_components,
        )?;
        let lp = match auxiliary_lp {
            Some(m) => LpSource::Auxiliary(m.clone()),
            None => {
                let (model, out_of_fold) = crossfit_lp(train, config.lp_crossfit_folds, config.seed)?;
                LpSource::Fitted { model, out_of_fold }
            }
        };
        Ok(FeaturePipeline {
            vocabulary,
            ngram_pca,
            implicit_pca,
            lp,
        })
    }

    pub fn feature_names(&self) -> Vec<String> {
        let mut names = Vec::new();
        names.extend((1..=self.ngram_pca.k).map(|i| format!("{NGRAM_PREFIX}{i}")));
        names.extend(SentimentFeatures::NAMES.iter().map(|n| format!("Sn_{n}")));
        names.extend((1..=self.implicit_pca.k).map(|i| format!("Sr_IMPLICIT_PCA_{i}")));
        names.extend(SarcasmFeatures::NAMES.iter().map(|n| format!("Sr_{n}")));
        names.extend(crate::gaze::gaze_feature_names().iter().map(|n| format!("Gz_{n}")));
        names.push("Gz_RED".into());
        names.push("Gz_LEN".into());
        names
    }

    fn lp_model(&self) -> &LexicalPolarityModel {
        match &self.lp {
            LpSource::Auxiliary(m) => m,
            LpSource::Fitted { model, .. } => model,
        }
    }

    /// Feature rows for the snippets at `indices` of `dataset`.
    pub fn transform(&self, dataset: &Dataset, indices: &[usize], lexicons: &Lexicons) -> Result<FeatureMatrix> {
        let snippets: Vec<&Snippet> = indices.iter().map(|&i| &dataset.snippets()[i]).collect();
        let names = self.feature_names();

        let rows: Vec<(Vec<usize>, SentimentFeatures, SarcasmFeatures, Vec<f64>)> = snippets
            .par_iter()
            .map(|s| -> Result<_> {
                let sn = sentiment_features(s, lexicons, &self.vocabulary);
                let mut sr = sarcasm_features(s, lexicons, Some(self.lp_model()))?;
                if let LpSource::Fitted { out_of_fold, .. } = &self.lp {
                    if let Some(&v) = out_of_fold.get(&s.snippet_id) {
                        sr.lp = v;
                    }
                }
                let mut gz: Vec<f64> = snippet_gaze_features(s, dataset.scanpaths(&s.snippet_id))?
                    .values()
                    .copied()
                    .collect();
                let (red, len) = readability_features(s)?;
                gz.push(red);
                gz.push(len as f64);
                let ngram = sn.ngram_presence.clone();
                Ok((ngram, sn, sr, gz))
            })
            .collect::<Result<_>>()?;

        let ngram = self.ngram_pca.transform(
            presence_matrix(&rows.iter().map(|r| r.0.clone()).collect::<Vec<_>>(), self.vocabulary.len()).view(),
        )?;
        let implicit = self.implicit_pca.transform(
            presence_matrix(
                &rows.iter().map(|r| r.2.implicit_presence.clone()).collect::<Vec<_>>(),
                lexicons.incongruity_phrases.len(),
            )
            .view(),
        )?;

        let mut data = Array2::zeros((snippets.len(), names.len()));
        for (i, (_, sn, sr, gz)) in rows.iter().enumerate() {
            let mut row = Vec::with_capacity(names.len());
            row.extend(ngram.row(i).iter().copied());
            row.extend(sn.values());
            row.extend(implicit.row(i).iter().copied());
            row.extend(sr.values());
            row.extend(gz.iter().copied());
            debug_assert_eq!(row.len(), names.len());
            data.row_mut(i).assign(&ndarray::Array1::from(row));
        }
        Ok(FeatureMatrix {
            ids: snippets.iter().map(|s| s.snippet_id.clone()).collect(),
            names,
            data,
            labels: snippets.iter().map(|s| s.label).collect(),
        })
    }
}

/// Fits on every snippet of `dataset` and transforms all of them. Without an
/// auxiliary LP model each snippet's LP is predicted out of fold.
pub fn extract_all(
    dataset: &Dataset,
    lexicons: &Lexicons,
    auxiliary_lp: Option<&LexicalPolarityModel>,
    config: &PipelineConfig,
) -> Result<FeatureMatrix> {
    if dataset.is_empty() {
        return Err(Error::EmptyInput);
    }
    let all: Vec<&Snippet> = dataset.snippets().iter().collect();
    let pipeline = FeaturePipeline::fit(&all, lexicons, auxiliary_lp, config)?;
    let indices: Vec<usize> = (0..dataset.len()).collect();
    pipeline.transform(dataset, &indices, lexicons)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::lexicon::{Phrase, PolarityEntry};

    fn lexicons() -> Lexicons {
        let mut lex = Lexicons::default();
        for (w, s) in [("good", 1), ("great", 1), ("bad", -1), ("awful", -1)] {
            lex.polarity.insert(w.into(), PolarityEntry { sign: s, strong: false });
        }
        lex.incongruity_phrases = vec![Phrase::parse("love waiting"), Phrase::parse("another delay")];
        lex
    }

    fn dataset() -> Dataset {
        let texts = [
            ("a", "good film , great cast .", Polarity::Positive),
            ("b", "great plot and good music .", Polarity::Positive),
            ("c", "good good film .", Polarity::Positive),
            ("d", "I love waiting , great .", Polarity::Negative),
            ("e", "bad film , awful cast .", Polarity::Negative),
            ("f", "awful plot and bad music .", Polarity::Negative),
            ("g", "another delay , bad film .", Polarity::Negative),
            ("h", "great music , good film .", Polarity::Positive),
        ];
        Dataset::from_snippets(
            texts
                .iter()
                .map(|(id, t, l)| Snippet::from_text(*id, *t, *l))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn block_sets() {
        let b: BlockSet = "Sn+Sr+Gz".parse().unwrap();
        assert_eq!(b.to_string(), "Sn+Sr+Gz");
        assert!("".parse::<BlockSet>().is_err());
        assert!("Sn+Xy".parse::<BlockSet>().is_err());
        let uni: BlockSet = "Uni".parse().unwrap();
        assert!(uni.contains("Sn_NGRAM_PCA_3"));
        assert!(!uni.contains("Sn_FLIP"));
    }

    #[test]
    fn names_and_width() {
        let ds = dataset();
        let cfg = PipelineConfig {
            lp_crossfit_folds: 2,
            ..PipelineConfig::default()
        };
        let m = extract_all(&ds, &lexicons(), None, &cfg).unwrap();
        assert_eq!(m.data.dim(), (8, m.names.len()));
        assert!(m.names.iter().all(|n| n.starts_with("Sn_") || n.starts_with("Sr_") || n.starts_with("Gz_")));
        assert!(m.names.contains(&"Gz_RED".to_string()));
        let gz = m.select(&"Gz".parse().unwrap());
        assert_eq!(gz.names.len(), 22);
        // No gaze attached: gaze columns are zero, RED/LEN are not.
        assert!(gz.data.column(0).iter().all(|&v| v == 0.0));
        assert!(gz.data.column(21).iter().all(|&v| v > 0.0));
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let ds = dataset();
        let cfg = PipelineConfig {
            lp_crossfit_folds: 2,
            ..PipelineConfig::default()
        };
        let m = extract_all(&ds, &lexicons(), None, &cfg).unwrap();
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        let back = FeatureMatrix::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back.names, m.names);
        assert_eq!(back.ids, m.ids);
        assert_eq!(back.labels, m.labels);
        for (a, b) in back.data.iter().zip(m.data.iter()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn csv_errors() {
        assert!(FeatureMatrix::read_csv("id,x,label\n".as_bytes()).is_err());
        let bad = "snippet_id,x,label\na,1.5,pos\nb,zz,neg\n";
        let msg = FeatureMatrix::read_csv(bad.as_bytes()).unwrap_err().to_string();
        assert!(msg.contains("line 3"), "{msg}");
    }

    #[test]
    fn training_rows_get_out_of_fold_lp() {
        let ds = dataset();
        let all: Vec<&Snippet> = ds.snippets().iter().collect();
        let cfg = PipelineConfig {
            lp_crossfit_folds: 2,
            ..PipelineConfig::default()
        };
        let p = FeaturePipeline::fit(&all, &lexicons(), None, &cfg).unwrap();
        let m = p.transform(&ds, &[0], &lexicons()).unwrap();
        let lp_col = m.names.iter().position(|n| n == "Sr_LP").unwrap();
        let in_sample = p.lp_model().probability(&ds.snippets()[0]);
        assert_ne!(m.data[[0, lp_col]], in_sample);
    }
}

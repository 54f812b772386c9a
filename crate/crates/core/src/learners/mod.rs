//! Classifiers trained from scratch, plus the lexicon rule baseline.

pub mod logreg;
pub mod mlp;
pub mod nb;
pub mod rule_based;
pub mod standardize;
pub mod svm;

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use ndarray::{Array2, ArrayView2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::Polarity;
use crate::{Error, Result};

pub use logreg::LogisticRegression;
pub use mlp::Mlp;
pub use nb::GaussianNb;
pub use rule_based::{rule_based_classify, RuleOutcome};
pub use standardize::Standardizer;
pub use svm::LinearSvm;

pub const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    #[serde(rename = "nb")]
    NaiveBayes,
    Svm,
    Mlp,
    #[serde(rename = "logreg")]
    LogReg,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [ModelKind::NaiveBayes, ModelKind::Svm, ModelKind::Mlp, ModelKind::LogReg];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::NaiveBayes => "nb",
            ModelKind::Svm => "svm",
            ModelKind::Mlp => "mlp",
            ModelKind::LogReg => "logreg",
        }
    }

    fn standardizes(self) -> bool {
        self != ModelKind::NaiveBayes
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nb" | "naivebayes" | "naive-bayes" => Ok(ModelKind::NaiveBayes),
            "svm" => Ok(ModelKind::Svm),
            "mlp" | "nn" => Ok(ModelKind::Mlp),
            "logreg" | "lr" => Ok(ModelKind::LogReg),
            other => Err(Error::Config(format!("unknown model kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hyperparams {
    pub svm_c: f64,
    pub svm_epochs: usize,
    pub mlp_learning_rate: f64,
    pub mlp_epochs: usize,
    /// Defaults to ceil((d + 2) / 2) when unset.
    pub mlp_hidden: Option<usize>,
    pub logreg_lambda: f64,
    pub logreg_tolerance: f64,
    pub logreg_max_iter: usize,
    pub nb_var_floor: f64,
}

impl Default for Hyperparams {
    fn default() -> Self {
        Hyperparams {
            svm_c: 1.0,
            svm_epochs: 100,
            mlp_learning_rate: 0.3,
            mlp_epochs: 500,
            mlp_hidden: None,
            logreg_lambda: 1e-4,
            logreg_tolerance: 1e-6,
            logreg_max_iter: 10_000,
            nb_var_floor: 1e-9,
        }
    }
}

impl fmt::Display for Hyperparams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "svm_c={} svm_epochs={} mlp_lr={} mlp_epochs={} mlp_hidden={} logreg_lambda={} logreg_tol={} logreg_max_iter={} nb_var_floor={}",
            self.svm_c,
            self.svm_epochs,
            self.mlp_learning_rate,
            self.mlp_epochs,
            self.mlp_hidden.map_or_else(|| "auto".to_string(), |h| h.to_string()),
            self.logreg_lambda,
            self.logreg_tolerance,
            self.logreg_max_iter,
            self.nb_var_floor,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Params {
    #[serde(rename = "nb")]
    NaiveBayes(GaussianNb),
    Svm(LinearSvm),
    Mlp(Mlp),
    #[serde(rename = "logreg")]
    LogReg(LogisticRegression),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Model {
    pub format_version: u32,
    pub kind: ModelKind,
    pub feature_names: Vec<String>,
    pub seed: u64,
    pub hyperparams: Hyperparams,
    pub standardization: Option<Standardizer>,
    pub params: Params,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub label: Polarity,
    /// Positive-class score in [0, 1].
    pub score: f64,
}

fn check_finite(x: ArrayView2<'_, f64>) -> Result<()> {
    for ((row, col), v) in x.indexed_iter() {
        if !v.is_finite() {
            return Err(Error::NonFinite { row, col });
        }
    }
    Ok(())
}

pub fn train(
    kind: ModelKind,
    x: ArrayView2<'_, f64>,
    y: &[Polarity],
    hyper: &Hyperparams,
    seed: u64,
    feature_names: Vec<String>,
) -> Result<Model> {
    let (n, d) = x.dim();
    if y.len() != n {
        return Err(Error::LengthMismatch { left: n, right: y.len() });
    }
    if feature_names.len() != d {
        return Err(Error::DimensionMismatch {
            expected: feature_names.len(),
            actual: d,
        });
    }
    if n < 2 {
        return Err(Error::TooFewRows { needed: 2, actual: n });
    }
    let labels: Vec<bool> = y.iter().map(|p| p.is_positive()).collect();
    if labels.iter().all(|&b| b) || labels.iter().all(|&b| !b) {
        return Err(Error::SingleClass);
    }
    check_finite(x)?;

    let standardization = kind.standardizes().then(|| Standardizer::fit(x));
    let scaled: Option<Array2<f64>> = standardization.as_ref().map(|s| s.transform(x));
    let xs = scaled.as_ref().map_or(x, |a| a.view());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let params = match kind {
        ModelKind::NaiveBayes => Params::NaiveBayes(GaussianNb::fit(xs, &labels, hyper.nb_var_floor)),
        ModelKind::Svm => Params::Svm(LinearSvm::fit(xs, &labels, hyper.svm_c, hyper.svm_epochs, &mut rng)),
        ModelKind::Mlp => Params::Mlp(Mlp::fit(
            xs,
            &labels,
            hyper.mlp_hidden.unwrap_or_else(|| mlp::default_hidden(d)),
            hyper.mlp_learning_rate,
            hyper.mlp_epochs,
            &mut rng,
        )),
        ModelKind::LogReg => Params::LogReg(LogisticRegression::fit(
            xs,
            &labels,
            hyper.logreg_lambda,
            hyper.logreg_tolerance,
            hyper.logreg_max_iter,
        )),
    };
    Ok(Model {
        format_version: MODEL_FORMAT_VERSION,
        kind,
        feature_names,
        seed,
        hyperparams: *hyper,
        standardization,
        params,
    })
}

impl Model {
    pub fn dimension(&self) -> usize {
        self.feature_names.len()
    }

    pub fn predict(&self, x: ArrayView2<'_, f64>) -> Result<Vec<Prediction>> {
        if x.ncols() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                actual: x.ncols(),
            });
        }
        let scaled = self.standardization.as_ref().map(|s| s.transform(x));
        let xs = scaled.as_ref().map_or(x, |a| a.view());
        Ok(xs
            .outer_iter()
            .map(|row| {
                let row = row.to_vec();
                let score = match &self.params {
                    Params::NaiveBayes(m) => m.score(&row),
                    Params::Svm(m) => logreg::sigmoid(m.decision(&row)),
                    Params::Mlp(m) => m.score(&row),
                    Params::LogReg(m) => m.score(&row),
                };
                Prediction {
                    label: Polarity::from_positive(score >= 0.5),
                    score,
                }
            })
            .collect())
    }

    pub fn save<W: Write>(&self, writer: W) -> Result<()> {
        serde_json::to_writer_pretty(writer, self)?;
        Ok(())
    }

    pub fn load<R: Read>(reader: R) -> Result<Model> {
        let value: serde_json::Value = serde_json::from_reader(reader)?;
        let version = value
            .get("format_version")
            .and_then(|v| v.as_u64())
            .unwrap_or(0) as u32;
        if version != MODEL_FORMAT_VERSION {
            return Err(Error::ModelVersion(version));
        }
        Ok(serde_json::from_value(value)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use proptest::prelude::*;

    fn labels(bits: &[bool]) -> Vec<Polarity> {
        bits.iter().map(|&b| Polarity::from_positive(b)).collect()
    }

    fn names(d: usize) -> Vec<String> {
        (0..d).map(|i| format!("f{i}")).collect()
    }

    fn toy() -> (Array2<f64>, Vec<Polarity>) {
        let x = array![
            [0.0, 1.0],
            [1.0, 0.2],
            [0.3, 0.1],
            [3.0, 2.5],
            [2.2, 3.1],
            [2.9, 2.0],
        ];
        (x, labels(&[false, false, false, true, true, true]))
    }

    #[test]
    fn single_class_rejected() {
        let x = array![[0.0], [1.0]];
        let err = train(ModelKind::Svm, x.view(), &labels(&[true, true]), &Hyperparams::default(), 0, names(1));
        assert!(matches!(err, Err(Error::SingleClass)));
    }

    #[test]
    fn non_finite_rejected() {
        let x = array![[0.0], [f64::NAN]];
        let err = train(ModelKind::NaiveBayes, x.view(), &labels(&[true, false]), &Hyperparams::default(), 0, names(1));
        assert!(matches!(err, Err(Error::NonFinite { row: 1, col: 0 })));
    }

    #[test]
    fn nb_class_mean_predicts_class() {
        let x = array![[0.0], [1.0], [10.0], [11.0]];
        let m = train(ModelKind::NaiveBayes, x.view(), &labels(&[false, false, true, true]), &Hyperparams::default(), 0, names(1)).unwrap();
        assert_eq!(m.predict(array![[0.5]].view()).unwrap()[0].label, Polarity::Negative);
    }

    #[test]
    fn dimension_checked_on_predict() {
        let (x, y) = toy();
        let m = train(ModelKind::LogReg, x.view(), &y, &Hyperparams::default(), 0, names(2)).unwrap();
        assert!(matches!(
            m.predict(array![[1.0]].view()),
            Err(Error::DimensionMismatch { expected: 2, actual: 1 })
        ));
    }

    #[test]
    fn threshold_contract_and_round_trip() {
        let (x, y) = toy();
        for kind in ModelKind::ALL {
            let m = train(kind, x.view(), &y, &Hyperparams::default(), 11, names(2)).unwrap();
            let preds = m.predict(x.view()).unwrap();
            for p in &preds {
                assert!((0.0..=1.0).contains(&p.score));
                assert_eq!(p.label.is_positive(), p.score >= 0.5);
            }
            let mut buf = Vec::new();
            m.save(&mut buf).unwrap();
            let back = Model::load(buf.as_slice()).unwrap();
            assert_eq!(back, m, "{kind}");
            assert_eq!(back.predict(x.view()).unwrap(), preds);
        }
    }

    #[test]
    fn version_checked() {
        let (x, y) = toy();
        let m = train(ModelKind::NaiveBayes, x.view(), &y, &Hyperparams::default(), 0, names(2)).unwrap();
        let mut v = serde_json::to_value(&m).unwrap();
        v["format_version"] = 7.into();
        assert!(matches!(Model::load(v.to_string().as_bytes()), Err(Error::ModelVersion(7))));
    }

    #[test]
    fn same_seed_same_model() {
        let (x, y) = toy();
        for kind in [ModelKind::Svm, ModelKind::Mlp] {
            let a = train(kind, x.view(), &y, &Hyperparams::default(), 3, names(2)).unwrap();
            let b = train(kind, x.view(), &y, &Hyperparams::default(), 3, names(2)).unwrap();
            assert_eq!(a, b);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn affine_rescaling_keeps_labels(
            scale in prop_oneof![0.01f64..0.5, 2.0f64..100.0],
            shift in -50.0f64..50.0,
            col in 0usize..2,
        ) {
            let (x, y) = toy();
            let mut x2 = x.clone();
            x2.column_mut(col).mapv_inplace(|v| v * scale + shift);
            let probe = array![[0.5, 0.5], [2.5, 2.5], [1.6, 1.4], [0.1, 2.9]];
            let mut probe2 = probe.clone();
            probe2.column_mut(col).mapv_inplace(|v| v * scale + shift);
            for kind in [ModelKind::Svm, ModelKind::LogReg, ModelKind::Mlp] {
                let a = train(kind, x.view(), &y, &Hyperparams::default(), 5, names(2)).unwrap();
                let b = train(kind, x2.view(), &y, &Hyperparams::default(), 5, names(2)).unwrap();
                let la: Vec<_> = a.predict(probe.view()).unwrap().iter().map(|p| p.label).collect();
                let lb: Vec<_> = b.predict(probe2.view()).unwrap().iter().map(|p| p.label).collect();
                prop_assert_eq!(la, lb, "{}", kind);
            }
        }
    }
}

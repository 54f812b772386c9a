use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use cogsent_core::features::PipelineConfig;
use cogsent_core::learners::Hyperparams;
use serde::Serialize;

pub const LEXICONS_ENV: &str = "COGSENT_LEXICONS";

#[derive(Debug, Parser)]
#[command(name = "cogsent", version, about = "Gaze-augmented sentiment classification toolkit")]
pub struct Cli {
    /// Worker threads for extraction and evaluation (0 = all cores).
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    /// Log progress to stderr.
    #[arg(long, short, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the feature file for a corpus.
    Extract(ExtractArgs),
    /// Fit one model on a feature file.
    Train(TrainArgs),
    /// Score a feature file with a saved model.
    Predict(PredictArgs),
    /// Stratified cross-validation over feature combinations and models.
    Cv(CvArgs),
    /// Chi-squared feature ranking.
    Rank(RankArgs),
    /// McNemar test between two prediction files.
    Mcnemar(McnemarArgs),
    /// Train on one corpus, score a held-out corpus per complexity stratum.
    Heldout(HeldoutArgs),
    /// Generate a synthetic corpus with gaze records.
    Synth(SynthArgs),
    /// Lexicon rule baseline.
    BaselineRb(BaselineArgs),
    /// Static SVG plots and graph dumps.
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CorpusInput {
    /// Corpus file (JSON lines).
    #[arg(long)]
    pub corpus: Option<PathBuf>,

    /// Gaze file (JSON lines). Without it all gaze features are zero.
    #[arg(long)]
    pub gaze: Option<PathBuf>,

    /// Lexicon directory.
    #[arg(long, env = LEXICONS_ENV)]
    pub lexicons: Option<PathBuf>,

    /// Auxiliary polarity corpus for the LP feature; otherwise LP is fitted on training data.
    #[arg(long)]
    pub lp_corpus: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PipelineArgs {
    #[arg(long, default_value_t = 500)]
    pub ngram_components: usize,

    #[arg(long, default_value_t = 500)]
    pub implicit_components: usize,

    /// Minimum document frequency for vocabulary words.
    #[arg(long, default_value_t = 2)]
    pub min_frequency: usize,

    #[arg(long, default_value_t = 5)]
    pub lp_folds: usize,
}

impl PipelineArgs {
    pub fn config(&self, seed: u64) -> PipelineConfig {
        PipelineConfig {
            ngram_components: self.ngram_components,
            implicit_components: self.implicit_components,
            min_frequency: self.min_frequency,
            lp_crossfit_folds: self.lp_folds,
            seed,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct HyperArgs {
    /// SVM regularization constant.
    #[arg(long, default_value_t = 1.0)]
    pub svm_c: f64,

    #[arg(long, default_value_t = 100)]
    pub svm_epochs: usize,

    #[arg(long, default_value_t = 0.3)]
    pub mlp_lr: f64,

    #[arg(long, default_value_t = 500)]
    pub mlp_epochs: usize,

    /// Hidden units (default: (inputs + 2) / 2, rounded up).
    #[arg(long)]
    pub mlp_hidden: Option<usize>,

    #[arg(long, default_value_t = 1e-4)]
    pub logreg_lambda: f64,
}

impl HyperArgs {
    pub fn hyperparams(&self) -> Hyperparams {
        Hyperparams {
            svm_c: self.svm_c,
            svm_epochs: self.svm_epochs,
            mlp_learning_rate: self.mlp_lr,
            mlp_epochs: self.mlp_epochs,
            mlp_hidden: self.mlp_hidden,
            logreg_lambda: self.logreg_lambda,
            ..Hyperparams::default()
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExtractArgs {
    #[command(flatten)]
    pub input: CorpusInput,

    #[command(flatten)]
    pub pipeline: PipelineArgs,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Output feature CSV.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TrainArgs {
    #[arg(long)]
    pub features: PathBuf,

    /// Feature blocks, e.g. Sn+Sr+Gz.
    #[arg(long, default_value = "Sn+Sr+Gz")]
    pub combo: String,

    #[arg(long, default_value = "svm")]
    pub model: String,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[command(flatten)]
    pub hyper: HyperArgs,

    /// Output model JSON.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PredictArgs {
    #[arg(long)]
    pub model: PathBuf,

    #[arg(long)]
    pub features: PathBuf,

    /// Output predictions CSV (snippet_id,label,score).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CvArgs {
    /// Precomputed feature CSV. Alternative to --corpus, which refits
    /// features inside every fold.
    #[arg(long, conflicts_with = "corpus")]
    pub features: Option<PathBuf>,

    #[command(flatten)]
    pub input: CorpusInput,

    #[command(flatten)]
    pub pipeline: PipelineArgs,

    /// Feature blocks; repeat or comma-separate for several.
    #[arg(long, value_delimiter = ',', default_value = "Sn+Sr+Gz")]
    pub combo: Vec<String>,

    /// Models (nb, svm, mlp, logreg); repeat or comma-separate.
    #[arg(long, value_delimiter = ',', default_value = "svm")]
    pub model: Vec<String>,

    #[arg(long, default_value_t = 10)]
    pub folds: usize,

    /// Seeds; repeat or comma-separate.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub seed: Vec<u64>,

    #[command(flatten)]
    pub hyper: HyperArgs,

    /// Results CSV (combo,P,R,F,seed).
    #[arg(long)]
    pub out: PathBuf,

    /// Directory for per-combo out-of-fold predictions and gold labels.
    #[arg(long)]
    pub predictions: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RankArgs {
    #[arg(long)]
    pub features: PathBuf,

    /// Restrict to these blocks, e.g. Sr+Gz.
    #[arg(long)]
    pub combo: Option<String>,

    #[arg(long, default_value_t = 10)]
    pub bins: usize,

    /// Rows printed to stdout.
    #[arg(long, default_value_t = 20)]
    pub top: usize,

    /// Ranking CSV (rank,feature,chi2,p).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct McnemarArgs {
    /// Predictions of the first system.
    #[arg(long)]
    pub a: PathBuf,

    /// Predictions of the second system.
    #[arg(long)]
    pub b: PathBuf,

    /// Gold labels (snippet_id,label).
    #[arg(long)]
    pub gold: PathBuf,

    /// Optional JSON result file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct HeldoutArgs {
    #[arg(long)]
    pub train_corpus: PathBuf,

    #[arg(long)]
    pub train_gaze: Option<PathBuf>,

    #[arg(long)]
    pub heldout_corpus: PathBuf,

    #[arg(long)]
    pub heldout_gaze: Option<PathBuf>,

    #[arg(long, env = LEXICONS_ENV)]
    pub lexicons: Option<PathBuf>,

    #[arg(long)]
    pub lp_corpus: Option<PathBuf>,

    #[command(flatten)]
    pub pipeline: PipelineArgs,

    #[arg(long, value_delimiter = ',', default_value = "Sn+Sr,Sn+Sr+Gz")]
    pub combo: Vec<String>,

    #[arg(long, value_delimiter = ',', default_value = "svm")]
    pub model: Vec<String>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[command(flatten)]
    pub hyper: HyperArgs,

    /// Results CSV (combo,stratum,instances,F,seed).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 400)]
    pub snippets: usize,

    #[arg(long, default_value_t = 5)]
    pub participants: usize,

    #[arg(long, default_value_t = 8)]
    pub min_words: usize,

    #[arg(long, default_value_t = 16)]
    pub max_words: usize,

    #[arg(long, default_value_t = 0.5)]
    pub positive_fraction: f64,

    #[arg(long, default_value_t = 0.3)]
    pub positive_density: f64,

    #[arg(long, default_value_t = 0.3)]
    pub negative_density: f64,

    #[arg(long, default_value_t = 0.85)]
    pub purity: f64,

    /// Fraction of negative snippets that are ironic.
    #[arg(long, default_value_t = 0.3)]
    pub irony_fraction: f64,

    #[arg(long, default_value_t = 0.5)]
    pub irony_cue_rate: f64,

    #[arg(long, default_value_t = 0.05)]
    pub cue_noise_rate: f64,

    /// Probability that an ironic reading carries the induced regression.
    #[arg(long, default_value_t = 0.9)]
    pub signal: f64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, default_value = "s")]
    pub id_prefix: String,

    #[arg(long)]
    pub out_corpus: PathBuf,

    #[arg(long)]
    pub out_gaze: Option<PathBuf>,

    /// Also write the matching lexicon directory.
    #[arg(long)]
    pub out_lexicons: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BaselineArgs {
    #[arg(long)]
    pub corpus: PathBuf,

    #[arg(long, env = LEXICONS_ENV)]
    pub lexicons: Option<PathBuf>,

    /// Per-snippet output (snippet_id,label,score); label is empty when undecided.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[command(subcommand)]
    pub kind: PlotKind,
}

#[derive(Debug, Subcommand)]
pub enum PlotKind {
    /// Per-class histograms of feature columns, one SVG each.
    Hist(HistArgs),
    /// Bar chart of F scores from a results CSV.
    Bars(BarsArgs),
    /// Saliency graph edge list of one reading.
    Graph(GraphArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct HistArgs {
    #[arg(long)]
    pub features: PathBuf,

    /// Columns to plot (default: every Gz_ column).
    #[arg(long, value_delimiter = ',')]
    pub columns: Vec<String>,

    #[arg(long, default_value_t = 20)]
    pub bins: usize,

    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BarsArgs {
    #[arg(long)]
    pub results: PathBuf,

    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GraphArgs {
    #[arg(long)]
    pub corpus: PathBuf,

    #[arg(long)]
    pub gaze: PathBuf,

    #[arg(long)]
    pub snippet: String,

    /// Participant (default: the first one in id order).
    #[arg(long)]
    pub participant: Option<String>,

    #[arg(long)]
    pub out: PathBuf,
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    MalformedLine { line: usize, message: String },

    #[error("line {line}: duplicate snippet id `{id}`")]
    DuplicateSnippet { line: usize, id: String },

    #[error("line {line}: snippet `{id}` has no label")]
    MissingLabel { line: usize, id: String },

    #[error("line {line}: unknown snippet id `{id}`")]
    UnknownSnippet { line: usize, id: String },

    #[error("line {line}: fixation token index {index} out of range for snippet `{id}` with {token_count} tokens")]
    TokenIndexOutOfRange {
        line: usize,
        id: String,
        index: usize,
        token_count: usize,
    },

    #[error("line {line}: fixation duration must be positive and finite, got {duration}")]
    NonPositiveDuration { line: usize, duration: f64 },

    #[error("invalid lexicon `{file}` line {line}: {message}")]
    Lexicon {
        file: String,
        line: usize,
        message: String,
    },

    #[error("word count must be positive")]
    ZeroWordCount,

    #[error("cannot average an empty list of feature rows")]
    EmptyAverage,

    #[error("feature rows disagree on feature names")]
    FeatureNameMismatch,

    #[error("dimension mismatch: expected {expected} columns, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("need at least {needed} rows, got {actual}")]
    TooFewRows { needed: usize, actual: usize },

    #[error("training labels contain a single class")]
    SingleClass,

    #[error("non-finite feature value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("lexical polarity model required but not provided")]
    MissingLpModel,

    #[error("class `{class}` has {count} members, fewer than {folds} folds")]
    ClassTooSmall {
        class: String,
        count: usize,
        folds: usize,
    },

    #[error("empty input")]
    EmptyInput,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("stratum `{0}` is empty")]
    EmptyStratum(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unsupported model file version {0}")]
    ModelVersion(u32),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("feature file: {0}")]
    FeatureFile(String),
}

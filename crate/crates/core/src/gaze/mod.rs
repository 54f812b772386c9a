//! Cognitive features derived from fixation sequences.

pub mod basic;
pub mod graph;

use indexmap::IndexMap;

use crate::corpus::{Scanpath, Snippet};
use crate::Result;

pub use basic::{average_over_participants, basic_features, derive_saccades, BasicGazeFeatures};
pub use graph::{build_graph, graph_features, EdgeStats, EdgeWeight, GraphGazeFeatures, SaliencyGraph};

/// Named feature values in a fixed column order.
pub type FeatureRow = IndexMap<String, f64>;

/// Names of all per-participant gaze features, basic first.
pub fn gaze_feature_names() -> Vec<&'static str> {
    BasicGazeFeatures::NAMES
        .iter()
        .chain(GraphGazeFeatures::NAMES.iter())
        .copied()
        .collect()
}

/// Basic plus graph features for one participant.
pub fn participant_features(scanpath: &Scanpath, snippet: &Snippet) -> Result<FeatureRow> {
    let mut row = basic_features(scanpath, &snippet.char_offsets())?.to_row();
    row.extend(graph_features(&build_graph(scanpath)).to_row());
    Ok(row)
}

/// Per-participant features averaged over all readers of the snippet. A
/// snippet without gaze records yields an all-zero row.
pub fn snippet_gaze_features(snippet: &Snippet, scanpaths: &[Scanpath]) -> Result<FeatureRow> {
    if scanpaths.is_empty() {
        return Ok(gaze_feature_names()
            .into_iter()
            .map(|n| (n.to_string(), 0.0))
            .collect());
    }
    let rows = scanpaths
        .iter()
        .map(|p| participant_features(p, snippet))
        .collect::<Result<Vec<_>>>()?;
    average_over_participants(&rows)
}

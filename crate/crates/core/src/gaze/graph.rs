//! Gaze-saliency graph: fixated words as vertices, an undirected edge for every
//! word pair joined by at least one saccade, with directional statistics kept
//! on each edge.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::corpus::Scanpath;
use crate::gaze::basic::derive_saccades;
use crate::gaze::FeatureRow;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EdgeStats {
    /// Saccades from the smaller word index to the larger.
    pub forward_count: usize,
    /// Saccades from the larger word index back to the smaller.
    pub regressive_count: usize,
    pub forward_distance: usize,
    pub regressive_distance: usize,
    /// Total fixation time on the smaller-index endpoint.
    pub left_duration: f64,
    /// Total fixation time on the larger-index endpoint.
    pub right_duration: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SaliencyGraph {
    pub vertices: BTreeSet<usize>,
    /// Keyed by `(min, max)` word index.
    pub edges: BTreeMap<(usize, usize), EdgeStats>,
}

/// Weighting applied to each edge when computing weighted vertex degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeWeight {
    LeftDuration,
    RightDuration,
    ForwardCount,
    ForwardDistance,
    RegressiveCount,
    RegressiveDistance,
}

impl EdgeWeight {
    pub const ALL: [EdgeWeight; 6] = [
        EdgeWeight::LeftDuration,
        EdgeWeight::RightDuration,
        EdgeWeight::ForwardCount,
        EdgeWeight::ForwardDistance,
        EdgeWeight::RegressiveCount,
        EdgeWeight::RegressiveDistance,
    ];

    pub fn of(self, e: &EdgeStats) -> f64 {
        match self {
            EdgeWeight::LeftDuration => e.left_duration,
            EdgeWeight::RightDuration => e.right_duration,
            EdgeWeight::ForwardCount => e.forward_count as f64,
            EdgeWeight::ForwardDistance => e.forward_distance as f64,
            EdgeWeight::RegressiveCount => e.regressive_count as f64,
            EdgeWeight::RegressiveDistance => e.regressive_distance as f64,
        }
    }
}

/// Largest and second-largest weighted vertex degree.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DegreePair {
    pub highest: f64,
    pub second: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GraphGazeFeatures {
    pub ed: f64,
    pub f1: DegreePair,
    pub f2: DegreePair,
    pub fs: DegreePair,
    pub fsd: DegreePair,
    pub rs: DegreePair,
    pub rsd: DegreePair,
}

impl GraphGazeFeatures {
    pub const NAMES: [&'static str; 13] = [
        "ED", "F1H", "F1S", "F2H", "F2S", "FSH", "FSS", "FSDH", "FSDS", "RSH", "RSS", "RSDH",
        "RSDS",
    ];

    pub fn values(&self) -> [f64; 13] {
        [
            self.ed,
            self.f1.highest,
            self.f1.second,
            self.f2.highest,
            self.f2.second,
            self.fs.highest,
            self.fs.second,
            self.fsd.highest,
            self.fsd.second,
            self.rs.highest,
            self.rs.second,
            self.rsd.highest,
            self.rsd.second,
        ]
    }

    pub fn to_row(&self) -> FeatureRow {
        Self::NAMES
            .iter()
            .zip(self.values())
            .map(|(n, v)| (n.to_string(), v))
            .collect()
    }
}

pub fn build_graph(scanpath: &Scanpath) -> SaliencyGraph {
    let mut dwell: BTreeMap<usize, f64> = BTreeMap::new();
    for f in &scanpath.fixations {
        *dwell.entry(f.token_index).or_default() += f.duration_ms;
    }

    let mut edges: BTreeMap<(usize, usize), EdgeStats> = BTreeMap::new();
    for s in derive_saccades(scanpath) {
        let key = (s.from_index.min(s.to_index), s.from_index.max(s.to_index));
        let e = edges.entry(key).or_default();
        if s.is_regression {
            e.regressive_count += 1;
            e.regressive_distance += s.distance_words;
        } else {
            e.forward_count += 1;
            e.forward_distance += s.distance_words;
        }
    }
    for (&(lo, hi), e) in edges.iter_mut() {
        e.left_duration = dwell[&lo];
        e.right_duration = dwell[&hi];
    }

    SaliencyGraph {
        vertices: dwell.into_keys().collect(),
        edges,
    }
}

impl SaliencyGraph {
    /// Σ of incident edge weights per vertex, in vertex order.
    pub fn weighted_degrees(&self, weight: EdgeWeight) -> Vec<(usize, f64)> {
        let mut degree: BTreeMap<usize, f64> = self.vertices.iter().map(|&v| (v, 0.0)).collect();
        for (&(a, b), e) in &self.edges {
            let w = weight.of(e);
            *degree.get_mut(&a).expect("edge endpoint is a vertex") += w;
            *degree.get_mut(&b).expect("edge endpoint is a vertex") += w;
        }
        degree.into_iter().collect()
    }

    pub fn edge_density(&self) -> f64 {
        let v = self.vertices.len();
        if v < 2 {
            return 0.0;
        }
        self.edges.len() as f64 / (v * (v - 1) / 2) as f64
    }

    fn degree_pair(&self, weight: EdgeWeight) -> DegreePair {
        let mut d: Vec<f64> = self
            .weighted_degrees(weight)
            .into_iter()
            .map(|(_, w)| w)
            .collect();
        d.sort_by(|a, b| b.total_cmp(a));
        DegreePair {
            highest: d.first().copied().unwrap_or(0.0),
            second: d.get(1).copied().unwrap_or(0.0),
        }
    }

    /// Edge list dump: a header line then one line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::from("# left right fwd_count reg_count fwd_dist reg_dist left_ms right_ms\n");
        for (&(a, b), e) in &self.edges {
            let _ = writeln!(
                out,
                "{a} {b} {} {} {} {} {} {}",
                e.forward_count,
                e.regressive_count,
                e.forward_distance,
                e.regressive_distance,
                e.left_duration,
                e.right_duration
            );
        }
        out
    }
}

pub fn graph_features(graph: &SaliencyGraph) -> GraphGazeFeatures {
    if graph.vertices.len() < 2 {
        return GraphGazeFeatures::default();
    }
    GraphGazeFeatures {
        ed: graph.edge_density(),
        f1: graph.degree_pair(EdgeWeight::LeftDuration),
        f2: graph.degree_pair(EdgeWeight::RightDuration),
        fs: graph.degree_pair(EdgeWeight::ForwardCount),
        fsd: graph.degree_pair(EdgeWeight::ForwardDistance),
        rs: graph.degree_pair(EdgeWeight::RegressiveCount),
        rsd: graph.degree_pair(EdgeWeight::RegressiveDistance),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fixture() -> Scanpath {
        Scanpath::from_pairs(
            "s",
            "p",
            &[(0, 200.0), (1, 150.0), (3, 100.0), (1, 250.0), (2, 180.0)],
        )
    }

    #[test]
    fn builds_fixture_graph() {
        let g = build_graph(&fixture());
        assert_eq!(g.vertices, BTreeSet::from([0, 1, 2, 3]));
        assert_eq!(
            g.edges.keys().copied().collect::<Vec<_>>(),
            [(0, 1), (1, 2), (1, 3)]
        );
        let e = g.edges[&(1, 3)];
        assert_eq!(
            (e.forward_count, e.regressive_count, e.forward_distance, e.regressive_distance),
            (1, 1, 2, 2)
        );
        assert_eq!((e.left_duration, e.right_duration), (400.0, 100.0));
    }

    #[test]
    fn fixture_features() {
        let f = graph_features(&build_graph(&fixture()));
        assert_eq!(f.ed, 0.5);
        assert_eq!((f.fs.highest, f.fs.second), (3.0, 1.0));
        assert_eq!((f.fsd.highest, f.fsd.second), (4.0, 2.0));
        assert_eq!((f.rs.highest, f.rs.second), (1.0, 1.0));
        assert_eq!((f.rsd.highest, f.rsd.second), (2.0, 2.0));
        assert_eq!((f.f1.highest, f.f1.second), (1000.0, 400.0));
    }

    #[test]
    fn degenerate_graphs() {
        let empty = build_graph(&Scanpath::from_pairs("s", "p", &[]));
        assert!(empty.vertices.is_empty() && empty.edges.is_empty());
        assert_eq!(graph_features(&empty), GraphGazeFeatures::default());

        let single = build_graph(&Scanpath::from_pairs("s", "p", &[(4, 100.0), (4, 120.0)]));
        assert_eq!(single.vertices, BTreeSet::from([4]));
        assert!(single.edges.is_empty());
        assert_eq!(graph_features(&single), GraphGazeFeatures::default());
    }

    #[test]
    fn two_vertex_graph() {
        let f = graph_features(&build_graph(&Scanpath::from_pairs(
            "s",
            "p",
            &[(0, 100.0), (1, 100.0)],
        )));
        assert_eq!(f.ed, 1.0);
        assert_eq!((f.fs.highest, f.fs.second), (1.0, 1.0));
    }

    #[test]
    fn edge_list_dump() {
        let dump = build_graph(&fixture()).to_edge_list();
        assert_eq!(dump.lines().count(), 4);
        assert!(dump.contains("\n1 3 1 1 2 2 400 100\n"));
    }

    fn path_strategy() -> impl Strategy<Value = Scanpath> {
        prop::collection::vec((0usize..6, 1.0f64..400.0), 0..11)
            .prop_map(|pairs| Scanpath::from_pairs("s", "p", &pairs))
    }

    proptest! {
        #[test]
        fn pairs_are_ordered(path in path_strategy()) {
            let f = graph_features(&build_graph(&path));
            for p in [f.f1, f.f2, f.fs, f.fsd, f.rs, f.rsd] {
                prop_assert!(p.highest >= p.second && p.second >= 0.0);
            }
            prop_assert!((0.0..=1.0).contains(&f.ed));
        }

        #[test]
        fn density_bounds(path in path_strategy()) {
            let g = build_graph(&path);
            let v = g.vertices.len();
            if v >= 2 && !g.edges.is_empty() {
                let ed = g.edge_density();
                prop_assert!(ed > 0.0 && ed <= 1.0);
                prop_assert_eq!(ed == 1.0, g.edges.len() == v * (v - 1) / 2);
            }
        }

        #[test]
        fn duration_scaling(path in path_strategy(), c in 0.1f64..10.0) {
            let a = graph_features(&build_graph(&path));
            let mut scaled = path.clone();
            for f in &mut scaled.fixations {
                f.duration_ms *= c;
            }
            let b = graph_features(&build_graph(&scaled));
            let close = |x: f64, y: f64| (x - y).abs() <= 1e-9 * (1.0 + x.abs());
            prop_assert!(close(b.f1.highest, c * a.f1.highest) && close(b.f1.second, c * a.f1.second));
            prop_assert!(close(b.f2.highest, c * a.f2.highest) && close(b.f2.second, c * a.f2.second));
            prop_assert_eq!((a.ed, a.fs, a.fsd, a.rs, a.rsd), (b.ed, b.fs, b.fsd, b.rs, b.rsd));
        }

        #[test]
        fn reversal_swaps_directions(path in path_strategy()) {
            let mut rev = path.clone();
            rev.fixations.reverse();
            let a = graph_features(&build_graph(&path));
            let b = graph_features(&build_graph(&rev));
            prop_assert_eq!(a.fs, b.rs);
            prop_assert_eq!(a.rs, b.fs);
            prop_assert_eq!(a.fsd, b.rsd);
            prop_assert_eq!(a.ed, b.ed);
        }
    }
}

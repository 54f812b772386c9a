mod common;

use cogsent_core::gaze::{basic_features, build_graph, graph_features};
use common::{oracle_basic, oracle_graph, random_case, rng, scanpath};

#[test]
fn basic_features_match_oracle() {
    let mut r = rng(101);
    for case in 0..2000 {
        let (path, offsets) = random_case(&mut r, 6, 10);
        let got = basic_features(&scanpath(&path), &offsets).unwrap().values();
        let want = oracle_basic(&path, &offsets);
        for (k, (g, w)) in got.iter().zip(&want).enumerate() {
            assert!((g - w).abs() <= 1e-9, "case {case} feature {k}: {g} vs {w} for {path:?}");
        }
    }
}

#[test]
fn graph_features_match_oracle() {
    let mut r = rng(202);
    for case in 0..2000 {
        let (path, _) = random_case(&mut r, 6, 10);
        let got = graph_features(&build_graph(&scanpath(&path))).values();
        let want = oracle_graph(&path);
        for (k, (g, w)) in got.iter().zip(&want).enumerate() {
            assert!((g - w).abs() <= 1e-9, "case {case} feature {k}: {g} vs {w} for {path:?}");
        }
    }
}

#[test]
fn oracle_agrees_on_worked_example() {
    let path = [(0, 200.0), (1, 150.0), (3, 100.0), (1, 250.0), (2, 180.0)];
    let offsets = [0, 4, 8, 12, 16];
    assert_eq!(oracle_basic(&path, &offsets), [90.0, 1.0, 1.2, 1.0, 0.2, 1.0, 0.8]);
    let g = oracle_graph(&path);
    assert_eq!((g[0], g[1], g[2], g[5], g[7], g[11]), (0.5, 1000.0, 400.0, 3.0, 4.0, 2.0));
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const SUBCOMMANDS: [&str; 10] = [
    "extract",
    "train",
    "predict",
    "cv",
    "rank",
    "mcnemar",
    "heldout",
    "synth",
    "baseline-rb",
    "plot",
];

fn cogsent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cogsent"))
        .args(args)
        .env_remove("COGSENT_LEXICONS")
        .env_remove("RUST_LOG")
        .output()
        .expect("spawn cogsent")
}

fn ok(args: &[&str]) -> String {
    let out = cogsent(args);
    assert!(
        out.status.success(),
        "{args:?} failed with {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Fixture {
    corpus: PathBuf,
    gaze: PathBuf,
    lexicons: PathBuf,
}

fn synth(dir: &Path, snippets: usize, seed: u64, prefix: &str) -> Fixture {
    let f = Fixture {
        corpus: dir.join(format!("{prefix}corpus.jsonl")),
        gaze: dir.join(format!("{prefix}gaze.jsonl")),
        lexicons: dir.join("lexicons"),
    };
    ok(&[
        "synth",
        "--snippets",
        &snippets.to_string(),
        "--seed",
        &seed.to_string(),
        "--id-prefix",
        prefix,
        "--out-corpus",
        s(&f.corpus),
        "--out-gaze",
        s(&f.gaze),
        "--out-lexicons",
        s(&f.lexicons),
    ]);
    f
}

fn extract(f: &Fixture, out: &Path) {
    ok(&[
        "extract",
        "--corpus",
        s(&f.corpus),
        "--gaze",
        s(&f.gaze),
        "--lexicons",
        s(&f.lexicons),
        "--ngram-components",
        "20",
        "--implicit-components",
        "5",
        "--seed",
        "3",
        "--out",
        s(out),
    ]);
}

#[test]
fn every_subcommand_has_help() {
    for sub in SUBCOMMANDS {
        let out = cogsent(&[sub, "--help"]);
        assert_eq!(out.status.code(), Some(0), "{sub}");
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains("Usage:"), "{sub}");
        assert!(text.contains("--jobs"), "{sub} help lists global flags");
    }
    for sub in ["hist", "bars", "graph"] {
        let out = cogsent(&["plot", sub, "--help"]);
        assert_eq!(out.status.code(), Some(0), "plot {sub}");
        assert!(String::from_utf8(out.stdout).unwrap().contains("--out"));
    }
    assert!(ok(&["cv", "--help"]).contains("--predictions"));
}

#[test]
fn usage_and_data_errors_have_distinct_exit_codes() {
    assert_eq!(cogsent(&["extract", "--bogus"]).status.code(), Some(1));
    assert_eq!(cogsent(&["frobnicate"]).status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.csv");
    let out = cogsent(&["rank", "--features", s(&missing), "--out", s(&dir.path().join("r.csv"))]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1, "single-line diagnostic: {err}");

    // No lexicon directory anywhere.
    let f = synth(dir.path(), 30, 1, "s");
    let out = cogsent(&["extract", "--corpus", s(&f.corpus), "--out", s(&dir.path().join("f.csv"))]);
    assert_eq!(out.status.code(), Some(1));

    let bad = dir.path().join("bad.jsonl");
    fs::write(&bad, "{\"snippet_id\": \"x\"\n").unwrap();
    let out = cogsent(&[
        "extract",
        "--corpus",
        s(&bad),
        "--lexicons",
        s(&f.lexicons),
        "--out",
        s(&dir.path().join("f.csv")),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 1"));
}

#[test]
fn lexicon_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let f = synth(dir.path(), 30, 2, "s");
    let out = Command::new(env!("CARGO_BIN_EXE_cogsent"))
        .args(["baseline-rb", "--corpus", s(&f.corpus), "--out", s(&dir.path().join("rb.csv"))])
        .env("COGSENT_LEXICONS", &f.lexicons)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8(out.stdout).unwrap().contains("F = "));
}

#[test]
fn end_to_end_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let f = synth(d, 120, 5, "s");
    let features = d.join("features.csv");
    extract(&f, &features);
    let header = fs::read_to_string(&features).unwrap().lines().next().unwrap().to_string();
    assert!(header.starts_with("snippet_id,Sn_NGRAM_PCA_1,"));
    assert!(header.contains(",Sr_LP,") && header.contains(",Gz_FDUR,") && header.ends_with(",label"));
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.join("features.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "extract");
    assert_eq!(manifest["seed"], 3);
    let digest = manifest["inputs"][s(&f.corpus)].as_str().unwrap();
    assert_eq!(digest.len(), 64);

    let results = d.join("results.csv");
    let preds = d.join("preds");
    let table = ok(&[
        "cv",
        "--features",
        s(&features),
        "--combo",
        "Sn,Sn+Sr+Gz",
        "--model",
        "svm,nb",
        "--folds",
        "5",
        "--seed",
        "7",
        "--out",
        s(&results),
        "--predictions",
        s(&preds),
    ]);
    assert!(table.contains("Sn+Sr+Gz/svm"));
    let text = fs::read_to_string(&results).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("combo,P,R,F,seed"));
    assert_eq!(lines.count(), 4);
    assert!(preds.join("gold.csv").exists() && preds.join("manifest.json").exists());

    let out = ok(&[
        "mcnemar",
        "--a",
        s(&preds.join("Sn_svm_seed7.csv")),
        "--b",
        s(&preds.join("Sn+Sr+Gz_svm_seed7.csv")),
        "--gold",
        s(&preds.join("gold.csv")),
    ]);
    assert!(out.contains("statistic = "));

    let ranking = d.join("ranking.csv");
    ok(&["rank", "--features", s(&features), "--combo", "Gz", "--out", s(&ranking)]);
    let text = fs::read_to_string(&ranking).unwrap();
    assert!(text.starts_with("rank,feature,chi2,p\n1,Gz_"));

    let model = d.join("model.json");
    ok(&["train", "--features", s(&features), "--combo", "Sn+Sr", "--model", "mlp", "--out", s(&model)]);
    let predictions = d.join("pred.csv");
    ok(&["predict", "--model", s(&model), "--features", s(&features), "--out", s(&predictions)]);
    let text = fs::read_to_string(&predictions).unwrap();
    assert!(text.starts_with("snippet_id,label,score\n"));
    assert_eq!(text.lines().count(), 121);

    let h = synth(d, 80, 1005, "h");
    let held = d.join("heldout.csv");
    let table = ok(&[
        "heldout",
        "--train-corpus",
        s(&f.corpus),
        "--train-gaze",
        s(&f.gaze),
        "--heldout-corpus",
        s(&h.corpus),
        "--heldout-gaze",
        s(&h.gaze),
        "--lexicons",
        s(&f.lexicons),
        "--ngram-components",
        "20",
        "--out",
        s(&held),
    ]);
    assert!(table.contains("complex") && table.contains("simple"));
    assert_eq!(fs::read_to_string(&held).unwrap().lines().count(), 5);

    let rb = d.join("rb.csv");
    ok(&["baseline-rb", "--corpus", s(&f.corpus), "--lexicons", s(&f.lexicons), "--out", s(&rb)]);

    let plots = d.join("plots");
    ok(&["plot", "hist", "--features", s(&features), "--columns", "Gz_FDUR,Gz_REG", "--out", s(&plots)]);
    let svg = fs::read_to_string(plots.join("Gz_FDUR.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    let bars = d.join("bars.svg");
    ok(&["plot", "bars", "--results", s(&results), "--out", s(&bars)]);
    assert!(fs::read_to_string(&bars).unwrap().contains("Sn+Sr+Gz/nb"));
    let edges = d.join("edges.txt");
    ok(&[
        "plot",
        "graph",
        "--corpus",
        s(&f.corpus),
        "--gaze",
        s(&f.gaze),
        "--snippet",
        "s00000",
        "--out",
        s(&edges),
    ]);
    assert!(fs::read_to_string(&edges).unwrap().starts_with("# left right"));
}

#[test]
fn cv_from_corpus_refits_per_fold() {
    let dir = tempfile::tempdir().unwrap();
    let f = synth(dir.path(), 80, 9, "s");
    let out = dir.path().join("r.csv");
    ok(&[
        "--jobs",
        "2",
        "cv",
        "--corpus",
        s(&f.corpus),
        "--gaze",
        s(&f.gaze),
        "--lexicons",
        s(&f.lexicons),
        "--ngram-components",
        "10",
        "--combo",
        "Sn+Sr+Gz",
        "--model",
        "logreg",
        "--folds",
        "4",
        "--out",
        s(&out),
    ]);
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 2);
    let both = Command::new(env!("CARGO_BIN_EXE_cogsent"))
        .args(["cv", "--features", "x.csv", "--corpus", "y.jsonl", "--out", "r.csv"])
        .output()
        .unwrap();
    assert_eq!(both.status.code(), Some(1));
}

/// Gold plus two systems with 10 items only A gets right and 2 only B gets right.
#[test]
fn mcnemar_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let mut gold = String::from("snippet_id,label\n");
    let mut a = gold.clone();
    let mut b = gold.clone();
    for i in 0..30 {
        let id = format!("x{i:02}");
        let (ga, gb) = match i {
            0..10 => (true, false),
            10..12 => (false, true),
            12..25 => (true, true),
            _ => (false, false),
        };
        gold.push_str(&format!("{id},pos\n"));
        a.push_str(&format!("{id},{}\n", if ga { "pos" } else { "neg" }));
        b.push_str(&format!("{id},{}\n", if gb { "pos" } else { "neg" }));
    }
    let paths: Vec<PathBuf> = ["gold", "a", "b"].iter().map(|n| dir.path().join(format!("{n}.csv"))).collect();
    for (p, text) in paths.iter().zip([&gold, &a, &b]) {
        fs::write(p, text).unwrap();
    }
    let json = dir.path().join("m.json");
    let out = ok(&[
        "mcnemar",
        "--a",
        s(&paths[1]),
        "--b",
        s(&paths[2]),
        "--gold",
        s(&paths[0]),
        "--out",
        s(&json),
    ]);
    assert!(out.contains("b = 10  c = 2  statistic = 4.0833  p = 0.0433"), "{out}");
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["odds_ratio"], "5");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let run = |dir: &Path, jobs: &str| -> Vec<Vec<u8>> {
        let f = synth(dir, 100, 21, "s");
        let features = dir.join("features.csv");
        extract(&f, &features);
        let results = dir.join("results.csv");
        ok(&[
            "--jobs",
            jobs,
            "cv",
            "--features",
            s(&features),
            "--combo",
            "Sn+Sr+Gz",
            "--model",
            "svm,mlp,nb,logreg",
            "--folds",
            "5",
            "--seed",
            "4",
            "--out",
            s(&results),
        ]);
        let ranking = dir.join("ranking.csv");
        ok(&["rank", "--features", s(&features), "--out", s(&ranking)]);
        [&f.corpus, &f.gaze, &features, &results, &ranking]
            .iter()
            .map(|p| fs::read(p).unwrap())
            .collect()
    };
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert_eq!(run(a.path(), "1"), run(b.path(), "3"));

    // Same paths, same command: manifests match too.
    let manifest = a.path().join("results.csv.manifest.json");
    let first = fs::read(&manifest).unwrap();
    run(a.path(), "1");
    assert_eq!(first, fs::read(&manifest).unwrap());
}

//! Hand-written static SVG. Display only; numbers come from the other commands.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::Context;
use serde::Deserialize;

use crate::args::{BarsArgs, GraphArgs, HistArgs, PlotArgs, PlotKind};
use crate::files;
use crate::manifest::RunManifest;
use crate::usage;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;
const POSITIVE_COLOR: &str = "#1f77b4";
const NEGATIVE_COLOR: &str = "#ff7f0e";

pub fn run(a: PlotArgs) -> anyhow::Result<()> {
    match a.kind {
        PlotKind::Hist(h) => hist(h),
        PlotKind::Bars(b) => bars(b),
        PlotKind::Graph(g) => graph(g),
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn header(title: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"#, WIDTH / 2.0, escape(title));
    let (x0, y0, x1) = (MARGIN, HEIGHT - MARGIN, WIDTH - MARGIN);
    let _ = writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#);
    let _ = writeln!(s, r#"<line x1="{x0}" y1="{MARGIN}" x2="{x0}" y2="{y0}" stroke="black"/>"#);
    s
}

/// Per-class bin counts over the common range of both classes.
pub fn class_histogram(values: &[(f64, bool)], bins: usize) -> (f64, f64, Vec<[usize; 2]>) {
    let lo = values.iter().map(|v| v.0).fold(f64::INFINITY, f64::min);
    let hi = values.iter().map(|v| v.0).fold(f64::NEG_INFINITY, f64::max);
    let mut counts = vec![[0usize; 2]; bins];
    let span = hi - lo;
    for &(v, positive) in values {
        let b = if span > 0.0 { (((v - lo) / span) * bins as f64) as usize } else { 0 };
        counts[b.min(bins - 1)][usize::from(!positive)] += 1;
    }
    (lo, hi, counts)
}

fn histogram_svg(column: &str, values: &[(f64, bool)], bins: usize) -> String {
    let (lo, hi, counts) = class_histogram(values, bins);
    let top = counts.iter().flat_map(|c| c.iter()).copied().max().unwrap_or(0).max(1) as f64;
    let mut s = header(column);
    let plot_w = WIDTH - 2.0 * MARGIN;
    let plot_h = HEIGHT - 2.0 * MARGIN;
    let bw = plot_w / bins as f64;
    for (i, c) in counts.iter().enumerate() {
        for (class, color) in [(0, POSITIVE_COLOR), (1, NEGATIVE_COLOR)] {
            let h = plot_h * c[class] as f64 / top;
            let x = MARGIN + i as f64 * bw;
            let _ = writeln!(
                s,
                r#"<rect x="{x:.2}" y="{:.2}" width="{:.2}" height="{h:.2}" fill="{color}" fill-opacity="0.5"/>"#,
                HEIGHT - MARGIN - h,
                bw
            );
        }
    }
    let y = HEIGHT - MARGIN + 16.0;
    let _ = writeln!(s, r#"<text x="{MARGIN}" y="{y}">{lo:.4}</text>"#);
    let _ = writeln!(s, r#"<text x="{}" y="{y}" text-anchor="end">{hi:.4}</text>"#, WIDTH - MARGIN);
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{top}</text>"#, MARGIN - 4.0, MARGIN + 4.0);
    let legend_x = WIDTH - MARGIN - 90.0;
    for (i, (label, color)) in [("positive", POSITIVE_COLOR), ("negative", NEGATIVE_COLOR)].iter().enumerate() {
        let ly = MARGIN + 14.0 * i as f64;
        let _ = writeln!(s, r#"<rect x="{legend_x}" y="{ly}" width="10" height="10" fill="{color}" fill-opacity="0.5"/>"#);
        let _ = writeln!(s, r#"<text x="{}" y="{}">{label}</text>"#, legend_x + 14.0, ly + 9.0);
    }
    s.push_str("</svg>\n");
    s
}

fn hist(a: HistArgs) -> anyhow::Result<()> {
    if a.bins == 0 {
        return usage("--bins must be positive");
    }
    let m = files::read_features(&a.features)?;
    let columns: Vec<String> = if a.columns.is_empty() {
        m.names.iter().filter(|n| n.starts_with("Gz_")).cloned().collect()
    } else {
        a.columns.clone()
    };
    std::fs::create_dir_all(&a.out)?;
    for c in &columns {
        let Some(j) = m.names.iter().position(|n| n == c) else {
            return Err(cogsent_core::Error::FeatureFile(format!("no column `{c}`")).into());
        };
        let values: Vec<(f64, bool)> = m.data.column(j).iter().zip(&m.labels).map(|(&v, l)| (v, l.is_positive())).collect();
        let path = a.out.join(format!("{c}.svg"));
        std::fs::write(&path, histogram_svg(c, &values, a.bins)).with_context(|| format!("writing {}", path.display()))?;
    }
    RunManifest::new("plot hist", &a, None, &[&a.features])?.write_for(&a.out)
}

#[derive(Deserialize)]
struct ResultLine {
    combo: String,
    #[serde(rename = "F")]
    f: f64,
    seed: u64,
}

fn bars(a: BarsArgs) -> anyhow::Result<()> {
    let mut r = csv::Reader::from_path(&a.results).with_context(|| format!("opening {}", a.results.display()))?;
    let rows: Vec<ResultLine> = r.deserialize().collect::<Result<_, _>>()?;
    if rows.is_empty() {
        return Err(cogsent_core::Error::EmptyInput.into());
    }
    let mut s = header("weighted F");
    let plot_h = HEIGHT - 2.0 * MARGIN;
    let bw = (WIDTH - 2.0 * MARGIN) / rows.len() as f64;
    for (i, row) in rows.iter().enumerate() {
        let h = plot_h * row.f.clamp(0.0, 100.0) / 100.0;
        let x = MARGIN + i as f64 * bw;
        let _ = writeln!(
            s,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{h:.2}" fill="{POSITIVE_COLOR}"/>"#,
            x + 0.1 * bw,
            HEIGHT - MARGIN - h,
            0.8 * bw
        );
        let cx = x + bw / 2.0;
        let _ = writeln!(s, r#"<text x="{cx:.2}" y="{:.2}" text-anchor="middle">{:.1}</text>"#, HEIGHT - MARGIN - h - 4.0, row.f);
        let label = format!("{} s{}", row.combo, row.seed);
        let _ = writeln!(
            s,
            r#"<text x="{cx:.2}" y="{:.2}" text-anchor="middle" font-size="10">{}</text>"#,
            HEIGHT - MARGIN + 14.0,
            escape(&label)
        );
    }
    s.push_str("</svg>\n");
    std::fs::write(&a.out, s).with_context(|| format!("writing {}", a.out.display()))?;
    RunManifest::new("plot bars", &a, None, &[&a.results])?.write_for(&a.out)
}

fn graph(a: GraphArgs) -> anyhow::Result<()> {
    let data = files::load_dataset(&a.corpus, Some(&a.gaze))?;
    if data.get(&a.snippet).is_none() {
        return Err(cogsent_core::Error::FeatureFile(format!("no snippet `{}`", a.snippet)).into());
    }
    let paths = data.scanpaths(&a.snippet);
    let path = match &a.participant {
        Some(p) => paths.iter().find(|s| &s.participant_id == p),
        None => paths.first(),
    };
    let Some(path) = path else {
        return Err(cogsent_core::Error::FeatureFile(format!("no reading of `{}` for that participant", a.snippet)).into());
    };
    let graph = cogsent_core::gaze::build_graph(path);
    std::fs::write(&a.out, graph.to_edge_list()).with_context(|| format!("writing {}", a.out.display()))?;
    let inputs: [&Path; 2] = [&a.corpus, &a.gaze];
    RunManifest::new("plot graph", &a, None, &inputs)?.write_for(&a.out)
}

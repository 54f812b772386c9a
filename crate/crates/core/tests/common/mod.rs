//! Brute-force reference implementations used by integration and acceptance
//! tests. They recompute every gaze feature straight from the fixation list,
//! without the library's saccade or graph types.

#![allow(dead_code)]

use cogsent_core::corpus::Scanpath;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// FDUR, FC, SL, REG, SKIP, RSF, LREG.
pub fn oracle_basic(path: &[(usize, f64)], offsets: &[usize]) -> [f64; 7] {
    let n = offsets.len();
    let nf = n as f64;
    if path.is_empty() {
        return [0.0; 7];
    }
    let mut fdur = 0.0;
    for (t, &(w, d)) in path.iter().enumerate() {
        let earlier = &path[..t];
        let seen_same = earlier.iter().any(|&(e, _)| e == w);
        let seen_right = earlier.iter().any(|&(e, _)| e > w);
        if !seen_same && !seen_right {
            fdur += d;
        }
    }
    let half = n.div_ceil(2);
    let (mut sl, mut reg, mut rsf) = (0usize, 0usize, 0usize);
    let mut best: Option<(usize, usize)> = None; // (amplitude, source)
    for t in 1..path.len() {
        let (a, b) = (path[t - 1].0, path[t].0);
        if a == b {
            continue;
        }
        sl += a.abs_diff(b);
        if b < a {
            reg += 1;
            if a >= half && b < half {
                rsf += 1;
            }
            let amp = offsets[a] - offsets[b];
            if best.is_none_or(|(m, _)| amp > m) {
                best = Some((amp, a));
            }
        }
    }
    let mut distinct: Vec<usize> = path.iter().map(|p| p.0).collect();
    distinct.sort_unstable();
    distinct.dedup();
    [
        fdur / nf,
        path.len() as f64 / nf,
        sl as f64 / nf,
        reg as f64,
        (n - distinct.len()) as f64 / nf,
        rsf as f64,
        best.map_or(0.0, |(_, s)| (s + 1) as f64 / nf),
    ]
}

/// ED, F1H, F1S, F2H, F2S, FSH, FSS, FSDH, FSDS, RSH, RSS, RSDH, RSDS.
pub fn oracle_graph(path: &[(usize, f64)]) -> [f64; 13] {
    let mut vertices: Vec<usize> = path.iter().map(|p| p.0).collect();
    vertices.sort_unstable();
    vertices.dedup();
    let nv = vertices.len();
    if nv < 2 {
        return [0.0; 13];
    }
    let dwell = |w: usize| path.iter().filter(|p| p.0 == w).map(|p| p.1).sum::<f64>();
    // Per edge: [left dwell, right dwell, fwd count, fwd dist, reg count, reg dist]
    let mut edges: Vec<(usize, usize, [f64; 6])> = Vec::new();
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            let mut w = [dwell(u), dwell(v), 0.0, 0.0, 0.0, 0.0];
            let mut any = false;
            for t in 1..path.len() {
                let (a, b) = (path[t - 1].0, path[t].0);
                if a == u && b == v {
                    w[2] += 1.0;
                    w[3] += (v - u) as f64;
                    any = true;
                } else if a == v && b == u {
                    w[4] += 1.0;
                    w[5] += (v - u) as f64;
                    any = true;
                }
            }
            if any {
                edges.push((u, v, w));
            }
        }
    }
    let mut out = [0.0; 13];
    out[0] = edges.len() as f64 / (nv * (nv - 1) / 2) as f64;
    for scheme in 0..6 {
        let mut degrees: Vec<f64> = vertices
            .iter()
            .map(|&x| {
                edges
                    .iter()
                    .filter(|(u, v, _)| *u == x || *v == x)
                    .map(|(_, _, w)| w[scheme])
                    .sum()
            })
            .collect();
        degrees.sort_by(|a, b| b.total_cmp(a));
        out[1 + 2 * scheme] = degrees[0];
        out[2 + 2 * scheme] = degrees[1];
    }
    out
}

/// Random scanpath over at most `max_words` words with at most
/// `max_fixations` fixations, plus matching char offsets.
pub fn random_case(rng: &mut ChaCha8Rng, max_words: usize, max_fixations: usize) -> (Vec<(usize, f64)>, Vec<usize>) {
    let n = rng.random_range(1..=max_words);
    let mut offsets = Vec::with_capacity(n);
    let mut pos = 0;
    for _ in 0..n {
        offsets.push(pos);
        pos += rng.random_range(1..=9) + 1;
    }
    let k = rng.random_range(0..=max_fixations);
    let path = (0..k)
        .map(|_| (rng.random_range(0..n), (rng.random_range(50.0..600.0) * 8.0f64).round() / 8.0))
        .collect();
    (path, offsets)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn scanpath(path: &[(usize, f64)]) -> Scanpath {
    Scanpath::from_pairs("s", "p", path)
}

/// Relative error used by gradient checks.
pub fn relative_error(a: f64, b: f64) -> f64 {
    (a - b).abs() / (a.abs() + b.abs()).max(1e-6)
}

//! Wall-clock measurements of all-pairs BFS and full HICOM runs on sparse
//! G(n, p) samples, with a least-squares slope of `ln t` against `ln n`.

use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::factor::ReductionFactor;
use crate::generate::{generate_connected, GeneratorSpec};
use crate::graph::Graph;
use crate::hicom::{hicom, HicomOptions};

pub const DEFAULT_SIZES: [usize; 3] = [100, 200, 400];

#[derive(Debug, Clone, Serialize)]
pub struct BenchPoint {
    pub n: usize,
    pub m: usize,
    pub p: f64,
    pub apsp_secs: f64,
    pub hicom_secs: f64,
    /// Error code when HICOM found no team; timing still counts.
    pub hicom_outcome: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub l: ReductionFactor,
    pub repeats: usize,
    pub points: Vec<BenchPoint>,
    pub apsp_slope: f64,
    pub hicom_slope: f64,
}

/// Least-squares slope of `ln y` on `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let xy: Vec<(f64, f64)> = points
        .iter()
        .map(|&(x, y)| (x.ln(), y.max(1e-9).ln()))
        .collect();
    let len = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / len;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / len;
    let sxy: f64 = xy.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xy.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

fn uncached(g: &Graph) -> Graph {
    Graph::from_edges(g.n(), g.edges()).expect("edges of a valid graph")
}

/// Minimum over `repeats` of the time to compute all-pairs distances and of
/// the time for a complete HICOM run (including its own distance matrix).
pub fn time_graph(g: &Graph, l: ReductionFactor, repeats: usize) -> (f64, f64, String) {
    let mut apsp = f64::INFINITY;
    let mut full = f64::INFINITY;
    let mut outcome = String::new();
    for _ in 0..repeats.max(1) {
        let fresh = uncached(g);
        let t = Instant::now();
        std::hint::black_box(fresh.distances());
        apsp = apsp.min(t.elapsed().as_secs_f64());

        let fresh = uncached(g);
        let t = Instant::now();
        let run = hicom(
            &fresh,
            l,
            HicomOptions {
                allow_large_l: true,
                ..Default::default()
            },
        );
        full = full.min(t.elapsed().as_secs_f64());
        outcome = match run {
            Ok(_) => "ok".into(),
            Err(e) => e.code().into(),
        };
    }
    (apsp, full, outcome)
}

/// Benchmarks connected samples of `G(n, c/n)` for each `n` in `sizes`.
pub fn bench(
    sizes: &[usize],
    c: f64,
    l: ReductionFactor,
    repeats: usize,
    seed: u64,
) -> Result<BenchReport> {
    let mut points = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let p = (c / n as f64).min(1.0);
        let g = generate_connected(GeneratorSpec::Gnp { n, p }, seed, 1000)?.graph;
        let (apsp_secs, hicom_secs, hicom_outcome) = time_graph(&g, l, repeats);
        points.push(BenchPoint {
            n,
            m: g.m(),
            p,
            apsp_secs,
            hicom_secs,
            hicom_outcome,
        });
    }
    let fit = |f: fn(&BenchPoint) -> f64| {
        loglog_slope(
            &points
                .iter()
                .map(|pt| (pt.n as f64, f(pt)))
                .collect::<Vec<_>>(),
        )
    };
    Ok(BenchReport {
        apsp_slope: fit(|p| p.apsp_secs),
        hicom_slope: fit(|p| p.hicom_secs),
        l,
        repeats,
        points,
    })
}

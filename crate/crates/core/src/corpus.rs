//! Test corpora: every non-isomorphic tree up to a size, cycles, and seeded
//! connected G(n, p) samples, described by a compact spec string such as
//!
//! ```text
//! trees:4-9;cycles:7-30;gnp:count=200,n=8-40,seed=1
//! ```
//!
//! Trees and G(n, p) samples of diameter below 3 are left out.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generate::{cycle, gnp, path};
use crate::graph::Graph;
use crate::metrics::eccentricity_profile;

pub const DEFAULT_CORPUS: &str = "trees:4-9;cycles:7-30;gnp:count=200,n=8-40,seed=1";

#[derive(Debug, Clone, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    #[serde(skip)]
    pub graph: Graph,
}

/// All pairwise non-isomorphic trees on `n` vertices, in a fixed order.
pub fn nonisomorphic_trees(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![path(1)];
    for size in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..t.n() {
                let edges = t.edges().chain(std::iter::once((v, size - 1)));
                let grown = Graph::from_edges(size, edges).expect("leaf edge is valid");
                if seen.insert(tree_canonical(&grown)) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    level
}

/// Isomorphism-invariant string of a tree: the smaller AHU encoding over the
/// tree's one or two centers.
pub fn tree_canonical(t: &Graph) -> String {
    let ecc: Vec<u32> = t
        .distances()
        .rows()
        .map(|r| r.iter().copied().max().unwrap_or(0))
        .collect();
    let radius = ecc.iter().copied().min().unwrap_or(0);
    (0..t.n())
        .filter(|&v| ecc[v] == radius)
        .map(|c| rooted_code(t, c, usize::MAX))
        .min()
        .unwrap_or_default()
}

fn rooted_code(t: &Graph, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = t
        .neighbors(v)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(t, w, v))
        .collect();
    kids.sort_unstable();
    format!("({})", kids.concat())
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidParameter(format!("bad range `{s}` (expected a-b or a)"));
    let (a, b) = s.split_once('-').unwrap_or((s, s));
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn diameter_at_least(g: &Graph, d: u32) -> bool {
    eccentricity_profile(g).is_ok_and(|p| p.diameter >= d)
}

/// `count` connected samples of diameter ≥ 3. Each draws `n` uniformly from
/// the range and `p = c·ln(n)/n` with `c ∈ [1, 2.5)`.
pub fn gnp_samples(count: usize, n_range: (usize, usize), seed: u64) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(n_range.0.max(4)..=n_range.1.max(4));
        let c: f64 = rng.random_range(1.0..2.5);
        let p = (c * (n as f64).ln() / n as f64).min(1.0);
        let s: u64 = rng.random();
        let g = gnp(n, p, s).expect("p lies in [0, 1]");
        if g.is_connected() && diameter_at_least(&g, 3) {
            out.push(CorpusEntry {
                name: format!("gnp-{}-{p:.4}-{s:016x}", n),
                graph: g,
            });
        }
    }
    out
}

/// Builds a corpus from its spec string.
pub fn parse_corpus(spec: &str) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (kind, args) = part.split_once(':').unwrap_or((part, ""));
        match kind.trim() {
            "trees" => {
                let (a, b) = parse_range(args)?;
                for n in a..=b {
                    for (i, t) in nonisomorphic_trees(n).into_iter().enumerate() {
                        if diameter_at_least(&t, 3) {
                            out.push(CorpusEntry {
                                name: format!("tree-{n}-{i}"),
                                graph: t,
                            });
                        }
                    }
                }
            }
            "cycles" => {
                let (a, b) = parse_range(args)?;
                for n in a.max(3)..=b {
                    out.push(CorpusEntry {
                        name: format!("cycle-{n}"),
                        graph: cycle(n),
                    });
                }
            }
            "paths" => {
                let (a, b) = parse_range(args)?;
                for n in a.max(1)..=b {
                    out.push(CorpusEntry {
                        name: format!("path-{n}"),
                        graph: path(n),
                    });
                }
            }
            "gnp" => {
                let (mut count, mut range, mut seed) = (200, (8, 40), 1u64);
                for kv in args.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    let (k, v) = kv.split_once('=').ok_or_else(|| {
                        Error::InvalidParameter(format!("expected key=value, found `{kv}`"))
                    })?;
                    let num = |v: &str| {
                        v.trim()
                            .parse::<u64>()
                            .map_err(|_| Error::InvalidParameter(format!("bad number `{v}`")))
                    };
                    match k.trim() {
                        "count" => count = num(v)? as usize,
                        "n" => range = parse_range(v)?,
                        "seed" => seed = num(v)?,
                        other => {
                            return Err(Error::InvalidParameter(format!(
                                "unknown gnp key `{other}`"
                            )))
                        }
                    }
                }
                out.extend(gnp_samples(count, range, seed));
            }
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown corpus family `{other}` (expected trees, cycles, paths or gnp)"
                )))
            }
        }
    }
    Ok(out)
}

pub fn default_corpus() -> Vec<CorpusEntry> {
    parse_corpus(DEFAULT_CORPUS).expect("default corpus spec is valid")
}

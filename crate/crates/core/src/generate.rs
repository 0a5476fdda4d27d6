//! Deterministic graph generators: paths, cycles, stars, complete graphs,
//! random trees and Erdős–Rényi G(n, p) samples.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Path on `n` vertices, `0 - 1 - ... - n-1`.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
}

/// Cycle on `n ≥ 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are valid")
}

/// Star `K_{1,leaves}` with hub 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star edges are valid")
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("complete edges are valid")
}

/// Uniform random labelled tree via a random Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    if n <= 2 {
        return path(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    Graph::from_edges(n, prufer_edges(n, &code)).expect("prufer decoding yields a tree")
}

fn prufer_edges(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    code.iter().for_each(|&c| degree[c] += 1);
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = leaves.pop_first().expect("a leaf always exists");
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let last: Vec<usize> = leaves.into_iter().collect();
    edges.push((last[0], last[1]));
    edges
}

/// One G(n, p) sample: each of the `n(n-1)/2` pairs is an edge with
/// probability `p`, drawn in lexicographic pair order.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Unsatisfiable(format!(
            "p = {p} is not a probability"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GeneratorSpec {
    Path { n: usize },
    Cycle { n: usize },
    Star { leaves: usize },
    Complete { n: usize },
    Tree { n: usize },
    Gnp { n: usize, p: f64 },
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Path { n } => write!(f, "path-{n}"),
            GeneratorSpec::Cycle { n } => write!(f, "cycle-{n}"),
            GeneratorSpec::Star { leaves } => write!(f, "star-{leaves}"),
            GeneratorSpec::Complete { n } => write!(f, "complete-{n}"),
            GeneratorSpec::Tree { n } => write!(f, "tree-{n}"),
            GeneratorSpec::Gnp { n, p } => write!(f, "gnp-{n}-{p}"),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    /// Accepts `path 6`, `cycle 6`, `star 4`, `complete 5`, `tree 9`,
    /// `gnp 20 0.2` (whitespace or `:` separated).
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s
            .split(|c: char| c.is_whitespace() || c == ':' || c == ',')
            .filter(|p| !p.is_empty())
            .collect();
        let bad = || Error::InvalidParameter(format!("unrecognised generator spec `{s}`"));
        let int = |i: usize| -> Result<usize> {
            parts.get(i).ok_or_else(bad)?.parse().map_err(|_| bad())
        };
        let spec = match parts.first().copied() {
            Some("path") => GeneratorSpec::Path { n: int(1)? },
            Some("cycle") => GeneratorSpec::Cycle { n: int(1)? },
            Some("star") => GeneratorSpec::Star { leaves: int(1)? },
            Some("complete") => GeneratorSpec::Complete { n: int(1)? },
            Some("tree") => GeneratorSpec::Tree { n: int(1)? },
            Some("gnp") => GeneratorSpec::Gnp {
                n: int(1)?,
                p: parts.get(2).ok_or_else(bad)?.parse().map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        };
        if parts.len()
            != if matches!(spec, GeneratorSpec::Gnp { .. }) {
                3
            } else {
                2
            }
        {
            return Err(bad());
        }
        Ok(spec)
    }
}

/// Generator output. `attempts` counts G(n, p) draws (1 for the
/// deterministic families).
#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: Graph,
    pub connected: bool,
    pub seed: u64,
    pub attempts: u32,
}

/// Runs a generator once. G(n, p) output may be disconnected; the flag says so.
pub fn generate(spec: GeneratorSpec, seed: u64) -> Result<Generated> {
    let graph = match spec {
        GeneratorSpec::Path { n }
        | GeneratorSpec::Tree { n }
        | GeneratorSpec::Complete { n }
        | GeneratorSpec::Gnp { n, .. }
            if n == 0 =>
        {
            return Err(Error::Unsatisfiable("n must be at least 1".into()))
        }
        GeneratorSpec::Cycle { n } if n < 3 => {
            return Err(Error::Unsatisfiable(format!("cycle needs n >= 3, got {n}")))
        }
        GeneratorSpec::Path { n } => path(n),
        GeneratorSpec::Cycle { n } => cycle(n),
        GeneratorSpec::Star { leaves } => star(leaves),
        GeneratorSpec::Complete { n } => complete(n),
        GeneratorSpec::Tree { n } => random_tree(n, seed),
        GeneratorSpec::Gnp { n, p } => gnp(n, p, seed)?,
    };
    Ok(Generated {
        connected: graph.is_connected(),
        graph,
        seed,
        attempts: 1,
    })
}

/// Like [`generate`] but redraws G(n, p) with seeds `seed, seed+1, ...`
/// until the sample is connected.
pub fn generate_connected(spec: GeneratorSpec, seed: u64, max_attempts: u32) -> Result<Generated> {
    for attempt in 0..max_attempts.max(1) {
        let s = seed.wrapping_add(attempt as u64);
        let mut out = generate(spec, s)?;
        if out.connected {
            out.attempts = attempt + 1;
            return Ok(out);
        }
        if !matches!(spec, GeneratorSpec::Gnp { .. }) {
            break;
        }
    }
    Err(Error::Unsatisfiable(format!(
        "{spec} produced no connected sample in {max_attempts} attempts from seed {seed}"
    )))
}

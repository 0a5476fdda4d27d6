//! Immutable simple undirected graphs and hop-distance machinery.
//!
//! Vertices are dense indices `0..n`. The all-pairs distance matrix is built
//! lazily on first use and cached for the lifetime of the graph.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};

pub type Distance = u32;

/// Sentinel for vertex pairs in different components. Strictly larger than
/// any real hop count.
pub const UNREACHABLE: Distance = Distance::MAX;

/// Dense `n × n` hop-count matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Distance {
        self.data[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[Distance] {
        &self.data[u * self.n..(u + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Distance]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }
}

impl fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<usize>>,
    label_base: usize,
    dist: OnceLock<DistanceMatrix>,
}

impl Clone for Graph {
    fn clone(&self) -> Self {
        Graph {
            n: self.n,
            m: self.m,
            adj: self.adj.clone(),
            label_base: self.label_base,
            dist: self.dist.clone(),
        }
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse; self-loops and out-of-range endpoints are errors.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut sets = vec![BTreeSet::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            sets[u].insert(v);
            sets[v].insert(u);
        }
        let adj: Vec<Vec<usize>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Graph {
            n,
            m,
            adj,
            label_base: 0,
            dist: OnceLock::new(),
        })
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_edges(n, std::iter::empty()).expect("edgeless graph is always valid")
    }

    /// Offset added to vertex indices when printing labels (0 or 1).
    pub fn label_base(&self) -> usize {
        self.label_base
    }

    pub fn with_label_base(mut self, base: usize) -> Graph {
        self.label_base = base;
        self
    }

    pub fn label(&self, v: usize) -> usize {
        v + self.label_base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Hop distances from `source`; [`UNREACHABLE`] outside its component.
    pub fn bfs_distances(&self, source: usize) -> Vec<Distance> {
        let mut dist = vec![UNREACHABLE; self.n];
        let mut queue = VecDeque::with_capacity(self.n);
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u];
            for &w in &self.adj[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// All-pairs hop distances (one BFS per source), cached on first call.
    pub fn distances(&self) -> &DistanceMatrix {
        self.dist.get_or_init(|| {
            let rows: Vec<Vec<Distance>> = (0..self.n)
                .into_par_iter()
                .map(|s| self.bfs_distances(s))
                .collect();
            DistanceMatrix {
                n: self.n,
                data: rows.into_iter().flatten().collect(),
            }
        })
    }

    #[inline]
    pub fn distance(&self, u: usize, v: usize) -> Distance {
        self.distances().get(u, v)
    }

    /// Vertices at distance exactly `j` from `v`, ascending.
    pub fn shell(&self, v: usize, j: Distance) -> Vec<usize> {
        let row = self.distances().row(v);
        (0..self.n).filter(|&u| row[u] == j).collect()
    }

    /// Vertices within distance `radius` of `v`, ascending.
    pub fn ball(&self, v: usize, radius: Distance) -> Vec<usize> {
        let row = self.distances().row(v);
        (0..self.n).filter(|&u| row[u] <= radius).collect()
    }

    /// Components as ascending vertex lists, ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.bfs_distances(0).iter().all(|&d| d != UNREACHABLE)
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected {
                components: self.connected_components().len(),
            })
        }
    }

    /// The subgraph induced by `members`, relabelled to `0..|members|` in
    /// ascending host order.
    pub fn induced_subgraph(&self, members: &[usize]) -> Result<InducedSubgraph> {
        if members.is_empty() {
            return Err(Error::EmptyTeam);
        }
        let mut to_host: Vec<usize> = members.to_vec();
        to_host.sort_unstable();
        to_host.dedup();
        let mut from_host = vec![None; self.n];
        for (i, &v) in to_host.iter().enumerate() {
            self.check_vertex(v)?;
            from_host[v] = Some(i);
        }
        let edges: Vec<(usize, usize)> = to_host
            .iter()
            .enumerate()
            .flat_map(|(i, &v)| {
                let from_host = &from_host;
                self.adj[v]
                    .iter()
                    .filter_map(move |&w| from_host[w].filter(|&j| j > i).map(|j| (i, j)))
            })
            .collect();
        let graph = Graph::from_edges(to_host.len(), edges)?.with_label_base(self.label_base);
        Ok(InducedSubgraph {
            graph,
            to_host,
            from_host,
        })
    }

    /// The `k`-th power: same vertices, `uv` an edge iff `1 ≤ d(u, v) ≤ k`.
    pub fn power(&self, k: Distance) -> Result<Graph> {
        if k == 0 {
            return Err(Error::InvalidParameter(
                "graph power requires k >= 1".into(),
            ));
        }
        let dist = self.distances();
        let edges = (0..self.n).flat_map(|u| {
            dist.row(u)
                .iter()
                .enumerate()
                .filter(move |&(v, &d)| v > u && d <= k)
                .map(move |(v, _)| (u, v))
        });
        Ok(Graph::from_edges(self.n, edges)?.with_label_base(self.label_base))
    }

    /// Eccentricity of each `members[i]` inside the induced subgraph on
    /// `members`, or [`UNREACHABLE`] when some teammate cannot be reached
    /// without leaving the team. Works on a membership mask, so it avoids
    /// materialising the subgraph; used on hot paths.
    pub fn team_eccentricities(&self, members: &[usize]) -> Vec<Distance> {
        let mut slot = vec![usize::MAX; self.n];
        for (i, &v) in members.iter().enumerate() {
            slot[v] = i;
        }
        let mut dist = vec![UNREACHABLE; members.len()];
        let mut queue = VecDeque::with_capacity(members.len());
        members
            .iter()
            .map(|&s| {
                dist.iter_mut().for_each(|d| *d = UNREACHABLE);
                dist[slot[s]] = 0;
                queue.clear();
                queue.push_back(s);
                let mut reached = 1;
                let mut ecc = 0;
                while let Some(u) = queue.pop_front() {
                    let du = dist[slot[u]];
                    ecc = du;
                    for &w in &self.adj[u] {
                        let sw = slot[w];
                        if sw != usize::MAX && dist[sw] == UNREACHABLE {
                            dist[sw] = du + 1;
                            reached += 1;
                            queue.push_back(w);
                        }
                    }
                }
                if reached == members.len() {
                    ecc
                } else {
                    UNREACHABLE
                }
            })
            .collect()
    }

    /// Diameter of the induced team subgraph, `None` when it is disconnected.
    pub fn team_diameter(&self, members: &[usize]) -> Option<Distance> {
        let ecc = self.team_eccentricities(members);
        match ecc.iter().max() {
            Some(&UNREACHABLE) => None,
            Some(&d) => Some(d),
            None => Some(0),
        }
    }

    /// Largest distance from a non-member to its nearest member; 0 when
    /// `members` covers every vertex.
    pub fn team_reach(&self, members: &[usize]) -> Distance {
        let dist = self.distances();
        let mut inside = vec![false; self.n];
        members.iter().for_each(|&v| inside[v] = true);
        (0..self.n)
            .filter(|&u| !inside[u])
            .map(|u| {
                members
                    .iter()
                    .map(|&d| dist.get(u, d))
                    .min()
                    .unwrap_or(UNREACHABLE)
            })
            .max()
            .unwrap_or(0)
    }
}

/// An induced subgraph together with the map back to host vertices.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `to_host[i]` is the host vertex of local vertex `i`.
    pub to_host: Vec<usize>,
    /// `from_host[v]` is the local index of host vertex `v`, if a member.
    pub from_host: Vec<Option<usize>>,
}

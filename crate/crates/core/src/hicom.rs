//! The HICOM approximation algorithm for highly comfortable teams, its repair
//! and maximisation phases, and runtime checks of the correctness bounds.
//!
//! Outline of a run on a connected graph `G` with factor `l`:
//!
//! 1. `d1 = ⌈diam(G)/l⌉`; start from a central vertex `v`.
//! 2. Take the ball of radius `⌊d1/2⌋` around `v`.
//! 3. While `diam(⟨D1⟩) < d1`, add single vertices from successive shells
//!    `N_i(v)`, never letting the induced diameter exceed `d1`.
//! 4. If some member kept its host eccentricity, remove members until the
//!    team is less dispersive again.
//!
//! Graphs of diameter at most two take a separate path that looks for a
//! dominating clique.

use std::cmp::Ordering;

use itertools::Itertools;
use serde::Serialize;

use crate::criteria::{check_hc, TeamCandidate, TeamReport};
use crate::error::{Error, Result};
use crate::factor::ReductionFactor;
use crate::graph::{Distance, Graph, UNREACHABLE};
use crate::io::digest;
use crate::metrics::{eccentricity_profile, EccentricityProfile};

/// Largest graph on which the dominating-clique search is exhaustive.
pub const EXHAUSTIVE_CLIQUE_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, Default)]
pub struct HicomOptions {
    /// Start from this central vertex instead of the lowest-index one.
    pub start: Option<usize>,
    /// Permit `l > 2`.
    pub allow_large_l: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HcParams {
    pub l: ReductionFactor,
    pub d1: Distance,
    pub start_vertex_override: Option<usize>,
}

impl HcParams {
    pub fn new(host_diameter: Distance, l: ReductionFactor, start: Option<usize>) -> Self {
        HcParams {
            l,
            d1: l.target_diameter(host_diameter),
            start_vertex_override: start,
        }
    }
}

/// One step of a run. Replaying the additions and removals in order
/// reproduces the final team.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "phase", rename_all = "snake_case")]
pub enum Phase {
    Start {
        vertex: usize,
    },
    Ball {
        radius: Distance,
        added: Vec<usize>,
        diameter: Distance,
    },
    Extend {
        shell: Distance,
        vertex: usize,
        diameter: Distance,
    },
    ShellExhausted {
        shell: Distance,
    },
    TargetUnreached {
        diameter: Distance,
    },
    Repair {
        removed: usize,
        k: Distance,
    },
    DominatingClique {
        members: Vec<usize>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct HicomResult {
    pub team: TeamCandidate,
    pub l: ReductionFactor,
    pub d1: Distance,
    pub start: usize,
    pub achieved_diameter: Distance,
    pub k: Distance,
    pub x: Distance,
    pub phases: Vec<Phase>,
    pub report: TeamReport,
    /// True when the team came from the small-diameter clique search.
    pub fallback: bool,
    pub warnings: Vec<String>,
}

impl HicomResult {
    pub fn repaired(&self) -> bool {
        self.phases
            .iter()
            .any(|p| matches!(p, Phase::Repair { .. }))
    }
}

/// Re-applies a trace, returning the resulting member list (ascending).
pub fn replay(phases: &[Phase]) -> Vec<usize> {
    let mut team: Vec<usize> = Vec::new();
    for p in phases {
        match p {
            Phase::Start { vertex } => team.push(*vertex),
            Phase::Ball { added, .. } => team.extend(added),
            Phase::Extend { vertex, .. } => team.push(*vertex),
            Phase::Repair { removed, .. } => team.retain(|v| v != removed),
            Phase::DominatingClique { members } => team = members.clone(),
            Phase::ShellExhausted { .. } | Phase::TargetUnreached { .. } => {}
        }
    }
    team.sort_unstable();
    team
}

fn host_eccentricities(g: &Graph) -> Vec<Distance> {
    g.distances()
        .rows()
        .map(|row| row.iter().copied().max().unwrap_or(0))
        .collect()
}

fn insert_sorted(team: &mut Vec<usize>, v: usize) {
    if let Err(pos) = team.binary_search(&v) {
        team.insert(pos, v);
    }
}

/// Induced eccentricities are finite and strictly below the host ones.
fn violator_count(team: &[usize], inner: &[Distance], host: &[Distance]) -> usize {
    team.iter()
        .zip(inner)
        .filter(|&(&v, &e)| e >= host[v])
        .count()
}

fn check_l_policy(l: ReductionFactor, allow_large_l: bool) -> Result<Vec<String>> {
    let mut warnings = Vec::new();
    if l > ReductionFactor::two() {
        if !allow_large_l {
            return Err(Error::InvalidParameter(format!(
                "l = {l} exceeds 2; pass allow_large_l to run anyway"
            )));
        }
        warnings.push(format!(
            "l = {l} > 2: teams get small and often do not exist"
        ));
    } else if l > ReductionFactor::three_halves() {
        warnings.push(format!(
            "l = {l} > 3/2: an l-HC team is not guaranteed to exist"
        ));
    }
    Ok(warnings)
}

/// Runs HICOM on a connected graph.
pub fn hicom(g: &Graph, l: ReductionFactor, opts: HicomOptions) -> Result<HicomResult> {
    g.require_connected()?;
    let mut warnings = check_l_policy(l, opts.allow_large_l)?;
    let profile = eccentricity_profile(g)?;
    if profile.diameter <= 2 {
        return small_diameter_run(g, &profile, warnings);
    }
    let params = HcParams::new(profile.diameter, l, opts.start);
    let d1 = params.d1;
    if d1 >= profile.diameter {
        return Err(Error::DegenerateParams {
            d1,
            diameter: profile.diameter,
        });
    }

    let Growth {
        start,
        mut team,
        mut phases,
        unreached,
    } = grow(g, &profile, d1, opts.start)?;
    if unreached {
        warnings.push(format!("target diameter {d1} unreached"));
    }

    let host = host_eccentricities(g);
    let inner = g.team_eccentricities(&team);
    if violator_count(&team, &inner, &host) > 0 {
        let (repaired, removals) = repair_traced(g, &team, d1, &host)?;
        phases.extend(removals);
        team = repaired;
    }

    let team = TeamCandidate::new(g, team)?;
    let report = check_hc(g, &team, l)?;
    if !report.is_hc() {
        let achieved = report.induced_diameter.unwrap_or(UNREACHABLE);
        let why = failure_reason(&report);
        return Err(if unreached {
            Error::NoExtension { d1, reason: why }
        } else {
            Error::Infeasible(format!("{why} (team diameter {achieved}, d1 {d1})"))
        });
    }
    let achieved_diameter = report.induced_diameter.unwrap_or(0);
    Ok(HicomResult {
        k: report.domination_radius,
        x: achieved_diameter / 2,
        achieved_diameter,
        team,
        l,
        d1,
        start,
        phases,
        report,
        fallback: false,
        warnings,
    })
}

/// Outcome of steps 1 to 6: the grown team before any repair.
#[derive(Debug, Clone)]
pub struct Growth {
    pub start: usize,
    pub team: Vec<usize>,
    pub phases: Vec<Phase>,
    pub unreached: bool,
}

/// Ball growth around a central vertex and single-vertex extension towards
/// diameter `d1`.
pub fn grow(
    g: &Graph,
    profile: &EccentricityProfile,
    d1: Distance,
    start: Option<usize>,
) -> Result<Growth> {
    let start = match start {
        Some(v) => {
            g.check_vertex(v)?;
            if profile.ecc[v] != profile.radius {
                return Err(Error::InvalidParameter(format!(
                    "start vertex {} is not central (e = {}, r = {})",
                    g.label(v),
                    profile.ecc[v],
                    profile.radius
                )));
            }
            v
        }
        None => profile.center[0],
    };

    let radius = d1 / 2;
    let mut team = g.ball(start, radius);
    let mut diameter = g
        .team_diameter(&team)
        .ok_or_else(|| Error::Internal("ball around a vertex is disconnected".into()))?;
    let mut phases = vec![
        Phase::Start { vertex: start },
        Phase::Ball {
            radius,
            added: team.iter().copied().filter(|&u| u != start).collect(),
            diameter,
        },
    ];

    let mut shell = radius + 1;
    let mut unreached = false;
    while diameter < d1 {
        if shell > profile.ecc[start] {
            phases.push(Phase::TargetUnreached { diameter });
            unreached = true;
            break;
        }
        match best_extension(g, start, &team, shell, d1) {
            Some((w, nd)) => {
                insert_sorted(&mut team, w);
                diameter = nd;
                phases.push(Phase::Extend {
                    shell,
                    vertex: w,
                    diameter: nd,
                });
            }
            None => {
                phases.push(Phase::ShellExhausted { shell });
                shell += 1;
            }
        }
    }

    Ok(Growth {
        start,
        team,
        phases,
        unreached,
    })
}

fn failure_reason(r: &TeamReport) -> String {
    if !r.is_connected {
        "team not connected".into()
    } else if !r.less_dispersive {
        format!("not less dispersive at {:?}", r.violators)
    } else if !r.bc_condition {
        "induced diameter exceeds d1".into()
    } else {
        format!("k = {} exceeds the team diameter", r.domination_radius)
    }
}

fn small_diameter_run(
    g: &Graph,
    profile: &EccentricityProfile,
    mut warnings: Vec<String>,
) -> Result<HicomResult> {
    let l = ReductionFactor::two();
    let none = || Error::Infeasible("no l-HC team; graph diameter <= 2".into());
    let team = small_diameter_fallback(g)?.ok_or_else(none)?;
    let report = check_hc(g, &team, l)?;
    if !report.is_hc() {
        return Err(none());
    }
    warnings.push(format!(
        "diameter {} <= 2: searched for a dominating clique with l = 2",
        profile.diameter
    ));
    let achieved_diameter = report.induced_diameter.unwrap_or(0);
    Ok(HicomResult {
        phases: vec![Phase::DominatingClique {
            members: team.members().to_vec(),
        }],
        start: team.members()[0],
        k: report.domination_radius,
        x: achieved_diameter / 2,
        d1: report.d1,
        achieved_diameter,
        team,
        l,
        report,
        fallback: true,
        warnings,
    })
}

/// Best single addition from shell `i`: among `N_i(v) \ D1` keeping `⟨D1⟩`
/// connected with diameter at most `d1`, the one giving the largest induced
/// diameter, lowest index on ties.
fn best_extension(
    g: &Graph,
    v: usize,
    team: &[usize],
    i: Distance,
    d1: Distance,
) -> Option<(usize, Distance)> {
    let candidates: Vec<usize> = g
        .shell(v, i)
        .into_iter()
        .filter(|&w| {
            team.binary_search(&w).is_err()
                && g.neighbors(w).iter().any(|u| team.binary_search(u).is_ok())
        })
        .collect();
    if candidates.is_empty() {
        return None;
    }
    let mut verts = team.to_vec();
    verts.extend_from_slice(&candidates);
    let local = LocalBits::new(g, &verts);
    let mut alive = local.mask(0..team.len());
    let mut best: Option<(usize, Distance)> = None;
    for (j, &w) in candidates.iter().enumerate() {
        let bit = team.len() + j;
        alive[bit / 64] |= 1 << (bit % 64);
        if let Some(ecc) = local.eccentricities(&alive, d1) {
            let d = ecc.into_iter().max().unwrap_or(0);
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some((w, d));
            }
        }
        alive[bit / 64] &= !(1 << (bit % 64));
    }
    best
}

/// Adjacency bitsets of the subgraph induced by a vertex list, for repeated
/// BFS over subsets of it.
struct LocalBits {
    words: usize,
    adj: Vec<Vec<u64>>,
}

impl LocalBits {
    fn new(g: &Graph, verts: &[usize]) -> Self {
        let words = verts.len().div_ceil(64).max(1);
        let mut slot = vec![usize::MAX; g.n()];
        for (i, &v) in verts.iter().enumerate() {
            slot[v] = i;
        }
        let adj = verts
            .iter()
            .map(|&v| {
                let mut row = vec![0u64; words];
                for &w in g.neighbors(v) {
                    if slot[w] != usize::MAX {
                        row[slot[w] / 64] |= 1 << (slot[w] % 64);
                    }
                }
                row
            })
            .collect();
        LocalBits { words, adj }
    }

    fn mask(&self, bits: impl IntoIterator<Item = usize>) -> Vec<u64> {
        let mut m = vec![0u64; self.words];
        for b in bits {
            m[b / 64] |= 1 << (b % 64);
        }
        m
    }

    /// Eccentricities of the alive vertices inside the subgraph they induce,
    /// in index order. `None` when it is disconnected or some eccentricity
    /// exceeds `limit`.
    fn eccentricities(&self, alive: &[u64], limit: Distance) -> Option<Vec<Distance>> {
        let mut out = Vec::new();
        let mut seen = vec![0u64; self.words];
        let mut frontier = vec![0u64; self.words];
        let mut next = vec![0u64; self.words];
        for s in ones(alive) {
            seen.iter_mut().for_each(|x| *x = 0);
            frontier.iter_mut().for_each(|x| *x = 0);
            seen[s / 64] |= 1 << (s % 64);
            frontier[s / 64] |= 1 << (s % 64);
            let mut depth = 0;
            loop {
                next.iter_mut().for_each(|x| *x = 0);
                for u in ones(&frontier) {
                    for (n, a) in next.iter_mut().zip(&self.adj[u]) {
                        *n |= a;
                    }
                }
                let mut any = false;
                for ((n, a), v) in next.iter_mut().zip(alive).zip(&seen) {
                    *n &= a & !v;
                    any |= *n != 0;
                }
                if !any {
                    break;
                }
                depth += 1;
                if depth > limit {
                    return None;
                }
                for (v, n) in seen.iter_mut().zip(&next) {
                    *v |= n;
                }
                std::mem::swap(&mut frontier, &mut next);
            }
            if seen != alive {
                return None;
            }
            out.push(depth);
        }
        Some(out)
    }
}

/// BFS layers inside the induced team from every member.
struct TeamLayers {
    adj: Vec<Vec<usize>>,
    dist: Vec<Vec<Distance>>,
    /// `parents[s][w]`: neighbours of `w` one layer closer to `s`.
    parents: Vec<Vec<u32>>,
    ecc: Vec<Distance>,
    /// Members at distance `ecc[s]` from `s`.
    farthest: Vec<u32>,
}

impl TeamLayers {
    fn new(g: &Graph, team: &[usize]) -> Self {
        let mut slot = vec![usize::MAX; g.n()];
        for (i, &v) in team.iter().enumerate() {
            slot[v] = i;
        }
        let adj: Vec<Vec<usize>> = team
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .iter()
                    .map(|&w| slot[w])
                    .filter(|&j| j != usize::MAX)
                    .collect()
            })
            .collect();
        let t = team.len();
        let mut dist = Vec::with_capacity(t);
        let mut parents = Vec::with_capacity(t);
        let mut ecc = Vec::with_capacity(t);
        let mut farthest = Vec::with_capacity(t);
        let mut scratch = Vec::new();
        for s in 0..t {
            let d = bfs_local(&adj, s, usize::MAX, &mut scratch);
            let e = d.iter().copied().max().unwrap_or(0);
            let p = (0..t)
                .map(|w| {
                    adj[w]
                        .iter()
                        .filter(|&&u| d[u] != UNREACHABLE && d[u] + 1 == d[w])
                        .count() as u32
                })
                .collect();
            farthest.push(d.iter().filter(|&&x| x == e).count() as u32);
            ecc.push(e);
            parents.push(p);
            dist.push(d);
        }
        TeamLayers {
            adj,
            dist,
            parents,
            ecc,
            farthest,
        }
    }

    /// Eccentricity of `s` once member `r` is removed, `None` if the rest
    /// falls apart.
    fn eccentricity_without(
        &self,
        s: usize,
        r: usize,
        scratch: &mut Vec<usize>,
    ) -> Option<Distance> {
        let d = &self.dist[s];
        let intact = self.ecc[s] != UNREACHABLE
            && self.adj[r]
                .iter()
                .all(|&w| d[w] != d[r] + 1 || self.parents[s][w] >= 2);
        if intact {
            let e = self.ecc[s];
            return Some(if d[r] == e && self.farthest[s] == 1 {
                e - 1
            } else {
                e
            });
        }
        let fresh = bfs_local(&self.adj, s, r, scratch);
        fresh
            .iter()
            .enumerate()
            .filter(|&(w, _)| w != r)
            .map(|(_, &x)| x)
            .try_fold(0, |m, x| (x != UNREACHABLE).then(|| m.max(x)))
    }
}

fn bfs_local(adj: &[Vec<usize>], s: usize, skip: usize, queue: &mut Vec<usize>) -> Vec<Distance> {
    let mut d = vec![UNREACHABLE; adj.len()];
    d[s] = 0;
    queue.clear();
    queue.push(s);
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        for &w in &adj[u] {
            if w != skip && d[w] == UNREACHABLE {
                d[w] = d[u] + 1;
                queue.push(w);
            }
        }
    }
    d
}

fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            (w != 0).then(|| {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                i * 64 + b
            })
        })
    })
}

/// The vertex HICOM would add from shell `N_i(v)`, or `None` when the shell
/// has no admissible candidate.
pub fn extend_step(
    g: &Graph,
    v: usize,
    team: &TeamCandidate,
    i: Distance,
    d1: Distance,
) -> Option<usize> {
    best_extension(g, v, team.members(), i, d1).map(|(w, _)| w)
}

/// Removes members until the team is less dispersive, keeping it connected
/// with `diam(⟨D1⟩) ≤ d1` and `k ≤ diam(⟨D1⟩)` after every removal.
pub fn repair(g: &Graph, team: &TeamCandidate, params: &HcParams) -> Result<TeamCandidate> {
    let host = host_eccentricities(g);
    let (members, _) = repair_traced(g, team.members(), params.d1, &host)?;
    TeamCandidate::new(g, members)
}

fn repair_traced(
    g: &Graph,
    team: &[usize],
    d1: Distance,
    host: &[Distance],
) -> Result<(Vec<usize>, Vec<Phase>)> {
    let dist = g.distances();
    let mut team = team.to_vec();
    let mut phases = Vec::new();
    loop {
        let layers = TeamLayers::new(g, &team);
        let inner = &layers.ecc;
        if violator_count(&team, inner, host) == 0 {
            return Ok((team, phases));
        }
        // Current violators first, so hopeless trials stop early.
        let sources: Vec<usize> = (0..team.len())
            .sorted_by_key(|&i| (inner[i] < host[team[i]], i))
            .collect();
        // (nearest member, its distance, distance to the next nearest)
        let nearest: Vec<(usize, Distance, Distance)> = (0..g.n())
            .map(|u| {
                let mut first = (usize::MAX, UNREACHABLE);
                let mut second = UNREACHABLE;
                for &t in &team {
                    let d = dist.get(u, t);
                    if d < first.1 {
                        second = first.1;
                        first = (t, d);
                    } else if d < second {
                        second = d;
                    }
                }
                (first.0, first.1, second)
            })
            .collect();
        let mut scratch = Vec::new();
        // Trials in (k after removal, vertex) order; key is (k, violators left, vertex).
        let mut order: Vec<(Distance, usize)> = if team.len() > 1 {
            (0..team.len())
                .map(|idx| {
                    let removed = team[idx];
                    let k = nearest
                        .iter()
                        .map(|&(t, d, second)| if t == removed { second } else { d })
                        .max()
                        .unwrap_or(0);
                    (k, idx)
                })
                .filter(|&(k, _)| k <= d1)
                .collect()
        } else {
            Vec::new()
        };
        order.sort_unstable();
        let mut best: Option<(Distance, usize, usize)> = None;
        for (k, idx) in order {
            if best.is_some_and(|b| k > b.0) {
                break;
            }
            let removed = team[idx];
            // A later trial in the same k class needs fewer violators.
            let cap = best.map_or(usize::MAX, |b| b.1);
            let mut left = 0;
            let mut diam = 0;
            let mut feasible = true;
            for &i in sources.iter().filter(|&&i| i != idx) {
                let Some(e) = layers
                    .eccentricity_without(i, idx, &mut scratch)
                    .filter(|&e| e <= d1)
                else {
                    feasible = false;
                    break;
                };
                diam = diam.max(e);
                if e >= host[team[i]] {
                    left += 1;
                    if left >= cap {
                        feasible = false;
                        break;
                    }
                }
            }
            if !feasible {
                continue;
            }
            if k > diam {
                continue;
            }
            let key = (k, left, removed);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        match best {
            Some((k, _, removed)) => {
                team.retain(|&v| v != removed);
                phases.push(Phase::Repair { removed, k });
            }
            None => return Err(Error::RepairFailed { stuck: team }),
        }
    }
}

/// Dominating clique for graphs of diameter at most two. Complete graphs
/// return a single vertex; otherwise cliques of at least two vertices are
/// searched, exhaustively up to [`EXHAUSTIVE_CLIQUE_LIMIT`] vertices and
/// greedily above.
pub fn small_diameter_fallback(g: &Graph) -> Result<Option<TeamCandidate>> {
    let profile = eccentricity_profile(g)?;
    if profile.diameter > 2 {
        return Err(Error::InvalidParameter(format!(
            "fallback applies to diameter <= 2, got {}",
            profile.diameter
        )));
    }
    if profile.diameter <= 1 {
        return TeamCandidate::new(g, [0]).map(Some);
    }
    let found = if g.n() <= EXHAUSTIVE_CLIQUE_LIMIT {
        exhaustive_dominating_clique(g)
    } else {
        greedy_dominating_clique(g)
    };
    found.map(|c| TeamCandidate::new(g, c)).transpose()
}

fn dominates(g: &Graph, set: &[usize]) -> bool {
    let mut covered = vec![false; g.n()];
    for &v in set {
        covered[v] = true;
        g.neighbors(v).iter().for_each(|&w| covered[w] = true);
    }
    covered.into_iter().all(|c| c)
}

fn exhaustive_dominating_clique(g: &Graph) -> Option<Vec<usize>> {
    fn grow(g: &Graph, clique: &mut Vec<usize>, size: usize, from: usize) -> bool {
        if clique.len() == size {
            return dominates(g, clique);
        }
        for w in from..g.n() {
            if clique.iter().all(|&c| g.has_edge(c, w)) {
                clique.push(w);
                if grow(g, clique, size, w + 1) {
                    return true;
                }
                clique.pop();
            }
        }
        false
    }
    let mut clique = Vec::new();
    (2..=g.n()).find_map(|size| {
        clique.clear();
        grow(g, &mut clique, size, 0).then(|| clique.clone())
    })
}

fn greedy_dominating_clique(g: &Graph) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for u in 0..g.n() {
        let mut clique = vec![u];
        let mut covered = vec![false; g.n()];
        let cover = |covered: &mut Vec<bool>, v: usize| {
            covered[v] = true;
            g.neighbors(v).iter().for_each(|&w| covered[w] = true);
        };
        cover(&mut covered, u);
        loop {
            let done = covered.iter().all(|&c| c);
            if done && clique.len() >= 2 {
                break;
            }
            let pick = g
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&w| !clique.contains(&w) && clique.iter().all(|&c| g.has_edge(c, w)))
                .map(|w| {
                    let gain = std::iter::once(w)
                        .chain(g.neighbors(w).iter().copied())
                        .filter(|&x| !covered[x])
                        .count();
                    (std::cmp::Reverse(gain), w)
                })
                .min();
            match pick {
                Some((_, w)) => {
                    clique.push(w);
                    cover(&mut covered, w);
                }
                None => break,
            }
        }
        if clique.len() >= 2 && covered.iter().all(|&c| c) {
            clique.sort_unstable();
            if best.as_ref().is_none_or(|b| clique.len() < b.len()) {
                best = Some(clique);
            }
        }
    }
    best
}

/// Greedily grows a successful team, trying vertices in ascending order and
/// keeping every addition under which all four HC conditions still hold.
pub fn extend_to_max(g: &Graph, result: &HicomResult, l: ReductionFactor) -> Result<TeamCandidate> {
    let host = host_eccentricities(g);
    let d1 = l.target_diameter(host.iter().copied().max().unwrap_or(0));
    let mut team = result.team.members().to_vec();
    loop {
        let mut grew = false;
        for w in 0..g.n() {
            if team.binary_search(&w).is_ok()
                || !g.neighbors(w).iter().any(|u| team.binary_search(u).is_ok())
            {
                continue;
            }
            let mut trial = team.clone();
            insert_sorted(&mut trial, w);
            let inner = g.team_eccentricities(&trial);
            let diam = inner.iter().copied().max().unwrap_or(0);
            if diam == UNREACHABLE || diam > d1 || violator_count(&trial, &inner, &host) > 0 {
                continue;
            }
            if g.team_reach(&trial) <= diam {
                team = trial;
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    let team = TeamCandidate::new(g, team)?;
    if !check_hc(g, &team, l)?.is_hc() && result.report.is_hc() {
        return Err(Error::Internal("maximised team lost the HC verdict".into()));
    }
    Ok(team)
}

/// Evaluation record for one inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub context: String,
}

/// `k ≤ r(G) − x` and `k ≤ r(G) − diam(⟨D1⟩)/2 + 1/2` for a finished run.
pub fn verify_k_bound(result: &HicomResult, g: &Graph) -> Result<Vec<BoundCheck>> {
    let profile = eccentricity_profile(g)?;
    let r = profile.radius as i64;
    let k = result.k as i64;
    let diam = result.achieved_diameter as i64;
    let x = diam / 2;
    let context = format!("{} l={} d1={}", digest(g), result.l, result.d1);
    Ok(vec![
        BoundCheck {
            name: "k <= r(G) - x".into(),
            lhs: k as f64,
            rhs: (r - x) as f64,
            holds: k <= r - x,
            context: context.clone(),
        },
        BoundCheck {
            name: "k <= r(G) - diam(<D1>)/2 + 1/2".into(),
            lhs: k as f64,
            rhs: r as f64 - diam as f64 / 2.0 + 0.5,
            holds: 2 * k <= 2 * r - diam + 1,
            context,
        },
    ])
}

/// One row of the self-centered direct-substitution table: with
/// `r(G) = diam(G)` and `diam(⟨D1⟩) = d1`, the bound `k = r − x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubstitutionRow {
    pub diameter: u32,
    pub d1: u32,
    pub x: u32,
    pub k_bound: i64,
    /// `k_bound` compared with `d1`.
    #[serde(serialize_with = "ser_ordering")]
    pub versus_d1: Ordering,
}

fn ser_ordering<S: serde::Serializer>(o: &Ordering, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(match o {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    })
}

/// Direct substitution for a graph whose radius equals `radius`.
pub fn direct_substitution(diameter: u32, radius: u32, l: ReductionFactor) -> SubstitutionRow {
    let d1 = l.target_diameter(diameter);
    let x = d1 / 2;
    let k_bound = radius as i64 - x as i64;
    SubstitutionRow {
        diameter,
        d1,
        x,
        k_bound,
        versus_d1: k_bound.cmp(&(d1 as i64)),
    }
}

/// Prediction of whether HICOM finds a 2-HC team, from `b = 2r(G) − diam(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasibilityPrediction {
    pub radius: Distance,
    pub diameter: Distance,
    pub b: u32,
    pub case: String,
    /// Smallest diameter at which the prediction turns feasible for this `b`.
    pub threshold: u32,
    pub feasible: bool,
}

pub fn two_hc_feasibility(g: &Graph) -> Result<FeasibilityPrediction> {
    let p = eccentricity_profile(g)?;
    let b = 2 * p.radius - p.diameter;
    let threshold = if b % 2 == 0 {
        2 * b + 2
    } else {
        (2 * b).saturating_sub(1)
    };
    let case = if p.is_self_centered() {
        "self-centered (b = r)".to_string()
    } else if b == 0 {
        "diam = 2r (b = 0)".to_string()
    } else if p.diameter == p.radius + 1 {
        format!("bi-eccentric (b = {b}, odd = {})", b % 2 == 1)
    } else if b % 2 == 0 {
        format!("b even (b = {b})")
    } else {
        format!("b odd (b = {b})")
    };
    Ok(FeasibilityPrediction {
        radius: p.radius,
        diameter: p.diameter,
        b,
        case,
        threshold,
        feasible: p.diameter >= threshold,
    })
}

/// Triples `(i, j, d)` of team members at induced distance `d`; debugging aid
/// for traces.
#[doc(hidden)]
pub fn team_distance_table(
    g: &Graph,
    team: &TeamCandidate,
) -> Result<Vec<(usize, usize, Distance)>> {
    let sub = g.induced_subgraph(team.members())?;
    Ok((0..sub.to_host.len())
        .tuple_combinations()
        .map(|(i, j)| (sub.to_host[i], sub.to_host[j], sub.graph.distance(i, j)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::Verdict;
    use crate::generate::{complete, cycle, path, star};

    fn l(s: &str) -> ReductionFactor {
        s.parse().unwrap()
    }

    #[test]
    fn c6_three_halves() {
        let g = cycle(6);
        let r = hicom(&g, l("3/2"), HicomOptions::default()).unwrap();
        assert_eq!(r.team.members(), &[0, 1, 5]);
        assert_eq!((r.d1, r.achieved_diameter, r.k), (2, 2, 2));
        assert_eq!(r.report.verdict, Verdict::HighlyComfortable);
        assert_eq!(replay(&r.phases), r.team.members());
    }

    #[test]
    fn p7_three_halves_needs_no_repair() {
        let g = path(7);
        let r = hicom(&g, l("3/2"), HicomOptions::default()).unwrap();
        assert_eq!(r.start, 3);
        assert_eq!(r.team.members(), &[1, 2, 3, 4, 5]);
        assert_eq!((r.d1, r.achieved_diameter, r.k, r.x), (4, 4, 1, 2));
        assert!(!r.repaired());
        let bounds = verify_k_bound(&r, &g).unwrap();
        assert!(bounds.iter().all(|b| b.holds));
        assert_eq!((bounds[0].lhs, bounds[0].rhs), (1.0, 1.0));
    }

    #[test]
    fn degenerate_l() {
        let err = hicom(&cycle(6), l("1.05"), HicomOptions::default()).unwrap_err();
        assert!(matches!(
            err,
            Error::DegenerateParams { d1: 3, diameter: 3 }
        ));
    }

    #[test]
    fn c8_extends_from_second_shell() {
        let g = cycle(8);
        let team = TeamCandidate::new(&g, [7, 0, 1]).unwrap();
        assert_eq!(extend_step(&g, 0, &team, 2, 3), Some(2));
        let r = hicom(&g, l("3/2"), HicomOptions::default()).unwrap();
        assert_eq!(r.team.members(), &[0, 1, 2, 7]);
        assert_eq!(r.achieved_diameter, 3);
        assert!(r.phases.contains(&Phase::Extend {
            shell: 2,
            vertex: 2,
            diameter: 3
        }));
    }

    #[test]
    fn repair_whole_p6_down_to_its_comfortable_team() {
        let g = path(6);
        let all = TeamCandidate::new(&g, 0..6).unwrap();
        let params = HcParams {
            l: l("6/5"),
            d1: 5,
            start_vertex_override: None,
        };
        let fixed = repair(&g, &all, &params).unwrap();
        assert_eq!(fixed.members(), &[1, 2, 3, 4]);
        let ok = TeamCandidate::new(&g, [1, 2, 3, 4]).unwrap();
        assert_eq!(repair(&g, &ok, &params).unwrap(), ok);
    }

    #[test]
    fn repair_reports_stuck_candidate() {
        let g = cycle(6);
        let t = TeamCandidate::new(&g, 0..6).unwrap();
        let params = HcParams {
            l: l("3/2"),
            d1: 2,
            start_vertex_override: None,
        };
        match repair(&g, &t, &params) {
            Err(Error::RepairFailed { stuck }) => assert_eq!(stuck.len(), 6),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fallback_cases() {
        // K4 minus the edge {0, 1}
        let k4e = Graph::from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let c = small_diameter_fallback(&k4e).unwrap().unwrap();
        assert_eq!(c.len(), 2);
        assert!(k4e.has_edge(c.members()[0], c.members()[1]));
        assert!(dominates(&k4e, c.members()));

        assert_eq!(small_diameter_fallback(&cycle(5)).unwrap(), None);
        assert_eq!(
            small_diameter_fallback(&complete(5))
                .unwrap()
                .unwrap()
                .members(),
            &[0]
        );
        assert!(small_diameter_fallback(&path(5)).is_err());
    }

    #[test]
    fn small_diameter_routes_through_fallback() {
        assert!(matches!(
            hicom(&star(6), l("3/2"), HicomOptions::default()),
            Err(Error::Infeasible(_))
        ));
        // C5 plus a chord-free triangle cannot help; a 2-self-centered graph
        // with a dominating edge succeeds: the 4-cycle.
        let c4 = cycle(4);
        let r = hicom(&c4, l("3/2"), HicomOptions::default()).unwrap();
        assert!(r.fallback);
        assert_eq!(r.team.members(), &[0, 1]);
        assert_eq!(r.l, ReductionFactor::two());
        assert!(r.report.is_hc());
    }

    #[test]
    fn greedy_clique_agrees_on_small_graphs() {
        let c4 = cycle(4);
        assert_eq!(greedy_dominating_clique(&c4), Some(vec![0, 1]));
        assert_eq!(greedy_dominating_clique(&cycle(5)), None);
    }

    #[test]
    fn start_override_must_be_central() {
        let g = path(7);
        let opts = HicomOptions {
            start: Some(0),
            ..Default::default()
        };
        assert!(matches!(
            hicom(&g, l("3/2"), opts),
            Err(Error::InvalidParameter(_))
        ));
        let c6 = cycle(6);
        let opts = HicomOptions {
            start: Some(3),
            ..Default::default()
        };
        let r = hicom(&c6, l("3/2"), opts).unwrap();
        assert_eq!(r.team.members(), &[2, 3, 4]);
    }

    #[test]
    fn l_policy() {
        let g = path(12);
        assert!(hicom(&g, l("3"), HicomOptions::default()).is_err());
        let opts = HicomOptions {
            allow_large_l: true,
            ..Default::default()
        };
        let r = hicom(&g, l("3"), opts).unwrap();
        assert_eq!(r.warnings.len(), 1);
        let r = hicom(&g, l("2"), HicomOptions::default()).unwrap();
        assert!(r.warnings[0].contains("not guaranteed"));
    }

    #[test]
    fn extend_to_max_examples() {
        let c6 = cycle(6);
        let r = hicom(&c6, l("3/2"), HicomOptions::default()).unwrap();
        assert_eq!(extend_to_max(&c6, &r, l("3/2")).unwrap(), r.team);
        let p7 = path(7);
        let r = hicom(&p7, l("3/2"), HicomOptions::default()).unwrap();
        assert_eq!(
            extend_to_max(&p7, &r, l("3/2")).unwrap().members(),
            &[1, 2, 3, 4, 5]
        );
    }

    #[test]
    fn substitution_table_rows() {
        let l = ReductionFactor::three_halves();
        let row = direct_substitution(500, 500, l);
        assert_eq!(
            (row.d1, row.x, row.k_bound, row.versus_d1),
            (334, 167, 333, Ordering::Less)
        );
        let row = direct_substitution(100, 100, l);
        assert_eq!(
            (row.d1, row.x, row.k_bound, row.versus_d1),
            (67, 33, 67, Ordering::Equal)
        );
        // l = 1.6 examples: bi-eccentric diam 50 and self-centered diam 300
        let l16: ReductionFactor = "1.6".parse().unwrap();
        let row = direct_substitution(50, 49, l16);
        assert_eq!(
            (row.d1, row.x, row.k_bound, row.versus_d1),
            (32, 16, 33, Ordering::Greater)
        );
        let row = direct_substitution(300, 300, l16);
        assert_eq!(
            (row.d1, row.x, row.k_bound, row.versus_d1),
            (188, 94, 206, Ordering::Greater)
        );
    }

    #[test]
    fn feasibility_classifier() {
        // diam = 2r: every path with an odd vertex count
        let p = two_hc_feasibility(&path(7)).unwrap();
        assert_eq!((p.b, p.threshold, p.feasible), (0, 2, true));
        let c = two_hc_feasibility(&cycle(9)).unwrap();
        assert!(c.case.starts_with("self-centered"));
        assert!(!c.feasible);
        // even path: diam = 2r - 1
        let p = two_hc_feasibility(&path(8)).unwrap();
        assert_eq!((p.b, p.threshold, p.feasible), (1, 1, true));
    }
}

//! Team predicates: domination, k-distance domination, connectivity,
//! less-dispersiveness, and the better / highly comfortable conditions.
//!
//! A team `D` is judged through its induced subgraph `⟨D⟩`. Eccentricities
//! inside `⟨D⟩` are computed on the materialised subgraph, never by
//! restricting host distances, since paths may not leave the team.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::ReductionFactor;
use crate::graph::{Distance, Graph, UNREACHABLE};

/// A nonempty vertex subset proposed as a team, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct TeamCandidate(Vec<usize>);

impl TeamCandidate {
    pub fn new(g: &Graph, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v: Vec<usize> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(Error::EmptyTeam);
        }
        if let Some(&last) = v.last() {
            g.check_vertex(last)?;
        }
        Ok(TeamCandidate(v))
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn into_members(self) -> Vec<usize> {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Verdict {
    #[serde(rename = "none")]
    None,
    #[serde(rename = "comfortable")]
    Comfortable,
    #[serde(rename = "l-BC")]
    BetterComfortable,
    #[serde(rename = "l-HC")]
    HighlyComfortable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TeamReport {
    pub members: Vec<usize>,
    pub l: ReductionFactor,
    pub d1: Distance,
    pub is_connected: bool,
    pub is_dominating_1: bool,
    pub domination_radius: Distance,
    pub induced_diameter: Option<Distance>,
    pub less_dispersive: bool,
    pub violators: Vec<usize>,
    pub bc_condition: bool,
    pub hc_condition: bool,
    pub is_comfortable: bool,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl TeamReport {
    pub fn is_bc(&self) -> bool {
        self.verdict >= Verdict::BetterComfortable
    }

    pub fn is_hc(&self) -> bool {
        self.verdict == Verdict::HighlyComfortable
    }
}

fn host_eccentricities(g: &Graph) -> Vec<Distance> {
    g.distances()
        .rows()
        .map(|row| row.iter().copied().max().unwrap_or(0))
        .collect()
}

/// Smallest `k` such that every non-member is within distance `k` of the
/// team (the max over `V − D` of the distance to the nearest member).
/// Zero when `D = V`.
pub fn domination_radius(g: &Graph, team: &TeamCandidate) -> Distance {
    let dist = g.distances();
    (0..g.n())
        .filter(|&u| !team.contains(u))
        .map(|u| {
            team.members()
                .iter()
                .map(|&d| dist.get(u, d))
                .min()
                .unwrap_or(UNREACHABLE)
        })
        .max()
        .unwrap_or(0)
}

/// `D` is a `k`-distance dominating set.
pub fn is_dominating(g: &Graph, team: &TeamCandidate, k: Distance) -> bool {
    domination_radius(g, team) <= k
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dispersion {
    pub holds: bool,
    /// Members whose induced eccentricity is not strictly below their host
    /// eccentricity (includes members cut off inside `⟨D⟩`).
    pub violators: Vec<usize>,
    pub induced_diameter: Option<Distance>,
}

/// Less-dispersive test: `e_⟨D⟩(v) < e_G(v)` for every member `v`.
pub fn less_dispersive(g: &Graph, team: &TeamCandidate) -> Result<Dispersion> {
    let sub = g.induced_subgraph(team.members())?;
    let host = host_eccentricities(g);
    let inner: Vec<Distance> = sub
        .graph
        .distances()
        .rows()
        .map(|row| row.iter().copied().max().unwrap_or(0))
        .collect();
    let violators: Vec<usize> = sub
        .to_host
        .iter()
        .zip(&inner)
        .filter(|&(&v, &e)| e >= host[v])
        .map(|(&v, _)| v)
        .collect();
    let diam = inner.iter().copied().max().unwrap_or(0);
    Ok(Dispersion {
        holds: violators.is_empty(),
        violators,
        induced_diameter: (diam != UNREACHABLE).then_some(diam),
    })
}

/// Whether `D` is a less-dispersive set whose induced diameter is at most
/// `⌈diam(G)/l⌉`. Disconnected teams fail.
pub fn check_bc(g: &Graph, team: &TeamCandidate, l: ReductionFactor) -> Result<bool> {
    Ok(check_hc(g, team, l)?.is_bc())
}

/// Full evaluation of every team condition at factor `l`.
pub fn check_hc(g: &Graph, team: &TeamCandidate, l: ReductionFactor) -> Result<TeamReport> {
    g.require_connected()?;
    let host_diameter = host_eccentricities(g).into_iter().max().unwrap_or(0);
    let d1 = l.target_diameter(host_diameter);
    let dispersion = less_dispersive(g, team)?;
    let k = domination_radius(g, team);
    let is_connected = dispersion.induced_diameter.is_some();
    let is_dominating_1 = k <= 1;
    let (bc_condition, hc_condition) = match dispersion.induced_diameter {
        Some(diam) => (diam <= d1, k <= diam),
        None => (false, false),
    };
    let is_comfortable = is_connected && is_dominating_1 && dispersion.holds;
    let is_bc = is_connected && dispersion.holds && bc_condition;
    let verdict = if is_bc && hc_condition {
        Verdict::HighlyComfortable
    } else if is_bc {
        Verdict::BetterComfortable
    } else if is_comfortable {
        Verdict::Comfortable
    } else {
        Verdict::None
    };
    Ok(TeamReport {
        members: team.members().to_vec(),
        l,
        d1,
        is_connected,
        is_dominating_1,
        domination_radius: k,
        induced_diameter: dispersion.induced_diameter,
        less_dispersive: dispersion.holds,
        violators: dispersion.violators,
        bc_condition,
        hc_condition,
        is_comfortable,
        verdict,
        reason: (!is_connected).then(|| "team not connected".to_string()),
    })
}

/// Connected, dominating and less dispersive.
pub fn is_comfortable(g: &Graph, team: &TeamCandidate) -> Result<bool> {
    let dispersion = less_dispersive(g, team)?;
    Ok(
        dispersion.induced_diameter.is_some()
            && dispersion.holds
            && domination_radius(g, team) <= 1,
    )
}

/// `D` chains together through hops of host length at most `k`, i.e. it is
/// connected as a subgraph of `G^k`.
pub fn k_step_connected(g: &Graph, team: &TeamCandidate, k: Distance) -> bool {
    let dist = g.distances();
    let members = team.members();
    let mut seen = vec![false; members.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for (j, &w) in members.iter().enumerate() {
            if !seen[j] && dist.get(members[i], w) <= k {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// `D` is a connected `k`-distance dominating set of `G`, with connectivity
/// taken in `G^k`.
pub fn is_connected_k_dominating(g: &Graph, team: &TeamCandidate, k: Distance) -> bool {
    k_step_connected(g, team, k) && is_dominating(g, team, k)
}

//! Exhaustive ground truth on small graphs: minimum and maximum teams,
//! minimum connected dominating sets, the graph-power reduction and the
//! ratio and bound experiments built on top of them.
//!
//! Subsets are visited as bitmasks in order of cardinality and, within one
//! cardinality, in lexicographic order, so the first optimal witness found is
//! the lexicographically smallest.

use itertools::Itertools;
use serde::Serialize;

use crate::corpus::CorpusEntry;
use crate::criteria::{domination_radius, is_connected_k_dominating, TeamCandidate};
use crate::error::{Error, Result};
use crate::factor::ReductionFactor;
use crate::graph::{Distance, Graph, UNREACHABLE};
use crate::hicom::{hicom, BoundCheck, HicomOptions};
use crate::io::digest;

pub const DEFAULT_CAP: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TeamKind {
    Comfortable,
    Bc,
    Hc,
}

impl std::str::FromStr for TeamKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "comfortable" | "comf" => Ok(TeamKind::Comfortable),
            "bc" => Ok(TeamKind::Bc),
            "hc" => Ok(TeamKind::Hc),
            _ => Err(Error::InvalidParameter(format!(
                "unknown team kind `{s}` (expected comfortable, bc or hc)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleAnswer {
    /// Optimal cardinality; `None` when no subset qualifies.
    pub optimum: Option<usize>,
    pub witness: Option<TeamCandidate>,
    /// Smallest domination radius among the optimal-cardinality sets.
    pub secondary_optimum: Option<Distance>,
    /// Number of subsets visited.
    pub enumerated: u64,
}

impl OracleAnswer {
    pub fn is_none(&self) -> bool {
        self.optimum.is_none()
    }
}

/// Exhaustive solver bounded by a vertex-count cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cap: DEFAULT_CAP }
    }
}

#[derive(Clone, Copy)]
enum Goal {
    Team(TeamKind),
    Cds,
}

struct Masks<'a> {
    g: &'a Graph,
    adj: Vec<u64>,
    host: Vec<Distance>,
    d1: Distance,
}

impl<'a> Masks<'a> {
    fn new(g: &'a Graph, l: Option<ReductionFactor>) -> Self {
        let adj = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
            .collect();
        let host: Vec<Distance> = g
            .distances()
            .rows()
            .map(|r| r.iter().copied().max().unwrap_or(0))
            .collect();
        let diam = host.iter().copied().max().unwrap_or(0);
        Masks {
            g,
            adj,
            d1: l.map_or(0, |l| l.target_diameter(diam)),
            host,
        }
    }

    /// Eccentricity of `v` inside `⟨mask⟩`, `UNREACHABLE` if `⟨mask⟩` is
    /// disconnected.
    fn inner_ecc(&self, mask: u64, v: usize) -> Distance {
        let mut seen = 1u64 << v;
        let mut frontier = seen;
        let mut level = 0;
        loop {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[u];
            }
            next &= mask & !seen;
            if next == 0 {
                break;
            }
            seen |= next;
            frontier = next;
            level += 1;
        }
        if seen == mask {
            level
        } else {
            UNREACHABLE
        }
    }

    fn connected(&self, mask: u64) -> bool {
        self.inner_ecc(mask, mask.trailing_zeros() as usize) != UNREACHABLE
    }

    fn reach(&self, members: &[usize]) -> Distance {
        let dist = self.g.distances();
        (0..self.g.n())
            .filter(|u| members.binary_search(u).is_err())
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

    /// Domination radius when `mask` qualifies for `goal`.
    fn evaluate(&self, goal: Goal, mask: u64, members: &[usize]) -> Option<Distance> {
        if !self.connected(mask) {
            return None;
        }
        let k = self.reach(members);
        let (dominating_1, check_diameter, check_hc) = match goal {
            Goal::Cds => return (k <= 1).then_some(k),
            Goal::Team(TeamKind::Comfortable) => (true, false, false),
            Goal::Team(TeamKind::Bc) => (false, true, false),
            Goal::Team(TeamKind::Hc) => (false, true, true),
        };
        if dominating_1 && k > 1 {
            return None;
        }
        let mut diam = 0;
        for &v in members {
            let e = self.inner_ecc(mask, v);
            if e >= self.host[v] {
                return None;
            }
            diam = diam.max(e);
        }
        if (check_diameter && diam > self.d1) || (check_hc && k > diam) {
            return None;
        }
        Some(k)
    }
}

impl Oracle {
    pub fn new(cap: usize) -> Self {
        Oracle { cap: cap.min(63) }
    }

    fn guard(&self, g: &Graph) -> Result<()> {
        g.require_connected()?;
        if g.n() > self.cap {
            return Err(Error::CapExceeded {
                n: g.n(),
                cap: self.cap,
            });
        }
        Ok(())
    }

    fn search(
        &self,
        g: &Graph,
        goal: Goal,
        l: Option<ReductionFactor>,
        sizes: Vec<usize>,
    ) -> Result<OracleAnswer> {
        self.guard(g)?;
        let ctx = Masks::new(g, l);
        let mut enumerated = 0u64;
        for size in sizes {
            let mut best: Option<(Distance, Vec<usize>)> = None;
            for members in (0..g.n()).combinations(size) {
                enumerated += 1;
                let mask = members.iter().fold(0u64, |m, &v| m | 1 << v);
                if let Some(k) = ctx.evaluate(goal, mask, &members) {
                    if best.as_ref().is_none_or(|(bk, _)| k < *bk) {
                        best = Some((k, members));
                    }
                }
            }
            if let Some((k, members)) = best {
                return Ok(OracleAnswer {
                    optimum: Some(size),
                    witness: Some(TeamCandidate::new(g, members)?),
                    secondary_optimum: Some(k),
                    enumerated,
                });
            }
        }
        Ok(OracleAnswer {
            optimum: None,
            witness: None,
            secondary_optimum: None,
            enumerated,
        })
    }

    /// Minimum team of the given kind over all nonempty proper subsets;
    /// ties in size are broken by the smaller domination radius.
    pub fn min_team(&self, g: &Graph, kind: TeamKind, l: ReductionFactor) -> Result<OracleAnswer> {
        self.search(g, Goal::Team(kind), Some(l), (1..g.n()).collect())
    }

    /// Maximum `l`-HC team.
    pub fn max_team(&self, g: &Graph, l: ReductionFactor) -> Result<OracleAnswer> {
        self.search(
            g,
            Goal::Team(TeamKind::Hc),
            Some(l),
            (1..g.n()).rev().collect(),
        )
    }

    /// Minimum connected dominating set.
    pub fn min_cds(&self, g: &Graph) -> Result<OracleAnswer> {
        self.search(g, Goal::Cds, None, (1..=g.n()).collect())
    }
}

pub fn exact_min_team(g: &Graph, kind: TeamKind, l: ReductionFactor) -> Result<OracleAnswer> {
    Oracle::default().min_team(g, kind, l)
}

pub fn exact_max_team(g: &Graph, l: ReductionFactor) -> Result<OracleAnswer> {
    Oracle::default().max_team(g, l)
}

pub fn exact_min_cds(g: &Graph) -> Result<OracleAnswer> {
    Oracle::default().min_cds(g)
}

/// Both sides of the reduction between distance domination in `G` and
/// ordinary domination in `G^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReductionWitness {
    /// `D` is `k`-distance dominating in `G` and chains through hops of
    /// length at most `k`.
    pub in_graph: bool,
    /// `D` is a connected dominating set of `G^k`.
    pub in_power: bool,
}

impl ReductionWitness {
    pub fn agree(&self) -> bool {
        self.in_graph == self.in_power
    }
}

pub fn reduction_witness(g: &Graph, k: Distance, team: &TeamCandidate) -> Result<ReductionWitness> {
    let power = g.power(k)?;
    let in_power =
        power.team_diameter(team.members()).is_some() && domination_radius(&power, team) <= 1;
    Ok(ReductionWitness {
        in_graph: is_connected_k_dominating(g, team, k),
        in_power,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioRecord {
    pub name: String,
    pub digest: String,
    pub l: ReductionFactor,
    pub hicom_size: Option<usize>,
    pub oracle_size: Option<usize>,
    pub ratio: Option<f64>,
    pub k_hicom: Option<Distance>,
    pub k_oracle: Option<Distance>,
    pub ln_max_degree: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioSummary {
    pub graphs: usize,
    pub both_defined: usize,
    pub max_ratio: Option<f64>,
    pub mean_ratio: Option<f64>,
    pub max_k_ratio: Option<f64>,
    /// `ln Δ(G)` of the graph attaining the maximum ratio.
    pub ln_max_degree_at_max: Option<f64>,
    pub max_ln_max_degree: f64,
    /// Limit `2/(l−1)` of `k/k*`.
    pub k_ratio_limit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioExperiment {
    pub records: Vec<RatioRecord>,
    pub summary: RatioSummary,
}

/// HICOM team size against the exact minimum HC size on every corpus graph.
pub fn ratio_experiment(
    corpus: &[CorpusEntry],
    l: ReductionFactor,
    oracle: Oracle,
) -> Result<RatioExperiment> {
    let opts = HicomOptions {
        allow_large_l: true,
        ..Default::default()
    };
    let mut records = Vec::with_capacity(corpus.len());
    for entry in corpus {
        let g = &entry.graph;
        let run = hicom(g, l, opts).ok();
        let exact = oracle.min_team(g, TeamKind::Hc, l)?;
        let hicom_size = run.as_ref().map(|r| r.team.len());
        let ratio = match (hicom_size, exact.optimum) {
            (Some(h), Some(o)) => Some(h as f64 / o as f64),
            _ => None,
        };
        records.push(RatioRecord {
            name: entry.name.clone(),
            digest: digest(g),
            l,
            hicom_size,
            oracle_size: exact.optimum,
            ratio,
            k_hicom: run.as_ref().map(|r| r.k),
            k_oracle: exact.secondary_optimum,
            ln_max_degree: (g.max_degree().max(1) as f64).ln(),
        });
    }
    let defined: Vec<&RatioRecord> = records.iter().filter(|r| r.ratio.is_some()).collect();
    let at_max = defined.iter().copied().max_by(|a, b| {
        a.ratio
            .partial_cmp(&b.ratio)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let k_ratios: Vec<f64> = defined
        .iter()
        .filter_map(|r| match (r.k_hicom, r.k_oracle) {
            (Some(k), Some(ks)) if ks > 0 => Some(k as f64 / ks as f64),
            _ => None,
        })
        .collect();
    let summary = RatioSummary {
        graphs: records.len(),
        both_defined: defined.len(),
        max_ratio: at_max.and_then(|r| r.ratio),
        mean_ratio: (!defined.is_empty())
            .then(|| defined.iter().filter_map(|r| r.ratio).sum::<f64>() / defined.len() as f64),
        max_k_ratio: k_ratios.iter().copied().reduce(f64::max),
        ln_max_degree_at_max: at_max.map(|r| r.ln_max_degree),
        max_ln_max_degree: records.iter().map(|r| r.ln_max_degree).fold(0.0, f64::max),
        k_ratio_limit: 2.0 / (l.to_f64() - 1.0),
    };
    Ok(RatioExperiment { records, summary })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundSweep {
    pub checks: Vec<BoundCheck>,
    /// Graphs without an `l`-HC team.
    pub skipped: Vec<String>,
}

/// `l(k*−1) ≤ diam(G)` and `diam(G) ≤ l(2k*+1)/(l−1)` with the exact `k*`
/// of a minimum HC team, evaluated in exact arithmetic.
pub fn diameter_sandwich(
    diam: Distance,
    k_star: Distance,
    l: ReductionFactor,
    context: &str,
) -> [BoundCheck; 2] {
    let (p, q) = (l.numer() as i128, l.denom() as i128);
    let (d, k) = (diam as i128, k_star as i128);
    let lf = l.to_f64();
    [
        BoundCheck {
            name: "l(k*-1) <= diam(G)".into(),
            lhs: lf * (k_star as f64 - 1.0),
            rhs: diam as f64,
            holds: p * (k - 1) <= d * q,
            context: context.to_string(),
        },
        BoundCheck {
            name: "diam(G) <= l(2k*+1)/(l-1)".into(),
            lhs: diam as f64,
            rhs: lf * (2.0 * k_star as f64 + 1.0) / (lf - 1.0),
            holds: d * (p - q) <= p * (2 * k + 1),
            context: context.to_string(),
        },
    ]
}

pub fn bound_sweep(
    corpus: &[CorpusEntry],
    l: ReductionFactor,
    oracle: Oracle,
) -> Result<BoundSweep> {
    let mut sweep = BoundSweep {
        checks: Vec::new(),
        skipped: Vec::new(),
    };
    for entry in corpus {
        let g = &entry.graph;
        let exact = oracle.min_team(g, TeamKind::Hc, l)?;
        let Some(k_star) = exact.secondary_optimum else {
            sweep.skipped.push(entry.name.clone());
            continue;
        };
        let diam = crate::metrics::eccentricity_profile(g)?.diameter;
        let context = format!("{} {} l={l} k*={k_star}", entry.name, digest(g));
        sweep
            .checks
            .extend(diameter_sandwich(diam, k_star, l, &context));
    }
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::{check_hc, is_comfortable};
    use crate::generate::{complete, cycle, path, star};

    fn l(s: &str) -> ReductionFactor {
        s.parse().unwrap()
    }

    #[test]
    fn p6_minimum_comfortable() {
        let g = path(6);
        let a = exact_min_team(&g, TeamKind::Comfortable, l("3/2")).unwrap();
        assert_eq!(a.optimum, Some(4));
        let w = a.witness.unwrap();
        assert_eq!(w.members(), &[1, 2, 3, 4]);
        assert!(is_comfortable(&g, &w).unwrap());
    }

    #[test]
    fn c6_has_no_comfortable_team() {
        let a = exact_min_team(&cycle(6), TeamKind::Comfortable, l("2")).unwrap();
        assert!(a.is_none());
        assert_eq!(a.enumerated, 62);
    }

    #[test]
    fn c6_teams() {
        let g = cycle(6);
        let hc = exact_min_team(&g, TeamKind::Hc, l("3/2")).unwrap();
        assert_eq!((hc.optimum, hc.secondary_optimum), (Some(3), Some(2)));
        assert!(check_hc(&g, hc.witness.as_ref().unwrap(), l("3/2"))
            .unwrap()
            .is_hc());
        let hc2 = exact_min_team(&g, TeamKind::Hc, l("2")).unwrap();
        assert_eq!(hc2.optimum, Some(3));
        // a single vertex is less dispersive with diameter 0 <= d1
        let bc2 = exact_min_team(&g, TeamKind::Bc, l("2")).unwrap();
        assert_eq!((bc2.optimum, bc2.secondary_optimum), (Some(1), Some(3)));
        let max = exact_max_team(&g, l("3/2")).unwrap();
        assert!(max.optimum.unwrap() >= 3);
    }

    #[test]
    fn p7_max_team_covers_hicom() {
        let a = exact_max_team(&path(7), l("3/2")).unwrap();
        assert!(a.optimum.unwrap() >= 5);
    }

    #[test]
    fn connected_dominating_sets() {
        assert_eq!(
            exact_min_cds(&path(6)).unwrap().witness.unwrap().members(),
            &[1, 2, 3, 4]
        );
        assert_eq!(exact_min_cds(&complete(5)).unwrap().optimum, Some(1));
        assert_eq!(
            exact_min_cds(&star(5)).unwrap().witness.unwrap().members(),
            &[0]
        );
        assert_eq!(exact_min_cds(&path(1)).unwrap().optimum, Some(1));
    }

    #[test]
    fn cap_and_connectivity_are_enforced() {
        assert!(matches!(
            exact_min_cds(&path(15)),
            Err(Error::CapExceeded { n: 15, cap: 14 })
        ));
        assert!(Oracle::new(15).min_cds(&path(15)).is_ok());
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(exact_min_cds(&g), Err(Error::Disconnected { .. })));
    }

    #[test]
    fn reduction_on_c6() {
        let g = cycle(6);
        let d = TeamCandidate::new(&g, [0, 3]).unwrap();
        let w = reduction_witness(&g, 2, &d).unwrap();
        assert_eq!(
            w,
            ReductionWitness {
                in_graph: false,
                in_power: false
            }
        );
        let w = reduction_witness(&g, 3, &d).unwrap();
        assert!(w.in_graph && w.in_power);
        assert!(reduction_witness(&g, 0, &d).is_err());
    }

    #[test]
    fn sandwich_on_c6() {
        let [lo, hi] = diameter_sandwich(3, 2, l("3/2"), "c6");
        assert!(lo.holds && hi.holds);
        assert_eq!((lo.lhs, hi.rhs), (1.5, 15.0));
        let [lo, _] = diameter_sandwich(0, 1, l("2"), "k1");
        assert!(lo.holds);
    }

    #[test]
    fn kinds_parse() {
        assert_eq!("HC".parse::<TeamKind>().unwrap(), TeamKind::Hc);
        assert!("x".parse::<TeamKind>().is_err());
    }
}

//! Comfortable, better comfortable and highly comfortable teams in connected
//! networks.
//!
//! A team is a vertex set `D` of a connected graph `G`. It is *less
//! dispersive* when every member is strictly closer to all teammates inside
//! `⟨D⟩` than it is to the farthest vertex of `G`. The crate evaluates the team
//! conditions ([`criteria`]), builds highly comfortable teams with the HICOM
//! approximation ([`hicom`]) and checks everything against exhaustive search
//! on small graphs ([`oracle`]).
//!
//! ```
//! use comfort_core::{generate::cycle, hicom::{hicom, HicomOptions}, ReductionFactor};
//!
//! let c6 = cycle(6);
//! let run = hicom(&c6, ReductionFactor::three_halves(), HicomOptions::default()).unwrap();
//! assert_eq!(run.team.members(), &[0, 1, 5]);
//! assert!(run.report.is_hc());
//! ```

pub mod bench;
pub mod corpus;
pub mod criteria;
pub mod error;
pub mod factor;
pub mod generate;
pub mod graph;
pub mod hicom;
pub mod io;
pub mod metrics;
pub mod oracle;

pub use criteria::{check_hc, TeamCandidate, TeamReport, Verdict};
pub use error::{Error, Result};
pub use factor::ReductionFactor;
pub use graph::{Distance, Graph, UNREACHABLE};
pub use metrics::{eccentricity_profile, EccentricityProfile};

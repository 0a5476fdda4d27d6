//! Eccentricity, radius, diameter, center and periphery.

use serde::Serialize;

use crate::error::Result;
use crate::graph::{Distance, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EccentricClass {
    SelfCentered,
    BiEccentric,
    TriEccentric,
    /// `(a+1)`-eccentric with `a = diam − r ≥ 3`; holds `a + 1`.
    Eccentric(u32),
}

impl EccentricClass {
    pub fn from_spread(a: Distance) -> Self {
        match a {
            0 => EccentricClass::SelfCentered,
            1 => EccentricClass::BiEccentric,
            2 => EccentricClass::TriEccentric,
            a => EccentricClass::Eccentric(a + 1),
        }
    }

    pub fn label(&self) -> String {
        match self {
            EccentricClass::SelfCentered => "self-centered".into(),
            EccentricClass::BiEccentric => "bi-eccentric".into(),
            EccentricClass::TriEccentric => "tri-eccentric".into(),
            EccentricClass::Eccentric(c) => format!("{c}-eccentric"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EccentricityProfile {
    pub ecc: Vec<Distance>,
    pub radius: Distance,
    pub diameter: Distance,
    pub center: Vec<usize>,
    pub periphery: Vec<usize>,
    pub class_label: String,
}

impl EccentricityProfile {
    pub fn class(&self) -> EccentricClass {
        EccentricClass::from_spread(self.diameter - self.radius)
    }

    pub fn is_self_centered(&self) -> bool {
        self.radius == self.diameter
    }
}

/// Eccentricity profile of a connected graph. Disconnected input is an error;
/// decompose with [`Graph::connected_components`] first.
pub fn eccentricity_profile(g: &Graph) -> Result<EccentricityProfile> {
    g.require_connected()?;
    let ecc: Vec<Distance> = g
        .distances()
        .rows()
        .map(|row| row.iter().copied().max().unwrap_or(0))
        .collect();
    let radius = ecc.iter().copied().min().unwrap_or(0);
    let diameter = ecc.iter().copied().max().unwrap_or(0);
    let center = (0..g.n()).filter(|&v| ecc[v] == radius).collect();
    let periphery = (0..g.n()).filter(|&v| ecc[v] == diameter).collect();
    Ok(EccentricityProfile {
        class_label: EccentricClass::from_spread(diameter - radius).label(),
        ecc,
        radius,
        diameter,
        center,
        periphery,
    })
}

/// Profile of every component, each computed on its own induced subgraph and
/// reported in host vertex numbering.
pub fn component_profiles(g: &Graph) -> Result<Vec<(Vec<usize>, EccentricityProfile)>> {
    g.connected_components()
        .into_iter()
        .map(|comp| {
            let sub = g.induced_subgraph(&comp)?;
            let mut p = eccentricity_profile(&sub.graph)?;
            p.center = p.center.iter().map(|&i| sub.to_host[i]).collect();
            p.periphery = p.periphery.iter().map(|&i| sub.to_host[i]).collect();
            Ok((comp, p))
        })
        .collect()
}

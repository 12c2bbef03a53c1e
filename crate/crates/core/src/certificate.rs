//! Machine-readable certificates and their independent re-validation.

use serde::{Deserialize, Serialize};

use crate::aut::{AutMap, Backend, BackendSpec};
use crate::bounds::Bounds;
use crate::catalog;
use crate::engine::{sr_check_elements, verify_structure, RealityWitness, Verification};
use crate::error::{Error, Result};
use crate::group::{Element, Group};

pub const TOOL: &str = "beauville";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureText {
    pub x1: String,
    pub y1: String,
    pub x2: String,
    pub y2: String,
}

impl StructureText {
    pub fn from_elements(e: [&Element; 4]) -> Self {
        StructureText {
            x1: e[0].to_string(),
            y1: e[1].to_string(),
            x2: e[2].to_string(),
            y2: e[3].to_string(),
        }
    }

    pub fn parse(&self, group: &Group) -> Result<[Element; 4]> {
        let p = |t: &str| group.parse_element(t);
        Ok([p(&self.x1)?, p(&self.y1)?, p(&self.x2)?, p(&self.y2)?])
    }
}

/// An automorphism as the images of the group's stored generators, given
/// per factor for direct products.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum AutText {
    Images { images: Vec<String> },
    Product { factors: Vec<AutText> },
}

impl AutText {
    pub fn from_map(group: &Group, phi: &AutMap) -> Result<Self> {
        if let (Some(fs), AutMap::Product(parts)) = (group.factors(), phi) {
            return Ok(AutText::Product {
                factors: fs
                    .iter()
                    .zip(parts)
                    .map(|(f, p)| AutText::from_map(f, p))
                    .collect::<Result<_>>()?,
            });
        }
        if let Some(fs) = group.factors() {
            // Split a non-product map into factor images.
            let mut factors = Vec::new();
            for (k, f) in fs.iter().enumerate() {
                let images = f
                    .generators()
                    .iter()
                    .map(|s| {
                        let lifted = lift(group, k, s);
                        match phi.apply(group, &lifted)? {
                            Element::Tuple(parts) => Ok(parts[k].to_string()),
                            other => Err(Error::Internal(format!("{other} is not a tuple"))),
                        }
                    })
                    .collect::<Result<_>>()?;
                factors.push(AutText::Images { images });
            }
            return Ok(AutText::Product { factors });
        }
        Ok(AutText::Images {
            images: phi
                .generator_images(group)?
                .iter()
                .map(|e| e.to_string())
                .collect(),
        })
    }

    pub fn to_map(&self, group: &Group) -> Result<AutMap> {
        match (self, group.factors()) {
            (AutText::Product { factors }, Some(fs)) if factors.len() == fs.len() => Ok(AutMap::Product(
                factors
                    .iter()
                    .zip(fs)
                    .map(|(t, f)| t.to_map(f))
                    .collect::<Result<_>>()?,
            )),
            (AutText::Images { images }, None) => Ok(AutMap::Images(
                images
                    .iter()
                    .map(|t| group.parse_element(t))
                    .collect::<Result<_>>()?,
            )),
            _ => Err(Error::invalid("automorphism shape does not match the group")),
        }
    }
}

/// The element of a product that is `s` in factor `k` and trivial
/// elsewhere.
fn lift(group: &Group, k: usize, s: &Element) -> Element {
    match group.identity() {
        Element::Tuple(mut parts) => {
            parts[k] = s.clone();
            Element::Tuple(parts)
        }
        other => other,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessText {
    pub phi: AutText,
    pub g1: String,
    pub g2: String,
}

impl WitnessText {
    pub fn from_witness(group: &Group, w: &RealityWitness) -> Result<Self> {
        Ok(WitnessText {
            phi: AutText::from_map(group, &w.phi)?,
            g1: w.g1.to_string(),
            g2: w.g2.to_string(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureText>,
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub structure_type: Option<String>,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub backend: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exhaustive: Option<bool>,
    #[serde(default)]
    pub assumptions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub bounds: Bounds,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

impl Certificate {
    pub fn new(command: &str, group: &Group, verdict: impl Into<String>) -> Self {
        Certificate {
            tool: TOOL.into(),
            version: VERSION.into(),
            command: command.into(),
            group: group.name().into(),
            structure: None,
            structure_type: None,
            verdict: verdict.into(),
            witness: None,
            backend: None,
            exhaustive: None,
            assumptions: Vec::new(),
            seed: None,
            bounds: *group.bounds(),
            details: None,
        }
    }

    pub fn with_backend(mut self, backend: &Backend) -> Self {
        self.backend = Some(backend.label.clone());
        self.exhaustive = Some(backend.exhaustive);
        self.assumptions = backend.assumptions.clone();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(0, format!("certificate: {e}")))
    }
}

/// Verdict strings understood by [`recheck`].
pub mod verdicts {
    pub const VERIFIED: &str = "verified";
    pub const REFUTED: &str = "refuted";
    pub const STRONGLY_REAL: &str = "stronglyReal";
    pub const NOT_STRONGLY_REAL: &str = "notStronglyReal";
    pub const INDETERMINATE: &str = "indeterminate";
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecheckReport {
    pub checks: Vec<(String, bool)>,
}

impl RecheckReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Re-validates a certificate from its own contents: the structure is
/// re-verified, a witness is re-checked equation by equation, and an
/// exhaustion claim is recomputed with the recorded backend.
pub fn recheck(cert: &Certificate) -> Result<RecheckReport> {
    let group = catalog::group(&cert.group, cert.bounds)?;
    let mut checks = Vec::new();
    let Some(text) = &cert.structure else {
        return Err(Error::invalid("only certificates carrying a structure can be rechecked"));
    };
    let elements = text.parse(&group)?;
    let refs = [&elements[0], &elements[1], &elements[2], &elements[3]];
    let verification = verify_structure(&group, refs[0], refs[1], refs[2], refs[3])?;
    match cert.verdict.as_str() {
        verdicts::REFUTED => {
            checks.push(("structure refuted".into(), matches!(verification, Verification::Refuted(_))));
            return Ok(RecheckReport { checks });
        }
        verdicts::VERIFIED | verdicts::STRONGLY_REAL | verdicts::NOT_STRONGLY_REAL | verdicts::INDETERMINATE => {}
        other => return Err(Error::invalid(format!("unknown verdict '{other}'"))),
    }
    let Some(structure) = verification.structure() else {
        checks.push(("structure verified".into(), false));
        return Ok(RecheckReport { checks });
    };
    checks.push(("structure verified".into(), true));
    if let Some(t) = &cert.structure_type {
        checks.push(("type".into(), *t == structure.structure_type().to_string()));
    }
    if let Some(w) = &cert.witness {
        let phi = w.phi.to_map(&group)?;
        checks.push(("φ is an automorphism".into(), phi.validate(&group).is_ok()));
        let witness = RealityWitness {
            phi,
            g1: group.parse_element(&w.g1)?,
            g2: group.parse_element(&w.g2)?,
            congruence: None,
        };
        let ok = witness.validate(&group, refs).unwrap_or(false);
        checks.push(("witness equations".into(), ok));
    }
    match cert.verdict.as_str() {
        verdicts::STRONGLY_REAL => checks.push(("witness present".into(), cert.witness.is_some())),
        verdicts::NOT_STRONGLY_REAL => {
            let spec = BackendSpec::parse(cert.backend.as_deref().unwrap_or("auto"))?;
            let backend = Backend::resolve(&spec, &group)?;
            checks.push(("backend exhaustive".into(), backend.exhaustive && cert.exhaustive == Some(true)));
            let out = sr_check_elements(&group, refs, &backend)?;
            checks.push(("search exhausted".into(), out.is_exhausted()));
        }
        _ => {}
    }
    Ok(RecheckReport { checks })
}

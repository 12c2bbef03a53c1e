use crate::aut::{AutMap, Backend, BackendKind};
use crate::error::{Error, Result};
use crate::group::{Element, Group};
use crate::heisenberg::{haut_from_pair, sr_congruence_witness, CongruenceWitness};

use super::structure::BeauvilleStructure;

/// `φ`, `g₁`, `g₂` with `gᵢ·φ(xᵢ)·gᵢ⁻¹ = xᵢ⁻¹` and `gᵢ·φ(yᵢ)·gᵢ⁻¹ = yᵢ⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealityWitness {
    pub phi: AutMap,
    pub g1: Element,
    pub g2: Element,
    /// For Heisenberg-type groups: the solution `(a, b)` of the congruences
    /// for the normalised structure.
    pub congruence: Option<CongruenceWitness>,
}

impl RealityWitness {
    /// Checks the four defining equations by direct multiplication.
    pub fn validate(&self, group: &Group, elements: [&Element; 4]) -> Result<bool> {
        let [x1, y1, x2, y2] = elements;
        for (g, x, y) in [(&self.g1, x1, y1), (&self.g2, x2, y2)] {
            group.check(g)?;
            for e in [x, y] {
                let image = self.phi.apply(group, e)?;
                if group.conj(&image, g) != group.inv(e) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SrOutcome {
    Witness(Box<RealityWitness>),
    /// An exhaustive backend has no witness: the structure is not strongly
    /// real.
    Exhausted { reason: String },
    /// A non-exhaustive backend ran out; nothing is proved.
    Indeterminate { reason: String },
}

impl SrOutcome {
    pub fn witness(&self) -> Option<&RealityWitness> {
        match self {
            SrOutcome::Witness(w) => Some(w),
            _ => None,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self, SrOutcome::Exhausted { .. })
    }
}

fn no_witness(backend: &Backend, reason: String) -> SrOutcome {
    if backend.exhaustive {
        SrOutcome::Exhausted { reason }
    } else {
        SrOutcome::Indeterminate { reason }
    }
}

/// Strong-reality check of a verified structure.
pub fn sr_check(group: &Group, structure: &BeauvilleStructure, backend: &Backend) -> Result<SrOutcome> {
    let [x1, y1, x2, y2] = structure.elements();
    sr_check_elements(group, [x1, y1, x2, y2], backend)
}

/// Strong-reality check on four elements whose pairs both generate.
///
/// Replacing `φ` by `x ↦ g₁φ(x)g₁⁻¹` shows that a witness exists iff the
/// unique automorphism `ψ` inverting `x₁` and `y₁` lies in the backend and
/// `(ψ(x₂), ψ(y₂))` is simultaneously conjugate to `(x₂⁻¹, y₂⁻¹)`. Every
/// backend is closed under composition with inner automorphisms, so this
/// search covers the whole backend.
pub fn sr_check_elements(group: &Group, elements: [&Element; 4], backend: &Backend) -> Result<SrOutcome> {
    let [x1, y1, x2, y2] = elements;
    if let BackendKind::Heisenberg(h) = &backend.kind {
        return heisenberg_witness(group, h, elements).map(|w| SrOutcome::Witness(Box::new(w)));
    }
    let Some(psi) = backend.pair_inverter(group, x1, y1)? else {
        return Ok(no_witness(
            backend,
            format!("no automorphism in {} inverts both {x1} and {y1}", backend.label),
        ));
    };
    let px2 = psi.apply(group, x2)?;
    let py2 = psi.apply(group, y2)?;
    let Some(g2) = group.simultaneous_transporter(&px2, &group.inv(x2), &py2, &group.inv(y2))? else {
        return Ok(no_witness(
            backend,
            format!(
                "the automorphism inverting the first pair cannot be corrected to invert {x2} and {y2}"
            ),
        ));
    };
    let witness = RealityWitness {
        phi: psi,
        g1: group.identity(),
        g2,
        congruence: None,
    };
    if !witness.validate(group, elements)? {
        return Err(Error::Internal("constructed reality witness failed validation".into()));
    }
    Ok(SrOutcome::Witness(Box::new(witness)))
}

/// Normalises the first pair to `(x, y)`, solves the congruences and maps
/// the witness back.
fn heisenberg_witness(
    group: &Group,
    h: &crate::heisenberg::HeisenbergParams,
    elements: [&Element; 4],
) -> Result<RealityWitness> {
    let nf = |e: &Element| match e {
        Element::Heisenberg(x) => Ok(*x),
        _ => Err(Error::invalid("Heisenberg elements expected")),
    };
    let [x1, y1, x2, y2] = elements.map(nf);
    let (x1, y1, x2, y2) = (x1?, y1?, x2?, y2?);
    let psi = haut_from_pair(h, &x1, &y1)?;
    let back = psi.inverse();
    let (nx2, ny2) = (back.apply(&x2), back.apply(&y2));
    let solution = sr_congruence_witness(h, (&h.x(), &h.y()), (&nx2, &ny2))?
        .ok_or_else(|| Error::invalid("second pair does not generate"))?;
    let phi0 = haut_from_pair(h, &h.hinv(&h.x()), &h.hinv(&h.y()))?;
    let phi = psi.after(&phi0.after(&back));
    let g2 = psi.apply(&solution.conjugator(h));
    let witness = RealityWitness {
        phi: AutMap::Heisenberg(phi),
        g1: group.identity(),
        g2: Element::Heisenberg(g2),
        congruence: Some(solution),
    };
    if !witness.validate(group, elements)? {
        return Err(Error::Internal("congruence witness failed validation".into()));
    }
    Ok(witness)
}

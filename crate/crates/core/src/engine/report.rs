use crate::aut::Backend;
use crate::error::Result;
use crate::exec;
use crate::group::{ClassInfo, Element, Group};

#[derive(Debug, Clone)]
pub struct ClassInversion {
    pub class: ClassInfo,
    /// Some backend automorphism maps the class onto the class of inverses.
    pub invertible: bool,
}

/// For each class, whether the backend can send it to the class of
/// inverses. A structure with a non-invertible class among `x₁, y₁, x₁y₁,
/// x₂, y₂, x₂y₂` is not strongly real when the backend is exhaustive.
pub fn class_inversion_report(group: &Group, backend: &Backend) -> Result<Vec<ClassInversion>> {
    group.prepare_class_labels()?;
    let classes = group.classes()?;
    let flags = exec::try_map(group.bounds().exec, &classes, |c| {
        backend.inverts_class(group, &c.representative)
    })?;
    Ok(classes
        .into_iter()
        .zip(flags)
        .map(|(class, invertible)| ClassInversion { class, invertible })
        .collect())
}

/// The first element of the six slots whose class the backend cannot
/// invert.
pub fn obstructed_slot(
    group: &Group,
    backend: &Backend,
    elements: [&Element; 4],
) -> Result<Option<Element>> {
    let [x1, y1, x2, y2] = elements;
    for g in [x1, y1, &group.mul(x1, y1), x2, y2, &group.mul(x2, y2)] {
        if !backend.inverts_class(group, g)? {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

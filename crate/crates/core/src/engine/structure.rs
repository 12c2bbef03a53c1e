use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{ClassId, Element, Group};

/// A pair `(x, y)` with its product and the orders of `x`, `y`, `xy`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratingPair {
    pub x: Element,
    pub y: Element,
    pub xy: Element,
    pub orders: [u64; 3],
}

impl GeneratingPair {
    /// Builds the pair after checking that it generates the group.
    pub fn new(group: &Group, x: Element, y: Element) -> Result<Self> {
        if !group.is_generating_pair(&x, &y)? {
            return Err(Error::invalid(format!("({x}, {y}) does not generate {}", group.name())));
        }
        Ok(Self::unchecked(group, x, y))
    }

    pub(crate) fn unchecked(group: &Group, x: Element, y: Element) -> Self {
        let xy = group.mul(&x, &y);
        let orders = [group.order_of(&x), group.order_of(&y), group.order_of(&xy)];
        GeneratingPair { x, y, xy, orders }
    }
}

/// Orders `((o(x₁), o(y₁), o(x₁y₁)), (o(x₂), o(y₂), o(x₂y₂)))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StructureType(pub [u64; 3], pub [u64; 3]);

impl fmt::Display for StructureType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        let [d, e, g] = self.1;
        write!(f, "(({a},{b},{c}),({d},{e},{g}))")
    }
}

/// Classes of all powers of `x`, `y` and `xy`, identity class included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaSet {
    pub classes: BTreeSet<ClassId>,
}

impl SigmaSet {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn contains(&self, c: &ClassId) -> bool {
        self.classes.contains(c)
    }

    pub fn intersection(&self, other: &SigmaSet) -> BTreeSet<ClassId> {
        self.classes.intersection(&other.classes).cloned().collect()
    }
}

/// `Σ(x, y)`: the class of `gᵐ` for `g ∈ {x, y, xy}` and `1 ≤ m ≤ o(g)`.
pub fn sigma(group: &Group, pair: &GeneratingPair) -> Result<SigmaSet> {
    let mut classes = BTreeSet::new();
    for (g, &o) in [&pair.x, &pair.y, &pair.xy].into_iter().zip(&pair.orders) {
        let mut power = g.clone();
        for _ in 0..o {
            classes.insert(group.class_id(&power)?);
            power = group.mul(&power, g);
        }
    }
    Ok(SigmaSet { classes })
}

/// Two generating pairs whose Σ-sets meet only in the identity class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeauvilleStructure {
    pub pair1: GeneratingPair,
    pub pair2: GeneratingPair,
    pub sigma1: SigmaSet,
    pub sigma2: SigmaSet,
}

impl BeauvilleStructure {
    pub fn structure_type(&self) -> StructureType {
        StructureType(self.pair1.orders, self.pair2.orders)
    }

    pub fn elements(&self) -> [&Element; 4] {
        [&self.pair1.x, &self.pair1.y, &self.pair2.x, &self.pair2.y]
    }
}

/// Why four elements fail to form a Beauville structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// Pair 1 or 2 does not generate the group.
    NotGenerating { pair: u8 },
    /// A non-identity class lying in both Σ-sets.
    SigmaOverlap { class: ClassId },
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::NotGenerating { pair } => write!(f, "pair {pair} does not generate the group"),
            Refutation::SigmaOverlap { class } => write!(f, "Σ-sets share the class {class}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    Verified(Box<BeauvilleStructure>),
    Refuted(Refutation),
}

impl Verification {
    pub fn structure(&self) -> Option<&BeauvilleStructure> {
        match self {
            Verification::Verified(s) => Some(s),
            Verification::Refuted(_) => None,
        }
    }
}

/// Checks both generation conditions and Σ-disjointness.
pub fn verify_structure(
    group: &Group,
    x1: &Element,
    y1: &Element,
    x2: &Element,
    y2: &Element,
) -> Result<Verification> {
    for g in [x1, y1, x2, y2] {
        group.check(g)?;
    }
    for (k, (x, y)) in [(x1, y1), (x2, y2)].into_iter().enumerate() {
        if !group.is_generating_pair(x, y)? {
            return Ok(Verification::Refuted(Refutation::NotGenerating { pair: k as u8 + 1 }));
        }
    }
    let pair1 = GeneratingPair::unchecked(group, x1.clone(), y1.clone());
    let pair2 = GeneratingPair::unchecked(group, x2.clone(), y2.clone());
    let sigma1 = sigma(group, &pair1)?;
    let sigma2 = sigma(group, &pair2)?;
    let identity = group.class_id(&group.identity())?;
    if let Some(class) = sigma1
        .intersection(&sigma2)
        .into_iter()
        .find(|c| *c != identity)
    {
        return Ok(Verification::Refuted(Refutation::SigmaOverlap { class }));
    }
    Ok(Verification::Verified(Box::new(BeauvilleStructure {
        pair1,
        pair2,
        sigma1,
        sigma2,
    })))
}

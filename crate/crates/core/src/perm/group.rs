use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use super::symmetric;
use super::{Bsgs, Permutation};
use crate::bounds::Bounds;
use crate::error::{Error, Result};

/// Which closed forms apply to a permutation group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermGroupKind {
    /// The full symmetric group on its points.
    Symmetric,
    /// The alternating group on its points.
    Alternating,
    General,
}

/// A permutation group given by generators, with its BSGS built on demand.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    kind: PermGroupKind,
    bsgs: OnceLock<Arc<Bsgs>>,
}

/// Conjugators between two elements: `centralizer · representative`.
#[derive(Debug, Clone)]
pub struct Transporter {
    pub representative: Option<Permutation>,
    /// Generators of the centralizer of the target.
    pub centralizer_gens: Vec<Permutation>,
}

impl Transporter {
    /// Every element of the transporter set, if it has at most `bound`
    /// elements.
    pub fn elements(&self, bound: u64) -> Result<Vec<Permutation>> {
        let Some(t) = &self.representative else {
            return Ok(Vec::new());
        };
        let c = Bsgs::new(t.degree(), &self.centralizer_gens);
        if c.order() > bound as u128 {
            return Err(Error::capability(format!(
                "transporter coset of size {} exceeds bound {bound}",
                c.order()
            )));
        }
        Ok(c.elements().iter().map(|z| z.then(t)).collect())
    }
}

/// Breadth-first orbit of an element under conjugation, with parent links.
pub(crate) struct ConjugationOrbit {
    pub(crate) nodes: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    parent: Vec<(u32, u32)>,
}

impl ConjugationOrbit {
    /// Builds the orbit, stopping early once `target` is reached.
    pub(crate) fn build(
        root: &Permutation,
        gens: &[Permutation],
        bound: u64,
        target: Option<&Permutation>,
    ) -> Result<Self> {
        let mut orbit = ConjugationOrbit {
            nodes: vec![root.clone()],
            index: HashMap::from([(root.clone(), 0)]),
            parent: vec![(0, u32::MAX)],
        };
        if target == Some(root) {
            return Ok(orbit);
        }
        let inverses: Vec<Permutation> = gens.iter().map(|s| s.inverse()).collect();
        let mut head = 0;
        while head < orbit.nodes.len() {
            let x = orbit.nodes[head].clone();
            for (k, s) in gens.iter().enumerate() {
                let y = s.then(&x).then(&inverses[k]);
                if orbit.index.contains_key(&y) {
                    continue;
                }
                if orbit.nodes.len() as u64 >= bound {
                    return Err(Error::capability(format!(
                        "conjugation orbit exceeds bound {bound}"
                    )));
                }
                let id = orbit.nodes.len() as u32;
                orbit.index.insert(y.clone(), id);
                orbit.parent.push((head as u32, k as u32));
                let hit = target == Some(&y);
                orbit.nodes.push(y);
                if hit {
                    return Ok(orbit);
                }
            }
            head += 1;
        }
        Ok(orbit)
    }

    pub(crate) fn position(&self, x: &Permutation) -> Option<usize> {
        self.index.get(x).map(|&i| i as usize)
    }

    /// The element `t` with `t root t⁻¹ = nodes[i]`.
    pub(crate) fn conjugator(&self, mut i: usize, gens: &[Permutation]) -> Permutation {
        let mut t = Permutation::identity(self.nodes[0].degree());
        while i != 0 {
            let (p, k) = self.parent[i];
            t = t.then(&gens[k as usize]);
            i = p as usize;
        }
        t
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn full_cycle(n: usize) -> Permutation {
    let pts: Vec<u32> = (1..=n as u32).collect();
    Permutation::from_cycles(n, &[&pts]).unwrap()
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_kind(degree, generators, PermGroupKind::General)
    }

    pub(crate) fn with_kind(
        degree: usize,
        generators: Vec<Permutation>,
        kind: PermGroupKind,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::invalid("degree must be positive"));
        }
        if generators.is_empty() {
            return Err(Error::invalid("a permutation group needs generators"));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: g.degree(),
                right: degree,
            });
        }
        Ok(PermGroup {
            degree,
            generators,
            kind,
            bsgs: OnceLock::new(),
        })
    }

    /// `S_n` generated by `(1,2)` and `(1,…,n)`.
    pub fn symmetric(n: usize) -> Result<Self> {
        let gens = if n < 2 {
            vec![Permutation::identity(n.max(1))]
        } else {
            vec![Permutation::from_cycles(n, &[&[1, 2]])?, full_cycle(n)]
        };
        Self::with_kind(n.max(1), gens, PermGroupKind::Symmetric)
    }

    /// `A_n` generated by `(1,2,3)` with `(1,…,n)` (n odd) or `(2,…,n)`
    /// (n even).
    pub fn alternating(n: usize) -> Result<Self> {
        let gens = if n < 3 {
            vec![Permutation::identity(n.max(1))]
        } else if n % 2 == 1 {
            vec![Permutation::from_cycles(n, &[&[1, 2, 3]])?, full_cycle(n)]
        } else {
            let pts: Vec<u32> = (2..=n as u32).collect();
            vec![
                Permutation::from_cycles(n, &[&[1, 2, 3]])?,
                Permutation::from_cycles(n, &[&pts])?,
            ]
        };
        Self::with_kind(n.max(1), gens, PermGroupKind::Alternating)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn kind(&self) -> PermGroupKind {
        self.kind
    }

    pub fn bsgs(&self) -> &Bsgs {
        self.bsgs
            .get_or_init(|| Arc::new(Bsgs::new(self.degree, &self.generators)))
    }

    pub fn order(&self) -> u128 {
        match self.kind {
            PermGroupKind::Symmetric => factorial(self.degree),
            PermGroupKind::Alternating if self.degree >= 2 => factorial(self.degree) / 2,
            PermGroupKind::Alternating => 1,
            PermGroupKind::General => self.bsgs().order(),
        }
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        match self.kind {
            PermGroupKind::Symmetric => true,
            PermGroupKind::Alternating => g.is_even(),
            PermGroupKind::General => self.bsgs().contains(g),
        }
    }

    fn check_member(&self, g: &Permutation) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::NotInGroup(g.to_string()))
        }
    }

    /// Whether the given elements of the group generate all of it.
    pub fn is_generated_by(&self, gens: &[Permutation]) -> bool {
        Bsgs::new(self.degree, gens).order() == self.order()
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.bsgs().random_element(rng)
    }

    /// All elements in increasing order.
    pub fn elements(&self, bound: u64) -> Result<Vec<Permutation>> {
        if self.order() > bound as u128 {
            return Err(Error::capability(format!(
                "group of order {} exceeds enumeration bound {bound}",
                self.order()
            )));
        }
        let mut els = self.bsgs().elements();
        els.sort();
        Ok(els)
    }

    /// Orbit of a 0-based point.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point] = true;
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
        }
        orbit
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !seen[p] {
                let mut o = self.orbit(p);
                for &q in &o {
                    seen[q] = true;
                }
                o.sort_unstable();
                out.push(o);
            }
        }
        out
    }

    /// The conjugacy class of `g`, by closure under conjugation by the
    /// generators.
    pub fn conjugacy_class(&self, g: &Permutation, bounds: &Bounds) -> Result<Vec<Permutation>> {
        self.check_member(g)?;
        let orbit = ConjugationOrbit::build(g, &self.generators, bounds.orbit, None)?;
        Ok(orbit.nodes)
    }

    /// Generators of `C_G(g)`.
    pub fn centralizer(&self, g: &Permutation, bounds: &Bounds) -> Result<Vec<Permutation>> {
        self.check_member(g)?;
        match self.kind {
            PermGroupKind::Symmetric => Ok(symmetric::centralizer_generators(g)),
            PermGroupKind::Alternating => Ok(symmetric::even_part_generators(
                &symmetric::centralizer_generators(g),
            )),
            PermGroupKind::General => self.general_centralizer(g, bounds),
        }
    }

    fn general_centralizer(&self, g: &Permutation, bounds: &Bounds) -> Result<Vec<Permutation>> {
        let ambient = symmetric::centralizer_order(g);
        let members: Vec<Permutation> = if ambient <= bounds.centralizer as u128 {
            Bsgs::new(self.degree, &symmetric::centralizer_generators(g))
                .elements()
                .into_iter()
                .filter(|z| self.contains(z))
                .collect()
        } else if self.order() <= bounds.enumeration as u128 {
            self.bsgs()
                .elements()
                .into_iter()
                .filter(|z| z.then(g) == g.then(z))
                .collect()
        } else {
            return Err(Error::capability(format!(
                "centralizer of {g}: ambient centralizer of order {ambient} and group of order {} both exceed their bounds",
                self.order()
            )));
        };
        Ok(generating_subset(self.degree, members))
    }

    /// Conjugators taking `a` to `b`: `t` with `t a t⁻¹ = b`.
    pub fn transporter(&self, a: &Permutation, b: &Permutation, bounds: &Bounds) -> Result<Transporter> {
        self.check_member(a)?;
        self.check_member(b)?;
        let centralizer_gens = self.centralizer(b, bounds)?;
        let representative = self.transporter_representative(a, b, &centralizer_gens, bounds)?;
        Ok(Transporter {
            representative,
            centralizer_gens,
        })
    }

    fn transporter_representative(
        &self,
        a: &Permutation,
        b: &Permutation,
        centralizer_of_b: &[Permutation],
        bounds: &Bounds,
    ) -> Result<Option<Permutation>> {
        if a == b {
            return Ok(Some(Permutation::identity(self.degree)));
        }
        match self.kind {
            PermGroupKind::Symmetric => Ok(symmetric::cycle_matching_conjugator(a, b)),
            PermGroupKind::Alternating => {
                let Some(t) = symmetric::cycle_matching_conjugator(a, b) else {
                    return Ok(None);
                };
                if t.is_even() {
                    return Ok(Some(t));
                }
                // Fix the parity with an odd element of C_{S_n}(b).
                let _ = centralizer_of_b;
                Ok(symmetric::centralizer_generators(b)
                    .into_iter()
                    .find(|z| !z.is_even())
                    .map(|z| z.then(&t)))
            }
            PermGroupKind::General => {
                if a.cycle_type() != b.cycle_type() {
                    return Ok(None);
                }
                let orbit = ConjugationOrbit::build(a, &self.generators, bounds.orbit, Some(b))?;
                Ok(orbit
                    .position(b)
                    .map(|i| orbit.conjugator(i, &self.generators)))
            }
        }
    }

    /// `g` with `g a g⁻¹ = a2` and `g b g⁻¹ = b2`, if one exists.
    pub fn simultaneous_transporter(
        &self,
        a: &Permutation,
        a2: &Permutation,
        b: &Permutation,
        b2: &Permutation,
        bounds: &Bounds,
    ) -> Result<Option<Permutation>> {
        for g in [a, a2, b, b2] {
            self.check_member(g)?;
        }
        if a.cycle_type() != a2.cycle_type() || b.cycle_type() != b2.cycle_type() {
            return Ok(None);
        }
        // Anchor on the target with the smaller ambient centralizer.
        let (a, a2, b, b2) =
            if symmetric::centralizer_order(b2) < symmetric::centralizer_order(a2) {
                (b, b2, a, a2)
            } else {
                (a, a2, b, b2)
            };
        let centralizer = self.centralizer(a2, bounds)?;
        let Some(t) = self.transporter_representative(a, a2, &centralizer, bounds)? else {
            return Ok(None);
        };
        let bt = b.conj(&t);
        let orbit = ConjugationOrbit::build(&bt, &centralizer, bounds.orbit, Some(b2))?;
        Ok(orbit
            .position(b2)
            .map(|i| orbit.conjugator(i, &centralizer).then(&t)))
    }

    /// Generators of `C_G(a) ∩ C_G(b)`.
    pub fn centralizer_of_pair(
        &self,
        a: &Permutation,
        b: &Permutation,
        bounds: &Bounds,
    ) -> Result<Vec<Permutation>> {
        let ca = self.centralizer(a, bounds)?;
        let orbit = ConjugationOrbit::build(b, &ca, bounds.orbit, None)?;
        let transversal: Vec<Permutation> = (0..orbit.nodes.len())
            .map(|i| orbit.conjugator(i, &ca))
            .collect();
        let inverses: Vec<Permutation> = transversal.iter().map(|u| u.inverse()).collect();
        let mut gens = Vec::new();
        for (i, beta) in orbit.nodes.iter().enumerate() {
            for s in &ca {
                let gamma = beta.conj(s);
                let j = orbit.position(&gamma).expect("orbit is closed");
                let z = inverses[j].then(s).then(&transversal[i]);
                if !z.is_identity() {
                    gens.push(z);
                }
            }
        }
        gens.sort();
        gens.dedup();
        if gens.is_empty() {
            gens.push(Permutation::identity(self.degree));
        }
        Ok(gens)
    }
}

/// Greedy generating set for the subgroup whose elements are `members`.
pub(crate) fn generating_subset(degree: usize, members: Vec<Permutation>) -> Vec<Permutation> {
    let target = members.len() as u128;
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current = Bsgs::new(degree, &[Permutation::identity(degree)]);
    for z in members {
        if current.order() == target {
            break;
        }
        if !current.contains(&z) {
            gens.push(z);
            current = Bsgs::new(degree, &gens);
        }
    }
    if gens.is_empty() {
        gens.push(Permutation::identity(degree));
    }
    gens
}

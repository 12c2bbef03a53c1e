use super::{Bsgs, Permutation};
use crate::error::{Error, Result};

/// A homomorphism between permutation groups given by generator images.
///
/// Built from a BSGS of the graph subgroup `{(g, φ(g))}` acting on the
/// disjoint union of domain and codomain points. Base points land in the
/// domain first, so sifting the domain part of `g` yields `φ(g)`.
#[derive(Debug, Clone)]
pub struct PermHom {
    domain_degree: usize,
    codomain_degree: usize,
    graph: Bsgs,
    domain_order: u128,
    image_order: u128,
}

impl PermHom {
    pub fn new(generators: &[Permutation], images: &[Permutation]) -> Result<Self> {
        if generators.is_empty() || generators.len() != images.len() {
            return Err(Error::invalid("generator and image lists must match"));
        }
        let n = generators[0].degree();
        let m = images[0].degree();
        let graph_gens: Vec<Permutation> = generators
            .iter()
            .zip(images)
            .map(|(g, h)| Permutation::concat(&[g, h]))
            .collect();
        let graph = Bsgs::new(n + m, &graph_gens);
        let domain_order = Bsgs::new(n, generators).order();
        let image_order = Bsgs::new(m, images).order();
        Ok(PermHom {
            domain_degree: n,
            codomain_degree: m,
            graph,
            domain_order,
            image_order,
        })
    }

    /// The assignment extends to a homomorphism iff the graph projects
    /// injectively onto the domain.
    pub fn is_well_defined(&self) -> bool {
        self.graph.order() == self.domain_order
    }

    pub fn is_injective(&self) -> bool {
        self.is_well_defined() && self.image_order == self.domain_order
    }

    pub fn apply(&self, g: &Permutation) -> Result<Permutation> {
        if !self.is_well_defined() {
            return Err(Error::invalid("generator images do not define a homomorphism"));
        }
        if g.degree() != self.domain_degree {
            return Err(Error::DegreeMismatch {
                left: g.degree(),
                right: self.domain_degree,
            });
        }
        let n = self.domain_degree;
        let mut residue = g.clone();
        let mut image = Permutation::identity(self.codomain_degree);
        for level in &self.graph.levels {
            if level.base >= n {
                break;
            }
            let beta = residue.apply(level.base);
            let Some(u) = (beta < n).then(|| level.transversal[beta].as_ref()).flatten() else {
                return Err(Error::NotInGroup(g.to_string()));
            };
            let dom = u.restrict(0, n).expect("graph elements preserve blocks");
            let cod = u.restrict(n, self.codomain_degree).expect("graph elements preserve blocks");
            residue = residue.then(&dom.inverse());
            image = cod.then(&image);
        }
        if !residue.is_identity() {
            return Err(Error::NotInGroup(g.to_string()));
        }
        Ok(image)
    }
}

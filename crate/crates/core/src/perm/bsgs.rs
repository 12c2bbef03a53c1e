//! Deterministic Schreier–Sims.

use rand::Rng;

use super::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub(crate) base: usize,
    /// Strong generators fixing every earlier base point.
    pub(crate) gens: Vec<Permutation>,
    pub(crate) orbit: Vec<usize>,
    /// `transversal[β]` maps the base point to `β`.
    pub(crate) transversal: Vec<Option<Permutation>>,
    pub(crate) inverses: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
            inverses: vec![None; degree],
        }
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.inverses = vec![None; degree];
        self.orbit.clear();
        let id = Permutation::identity(degree);
        self.transversal[self.base] = Some(id.clone());
        self.inverses[self.base] = Some(id);
        self.orbit.push(self.base);
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            for x in &self.gens {
                let q = x.apply(p);
                if self.transversal[q].is_none() {
                    let u = self.transversal[p].as_ref().unwrap().then(x);
                    self.inverses[q] = Some(u.inverse());
                    self.transversal[q] = Some(u);
                    self.orbit.push(q);
                }
            }
        }
    }
}

/// Base and strong generating set of a permutation group.
#[derive(Clone, Debug)]
pub struct Bsgs {
    degree: usize,
    pub(crate) levels: Vec<Level>,
}

impl Bsgs {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let mut base: Vec<usize> = Vec::new();
        for g in &gens {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(g.support().next().unwrap());
            }
        }
        let mut levels: Vec<Level> = base.iter().map(|&b| Level::new(b, degree)).collect();
        for g in &gens {
            for (l, level) in levels.iter_mut().enumerate() {
                if base[..l].iter().all(|&b| g.apply(b) == b) {
                    level.gens.push(g.clone());
                }
            }
        }
        for level in &mut levels {
            level.rebuild_orbit(degree);
        }
        let mut bsgs = Bsgs { degree, levels };
        bsgs.complete();
        bsgs
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let level = i as usize;
            match self.find_failing_schreier_generator(level) {
                None => i -= 1,
                Some((y, j)) => {
                    if j == self.levels.len() {
                        let b = y.support().next().unwrap();
                        self.levels.push(Level::new(b, self.degree));
                    }
                    for l in level + 1..=j {
                        self.levels[l].gens.push(y.clone());
                        self.levels[l].rebuild_orbit(self.degree);
                    }
                    i = j as isize;
                }
            }
        }
    }

    fn find_failing_schreier_generator(&self, level: usize) -> Option<(Permutation, usize)> {
        let lv = &self.levels[level];
        for &beta in &lv.orbit {
            let u = lv.transversal[beta].as_ref().unwrap();
            for x in &lv.gens {
                let target = x.apply(beta);
                let h = u.then(x).then(lv.inverses[target].as_ref().unwrap());
                if h.is_identity() {
                    continue;
                }
                let (y, j) = self.strip(h, level + 1);
                if j < self.levels.len() || !y.is_identity() {
                    return Some((y, j));
                }
            }
        }
        None
    }

    /// Sifts `g` through the levels starting at `from`; returns the residue
    /// and the level at which sifting stopped.
    pub(crate) fn strip(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = g.apply(level.base);
            match &level.inverses[beta] {
                None => return (g, l),
                Some(uinv) => g = g.then(uinv),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .map(|l| l.orbit.len() as u128)
            .product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels.first().map(|l| l.gens.clone()).unwrap_or_default()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (y, j) = self.strip(g.clone(), 0);
        j == self.levels.len() && y.is_identity()
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let beta = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = g.then(level.transversal[beta].as_ref().unwrap());
        }
        g
    }

    /// Every element, in a deterministic order. The caller bounds the size.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for g in &out {
                for &beta in &level.orbit {
                    next.push(g.then(level.transversal[beta].as_ref().unwrap()));
                }
            }
            out = next;
        }
        out
    }
}

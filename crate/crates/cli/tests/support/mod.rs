//! Brute-force reference computations shared by the integration tests.
//! They use only multiplication, inversion and the stored generators of a
//! group; every other quantity is derived here by exhaustive search.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use beauville_core::group::{Element, Group};
use beauville_core::{catalog, Bounds};

/// The groups of order at most 200 used for oracle comparisons.
pub const SMALL_SUITE: [&str; 10] = [
    "S3",
    "A4",
    "S4",
    "A5",
    "C(3,3)",
    "C(5,5)",
    "C(7,7)",
    "perm(4){(1,2,3,4),(1,3)}",
    "H(5,1,1)",
    // PSL(3,2), isomorphic to L2(7).
    "perm(7){(1,2,3,4,5,6,7),(2,3)(4,7)}",
];

pub fn group(text: &str) -> Group {
    catalog::group(text, Bounds::default()).unwrap()
}

/// Every element, by breadth-first closure over the stored generators.
pub fn closure_elements(g: &Group) -> Vec<Element> {
    let mut seen = HashSet::from([g.identity()]);
    let mut queue = VecDeque::from([g.identity()]);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        for s in g.generators() {
            let y = g.mul(&x, &s);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
        out.push(x);
    }
    out
}

/// Brute-force conjugacy classes: the class number of each element, found
/// by conjugating a representative with every element.
pub fn brute_classes(g: &Group, elements: &[Element]) -> HashMap<Element, usize> {
    let mut class = HashMap::new();
    let mut count = 0;
    for a in elements {
        if class.contains_key(a) {
            continue;
        }
        for h in elements {
            class.insert(g.conj(a, h), count);
        }
        count += 1;
    }
    class
}

/// A group given by its full multiplication table.
pub struct Naive {
    pub elements: Vec<Element>,
    pub index: HashMap<Element, u32>,
    pub mul: Vec<u32>,
    pub inv: Vec<u32>,
    pub identity: u32,
}

impl Naive {
    pub fn new(g: &Group) -> Naive {
        let id = g.identity();
        let gens = g.generators();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id.clone(), 0u32)]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for s in &gens {
                let y = g.mul(&x, s);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len() as u32);
                    elements.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let n = elements.len();
        let mut mul = vec![0; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * n + j] = index[&g.mul(a, b)];
            }
        }
        let inv = (0..n)
            .map(|i| (0..n as u32).find(|&j| mul[i * n + j as usize] == 0).unwrap())
            .collect();
        Naive { elements, index, mul, inv, identity: 0 }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn m(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.len() + b as usize]
    }

    /// `h a h⁻¹`.
    pub fn conj(&self, a: u32, h: u32) -> u32 {
        self.m(self.m(h, a), self.inv[h as usize])
    }

    pub fn order(&self, a: u32) -> u64 {
        let (mut x, mut k) = (a, 1);
        while x != self.identity {
            x = self.m(x, a);
            k += 1;
        }
        k
    }

    pub fn generated(&self, gens: &[u32]) -> usize {
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0u32]);
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.m(x, s);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count
    }

    /// Conjugacy class of each element, as the least element index in it.
    pub fn class_of(&self) -> Vec<u32> {
        let n = self.len() as u32;
        (0..n)
            .map(|a| (0..n).map(|h| self.conj(a, h)).min().unwrap())
            .collect()
    }

    pub fn generating_pairs(&self) -> Vec<(u32, u32)> {
        let n = self.len() as u32;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.generated(&[a, b]) == self.len() {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Σ as a bitset of elements: every conjugate of every power of `a`,
    /// `b` and `ab`.
    pub fn sigma_elements(&self, class_of: &[u32], a: u32, b: u32) -> Vec<u64> {
        let mut classes = HashSet::new();
        for g in [a, b, self.m(a, b)] {
            let mut p = g;
            loop {
                classes.insert(class_of[p as usize]);
                if p == self.identity {
                    break;
                }
                p = self.m(p, g);
            }
        }
        let mut bits = vec![0u64; self.len().div_ceil(64)];
        for (e, c) in class_of.iter().enumerate() {
            if classes.contains(c) {
                bits[e / 64] |= 1 << (e % 64);
            }
        }
        bits
    }

    /// Every automorphism as a table, found by trying all images of one
    /// generating pair and checking the full multiplication table.
    pub fn automorphisms(&self) -> Vec<Vec<u32>> {
        let pairs = self.generating_pairs();
        let (a, b) = pairs[0];
        let n = self.len();
        // Breadth-first words in a, b for every element.
        let mut parent: Vec<Option<(u32, u8)>> = vec![None; n];
        let mut order = vec![0u32];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut k = 0;
        while k < order.len() {
            let x = order[k];
            k += 1;
            for (step, s) in [a, b].into_iter().enumerate() {
                let y = self.m(x, s);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    parent[y as usize] = Some((x, step as u8));
                    order.push(y);
                }
            }
        }
        let mut out = Vec::new();
        for &(c, d) in &pairs {
            if self.order(c) != self.order(a) || self.order(d) != self.order(b) {
                continue;
            }
            let mut phi = vec![0u32; n];
            for &x in &order[1..] {
                let (p, step) = parent[x as usize].unwrap();
                phi[x as usize] = self.m(phi[p as usize], if step == 0 { c } else { d });
            }
            let ok = (0..n as u32).all(|i| {
                (0..n as u32).all(|j| phi[self.m(i, j) as usize] == self.m(phi[i as usize], phi[j as usize]))
            });
            if ok {
                out.push(phi);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaiveClassification {
    pub generating_pairs: u64,
    /// Ordered structures `(P₁, P₂)`.
    pub structures: u64,
    pub strongly_real: u64,
    pub verdict: &'static str,
}

/// All pairs of generating pairs; a structure is strongly real iff some
/// automorphism sends both pairs to pairs simultaneously conjugate to the
/// inverted pairs.
pub fn naive_classify(g: &Group) -> NaiveClassification {
    let t = Naive::new(g);
    let n = t.len();
    let class_of = t.class_of();
    let pairs = t.generating_pairs();
    let sigmas: Vec<Vec<u64>> = pairs.iter().map(|&(a, b)| t.sigma_elements(&class_of, a, b)).collect();
    let auts = t.automorphisms();
    // Simultaneous conjugacy class of an ordered pair: least (h a h⁻¹, h b h⁻¹).
    let mut classes: Vec<Option<u64>> = vec![None; n * n];
    let mut class = |a: u32, b: u32| {
        *classes[a as usize * n + b as usize].get_or_insert_with(|| {
            (0..n as u32)
                .map(|h| t.conj(a, h) as u64 * n as u64 + t.conj(b, h) as u64)
                .min()
                .unwrap()
        })
    };
    let words = auts.len().div_ceil(64);
    let s_sets: Vec<Vec<u64>> = pairs
        .iter()
        .map(|&(a, b)| {
            let target = class(t.inv[a as usize], t.inv[b as usize]);
            let mut bits = vec![0u64; words];
            for (k, phi) in auts.iter().enumerate() {
                if class(phi[a as usize], phi[b as usize]) == target {
                    bits[k / 64] |= 1 << (k % 64);
                }
            }
            bits
        })
        .collect();
    let (mut structures, mut strongly_real) = (0u64, 0u64);
    for i in 0..pairs.len() {
        for j in 0..pairs.len() {
            // The identity is element 0, so the intersection must be exactly bit 0.
            let only_identity = sigmas[i]
                .iter()
                .zip(&sigmas[j])
                .enumerate()
                .all(|(k, (x, y))| x & y == u64::from(k == 0));
            if !only_identity {
                continue;
            }
            structures += 1;
            if s_sets[i].iter().zip(&s_sets[j]).any(|(x, y)| x & y != 0) {
                strongly_real += 1;
            }
        }
    }
    let verdict = if pairs.is_empty() {
        "notTwoGenerated"
    } else if structures == 0 {
        "notBeauville"
    } else if strongly_real == structures {
        "purelyStronglyReal"
    } else if strongly_real == 0 {
        "purelyNonStronglyReal"
    } else {
        "mixed"
    };
    NaiveClassification {
        generating_pairs: pairs.len() as u64,
        structures,
        strongly_real,
        verdict,
    }
}

/// Permutations as 1-based image lists, composed left to right.
pub fn perm_from_cycles(n: usize, cycles: &[Vec<usize>]) -> Vec<usize> {
    let mut img: Vec<usize> = (0..=n).collect();
    for c in cycles {
        for (k, &p) in c.iter().enumerate() {
            img[p] = c[(k + 1) % c.len()];
        }
    }
    img
}

/// `a` then `b`.
pub fn perm_mul(a: &[usize], b: &[usize]) -> Vec<usize> {
    (0..a.len()).map(|i| b[a[i]]).collect()
}

pub fn perm_inv(a: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x] = i;
    }
    out
}

/// Closure size of a permutation group by breadth-first search.
pub fn closure_order(gens: &[Vec<usize>]) -> u64 {
    let id: Vec<usize> = (0..gens[0].len()).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = perm_mul(&x, s);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len() as u64
}

/// Converts a library permutation into a 1-based image list.
pub fn to_images(p: &beauville_core::perm::Permutation) -> Vec<usize> {
    std::iter::once(0)
        .chain(p.images().iter().map(|&x| x as usize + 1))
        .collect()
}

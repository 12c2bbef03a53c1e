use std::collections::HashMap;

use super::Element;

/// All elements of a group, sorted, with a reverse index.
#[derive(Debug, Clone)]
pub struct Enumeration {
    elements: Vec<Element>,
    index: HashMap<Element, u32>,
}

impl Enumeration {
    pub(crate) fn new(mut elements: Vec<Element>) -> Self {
        elements.sort();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i as u32))
            .collect();
        Enumeration { elements, index }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn get(&self, i: u32) -> &Element {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, g: &Element) -> Option<u32> {
        self.index.get(g).copied()
    }
}

/// Conjugacy classes of an enumerated group, numbered by their least
/// element so that class 0 is the identity.
#[derive(Debug, Clone)]
pub struct ClassTable {
    class_of: Vec<u32>,
    representatives: Vec<u32>,
    sizes: Vec<u32>,
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let next = parent[parent[x as usize] as usize];
        parent[x as usize] = next;
        x = next;
    }
    x
}

impl ClassTable {
    /// Classes as orbits of conjugation by the generators, given as the
    /// index permutations `i ↦ index(s·gᵢ·s⁻¹)`.
    pub(crate) fn from_actions(size: usize, actions: &[Vec<u32>]) -> Self {
        let mut parent: Vec<u32> = (0..size as u32).collect();
        for act in actions {
            for (i, &j) in act.iter().enumerate() {
                let (a, b) = (find(&mut parent, i as u32), find(&mut parent, j));
                if a != b {
                    // keep the smaller index as root so roots are class minima
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi as usize] = lo;
                }
            }
        }
        let mut class_of = vec![0u32; size];
        let mut root_to_class: HashMap<u32, u32> = HashMap::new();
        let mut representatives = Vec::new();
        let mut sizes: Vec<u32> = Vec::new();
        for i in 0..size as u32 {
            let r = find(&mut parent, i);
            let c = *root_to_class.entry(r).or_insert_with(|| {
                representatives.push(r);
                sizes.push(0);
                representatives.len() as u32 - 1
            });
            class_of[i as usize] = c;
            sizes[c as usize] += 1;
        }
        ClassTable {
            class_of,
            representatives,
            sizes,
        }
    }

    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn class_of(&self, element_index: u32) -> u32 {
        self.class_of[element_index as usize]
    }

    /// Index of the least element of class `c`.
    pub fn representative(&self, c: u32) -> u32 {
        self.representatives[c as usize]
    }

    pub fn size(&self, c: u32) -> u32 {
        self.sizes[c as usize]
    }
}

/// Multiplication table of an enumerated group: `entry(i, j)` is the index
/// of `gᵢ·gⱼ`.
#[derive(Debug, Clone)]
pub struct MulTable {
    size: usize,
    entries: Vec<u32>,
    inverses: Vec<u32>,
}

impl MulTable {
    pub(crate) fn new(size: usize, entries: Vec<u32>) -> Self {
        debug_assert_eq!(entries.len(), size * size);
        let mut inverses = vec![u32::MAX; size];
        // the identity is element 0
        for i in 0..size {
            for j in 0..size {
                if entries[i * size + j] == 0 {
                    inverses[i] = j as u32;
                    break;
                }
            }
        }
        MulTable {
            size,
            entries,
            inverses,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mul(&self, i: u32, j: u32) -> u32 {
        self.entries[i as usize * self.size + j as usize]
    }

    pub fn inv(&self, i: u32) -> u32 {
        self.inverses[i as usize]
    }

    /// `h·g·h⁻¹`.
    pub fn conj(&self, g: u32, h: u32) -> u32 {
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn order(&self, g: u32) -> u64 {
        let mut x = g;
        let mut m = 1;
        while x != 0 {
            x = self.mul(x, g);
            m += 1;
        }
        m
    }
}

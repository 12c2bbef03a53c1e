use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec;
use crate::group::{ClassId, Element, Group};

use super::structure::{sigma, verify_structure, BeauvilleStructure, GeneratingPair};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchStrategy {
    /// Uniform random pairs from a seeded ChaCha stream.
    Random { seed: u64 },
    /// Pairs of an enumerable group in enumeration order.
    Systematic,
    /// The given pairs first, then random pairs.
    Seeded { seed: u64, candidates: Vec<(Element, Element)> },
}

impl SearchStrategy {
    pub fn seed(&self) -> Option<u64> {
        match self {
            SearchStrategy::Random { seed } | SearchStrategy::Seeded { seed, .. } => Some(*seed),
            SearchStrategy::Systematic => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Verified structures, canonically ordered.
    pub structures: Vec<BeauvilleStructure>,
    pub candidates: u64,
    pub generating_pairs: usize,
}

impl SearchOutcome {
    /// Whether some structure consists of the two given pairs, in either
    /// order.
    pub fn contains_pairs(&self, p1: (&Element, &Element), p2: (&Element, &Element)) -> bool {
        self.structures.iter().any(|s| {
            let a = (&s.pair1.x, &s.pair1.y);
            let b = (&s.pair2.x, &s.pair2.y);
            (a == p1 && b == p2) || (a == p2 && b == p1)
        })
    }
}

fn candidates(group: &Group, strategy: &SearchStrategy, budget: u64) -> Result<Vec<(Element, Element)>> {
    let random = |seed: u64, count: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let x = group.random_element(&mut rng);
                let y = group.random_element(&mut rng);
                (x, y)
            })
            .collect::<Vec<_>>()
    };
    Ok(match strategy {
        SearchStrategy::Random { seed } => random(*seed, budget),
        SearchStrategy::Seeded { seed, candidates } => {
            for (x, y) in candidates {
                group.check(x)?;
                group.check(y)?;
            }
            let mut out = candidates.clone();
            out.extend(random(*seed, budget.saturating_sub(candidates.len() as u64)));
            out
        }
        SearchStrategy::Systematic => {
            let en = group.enumerate()?;
            let n = en.len() as u64;
            (0..budget.min(n.saturating_mul(n)))
                .map(|k| (en.get((k / n) as u32).clone(), en.get((k % n) as u32).clone()))
                .collect()
        }
    })
}

/// Looks for Beauville structures among `budget` candidate pairs.
///
/// Candidate generating pairs are deduplicated and sorted; each unordered
/// pair of them with disjoint Σ-sets is re-verified and reported, at most
/// `max_results` of them. An empty result proves nothing.
pub fn search(
    group: &Group,
    strategy: &SearchStrategy,
    budget: u64,
    max_results: usize,
) -> Result<SearchOutcome> {
    group.prepare_class_labels()?;
    let ex = group.bounds().exec;
    let drawn = candidates(group, strategy, budget)?;
    let flags = exec::try_map(ex, &drawn, |(x, y)| group.is_generating_pair(x, y))?;
    let unique: BTreeSet<(Element, Element)> = drawn
        .into_iter()
        .zip(flags)
        .filter_map(|(p, ok)| ok.then_some(p))
        .collect();
    let pairs: Vec<GeneratingPair> = unique
        .into_iter()
        .map(|(x, y)| GeneratingPair::unchecked(group, x, y))
        .collect();
    let sigmas = exec::try_map(ex, &pairs, |p| sigma(group, p))?;

    let mut ids: BTreeMap<&ClassId, usize> = BTreeMap::new();
    for s in &sigmas {
        for c in &s.classes {
            let next = ids.len();
            ids.entry(c).or_insert(next);
        }
    }
    let identity = group.class_id(&group.identity())?;
    let words = ids.len().div_ceil(64);
    let bits: Vec<Vec<u64>> = sigmas
        .iter()
        .map(|s| {
            let mut v = vec![0u64; words];
            for c in s.classes.iter().filter(|c| **c != identity) {
                let k = ids[c];
                v[k / 64] |= 1 << (k % 64);
            }
            v
        })
        .collect();

    let hits: Vec<(usize, usize)> = exec::map_range(ex, pairs.len(), |i| {
        ((i + 1)..pairs.len())
            .filter(|&j| bits[i].iter().zip(&bits[j]).all(|(a, b)| a & b == 0))
            .map(|j| (i, j))
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .take(max_results)
    .collect();

    let structures = exec::try_map(ex, &hits, |&(i, j)| {
        let (p, q) = (&pairs[i], &pairs[j]);
        verify_structure(group, &p.x, &p.y, &q.x, &q.y)?
            .structure()
            .cloned()
            .ok_or_else(|| Error::Internal("Σ-disjoint candidate failed verification".into()))
    })?;
    Ok(SearchOutcome {
        structures,
        candidates: budget,
        generating_pairs: pairs.len(),
    })
}

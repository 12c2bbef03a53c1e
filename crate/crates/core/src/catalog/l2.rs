//! `L₂(8)` as Möbius transformations of the projective line over GF(8).
//!
//! Point `v + 1` (for `v = 0..7`) is the field element with bit pattern
//! `v`; point 9 is `∞`.

use super::gf8::FieldElem;
use crate::bounds::Bounds;
use crate::error::Result;
use crate::exec;
use crate::group::{Element, Group, Origin};
use crate::perm::{PermGroup, Permutation};

const INFINITY: usize = 8;

fn point_map(f: impl Fn(Option<FieldElem>) -> Option<FieldElem>) -> Permutation {
    let images: Vec<u32> = (0..9)
        .map(|p| {
            let z = (p != INFINITY).then(|| FieldElem::new(p as u8));
            match f(z) {
                Some(w) => w.bits() as u32,
                None => INFINITY as u32,
            }
        })
        .collect();
    Permutation::from_images(images).expect("Möbius maps are bijections")
}

/// `z ↦ (az + b)/(cz + d)` for `ad + bc ≠ 0`.
pub fn mobius(a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Permutation {
    assert!(!a.mul(d).add(b.mul(c)).is_zero(), "singular Möbius map");
    point_map(|z| match z {
        None => {
            if c.is_zero() {
                None
            } else {
                Some(a.mul(c.inv().unwrap()))
            }
        }
        Some(z) => {
            let num = a.mul(z).add(b);
            let den = c.mul(z).add(d);
            den.inv().map(|i| num.mul(i))
        }
    })
}

/// The field automorphism `z ↦ z²` acting on points.
pub fn frobenius() -> Permutation {
    point_map(|z| z.map(FieldElem::frobenius))
}

/// Generators `z + 1`, `tz` and `1/z`.
pub fn l2_8_generators() -> Vec<Permutation> {
    use FieldElem as F;
    vec![
        mobius(F::ONE, F::ONE, F::ZERO, F::ONE),
        mobius(F::T, F::ZERO, F::ZERO, F::ONE),
        mobius(F::ZERO, F::ONE, F::ONE, F::ZERO),
    ]
}

pub fn l2_8(bounds: Bounds) -> Result<Group> {
    Ok(Group::perm(
        "L2(8)",
        PermGroup::new(9, l2_8_generators())?,
        Origin::L2(8),
        bounds,
    ))
}

/// `PΓL(2,8)`, the full automorphism group of `L₂(8)` acting on the same
/// nine points.
pub fn pgaml_2_8() -> Result<PermGroup> {
    let mut gens = l2_8_generators();
    gens.push(frobenius());
    PermGroup::new(9, gens)
}

/// Outcome of checking that every generating pair is inverted by an
/// inner automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacBeathReport {
    pub pairs_checked: u64,
    pub generating_pairs: u64,
    /// Generating pairs without an inner simultaneous inverter.
    pub failures: Vec<(Element, Element)>,
    pub involution_classes: usize,
}

impl MacBeathReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.generating_pairs > 0
    }
}

/// Pairs checked, generating pairs and failures for one first element.
type PairTally = (u64, u64, Vec<(Element, Element)>);

/// For every pair `(a, b)` of elements of `L₂(8)` that generates, looks
/// for `g` with `g a g⁻¹ = a⁻¹` and `g b g⁻¹ = b⁻¹`. With `first_from_classes`
/// the first element runs over class representatives only, which covers
/// every pair up to conjugation.
pub fn macbeath_check(bounds: Bounds, first_from_classes: bool) -> Result<MacBeathReport> {
    let g = l2_8(bounds)?;
    let en = g.enumerate()?;
    let classes = g.classes()?;
    let involution_classes = classes.iter().filter(|c| c.element_order == 2).count();
    let firsts: Vec<Element> = if first_from_classes {
        classes.iter().map(|c| c.representative.clone()).collect()
    } else {
        en.elements().to_vec()
    };
    let results = exec::try_map(bounds.exec, &firsts, |a| -> Result<PairTally> {
        let ainv = g.inv(a);
        let mut gen = 0;
        let mut fails = Vec::new();
        for b in en.elements() {
            if !g.is_generating_pair(a, b)? {
                continue;
            }
            gen += 1;
            let binv = g.inv(b);
            if g.simultaneous_transporter(a, &ainv, b, &binv)?.is_none() {
                fails.push((a.clone(), b.clone()));
            }
        }
        Ok((en.len() as u64, gen, fails))
    })?;
    let mut report = MacBeathReport {
        pairs_checked: 0,
        generating_pairs: 0,
        failures: Vec::new(),
        involution_classes,
    };
    for (checked, gen, fails) in results {
        report.pairs_checked += checked;
        report.generating_pairs += gen;
        report.failures.extend(fails);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let g = l2_8(Bounds::default()).unwrap();
        assert_eq!(g.order(), 9 * 8 * 7);
        assert_eq!(pgaml_2_8().unwrap().order(), 3 * 504);
        let f = frobenius();
        assert_eq!(f.order(), 3);
        assert!(!g.as_perm().unwrap().contains(&f));
    }

    #[test]
    fn mobius_group_count() {
        // every nonsingular (a,b,c,d) gives an element; scalars give the same map
        let g = l2_8(Bounds::default()).unwrap();
        let mut maps = std::collections::BTreeSet::new();
        for a in FieldElem::all() {
            for b in FieldElem::all() {
                for c in FieldElem::all() {
                    for d in FieldElem::all() {
                        if !a.mul(d).add(b.mul(c)).is_zero() {
                            let m = mobius(a, b, c, d);
                            assert!(g.as_perm().unwrap().contains(&m));
                            maps.insert(m);
                        }
                    }
                }
            }
        }
        assert_eq!(maps.len(), 504);
    }

    #[test]
    fn macbeath_on_class_representatives() {
        let r = macbeath_check(Bounds::default(), true).unwrap();
        assert!(r.holds(), "{:?}", r.failures);
        assert_eq!(r.involution_classes, 1);
    }
}

//! Closed forms inside the symmetric group: centralizers, cycle-matching
//! conjugators and the splitting of alternating-group classes.

use std::collections::BTreeMap;

use super::Permutation;
use crate::error::{Error, Result};

/// Cycles of `g` including fixed points, grouped by length.
fn cycles_by_length(g: &Permutation) -> BTreeMap<usize, Vec<Vec<u32>>> {
    let mut by_len: BTreeMap<usize, Vec<Vec<u32>>> = BTreeMap::new();
    for c in g.all_cycles() {
        by_len.entry(c.len()).or_default().push(c);
    }
    by_len
}

/// Generators of `C_{S_n}(g)`: each cycle as a rotation, plus pointwise swaps
/// of consecutive cycles of equal length.
pub fn centralizer_generators(g: &Permutation) -> Vec<Permutation> {
    let n = g.degree();
    let mut gens = Vec::new();
    for (len, cycles) in cycles_by_length(g) {
        if len > 1 {
            for c in &cycles {
                let mut images: Vec<u32> = (0..n as u32).collect();
                for k in 0..len {
                    images[c[k] as usize] = c[(k + 1) % len];
                }
                gens.push(Permutation::from_images(images).unwrap());
            }
        }
        for pair in cycles.windows(2) {
            let mut images: Vec<u32> = (0..n as u32).collect();
            for k in 0..len {
                images[pair[0][k] as usize] = pair[1][k];
                images[pair[1][k] as usize] = pair[0][k];
            }
            gens.push(Permutation::from_images(images).unwrap());
        }
    }
    if gens.is_empty() {
        gens.push(Permutation::identity(n));
    }
    gens
}

/// `|C_{S_n}(g)| = ∏ L^{m_L} m_L!`.
pub fn centralizer_order(g: &Permutation) -> u128 {
    let mut order: u128 = 1;
    for (len, cycles) in cycles_by_length(g) {
        let m = cycles.len() as u32;
        order = order.saturating_mul((len as u128).saturating_pow(m));
        for k in 2..=m as u128 {
            order = order.saturating_mul(k);
        }
    }
    order
}

/// A permutation `c` with `c a c⁻¹ = b`, if `a` and `b` share a cycle type.
pub fn cycle_matching_conjugator(a: &Permutation, b: &Permutation) -> Option<Permutation> {
    if a.degree() != b.degree() {
        return None;
    }
    let ca = cycles_by_length(a);
    let cb = cycles_by_length(b);
    if ca.len() != cb.len()
        || ca
            .iter()
            .zip(cb.iter())
            .any(|((la, xa), (lb, xb))| la != lb || xa.len() != xb.len())
    {
        return None;
    }
    // c sends the cycles of b onto the cycles of a.
    let mut images = vec![0u32; a.degree()];
    for (xa, xb) in ca.values().zip(cb.values()) {
        for (cyc_a, cyc_b) in xa.iter().zip(xb.iter()) {
            for (pa, pb) in cyc_a.iter().zip(cyc_b.iter()) {
                images[*pb as usize] = *pa;
            }
        }
    }
    Some(Permutation::from_images(images).unwrap())
}

/// Whether an `S_n`-class of this type splits into two `A_n`-classes:
/// all parts odd and pairwise distinct (fixed points counted).
pub fn is_split_type(cycle_type: &[u32]) -> bool {
    cycle_type.iter().all(|&l| l % 2 == 1) && cycle_type.windows(2).all(|w| w[0] != w[1])
}

/// The canonical element of a cycle type: cycles laid out on consecutive
/// points in the given (decreasing) order.
pub fn canonical_of_type(degree: usize, cycle_type: &[u32]) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut start = 0u32;
    for &len in cycle_type {
        for k in 0..len {
            images[(start + k) as usize] = start + (k + 1) % len;
        }
        start += len;
    }
    Permutation::from_images(images).unwrap()
}

/// For an even permutation of split type, which of the two `A_n`-classes
/// it lies in (0 for the class of the canonical element).
pub fn split_bit(g: &Permutation) -> Option<u8> {
    let t = g.cycle_type();
    if !is_split_type(&t) {
        return None;
    }
    let c = canonical_of_type(g.degree(), &t);
    cycle_matching_conjugator(&c, g).map(|x| x.parity())
}

/// Conjugacy in `A_n` for even permutations.
pub fn an_conjugacy_test(degree: usize, a: &Permutation, b: &Permutation) -> Result<bool> {
    for p in [a, b] {
        if p.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: p.degree(),
                right: degree,
            });
        }
        if !p.is_even() {
            return Err(Error::invalid(format!("{p} is odd, not in A{degree}")));
        }
    }
    let ta = a.cycle_type();
    if ta != b.cycle_type() {
        return Ok(false);
    }
    if !is_split_type(&ta) {
        return Ok(true);
    }
    let t = cycle_matching_conjugator(a, b).expect("equal cycle types");
    Ok(t.is_even())
}

/// Generators of the even part of `⟨gens⟩` (Schreier generators for the
/// transversal `{1, o}` with `o` any odd generator).
pub fn even_part_generators(gens: &[Permutation]) -> Vec<Permutation> {
    let Some(odd) = gens.iter().find(|g| !g.is_even()) else {
        return gens.to_vec();
    };
    let odd_inv = odd.inverse();
    let mut out = Vec::new();
    for s in gens {
        if s.is_even() {
            out.push(s.clone());
            out.push(odd.then(s).then(&odd_inv));
        } else {
            out.push(s.then(&odd_inv));
            out.push(odd.then(s));
        }
    }
    out.retain(|g| !g.is_identity());
    if out.is_empty() {
        out.push(Permutation::identity(odd.degree()));
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Bsgs;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse(text, n).unwrap()
    }

    #[test]
    fn centralizer_of_n_cycle_is_cyclic() {
        let g = p("(1,2,3,4,5)", 5);
        let gens = centralizer_generators(&g);
        let b = Bsgs::new(5, &gens);
        assert_eq!(b.order(), 5);
        assert_eq!(centralizer_order(&g), 5);
        // brute force over S5
        let s5 = Bsgs::new(5, &[p("(1,2)", 5), p("(1,2,3,4,5)", 5)]);
        let count = s5.elements().iter().filter(|h| g.then(h) == h.then(&g)).count();
        assert_eq!(count, 5);
    }

    #[test]
    fn centralizer_orders_match_closed_form() {
        for text in ["(1,2)(3,4)", "(1,2,3)", "()", "(1,2,3)(4,5,6)", "(1,2)(3,4,5,6)"] {
            let g = p(text, 7);
            let b = Bsgs::new(7, &centralizer_generators(&g));
            assert_eq!(b.order(), centralizer_order(&g), "{text}");
            for z in b.elements() {
                assert_eq!(g.then(&z), z.then(&g));
            }
        }
    }

    #[test]
    fn cycle_matching() {
        let a = p("(1,2,3)(4,5)", 6);
        let b = p("(2,6)(1,4,3)", 6);
        let c = cycle_matching_conjugator(&a, &b).unwrap();
        assert_eq!(a.conj(&c), b);
        assert!(cycle_matching_conjugator(&a, &p("(1,2,3)", 6)).is_none());
    }

    #[test]
    fn split_classes() {
        assert!(is_split_type(&[5, 3, 1]));
        assert!(!is_split_type(&[3, 1, 1]));
        assert!(!is_split_type(&[2, 2]));
        assert!(!an_conjugacy_test(4, &p("(1,2,3)", 4), &p("(1,3,2)", 4)).unwrap());
        assert!(an_conjugacy_test(5, &p("(1,2,3)", 5), &p("(1,3,2)", 5)).unwrap());
        assert!(an_conjugacy_test(4, &p("(1,2,3)", 4), &p("(1,2,3)", 4)).unwrap());
        assert!(an_conjugacy_test(4, &p("(1,2)", 4), &p("(1,2)", 4)).is_err());
    }

    #[test]
    fn an_test_agrees_with_brute_force() {
        for n in 3..=7usize {
            let an = Bsgs::new(
                n,
                &even_part_generators(&[
                    p("(1,2)", n),
                    Permutation::from_cycles(n, &[&(1..=n as u32).collect::<Vec<_>>()]).unwrap(),
                ]),
            );
            let els = an.elements();
            assert_eq!(els.len() as u128, (1..=n as u128).product::<u128>() / 2);
            // one representative per cycle type against all elements
            let mut reps: Vec<Permutation> = Vec::new();
            for g in &els {
                if !reps.iter().any(|r| r.cycle_type() == g.cycle_type()) {
                    reps.push(g.clone());
                }
            }
            for a in &reps {
                let class: std::collections::HashSet<Permutation> =
                    els.iter().map(|h| a.conj(h)).collect();
                for b in &els {
                    assert_eq!(
                        an_conjugacy_test(n, a, b).unwrap(),
                        class.contains(b),
                        "n={n} a={a} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn even_part_of_symmetric_centralizer() {
        let g = p("(1,2,3,4,5,6,7)", 7);
        let even = Bsgs::new(7, &even_part_generators(&centralizer_generators(&g)));
        assert_eq!(even.order(), 7);
        let g = p("(1,2,3)", 6);
        let even = Bsgs::new(6, &even_part_generators(&centralizer_generators(&g)));
        assert_eq!(even.order(), centralizer_order(&g) / 2);
    }
}

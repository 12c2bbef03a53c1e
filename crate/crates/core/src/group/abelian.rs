use num_integer::Integer;
use rand::Rng;

use crate::error::{Error, Result};

/// `Z/n₁ × Z/n₂`, elements written `[a,b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    moduli: [u64; 2],
}

impl AbelianGroup {
    pub fn new(n1: u64, n2: u64) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::invalid("cyclic factors must have positive order"));
        }
        if (n1 as u128) * (n2 as u128) > u64::MAX as u128 {
            return Err(Error::capability("abelian group order overflows"));
        }
        Ok(AbelianGroup { moduli: [n1, n2] })
    }

    pub fn moduli(&self) -> [u64; 2] {
        self.moduli
    }

    pub fn order(&self) -> u128 {
        self.moduli[0] as u128 * self.moduli[1] as u128
    }

    pub fn contains(&self, v: &[u64; 2]) -> bool {
        v[0] < self.moduli[0] && v[1] < self.moduli[1]
    }

    pub fn reduce(&self, v: [i128; 2]) -> [u64; 2] {
        [
            v[0].rem_euclid(self.moduli[0] as i128) as u64,
            v[1].rem_euclid(self.moduli[1] as i128) as u64,
        ]
    }

    pub fn add(&self, a: &[u64; 2], b: &[u64; 2]) -> [u64; 2] {
        self.reduce([a[0] as i128 + b[0] as i128, a[1] as i128 + b[1] as i128])
    }

    pub fn neg(&self, a: &[u64; 2]) -> [u64; 2] {
        self.reduce([-(a[0] as i128), -(a[1] as i128)])
    }

    pub fn scale(&self, a: &[u64; 2], m: i64) -> [u64; 2] {
        let m0 = (m as i128).rem_euclid(self.moduli[0] as i128);
        let m1 = (m as i128).rem_euclid(self.moduli[1] as i128);
        self.reduce([m0 * a[0] as i128, m1 * a[1] as i128])
    }

    pub fn element_order(&self, a: &[u64; 2]) -> u64 {
        let o0 = self.moduli[0] / a[0].gcd(&self.moduli[0]);
        let o1 = self.moduli[1] / a[1].gcd(&self.moduli[1]);
        o0.lcm(&o1)
    }

    /// `a, b` generate iff the lattice spanned by `a`, `b`, `(n₁,0)` and
    /// `(0,n₂)` is all of `Z²`, i.e. its 2×2 minors have gcd 1.
    pub fn generates(&self, a: &[u64; 2], b: &[u64; 2]) -> bool {
        let [n1, n2] = self.moduli.map(|n| n as i128);
        let rows = [
            [a[0] as i128, a[1] as i128],
            [b[0] as i128, b[1] as i128],
            [n1, 0],
            [0, n2],
        ];
        let mut g: i128 = 0;
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                g = g.gcd(&(rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0]));
            }
        }
        g == 1
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> [u64; 2] {
        [rng.gen_range(0..self.moduli[0]), rng.gen_range(0..self.moduli[1])]
    }

    pub fn elements(&self) -> impl Iterator<Item = [u64; 2]> + '_ {
        (0..self.moduli[0]).flat_map(move |a| (0..self.moduli[1]).map(move |b| [a, b]))
    }

    pub fn parse(&self, text: &str) -> Result<[u64; 2]> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .or_else(|| t.strip_prefix('(').and_then(|s| s.strip_suffix(')')))
            .ok_or_else(|| Error::parse(0, format!("expected [a,b], found '{text}'")))?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::parse(0, "expected two coordinates"));
        }
        let mut v = [0i128; 2];
        for (slot, part) in v.iter_mut().zip(&parts) {
            *slot = part
                .parse()
                .map_err(|_| Error::parse(0, format!("bad integer '{part}'")))?;
        }
        Ok(self.reduce(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn closure(g: &AbelianGroup, a: [u64; 2], b: [u64; 2]) -> usize {
        let mut seen = HashSet::from([[0, 0]]);
        let mut stack = vec![[0u64, 0u64]];
        while let Some(x) = stack.pop() {
            for s in [a, b] {
                let y = g.add(&x, &s);
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn generation_matches_closure() {
        for (n1, n2) in [(5, 5), (2, 6), (4, 6), (3, 1), (6, 4)] {
            let g = AbelianGroup::new(n1, n2).unwrap();
            let els: Vec<_> = g.elements().collect();
            for a in &els {
                for b in &els {
                    assert_eq!(
                        g.generates(a, b),
                        closure(&g, *a, *b) as u128 == g.order(),
                        "C({n1},{n2}) {a:?} {b:?}"
                    );
                }
            }
        }
        let g = AbelianGroup::new(5, 5).unwrap();
        assert!(g.generates(&[1, 0], &[1, 1]));
        assert!(!g.generates(&[1, 0], &[2, 0]));
    }

    #[test]
    fn orders() {
        let g = AbelianGroup::new(4, 6).unwrap();
        for a in g.elements() {
            let m = g.element_order(&a);
            assert_eq!(g.scale(&a, m as i64), [0, 0]);
            for d in 1..m {
                assert_ne!(g.scale(&a, d as i64), [0, 0]);
            }
        }
    }

    #[test]
    fn parse() {
        let g = AbelianGroup::new(5, 5).unwrap();
        assert_eq!(g.parse("[1, -2]").unwrap(), [1, 3]);
        assert_eq!(g.parse("(7,4)").unwrap(), [2, 4]);
        assert!(g.parse("[1]").is_err());
    }
}

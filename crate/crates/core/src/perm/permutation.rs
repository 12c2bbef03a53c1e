use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of the points `1..=n`.
///
/// Stored 0-based as an image table. Products are read left to right:
/// `p * q` applies `p` first and then `q`, which is the convention under
/// which the classical alternating-group constructions multiply out as
/// written.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from a 0-based image table.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::invalid("permutation degree must be positive"));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::invalid("image table is not a bijection"));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of the given degree from 1-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &p in cycle.iter() {
                if p == 0 || p as usize > degree {
                    return Err(Error::invalid(format!("point {p} outside 1..={degree}")));
                }
                if used[p as usize - 1] {
                    return Err(Error::invalid(format!("point {p} appears twice")));
                }
                used[p as usize - 1] = true;
            }
            for (k, &p) in cycle.iter().enumerate() {
                let q = cycle[(k + 1) % cycle.len()];
                images[p as usize - 1] = q - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(1,2,4)(5,6)`; `()` is the identity.
    /// Whitespace is ignored. The degree is always supplied by the caller.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut chars = text.char_indices().filter(|(_, c)| !c.is_whitespace()).peekable();
        if chars.peek().is_none() {
            return Err(Error::parse(0, "empty permutation literal"));
        }
        while let Some((pos, c)) = chars.next() {
            if c != '(' {
                return Err(Error::parse(pos, format!("expected '(' but found '{c}'")));
            }
            let mut cycle = Vec::new();
            let mut number: Option<(usize, u64)> = None;
            loop {
                let Some((pos, c)) = chars.next() else {
                    return Err(Error::parse(text.len(), "unterminated cycle"));
                };
                match c {
                    '0'..='9' => {
                        let digit = c as u64 - '0' as u64;
                        let (start, value) = number.unwrap_or((pos, 0));
                        let value = value * 10 + digit;
                        if value > u32::MAX as u64 {
                            return Err(Error::parse(start, "point out of range"));
                        }
                        number = Some((start, value));
                    }
                    ',' | ')' => {
                        match number.take() {
                            Some((start, v)) => {
                                if v == 0 || v as usize > degree {
                                    return Err(Error::parse(
                                        start,
                                        format!("point {v} outside 1..={degree}"),
                                    ));
                                }
                                cycle.push(v as u32);
                            }
                            None if c == ')' && cycle.is_empty() => {}
                            None => return Err(Error::parse(pos, "missing point")),
                        }
                        if c == ')' {
                            break;
                        }
                    }
                    _ => return Err(Error::parse(pos, format!("unexpected character '{c}'"))),
                }
            }
            cycles.push(cycle);
        }
        let refs: Vec<&[u32]> = cycles.iter().map(|c| c.as_slice()).collect();
        Self::from_cycles(degree, &refs).map_err(|e| match e {
            Error::Invalid(m) => Error::parse(0, m),
            other => other,
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// Left-to-right product: the result maps `i` to `other(self(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    #[inline]
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `h g h⁻¹` for `g = self`.
    pub fn conjugate(&self, h: &Permutation) -> Result<Permutation> {
        if self.degree() != h.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: h.degree(),
            });
        }
        Ok(self.conj(h))
    }

    #[inline]
    pub(crate) fn conj(&self, h: &Permutation) -> Permutation {
        // (h g h⁻¹)(i) = h⁻¹(g(h(i))) read left to right.
        let hinv = h.inverse();
        Permutation {
            images: h
                .images
                .iter()
                .map(|&i| hinv.images[self.images[i as usize] as usize])
                .collect(),
        }
    }

    /// `[g, h] = g h g⁻¹ h⁻¹` for `g = self`.
    pub fn commutator(&self, h: &Permutation) -> Result<Permutation> {
        if self.degree() != h.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: h.degree(),
            });
        }
        Ok(self.then(h).then(&self.inverse()).then(&h.inverse()))
    }

    pub fn pow(&self, exponent: i64) -> Permutation {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut e = exponent.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, 0-based, each starting at its least point and
    /// listed by increasing least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut j = self.images[start] as usize;
            while j != start {
                seen[j] = true;
                cycle.push(j as u32);
                j = self.images[j] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// All cycles including fixed points.
    pub(crate) fn all_cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut j = self.images[start] as usize;
            while j != start {
                seen[j] = true;
                cycle.push(j as u32);
                j = self.images[j] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths in decreasing order, fixed points included as 1-cycles.
    pub fn cycle_type(&self) -> Vec<u32> {
        let mut t: Vec<u32> = self.all_cycles().iter().map(|c| c.len() as u32).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    pub fn order_and_cycle_type(&self) -> (u64, Vec<u32>) {
        (self.order(), self.cycle_type())
    }

    /// 0 for even permutations, 1 for odd ones.
    pub fn parity(&self) -> u8 {
        let cycles = self.all_cycles().len();
        ((self.degree() - cycles) % 2) as u8
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 0
    }

    /// Points moved, 0-based.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &v)| *i as u32 != v)
            .map(|(i, _)| i)
    }

    /// The restriction to the block `offset..offset + len`, if the block is
    /// invariant, renumbered to start at 0.
    pub fn restrict(&self, offset: usize, len: usize) -> Option<Permutation> {
        let mut images = Vec::with_capacity(len);
        for i in offset..offset + len {
            let v = *self.images.get(i)? as usize;
            if v < offset || v >= offset + len {
                return None;
            }
            images.push((v - offset) as u32);
        }
        Some(Permutation { images })
    }

    /// Disjoint union acting on consecutive blocks of points.
    pub fn concat(parts: &[&Permutation]) -> Permutation {
        let mut images = Vec::new();
        for p in parts {
            let offset = images.len() as u32;
            images.extend(p.images.iter().map(|&v| v + offset));
        }
        Permutation { images }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Left-to-right product; panics on a degree mismatch.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{}]", self.degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse(text, n).unwrap()
    }

    fn cycle(range: std::ops::RangeInclusive<u32>, n: usize) -> Permutation {
        let pts: Vec<u32> = range.collect();
        Permutation::from_cycles(n, &[&pts]).unwrap()
    }

    #[test]
    fn product_of_three_cycle_and_seven_cycle() {
        let x = p("(1,2,4)", 7);
        let y = cycle(1..=7, 7);
        assert_eq!(x.compose(&y).unwrap(), p("(1,3,4,2,5,6,7)", 7));
        assert_eq!(x.compose(&Permutation::identity(7)).unwrap(), x);
    }

    #[test]
    fn double_transposition_times_long_cycle() {
        let x = p("(1,2)(3,4)", 8);
        let y = cycle(2..=8, 8);
        let xy = x.compose(&y).unwrap();
        assert_eq!(xy, p("(1,3,5,6,7,8,2)", 8));
        assert_eq!(xy.apply(3), 3);
        assert_eq!(xy.cycle_type(), vec![7, 1]);
    }

    #[test]
    fn commutators_reproduce_double_transpositions() {
        let x2 = p("(5,4,3,2,1)", 7);
        let y2 = cycle(3..=7, 7);
        assert_eq!(x2.commutator(&y2).unwrap(), p("(1,5)(3,7)", 7));

        let x2 = p("(1,2,3)(4,5,6,7,8)", 8);
        let y2 = p("(5,4,3,2,1)", 8);
        assert_eq!(x2.commutator(&y2.pow(2)).unwrap(), p("(2,5)(3,8)", 8));
    }

    #[test]
    fn conjugation_convention() {
        let g = p("(1,2,3)", 4);
        let h = p("(1,4)", 4);
        let c = g.conjugate(&h).unwrap();
        // h g h⁻¹ with left-to-right products.
        assert_eq!(c, h.then(&g).then(&h.inverse()));
        assert_eq!(g.conjugate(&Permutation::identity(4)).unwrap(), g);
    }

    #[test]
    fn orders_and_types() {
        let id = Permutation::identity(6);
        assert_eq!(id.order_and_cycle_type(), (1, vec![1; 6]));
        let q = p("(1,2)(3,4,5)", 7);
        assert_eq!(q.order(), 6);
        assert_eq!(q.cycle_type(), vec![3, 2, 1, 1]);
        let x1 = p("(1,2,3,4,5,6,7,8,9,10,11)(12,13,14,15,16)", 16);
        assert_eq!(x1.order(), 55);
        assert_eq!(q.parity(), 1);
        assert!(p("(1,2,3)", 3).is_even());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Permutation::parse("", 4).is_err());
        assert!(Permutation::parse("(1,2", 4).is_err());
        assert!(Permutation::parse("(1,5)", 4).is_err());
        assert!(Permutation::parse("(1,2)(2,3)", 4).is_err());
        assert!(Permutation::parse("(1,,2)", 4).is_err());
        assert!(Permutation::parse("1,2", 4).is_err());
        assert_eq!(Permutation::parse(" ( ) ", 3).unwrap(), Permutation::identity(3));
        assert_eq!(Permutation::parse("( 1 , 2 )", 3).unwrap().to_string(), "(1,2)");
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(a.compose(&b), Err(Error::DegreeMismatch { .. })));
        assert!(a.conjugate(&b).is_err());
    }

    #[test]
    fn restrict_and_concat() {
        let a = p("(1,2,3)", 3);
        let b = p("(1,2)", 2);
        let c = Permutation::concat(&[&a, &b]);
        assert_eq!(c, p("(1,2,3)(4,5)", 5));
        assert_eq!(c.restrict(3, 2), Some(b));
        assert_eq!(p("(3,4)", 5).restrict(0, 3), None);
    }
}

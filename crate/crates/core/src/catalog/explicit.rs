//! The explicit structures quoted from the literature.

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Two generating pairs `(x₁, y₁)`, `(x₂, y₂)` as permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermStructure {
    pub x1: Permutation,
    pub y1: Permutation,
    pub x2: Permutation,
    pub y2: Permutation,
}

impl PermStructure {
    pub fn as_array(&self) -> [&Permutation; 4] {
        [&self.x1, &self.y1, &self.x2, &self.y2]
    }
}

fn cycle(n: usize, points: &[u32]) -> Permutation {
    Permutation::from_cycles(n, &[points]).expect("valid cycle")
}

fn range(from: u32, to: u32) -> Vec<u32> {
    (from..=to).collect()
}

/// The structure on `A_n` for `n ≥ 7`: for odd `n`
/// `x₁ = (1,2,4)`, `y₁ = (1,…,n)`, `x₂ = (5,4,3,2,1)`, `y₂ = (3,…,n)`;
/// for even `n`
/// `x₁ = (1,2)(3,4)`, `y₁ = (2,…,n)`, `x₂ = (1,2,3)(4,…,n)`, `y₂ = (5,4,3,2,1)`.
pub fn an_structure(n: usize) -> Result<PermStructure> {
    if n <= 6 {
        return Err(Error::Refused(format!(
            "no explicit structure for A{n}: the construction needs n ≥ 7 and A6 is exceptional"
        )));
    }
    let m = n as u32;
    Ok(if n % 2 == 1 {
        PermStructure {
            x1: cycle(n, &[1, 2, 4]),
            y1: cycle(n, &range(1, m)),
            x2: cycle(n, &[5, 4, 3, 2, 1]),
            y2: cycle(n, &range(3, m)),
        }
    } else {
        PermStructure {
            x1: Permutation::from_cycles(n, &[&[1, 2], &[3, 4]]).unwrap(),
            y1: cycle(n, &range(2, m)),
            x2: Permutation::from_cycles(n, &[&[1, 2, 3], &range(4, m)]).unwrap(),
            y2: cycle(n, &[5, 4, 3, 2, 1]),
        }
    })
}

/// The structure on `M₁₁ × A₅` acting on 16 points (11 + 5).
pub fn m11a5_structure() -> PermStructure {
    let p = |s: &str| Permutation::parse(s, 16).expect("valid literal");
    PermStructure {
        x1: p("(1,2,3,4,5,6,7,8,9,10,11)(12,13,14,15,16)"),
        y1: p("(1,5,3,4,10,2,8,9,11,6,7)(12,14,15,13,16)"),
        x2: p("(1,2,9,10,6)(3,11,5,4,7)(12,13,14,15,16)"),
        y2: p("(1,4,8,11,3)(2,9,7,5,6)(12,14,15,13,16)"),
    }
}

/// Generators of `M₁₁`: the 11-point parts of `x₁` and `y₁` above.
pub fn m11_generators() -> Vec<Permutation> {
    let s = m11a5_structure();
    vec![
        s.x1.restrict(0, 11).expect("x1 preserves blocks"),
        s.y1.restrict(0, 11).expect("y1 preserves blocks"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_degrees_refused() {
        for n in 1..=6 {
            assert!(matches!(an_structure(n), Err(Error::Refused(_))));
        }
    }

    #[test]
    fn all_even() {
        for n in 7..=14 {
            let s = an_structure(n).unwrap();
            assert!(s.as_array().iter().all(|p| p.is_even()), "n = {n}");
        }
        assert!(m11a5_structure().as_array().iter().all(|p| p.is_even()));
    }

    #[test]
    fn m11_projection_orders() {
        let s = m11a5_structure();
        for p in s.as_array() {
            assert_eq!(p.restrict(11, 5).unwrap().order(), 5);
        }
    }
}

//! Group constructors, the group-description language and the explicit
//! structures used throughout the test suite.

mod gf8;
mod l2;
mod explicit;

use std::fmt;

pub use gf8::FieldElem;
pub use l2::{frobenius, l2_8, l2_8_generators, macbeath_check, mobius, pgaml_2_8, MacBeathReport};
pub use explicit::{m11_generators, an_structure, m11a5_structure, PermStructure};

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::group::{Group, Origin};
use crate::heisenberg::HeisenbergParams;
use crate::perm::{PermGroup, Permutation};

/// Parsed group description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Alternating(usize),
    Symmetric(usize),
    M11,
    L2(u64),
    /// `C(n)^k`.
    CyclicPower { n: u64, k: u32 },
    /// `C(n₁,n₂)`.
    Abelian(u64, u64),
    Heisenberg { p: u64, n: u32, r: u32 },
    Perm { degree: usize, generators: Vec<Permutation> },
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::M11 => write!(f, "M11"),
            GroupSpec::L2(q) => write!(f, "L2({q})"),
            GroupSpec::CyclicPower { n, k: 1 } => write!(f, "C({n})"),
            GroupSpec::CyclicPower { n, k } => write!(f, "C({n})^{k}"),
            GroupSpec::Abelian(a, b) => write!(f, "C({a},{b})"),
            GroupSpec::Heisenberg { p, n, r } => write!(f, "H({p},{n},{r})"),
            GroupSpec::Perm { degree, generators } => {
                let gens: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
                write!(f, "perm({degree}){{{}}}", gens.join(", "))
            }
            GroupSpec::Product(a, b) => {
                let right = if matches!(**b, GroupSpec::Product(..)) {
                    format!("({b})")
                } else {
                    b.to_string()
                };
                write!(f, "{a} x {right}")
            }
        }
    }
}

/// Atoms that name groups deliberately left out of this toolkit.
const OUT_OF_SCOPE: &[&str] = &["M12", "M22", "M23", "M24", "J1", "J2", "J3", "J4", "Sz", "B", "M", "Co1", "HS"];

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.pos, message))
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        self.skip_ws();
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected '{s}'"))
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return self.err("expected a number");
        }
        let start = self.pos;
        self.pos += digits.len();
        digits
            .parse()
            .map_err(|_| Error::parse(start, format!("number '{digits}' is too large")))
    }

    /// `N` or `(N)` after an atom letter.
    fn degree_arg(&mut self) -> Result<usize> {
        if self.peek() == Some('(') {
            self.pos += 1;
            let n = self.number()?;
            self.expect(")")?;
            Ok(n as usize)
        } else {
            Ok(self.number()? as usize)
        }
    }

    fn parse_product(&mut self) -> Result<GroupSpec> {
        let mut left = self.parse_factor()?;
        loop {
            self.skip_ws();
            if self.eat("x") || self.eat("×") || self.eat("*") {
                let right = self.parse_factor()?;
                left = GroupSpec::Product(Box::new(left), Box::new(right));
            } else {
                return Ok(left);
            }
        }
    }

    fn parse_factor(&mut self) -> Result<GroupSpec> {
        self.skip_ws();
        if self.eat("(") {
            let inner = self.parse_product()?;
            self.expect(")")?;
            return Ok(inner);
        }
        let start = self.pos;
        let word: String = self
            .rest()
            .chars()
            .take_while(|c| c.is_ascii_alphabetic())
            .collect();
        if word.is_empty() {
            return self.err("expected a group");
        }
        // Letters followed by digits name an atom such as M11 or L2.
        let digits: String = self.rest()[word.len()..]
            .chars()
            .take_while(|c| c.is_ascii_digit())
            .collect();
        let full = format!("{word}{digits}");
        match word.as_str() {
            "perm" => {
                self.pos += 4;
                self.parse_perm()
            }
            "M" if digits == "11" => {
                self.pos += 3;
                Ok(GroupSpec::M11)
            }
            "L" if digits == "2" => {
                self.pos += 2;
                self.expect("(")?;
                let q = self.number()?;
                self.expect(")")?;
                Ok(GroupSpec::L2(q))
            }
            "A" | "S" => {
                self.pos += 1;
                let n = self.degree_arg()?;
                Ok(if word == "A" {
                    GroupSpec::Alternating(n)
                } else {
                    GroupSpec::Symmetric(n)
                })
            }
            "C" => {
                self.pos += 1;
                self.expect("(")?;
                let a = self.number()?;
                self.skip_ws();
                if self.eat(",") {
                    let b = self.number()?;
                    self.expect(")")?;
                    return Ok(GroupSpec::Abelian(a, b));
                }
                self.expect(")")?;
                self.skip_ws();
                let k = if self.eat("^") { self.number()? as u32 } else { 1 };
                Ok(GroupSpec::CyclicPower { n: a, k })
            }
            "H" => {
                self.pos += 1;
                self.expect("(")?;
                let p = self.number()?;
                self.expect(",")?;
                let n = self.number()? as u32;
                self.expect(",")?;
                let r = self.number()? as u32;
                self.expect(")")?;
                Ok(GroupSpec::Heisenberg { p, n, r })
            }
            _ if OUT_OF_SCOPE.contains(&full.as_str()) || OUT_OF_SCOPE.contains(&word.as_str()) => {
                Err(Error::Refused(format!(
                    "{full} (at offset {start}) is outside the scope of this toolkit; supported atoms are A(n), S(n), M11, L2(8), C(n)^k, C(n1,n2), H(p,n,r) and perm(d){{…}}"
                )))
            }
            _ => Err(Error::parse(start, format!("unknown group '{full}'"))),
        }
    }

    fn parse_perm(&mut self) -> Result<GroupSpec> {
        self.expect("(")?;
        let degree = self.number()? as usize;
        self.expect(")")?;
        self.expect("{")?;
        let body_start = self.pos;
        let Some(len) = self.rest().find('}') else {
            return self.err("unterminated generator list");
        };
        let body = &self.text[body_start..body_start + len];
        self.pos = body_start + len + 1;
        let mut generators = Vec::new();
        let mut depth = 0;
        let mut current = String::new();
        let mut offset = body_start;
        let mut piece_start = body_start;
        for c in body.chars() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' | ';' if depth == 0 => {
                    generators.push(parse_generator(&current, degree, piece_start)?);
                    current.clear();
                    offset += c.len_utf8();
                    piece_start = offset;
                    continue;
                }
                _ => {}
            }
            current.push(c);
            offset += c.len_utf8();
        }
        if !current.trim().is_empty() || generators.is_empty() {
            generators.push(parse_generator(&current, degree, piece_start)?);
        }
        Ok(GroupSpec::Perm { degree, generators })
    }
}

fn parse_generator(text: &str, degree: usize, offset: usize) -> Result<Permutation> {
    Permutation::parse(text.trim(), degree).map_err(|e| match e {
        Error::Parse { offset: o, message } => Error::parse(offset + o, message),
        other => other,
    })
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    if text.trim().is_empty() {
        return Err(Error::parse(0, "empty group description"));
    }
    let mut p = Parser { text, pos: 0 };
    let spec = p.parse_product()?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.err("unexpected trailing input");
    }
    Ok(spec)
}

fn flatten<'a>(spec: &'a GroupSpec, out: &mut Vec<&'a GroupSpec>) {
    match spec {
        GroupSpec::Product(a, b) => {
            flatten(a, out);
            flatten(b, out);
        }
        s => out.push(s),
    }
}

/// Builds the group; products of any shape become one flat product.
pub fn build(spec: &GroupSpec, bounds: Bounds) -> Result<Group> {
    if let GroupSpec::Product(..) = spec {
        let mut atoms = Vec::new();
        flatten(spec, &mut atoms);
        let factors = atoms
            .into_iter()
            .map(|a| build(a, bounds))
            .collect::<Result<Vec<_>>>()?;
        let g = Group::product(factors, bounds)?;
        return Ok(Group::new(spec.to_string(), g.kind().clone(), Origin::Product, bounds));
    }
    let check_degree = |n: usize| -> Result<()> {
        if n == 0 {
            return Err(Error::invalid("degree must be positive"));
        }
        if n > bounds.max_degree {
            return Err(Error::capability(format!(
                "degree {n} exceeds the configured cap {}",
                bounds.max_degree
            )));
        }
        Ok(())
    };
    let name = spec.to_string();
    match spec {
        GroupSpec::Alternating(n) => {
            check_degree(*n)?;
            Ok(Group::perm(name, PermGroup::alternating(*n)?, Origin::Alternating(*n), bounds))
        }
        GroupSpec::Symmetric(n) => {
            check_degree(*n)?;
            Ok(Group::perm(name, PermGroup::symmetric(*n)?, Origin::Symmetric(*n), bounds))
        }
        GroupSpec::M11 => Ok(Group::perm(
            name,
            PermGroup::new(11, m11_generators())?,
            Origin::Mathieu11,
            bounds,
        )),
        GroupSpec::L2(8) => l2_8(bounds),
        GroupSpec::L2(q) => Err(Error::capability(format!(
            "L2({q}) is not constructed; only q = 8 is supported"
        ))),
        GroupSpec::CyclicPower { n, k } => match k {
            0 => Err(Error::invalid("exponent must be positive")),
            1 => Ok(Group::new(name, Group::abelian(*n, 1, bounds)?.kind().clone(), Origin::Abelian, bounds)),
            2 => Ok(Group::new(name, Group::abelian(*n, *n, bounds)?.kind().clone(), Origin::Abelian, bounds)),
            _ => {
                let factors = (0..*k)
                    .map(|_| Group::abelian(*n, 1, bounds))
                    .collect::<Result<Vec<_>>>()?;
                let g = Group::product(factors, bounds)?;
                Ok(Group::new(name, g.kind().clone(), Origin::Product, bounds))
            }
        },
        GroupSpec::Abelian(a, b) => {
            Ok(Group::new(name, Group::abelian(*a, *b, bounds)?.kind().clone(), Origin::Abelian, bounds))
        }
        GroupSpec::Heisenberg { p, n, r } => {
            Ok(Group::heisenberg(HeisenbergParams::new(*p, *n, *r)?, bounds))
        }
        GroupSpec::Perm { degree, generators } => {
            check_degree(*degree)?;
            Ok(Group::perm(name, PermGroup::new(*degree, generators.clone())?, Origin::Custom, bounds))
        }
        GroupSpec::Product(..) => unreachable!(),
    }
}

/// Parses and builds in one step.
pub fn group(text: &str, bounds: Bounds) -> Result<Group> {
    build(&parse_group_spec(text)?, bounds)
}

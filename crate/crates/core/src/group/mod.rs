//! A uniform interface over the permutation, abelian, Heisenberg-type and
//! direct-product backends.

mod abelian;
mod table;

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use abelian::AbelianGroup;
pub use table::{ClassTable, Enumeration, MulTable};

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::exec;
use crate::heisenberg::{HeisenbergClass, HeisenbergParams, NormalForm};
use crate::perm::symmetric;
use crate::perm::{Bsgs, PermGroup, PermGroupKind, Permutation};

/// A group element in one of the backend representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Perm(Permutation),
    Abelian([u64; 2]),
    Heisenberg(NormalForm),
    Tuple(Vec<Element>),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Perm(p) => write!(f, "{p}"),
            Element::Abelian([a, b]) => write!(f, "[{a},{b}]"),
            Element::Heisenberg(h) => write!(f, "{h}"),
            Element::Tuple(parts) => {
                write!(f, "⟨")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " | ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "⟩")
            }
        }
    }
}

/// Canonical conjugacy-class label: equal labels iff conjugate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassId {
    /// Cycle type in decreasing order (fixed points included), with the
    /// `A_n` split bit for alternating groups when the type splits.
    CycleType { parts: Vec<u32>, split: Option<u8> },
    /// The least element of the class.
    Minimum(Element),
    Heisenberg(HeisenbergClass),
    Tuple(Vec<ClassId>),
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassId::CycleType { parts, split } => {
                let mut counts: Vec<(u32, usize)> = Vec::new();
                for &p in parts {
                    match counts.last_mut() {
                        Some((q, c)) if *q == p => *c += 1,
                        _ => counts.push((p, 1)),
                    }
                }
                let body: Vec<String> = counts
                    .iter()
                    .map(|(p, c)| if *c == 1 { format!("{p}") } else { format!("{p}^{c}") })
                    .collect();
                write!(f, "[{}]", body.join(" "))?;
                match split {
                    Some(0) => write!(f, "a"),
                    Some(_) => write!(f, "b"),
                    None => Ok(()),
                }
            }
            ClassId::Minimum(g) => write!(f, "cl{g}"),
            ClassId::Heisenberg(c) => {
                if c.modulus == 1 {
                    write!(f, "({},{},*)", c.i, c.j)
                } else {
                    write!(f, "({},{},{} mod {})", c.i, c.j, c.k, c.modulus)
                }
            }
            ClassId::Tuple(parts) => {
                write!(f, "⟨")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " | ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "⟩")
            }
        }
    }
}

/// One conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassInfo {
    pub id: ClassId,
    pub representative: Element,
    pub size: u128,
    pub element_order: u64,
}

/// Where a group came from; the automorphism registry keys on this.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    Alternating(usize),
    Symmetric(usize),
    Mathieu11,
    L2(u64),
    Abelian,
    Heisenberg,
    Product,
    Custom,
}

#[derive(Debug, Clone)]
pub enum GroupKind {
    Perm(PermGroup),
    Abelian(AbelianGroup),
    Heisenberg(HeisenbergParams),
    Product(Vec<Group>),
}

#[derive(Debug)]
struct GroupData {
    name: String,
    kind: GroupKind,
    origin: Origin,
    bounds: Bounds,
    enumeration: OnceLock<Result<Arc<Enumeration>>>,
    classes: OnceLock<Result<Arc<ClassTable>>>,
    mul_table: OnceLock<Result<Arc<MulTable>>>,
    standard_pair: OnceLock<Result<(Element, Element)>>,
}

/// A finite group behind one of the backends. Cheap to clone; all
/// operations are pure and the lazily built caches are thread-safe.
#[derive(Debug, Clone)]
pub struct Group {
    data: Arc<GroupData>,
}

/// Greatest number of random draws when looking for a generating pair.
const PAIR_SEARCH_DRAWS: usize = 4096;

impl Group {
    pub fn new(name: impl Into<String>, kind: GroupKind, origin: Origin, bounds: Bounds) -> Self {
        Group {
            data: Arc::new(GroupData {
                name: name.into(),
                kind,
                origin,
                bounds,
                enumeration: OnceLock::new(),
                classes: OnceLock::new(),
                mul_table: OnceLock::new(),
                standard_pair: OnceLock::new(),
            }),
        }
    }

    pub fn perm(name: impl Into<String>, group: PermGroup, origin: Origin, bounds: Bounds) -> Self {
        Self::new(name, GroupKind::Perm(group), origin, bounds)
    }

    pub fn abelian(n1: u64, n2: u64, bounds: Bounds) -> Result<Self> {
        Ok(Self::new(
            format!("C({n1},{n2})"),
            GroupKind::Abelian(AbelianGroup::new(n1, n2)?),
            Origin::Abelian,
            bounds,
        ))
    }

    pub fn heisenberg(params: HeisenbergParams, bounds: Bounds) -> Self {
        Self::new(
            params.to_string(),
            GroupKind::Heisenberg(params),
            Origin::Heisenberg,
            bounds,
        )
    }

    pub fn product(factors: Vec<Group>, bounds: Bounds) -> Result<Self> {
        if factors.len() < 2 {
            return Err(Error::invalid("a product needs at least two factors"));
        }
        let name = factors
            .iter()
            .map(|f| {
                if matches!(f.kind(), GroupKind::Product(_)) {
                    format!("({})", f.name())
                } else {
                    f.name().to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" x ");
        Ok(Self::new(name, GroupKind::Product(factors), Origin::Product, bounds))
    }

    /// The same group with different bounds (caches are rebuilt).
    pub fn with_bounds(&self, bounds: Bounds) -> Self {
        let kind = match &self.data.kind {
            GroupKind::Product(fs) => {
                GroupKind::Product(fs.iter().map(|f| f.with_bounds(bounds)).collect())
            }
            k => k.clone(),
        };
        Self::new(self.data.name.clone(), kind, self.data.origin, bounds)
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn kind(&self) -> &GroupKind {
        &self.data.kind
    }

    pub fn origin(&self) -> Origin {
        self.data.origin
    }

    pub fn bounds(&self) -> &Bounds {
        &self.data.bounds
    }

    pub fn as_perm(&self) -> Option<&PermGroup> {
        match &self.data.kind {
            GroupKind::Perm(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_heisenberg(&self) -> Option<&HeisenbergParams> {
        match &self.data.kind {
            GroupKind::Heisenberg(h) => Some(h),
            _ => None,
        }
    }

    pub fn as_abelian(&self) -> Option<&AbelianGroup> {
        match &self.data.kind {
            GroupKind::Abelian(a) => Some(a),
            _ => None,
        }
    }

    pub fn factors(&self) -> Option<&[Group]> {
        match &self.data.kind {
            GroupKind::Product(fs) => Some(fs),
            _ => None,
        }
    }

    pub fn order(&self) -> u128 {
        match &self.data.kind {
            GroupKind::Perm(p) => p.order(),
            GroupKind::Abelian(a) => a.order(),
            GroupKind::Heisenberg(h) => h.order(),
            GroupKind::Product(fs) => fs.iter().map(|f| f.order()).product(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        match &self.data.kind {
            GroupKind::Abelian(_) => true,
            GroupKind::Heisenberg(_) => false,
            GroupKind::Perm(p) => {
                let gens = p.generators();
                gens.iter()
                    .all(|a| gens.iter().all(|b| a.then(b) == b.then(a)))
            }
            GroupKind::Product(fs) => fs.iter().all(|f| f.is_abelian()),
        }
    }

    pub fn identity(&self) -> Element {
        match &self.data.kind {
            GroupKind::Perm(p) => Element::Perm(Permutation::identity(p.degree())),
            GroupKind::Abelian(_) => Element::Abelian([0, 0]),
            GroupKind::Heisenberg(_) => Element::Heisenberg(NormalForm::IDENTITY),
            GroupKind::Product(fs) => Element::Tuple(fs.iter().map(|f| f.identity()).collect()),
        }
    }

    /// The stored generators.
    pub fn generators(&self) -> Vec<Element> {
        match &self.data.kind {
            GroupKind::Perm(p) => p.generators().iter().cloned().map(Element::Perm).collect(),
            GroupKind::Abelian(_) => vec![Element::Abelian([1, 0]), Element::Abelian([0, 1])],
            GroupKind::Heisenberg(h) => {
                vec![Element::Heisenberg(h.x()), Element::Heisenberg(h.y())]
            }
            GroupKind::Product(fs) => {
                let ids: Vec<Element> = fs.iter().map(|f| f.identity()).collect();
                let mut out = Vec::new();
                for (k, f) in fs.iter().enumerate() {
                    for g in f.generators() {
                        let mut t = ids.clone();
                        t[k] = g;
                        out.push(Element::Tuple(t));
                    }
                }
                out
            }
        }
    }

    pub fn contains(&self, g: &Element) -> bool {
        match (&self.data.kind, g) {
            (GroupKind::Perm(p), Element::Perm(x)) => p.contains(x),
            (GroupKind::Abelian(a), Element::Abelian(v)) => a.contains(v),
            (GroupKind::Heisenberg(h), Element::Heisenberg(x)) => h.is_valid(x),
            (GroupKind::Product(fs), Element::Tuple(parts)) => {
                fs.len() == parts.len() && fs.iter().zip(parts).all(|(f, x)| f.contains(x))
            }
            _ => false,
        }
    }

    /// Membership check with a descriptive error.
    pub fn check(&self, g: &Element) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::NotInGroup(format!("{g} (group {})", self.name())))
        }
    }

    /// Product `a·b` (left to right for permutations). Panics on elements of
    /// the wrong backend; use [`Group::multiply`] for checked input.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        match (&self.data.kind, a, b) {
            (GroupKind::Perm(_), Element::Perm(x), Element::Perm(y)) => Element::Perm(x.then(y)),
            (GroupKind::Abelian(g), Element::Abelian(x), Element::Abelian(y)) => {
                Element::Abelian(g.add(x, y))
            }
            (GroupKind::Heisenberg(h), Element::Heisenberg(x), Element::Heisenberg(y)) => {
                Element::Heisenberg(h.hmul(x, y))
            }
            (GroupKind::Product(fs), Element::Tuple(x), Element::Tuple(y)) => Element::Tuple(
                fs.iter()
                    .zip(x.iter().zip(y))
                    .map(|(f, (p, q))| f.mul(p, q))
                    .collect(),
            ),
            _ => panic!("element backend mismatch in {}: {a} · {b}", self.name()),
        }
    }

    pub fn inv(&self, a: &Element) -> Element {
        match (&self.data.kind, a) {
            (GroupKind::Perm(_), Element::Perm(x)) => Element::Perm(x.inverse()),
            (GroupKind::Abelian(g), Element::Abelian(x)) => Element::Abelian(g.neg(x)),
            (GroupKind::Heisenberg(h), Element::Heisenberg(x)) => Element::Heisenberg(h.hinv(x)),
            (GroupKind::Product(fs), Element::Tuple(x)) => {
                Element::Tuple(fs.iter().zip(x).map(|(f, p)| f.inv(p)).collect())
            }
            _ => panic!("element backend mismatch in {}: {a}", self.name()),
        }
    }

    pub fn pow(&self, a: &Element, m: i64) -> Element {
        match (&self.data.kind, a) {
            (GroupKind::Perm(_), Element::Perm(x)) => Element::Perm(x.pow(m)),
            (GroupKind::Abelian(g), Element::Abelian(x)) => Element::Abelian(g.scale(x, m)),
            (GroupKind::Heisenberg(h), Element::Heisenberg(x)) => Element::Heisenberg(h.hpow(x, m)),
            (GroupKind::Product(fs), Element::Tuple(x)) => {
                Element::Tuple(fs.iter().zip(x).map(|(f, p)| f.pow(p, m)).collect())
            }
            _ => panic!("element backend mismatch in {}: {a}", self.name()),
        }
    }

    pub fn order_of(&self, a: &Element) -> u64 {
        match (&self.data.kind, a) {
            (GroupKind::Perm(_), Element::Perm(x)) => x.order(),
            (GroupKind::Abelian(g), Element::Abelian(x)) => g.element_order(x),
            (GroupKind::Heisenberg(h), Element::Heisenberg(x)) => h.element_order(x),
            (GroupKind::Product(fs), Element::Tuple(x)) => fs
                .iter()
                .zip(x)
                .fold(1u64, |acc, (f, p)| acc.lcm(&f.order_of(p))),
            _ => panic!("element backend mismatch in {}: {a}", self.name()),
        }
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn invert(&self, a: &Element) -> Result<Element> {
        self.check(a)?;
        Ok(self.inv(a))
    }

    pub fn power(&self, a: &Element, m: i64) -> Result<Element> {
        self.check(a)?;
        Ok(self.pow(a, m))
    }

    pub fn element_order(&self, a: &Element) -> Result<u64> {
        self.check(a)?;
        Ok(self.order_of(a))
    }

    /// `h·g·h⁻¹`.
    pub fn conj(&self, g: &Element, h: &Element) -> Element {
        self.mul(&self.mul(h, g), &self.inv(h))
    }

    /// `g·h·g⁻¹·h⁻¹`.
    pub fn commutator(&self, g: &Element, h: &Element) -> Element {
        let gh = self.mul(g, h);
        self.mul(&self.mul(&gh, &self.inv(g)), &self.inv(h))
    }

    /// Whether `⟨a, b⟩ = G`.
    pub fn is_generating_pair(&self, a: &Element, b: &Element) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (&self.data.kind, a, b) {
            (GroupKind::Perm(p), Element::Perm(x), Element::Perm(y)) => {
                p.is_generated_by(&[x.clone(), y.clone()])
            }
            (GroupKind::Abelian(g), Element::Abelian(x), Element::Abelian(y)) => g.generates(x, y),
            (GroupKind::Heisenberg(h), Element::Heisenberg(x), Element::Heisenberg(y)) => {
                h.hgenerates(x, y)
            }
            (GroupKind::Product(fs), Element::Tuple(x), Element::Tuple(y)) => {
                return self.product_generates(fs, x, y)
            }
            _ => unreachable!("checked membership"),
        })
    }

    fn product_generates(&self, fs: &[Group], x: &[Element], y: &[Element]) -> Result<bool> {
        for (k, f) in fs.iter().enumerate() {
            if !f.is_generating_pair(&x[k], &y[k])? {
                return Ok(false);
            }
        }
        if self.factors_coprime() {
            return Ok(true);
        }
        if let Some((degree, xs, ys)) = self.as_concatenated(x, y) {
            let order = Bsgs::new(degree, &[xs, ys]).order();
            return Ok(order == self.order());
        }
        let a = Element::Tuple(x.to_vec());
        let b = Element::Tuple(y.to_vec());
        let n = self.closure_size(&[a, b], self.data.bounds.enumeration)?;
        Ok(n as u128 == self.order())
    }

    /// Whether the factor orders are pairwise coprime.
    pub fn factors_coprime(&self) -> bool {
        let Some(fs) = self.factors() else {
            return false;
        };
        let orders: Vec<u128> = fs.iter().map(|f| f.order()).collect();
        (0..orders.len()).all(|i| (i + 1..orders.len()).all(|j| orders[i].gcd(&orders[j]) == 1))
    }

    /// For products of permutation groups: the elements as permutations
    /// on the disjoint union of the factor domains.
    fn as_concatenated(&self, x: &[Element], y: &[Element]) -> Option<(usize, Permutation, Permutation)> {
        let fs = self.factors()?;
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (k, f) in fs.iter().enumerate() {
            f.as_perm()?;
            match (&x[k], &y[k]) {
                (Element::Perm(a), Element::Perm(b)) => {
                    xs.push(a);
                    ys.push(b);
                }
                _ => return None,
            }
        }
        let xs = Permutation::concat(&xs);
        let ys = Permutation::concat(&ys);
        Some((xs.degree(), xs, ys))
    }

    /// Size of `⟨gens⟩` by closure, failing beyond `limit` elements.
    pub fn closure_size(&self, gens: &[Element], limit: u64) -> Result<u64> {
        let id = self.identity();
        let mut seen: HashSet<Element> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in gens {
                let h = self.mul(&g, s);
                if seen.contains(&h) {
                    continue;
                }
                if seen.len() as u64 >= limit {
                    return Err(Error::capability(format!(
                        "subgroup closure exceeds enumeration bound {limit}"
                    )));
                }
                seen.insert(h.clone());
                queue.push_back(h);
            }
        }
        Ok(seen.len() as u64)
    }

    /// All elements, sorted, when `|G|` is within the enumeration bound.
    pub fn enumerate(&self) -> Result<Arc<Enumeration>> {
        self.data
            .enumeration
            .get_or_init(|| self.build_enumeration().map(Arc::new))
            .clone()
    }

    fn build_enumeration(&self) -> Result<Enumeration> {
        let bound = self.data.bounds.enumeration;
        if self.order() > bound as u128 {
            return Err(Error::capability(format!(
                "{} has order {} above the enumeration bound {bound}",
                self.name(),
                self.order()
            )));
        }
        let elements: Vec<Element> = match &self.data.kind {
            GroupKind::Perm(p) => p.elements(bound)?.into_iter().map(Element::Perm).collect(),
            GroupKind::Abelian(a) => a.elements().map(Element::Abelian).collect(),
            GroupKind::Heisenberg(h) => h.elements().map(Element::Heisenberg).collect(),
            GroupKind::Product(fs) => {
                let mut acc: Vec<Vec<Element>> = vec![Vec::new()];
                for f in fs {
                    let en = f.enumerate()?;
                    acc = acc
                        .into_iter()
                        .flat_map(|prefix| {
                            en.elements().iter().map(move |g| {
                                let mut t = prefix.clone();
                                t.push(g.clone());
                                t
                            })
                        })
                        .collect();
                }
                acc.into_iter().map(Element::Tuple).collect()
            }
        };
        Ok(Enumeration::new(elements))
    }

    /// Full multiplication table, for groups within the exhaustive bound.
    pub fn mul_table(&self) -> Result<Arc<MulTable>> {
        self.data
            .mul_table
            .get_or_init(|| {
                let bound = self.data.bounds.exhaustive;
                if self.order() > bound as u128 {
                    return Err(Error::capability(format!(
                        "{} has order {} above the multiplication-table bound {bound}",
                        self.name(),
                        self.order()
                    )));
                }
                let en = self.enumerate()?;
                let rows = exec::map(self.data.bounds.exec, en.elements(), |a| {
                    en.elements()
                        .iter()
                        .map(|b| en.index_of(&self.mul(a, b)).expect("closed under products"))
                        .collect::<Vec<u32>>()
                });
                Ok(Arc::new(MulTable::new(en.len(), rows.concat())))
            })
            .clone()
    }

    /// Conjugacy classes of the enumerated group.
    pub fn class_table(&self) -> Result<Arc<ClassTable>> {
        self.data
            .classes
            .get_or_init(|| {
                let en = self.enumerate()?;
                let gens = self.generators();
                let actions: Vec<Vec<u32>> = gens
                    .iter()
                    .map(|s| {
                        en.elements()
                            .iter()
                            .map(|g| en.index_of(&self.conj(g, s)).expect("closed under conjugation"))
                            .collect()
                    })
                    .collect();
                Ok(Arc::new(ClassTable::from_actions(en.len(), &actions)))
            })
            .clone()
    }

    /// Builds class tables for enumerable general permutation groups (and
    /// such product factors) so later `class_id` calls are lookups.
    pub fn prepare_class_labels(&self) -> Result<()> {
        match &self.data.kind {
            GroupKind::Perm(p)
                if p.kind() == PermGroupKind::General
                    && self.order() <= self.data.bounds.enumeration as u128 =>
            {
                self.class_table().map(|_| ())
            }
            GroupKind::Product(fs) => fs.iter().try_for_each(|f| f.prepare_class_labels()),
            _ => Ok(()),
        }
    }

    /// Canonical class label of `g`.
    pub fn class_id(&self, g: &Element) -> Result<ClassId> {
        self.check(g)?;
        match (&self.data.kind, g) {
            (GroupKind::Perm(p), Element::Perm(x)) => match p.kind() {
                PermGroupKind::Symmetric => Ok(ClassId::CycleType {
                    parts: x.cycle_type(),
                    split: None,
                }),
                PermGroupKind::Alternating => Ok(ClassId::CycleType {
                    parts: x.cycle_type(),
                    split: symmetric::split_bit(x),
                }),
                PermGroupKind::General => self.minimum_class_id(p, x),
            },
            (GroupKind::Abelian(_), _) => Ok(ClassId::Minimum(g.clone())),
            (GroupKind::Heisenberg(h), Element::Heisenberg(x)) => {
                Ok(ClassId::Heisenberg(h.hclass_id(x)))
            }
            (GroupKind::Product(fs), Element::Tuple(parts)) => Ok(ClassId::Tuple(
                fs.iter()
                    .zip(parts)
                    .map(|(f, x)| f.class_id(x))
                    .collect::<Result<_>>()?,
            )),
            _ => unreachable!("checked membership"),
        }
    }

    fn minimum_class_id(&self, p: &PermGroup, x: &Permutation) -> Result<ClassId> {
        if let Some(Ok(table)) = self.data.classes.get() {
            let en = self.enumerate()?;
            let i = en.index_of(&Element::Perm(x.clone())).expect("member");
            let rep = en.get(table.representative(table.class_of(i)));
            return Ok(ClassId::Minimum(rep.clone()));
        }
        let class = p.conjugacy_class(x, &self.data.bounds)?;
        let min = class.into_iter().min().expect("nonempty class");
        Ok(ClassId::Minimum(Element::Perm(min)))
    }

    /// Every conjugacy class with a representative, its size and the
    /// order of its elements, sorted by element order and then label.
    pub fn classes(&self) -> Result<Vec<ClassInfo>> {
        let mut out = match &self.data.kind {
            GroupKind::Perm(p) if p.kind() != PermGroupKind::General => {
                symmetric_classes(p.degree(), p.kind() == PermGroupKind::Alternating)
            }
            GroupKind::Perm(_) | GroupKind::Abelian(_) => {
                let en = self.enumerate()?;
                let table = self.class_table()?;
                (0..table.class_count() as u32)
                    .map(|c| {
                        let rep = en.get(table.representative(c)).clone();
                        ClassInfo {
                            id: ClassId::Minimum(rep.clone()),
                            element_order: self.order_of(&rep),
                            representative: rep,
                            size: table.size(c) as u128,
                        }
                    })
                    .collect()
            }
            GroupKind::Heisenberg(h) => h
                .classes()
                .into_iter()
                .map(|(id, rep)| ClassInfo {
                    id: ClassId::Heisenberg(id),
                    representative: Element::Heisenberg(rep),
                    size: (h.central_modulus() / id.modulus) as u128,
                    element_order: h.element_order(&rep),
                })
                .collect(),
            GroupKind::Product(fs) => {
                let per: Vec<Vec<ClassInfo>> =
                    fs.iter().map(|f| f.classes()).collect::<Result<_>>()?;
                let count: u128 = per.iter().map(|c| c.len() as u128).product();
                if count > self.data.bounds.enumeration as u128 {
                    return Err(Error::capability(format!(
                        "{count} product classes exceed the enumeration bound"
                    )));
                }
                let mut acc: Vec<Vec<&ClassInfo>> = vec![Vec::new()];
                for classes in &per {
                    acc = acc
                        .into_iter()
                        .flat_map(|prefix| {
                            classes.iter().map(move |c| {
                                let mut t = prefix.clone();
                                t.push(c);
                                t
                            })
                        })
                        .collect();
                }
                acc.into_iter()
                    .map(|parts| ClassInfo {
                        id: ClassId::Tuple(parts.iter().map(|c| c.id.clone()).collect()),
                        representative: Element::Tuple(
                            parts.iter().map(|c| c.representative.clone()).collect(),
                        ),
                        size: parts.iter().map(|c| c.size).product(),
                        element_order: parts
                            .iter()
                            .fold(1u64, |acc, c| acc.lcm(&c.element_order)),
                    })
                    .collect()
            }
        };
        out.sort_by(|a, b| (a.element_order, &a.id).cmp(&(b.element_order, &b.id)));
        Ok(out)
    }

    /// Some `t` with `t·a·t⁻¹ = b`.
    pub fn transporter(&self, a: &Element, b: &Element) -> Result<Option<Element>> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (&self.data.kind, a, b) {
            (GroupKind::Perm(p), Element::Perm(x), Element::Perm(y)) => p
                .transporter(x, y, &self.data.bounds)?
                .representative
                .map(Element::Perm),
            (GroupKind::Abelian(_), _, _) => (a == b).then(|| self.identity()),
            (GroupKind::Heisenberg(h), Element::Heisenberg(x), Element::Heisenberg(y)) => {
                h.transporter(x, y).map(Element::Heisenberg)
            }
            (GroupKind::Product(fs), Element::Tuple(x), Element::Tuple(y)) => {
                let mut parts = Vec::with_capacity(fs.len());
                for (k, f) in fs.iter().enumerate() {
                    match f.transporter(&x[k], &y[k])? {
                        Some(t) => parts.push(t),
                        None => return Ok(None),
                    }
                }
                Some(Element::Tuple(parts))
            }
            _ => unreachable!("checked membership"),
        })
    }

    /// Some `g` with `g·a·g⁻¹ = a2` and `g·b·g⁻¹ = b2`.
    pub fn simultaneous_transporter(
        &self,
        a: &Element,
        a2: &Element,
        b: &Element,
        b2: &Element,
    ) -> Result<Option<Element>> {
        for g in [a, a2, b, b2] {
            self.check(g)?;
        }
        let bounds = &self.data.bounds;
        Ok(match (&self.data.kind, a, a2, b, b2) {
            (
                GroupKind::Perm(p),
                Element::Perm(a),
                Element::Perm(a2),
                Element::Perm(b),
                Element::Perm(b2),
            ) => p
                .simultaneous_transporter(a, a2, b, b2, bounds)?
                .map(Element::Perm),
            (GroupKind::Abelian(_), _, _, _, _) => {
                (a == a2 && b == b2).then(|| self.identity())
            }
            (
                GroupKind::Heisenberg(h),
                Element::Heisenberg(a),
                Element::Heisenberg(a2),
                Element::Heisenberg(b),
                Element::Heisenberg(b2),
            ) => h
                .simultaneous_transporter(a, a2, b, b2, bounds.enumeration)?
                .map(Element::Heisenberg),
            (
                GroupKind::Product(fs),
                Element::Tuple(a),
                Element::Tuple(a2),
                Element::Tuple(b),
                Element::Tuple(b2),
            ) => {
                let mut parts = Vec::with_capacity(fs.len());
                for (k, f) in fs.iter().enumerate() {
                    match f.simultaneous_transporter(&a[k], &a2[k], &b[k], &b2[k])? {
                        Some(t) => parts.push(t),
                        None => return Ok(None),
                    }
                }
                Some(Element::Tuple(parts))
            }
            _ => unreachable!("checked membership"),
        })
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Element {
        match &self.data.kind {
            GroupKind::Perm(p) => Element::Perm(p.random_element(rng)),
            GroupKind::Abelian(a) => Element::Abelian(a.random(rng)),
            GroupKind::Heisenberg(h) => Element::Heisenberg(NormalForm::new(
                rng.gen_range(0..h.outer_modulus()),
                rng.gen_range(0..h.outer_modulus()),
                rng.gen_range(0..h.central_modulus()),
            )),
            GroupKind::Product(fs) => {
                Element::Tuple(fs.iter().map(|f| f.random_element(rng)).collect())
            }
        }
    }

    /// A fixed generating pair: the stored generators when there are two,
    /// otherwise the first pair found by a seeded search.
    pub fn standard_pair(&self) -> Result<(Element, Element)> {
        self.data
            .standard_pair
            .get_or_init(|| self.find_standard_pair())
            .clone()
    }

    fn find_standard_pair(&self) -> Result<(Element, Element)> {
        let gens = self.generators();
        if gens.len() == 2 && self.is_generating_pair(&gens[0], &gens[1])? {
            return Ok((gens[0].clone(), gens[1].clone()));
        }
        if let Some(fs) = self.factors() {
            let pairs: Vec<(Element, Element)> =
                fs.iter().map(|f| f.standard_pair()).collect::<Result<_>>()?;
            let a = Element::Tuple(pairs.iter().map(|p| p.0.clone()).collect());
            let b = Element::Tuple(pairs.iter().map(|p| p.1.clone()).collect());
            if self.is_generating_pair(&a, &b)? {
                return Ok((a, b));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..PAIR_SEARCH_DRAWS {
            let a = self.random_element(&mut rng);
            let b = self.random_element(&mut rng);
            if self.is_generating_pair(&a, &b)? {
                return Ok((a, b));
            }
        }
        Err(Error::capability(format!(
            "no generating pair of {} found in {PAIR_SEARCH_DRAWS} draws",
            self.name()
        )))
    }

    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let text = text.trim();
        let g = match &self.data.kind {
            GroupKind::Perm(p) => Element::Perm(Permutation::parse(text, p.degree())?),
            GroupKind::Abelian(a) => Element::Abelian(a.parse(text)?),
            GroupKind::Heisenberg(h) => Element::Heisenberg(h.parse_element(text)?),
            GroupKind::Product(fs) => self.parse_tuple(fs, text)?,
        };
        self.check(&g)?;
        Ok(g)
    }

    fn parse_tuple(&self, fs: &[Group], text: &str) -> Result<Element> {
        let inner = text
            .strip_prefix('⟨')
            .and_then(|s| s.strip_suffix('⟩'))
            .or_else(|| text.strip_prefix('<').and_then(|s| s.strip_suffix('>')));
        if let Some(inner) = inner {
            let parts = split_top_level(inner);
            if parts.len() != fs.len() {
                return Err(Error::parse(
                    0,
                    format!("expected {} components, found {}", fs.len(), parts.len()),
                ));
            }
            let elems = fs
                .iter()
                .zip(&parts)
                .map(|(f, t)| f.parse_element(t))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Element::Tuple(elems));
        }
        // A single permutation on the disjoint union of the factor domains.
        let degrees: Option<Vec<usize>> = fs.iter().map(|f| f.as_perm().map(|p| p.degree())).collect();
        let Some(degrees) = degrees else {
            return Err(Error::parse(0, "product elements are written ⟨a | b | …⟩"));
        };
        let total: usize = degrees.iter().sum();
        let p = Permutation::parse(text, total)?;
        let mut offset = 0;
        let mut parts = Vec::new();
        for d in degrees {
            let piece = p.restrict(offset, d).ok_or_else(|| {
                Error::invalid(format!("{p} does not preserve the factor blocks"))
            })?;
            parts.push(Element::Perm(piece));
            offset += d;
        }
        Ok(Element::Tuple(parts))
    }

    /// For products of permutation groups: `g` as one permutation on the
    /// disjoint union of the factor domains.
    pub fn concatenated(&self, g: &Element) -> Option<Permutation> {
        let Element::Tuple(parts) = g else {
            return None;
        };
        let perms: Option<Vec<&Permutation>> = parts
            .iter()
            .map(|p| match p {
                Element::Perm(x) => Some(x),
                _ => None,
            })
            .collect();
        Some(Permutation::concat(&perms?))
    }
}

fn split_top_level(text: &str) -> Vec<String> {
    let mut parts = vec![String::new()];
    let mut depth = 0i32;
    for c in text.chars() {
        match c {
            '⟨' | '<' => depth += 1,
            '⟩' | '>' => depth -= 1,
            '|' if depth == 0 => {
                parts.push(String::new());
                continue;
            }
            _ => {}
        }
        parts.last_mut().unwrap().push(c);
    }
    parts.into_iter().map(|s| s.trim().to_string()).collect()
}

fn partitions(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=max.min(n)).rev() {
        prefix.push(part);
        partitions(n - part, part, prefix, out);
        prefix.pop();
    }
}

fn symmetric_classes(degree: usize, alternating: bool) -> Vec<ClassInfo> {
    let mut types = Vec::new();
    partitions(degree as u32, degree as u32, &mut Vec::new(), &mut types);
    let factorial: u128 = (1..=degree as u128).product();
    let mut out = Vec::new();
    for t in types {
        let c = symmetric::canonical_of_type(degree, &t);
        if alternating && !c.is_even() {
            continue;
        }
        let size = factorial / symmetric::centralizer_order(&c);
        let order = c.order();
        if alternating && degree >= 2 && symmetric::is_split_type(&t) && size > 1 {
            let swap = Permutation::from_cycles(degree, &[&[1, 2]]).unwrap();
            for (bit, rep) in [(0u8, c.clone()), (1u8, c.conj(&swap))] {
                out.push(ClassInfo {
                    id: ClassId::CycleType {
                        parts: t.clone(),
                        split: Some(bit),
                    },
                    representative: Element::Perm(rep),
                    size: size / 2,
                    element_order: order,
                });
            }
        } else {
            out.push(ClassInfo {
                id: ClassId::CycleType {
                    parts: t.clone(),
                    split: if alternating { symmetric::split_bit(&c) } else { None },
                },
                representative: Element::Perm(c),
                size,
                element_order: order,
            });
        }
    }
    out
}

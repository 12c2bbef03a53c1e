//! Automorphism backends: where the `φ` of a reality witness comes from.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::catalog;
use crate::error::{Error, Result};
use crate::exec;
use crate::group::{Element, Group, GroupKind, Origin};
use crate::heisenberg::{haut_from_pair, HeisenbergAut, HeisenbergParams};
use crate::perm::{PermGroup, PermHom, Permutation};

/// An automorphism of a particular group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AutMap {
    Identity,
    /// `g ↦ c·g·c⁻¹` for `c` in the group.
    Inner(Element),
    /// `g ↦ k·g·k⁻¹` for a permutation `k` normalising the group.
    Ambient(Permutation),
    /// `g ↦ g⁻¹` on an abelian group.
    Inversion,
    Heisenberg(HeisenbergAut),
    /// Lookup table over the group's enumeration.
    Table(Arc<Vec<u32>>),
    /// Images of the group's stored generators.
    Images(Vec<Element>),
    /// One automorphism per direct factor.
    Product(Vec<AutMap>),
}

impl AutMap {
    /// Image of `g`; `g` must belong to `group`.
    pub fn apply(&self, group: &Group, g: &Element) -> Result<Element> {
        group.check(g)?;
        match self {
            AutMap::Identity => Ok(g.clone()),
            AutMap::Inner(c) => Ok(group.conj(g, c)),
            AutMap::Ambient(k) => match g {
                Element::Perm(x) => Ok(Element::Perm(x.conj(k))),
                _ => Err(Error::invalid("ambient conjugation needs a permutation group")),
            },
            AutMap::Inversion => {
                if group.as_abelian().is_none() {
                    return Err(Error::invalid("inversion is an automorphism only of abelian groups"));
                }
                Ok(group.inv(g))
            }
            AutMap::Heisenberg(h) => match g {
                Element::Heisenberg(x) => Ok(Element::Heisenberg(h.apply(x))),
                _ => Err(Error::invalid("Heisenberg automorphism applied to a foreign element")),
            },
            AutMap::Table(t) => {
                let en = group.enumerate()?;
                let i = en.index_of(g).ok_or_else(|| Error::NotInGroup(g.to_string()))?;
                Ok(en.get(t[i as usize]).clone())
            }
            AutMap::Images(images) => apply_images(group, images, g),
            AutMap::Product(parts) => {
                let (Some(fs), Element::Tuple(xs)) = (group.factors(), g) else {
                    return Err(Error::invalid("product automorphism needs a product group"));
                };
                if parts.len() != fs.len() {
                    return Err(Error::invalid("product automorphism arity mismatch"));
                }
                Ok(Element::Tuple(
                    fs.iter()
                        .zip(parts)
                        .zip(xs)
                        .map(|((f, p), x)| p.apply(f, x))
                        .collect::<Result<_>>()?,
                ))
            }
        }
    }

    /// Images of the stored generators; the product form keeps one list per
    /// factor.
    pub fn generator_images(&self, group: &Group) -> Result<Vec<Element>> {
        group
            .generators()
            .iter()
            .map(|s| self.apply(group, s))
            .collect()
    }

    /// Checks that the map really is an automorphism of `group`.
    pub fn validate(&self, group: &Group) -> Result<()> {
        match self {
            AutMap::Identity | AutMap::Heisenberg(_) => Ok(()),
            AutMap::Inner(c) => group.check(c),
            AutMap::Ambient(k) => {
                let p = group
                    .as_perm()
                    .ok_or_else(|| Error::invalid("ambient conjugation needs a permutation group"))?;
                if k.degree() != p.degree() {
                    return Err(Error::DegreeMismatch {
                        left: k.degree(),
                        right: p.degree(),
                    });
                }
                if p.generators().iter().all(|s| p.contains(&s.conj(k))) {
                    Ok(())
                } else {
                    Err(Error::invalid(format!("{k} does not normalise the group")))
                }
            }
            AutMap::Inversion => {
                if group.as_abelian().is_some() {
                    Ok(())
                } else {
                    Err(Error::invalid("inversion needs an abelian group"))
                }
            }
            AutMap::Table(t) => {
                let table = group.mul_table()?;
                if t.len() != table.size() || t.iter().collect::<HashSet<_>>().len() != t.len() {
                    return Err(Error::invalid("automorphism table is not a bijection"));
                }
                for i in 0..t.len() as u32 {
                    for j in 0..t.len() as u32 {
                        if t[table.mul(i, j) as usize] != table.mul(t[i as usize], t[j as usize]) {
                            return Err(Error::invalid("automorphism table is not multiplicative"));
                        }
                    }
                }
                Ok(())
            }
            AutMap::Images(images) => validate_images(group, images),
            AutMap::Product(parts) => {
                let fs = group
                    .factors()
                    .ok_or_else(|| Error::invalid("product automorphism needs a product group"))?;
                if parts.len() != fs.len() {
                    return Err(Error::invalid("product automorphism arity mismatch"));
                }
                fs.iter().zip(parts).try_for_each(|(f, p)| p.validate(f))
            }
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            AutMap::Identity => "identity",
            AutMap::Inner(_) => "inner",
            AutMap::Ambient(_) => "ambient-conjugation",
            AutMap::Inversion => "inversion",
            AutMap::Heisenberg(_) => "heisenberg",
            AutMap::Table(_) => "table",
            AutMap::Images(_) => "images",
            AutMap::Product(_) => "product",
        }
    }
}

fn apply_images(group: &Group, images: &[Element], g: &Element) -> Result<Element> {
    let gens = group.generators();
    if images.len() != gens.len() {
        return Err(Error::invalid("wrong number of generator images"));
    }
    match (group.kind(), g) {
        (GroupKind::Perm(p), Element::Perm(x)) => {
            let imgs = perm_images(images)?;
            let hom = PermHom::new(p.generators(), &imgs)?;
            Ok(Element::Perm(hom.apply(x)?))
        }
        (GroupKind::Abelian(a), Element::Abelian([u, v])) => {
            let (Element::Abelian(e1), Element::Abelian(e2)) = (&images[0], &images[1]) else {
                return Err(Error::invalid("abelian images expected"));
            };
            Ok(Element::Abelian(a.add(&a.scale(e1, *u as i64), &a.scale(e2, *v as i64))))
        }
        (GroupKind::Heisenberg(h), Element::Heisenberg(x)) => {
            Ok(Element::Heisenberg(heis_from_images(h, images)?.apply(x)))
        }
        _ => Err(Error::invalid(
            "generator images of a product are given per factor",
        )),
    }
}

fn perm_images(images: &[Element]) -> Result<Vec<Permutation>> {
    images
        .iter()
        .map(|e| match e {
            Element::Perm(p) => Ok(p.clone()),
            _ => Err(Error::invalid("permutation images expected")),
        })
        .collect()
}

fn heis_from_images(h: &HeisenbergParams, images: &[Element]) -> Result<HeisenbergAut> {
    match images {
        [Element::Heisenberg(u), Element::Heisenberg(v)] => haut_from_pair(h, u, v),
        _ => Err(Error::invalid("two Heisenberg images expected")),
    }
}

fn validate_images(group: &Group, images: &[Element]) -> Result<()> {
    for im in images {
        group.check(im)?;
    }
    match group.kind() {
        GroupKind::Perm(p) => {
            let hom = PermHom::new(p.generators(), &perm_images(images)?)?;
            if hom.is_injective() {
                Ok(())
            } else {
                Err(Error::invalid("generator images do not define an automorphism"))
            }
        }
        GroupKind::Abelian(a) => {
            let [n1, n2] = a.moduli();
            let (Element::Abelian(e1), Element::Abelian(e2)) = (&images[0], &images[1]) else {
                return Err(Error::invalid("abelian images expected"));
            };
            let relations = a.scale(e1, n1 as i64) == [0, 0] && a.scale(e2, n2 as i64) == [0, 0];
            if relations && a.generates(e1, e2) {
                Ok(())
            } else {
                Err(Error::invalid("generator images do not define an automorphism"))
            }
        }
        GroupKind::Heisenberg(h) => heis_from_images(h, images).map(|_| ()),
        GroupKind::Product(_) => Err(Error::invalid(
            "generator images of a product are given per factor",
        )),
    }
}

/// Backend selector as written on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BackendSpec {
    Auto,
    Inner,
    Inversion,
    HeisFull,
    Exhaustive,
    Declared(Option<String>),
    Product(Vec<BackendSpec>),
}

impl fmt::Display for BackendSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BackendSpec::Auto => write!(f, "auto"),
            BackendSpec::Inner => write!(f, "inner"),
            BackendSpec::Inversion => write!(f, "inversion"),
            BackendSpec::HeisFull => write!(f, "heis-full"),
            BackendSpec::Exhaustive => write!(f, "exhaustive"),
            BackendSpec::Declared(None) => write!(f, "declared"),
            BackendSpec::Declared(Some(n)) => write!(f, "declared:{n}"),
            BackendSpec::Product(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "product({})", s.join(","))
            }
        }
    }
}

fn split_args(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

impl BackendSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        Ok(match t {
            "auto" => BackendSpec::Auto,
            "inner" => BackendSpec::Inner,
            "inversion" => BackendSpec::Inversion,
            "heis-full" => BackendSpec::HeisFull,
            "exhaustive" => BackendSpec::Exhaustive,
            "declared" => BackendSpec::Declared(None),
            _ => {
                if let Some(name) = t.strip_prefix("declared:") {
                    if name.trim().is_empty() {
                        return Err(Error::parse(9, "declared: needs a name"));
                    }
                    BackendSpec::Declared(Some(name.trim().to_string()))
                } else if let Some(inner) = t.strip_prefix("product(").and_then(|s| s.strip_suffix(')')) {
                    let parts = split_args(inner)
                        .into_iter()
                        .map(BackendSpec::parse)
                        .collect::<Result<Vec<_>>>()?;
                    if parts.len() < 2 {
                        return Err(Error::parse(8, "product(...) needs one backend per factor"));
                    }
                    BackendSpec::Product(parts)
                } else {
                    return Err(Error::parse(0, format!("unknown backend '{t}'")));
                }
            }
        })
    }
}

/// Curated knowledge about automorphism groups, keyed by group origin.
#[derive(Debug, Clone)]
pub struct Declaration {
    /// Registry name used by `declared:<name>`.
    pub name: String,
    /// Permutation group acting by conjugation; `None` means `Aut(G) = Inn(G)`.
    pub ambient: Option<PermGroup>,
    pub assumption: String,
}

/// Registry lookup; A6 and S6 are refused because their exceptional outer
/// automorphisms are not modelled.
pub fn declared(group: &Group) -> Result<Option<Declaration>> {
    let inner = |name: &str, assumption: String| Declaration {
        name: name.to_string(),
        ambient: None,
        assumption,
    };
    Ok(match group.origin() {
        Origin::Alternating(6) | Origin::Symmetric(6) => {
            return Err(Error::Refused(
                "A6 and S6 have exceptional outer automorphisms that are not modelled".into(),
            ))
        }
        Origin::Alternating(n) if n >= 3 => Some(Declaration {
            name: format!("S{n}"),
            ambient: Some(PermGroup::symmetric(n)?),
            assumption: format!("Aut(A{n}) = S{n} acting by conjugation (declared, n != 6)"),
        }),
        Origin::Alternating(n) => Some(inner("inner", format!("A{n} is trivial"))),
        Origin::Symmetric(n) => Some(inner("inner", format!("Out(S{n}) = 1 (declared, n != 6)"))),
        Origin::Mathieu11 => Some(inner("inner", "Out(M11) = 1 (declared)".into())),
        Origin::L2(8) => Some(Declaration {
            name: "PGammaL(2,8)".into(),
            ambient: Some(catalog::pgaml_2_8()?),
            assumption: "Aut(L2(8)) = PGammaL(2,8) acting on the projective line (declared)".into(),
        }),
        _ => None,
    })
}

/// Whether the registry records the group as non-abelian simple.
fn declared_simple(group: &Group) -> bool {
    match group.origin() {
        Origin::Alternating(n) => n >= 5 && n != 6,
        Origin::Mathieu11 | Origin::L2(8) => true,
        _ => false,
    }
}

#[derive(Debug, Clone)]
pub enum BackendKind {
    /// Conjugation by the ambient group, or by the group itself when `None`.
    Conjugation { ambient: Option<PermGroup> },
    Inversion,
    Heisenberg(HeisenbergParams),
    /// Every automorphism of an enumerable group, checked on the Cayley
    /// graph.
    Exhaustive,
    Product(Vec<Backend>),
}

/// A backend resolved against a specific group.
#[derive(Debug, Clone)]
pub struct Backend {
    pub kind: BackendKind,
    /// Whether the backend covers all of `Aut(G)`.
    pub exhaustive: bool,
    pub assumptions: Vec<String>,
    pub label: String,
}

impl Backend {
    pub fn resolve(spec: &BackendSpec, group: &Group) -> Result<Backend> {
        match spec {
            BackendSpec::Auto => Self::resolve_auto(group),
            BackendSpec::Inner => {
                let decl = declared(group)?;
                let out_trivial = decl.as_ref().is_some_and(|d| d.ambient.is_none());
                let abelian_trivial = group.order() <= 2;
                Ok(Backend {
                    kind: BackendKind::Conjugation { ambient: None },
                    exhaustive: out_trivial || abelian_trivial,
                    assumptions: match decl {
                        Some(d) if out_trivial => vec![d.assumption],
                        _ => Vec::new(),
                    },
                    label: "inner".into(),
                })
            }
            BackendSpec::Inversion => {
                if group.as_abelian().is_none() {
                    return Err(Error::capability(format!(
                        "the inversion backend needs an abelian group, not {}",
                        group.name()
                    )));
                }
                Ok(Backend {
                    kind: BackendKind::Inversion,
                    exhaustive: false,
                    assumptions: Vec::new(),
                    label: "inversion".into(),
                })
            }
            BackendSpec::HeisFull => {
                let h = group.as_heisenberg().ok_or_else(|| {
                    Error::capability(format!("heis-full needs a Heisenberg-type group, not {}", group.name()))
                })?;
                Ok(Backend {
                    kind: BackendKind::Heisenberg(*h),
                    exhaustive: true,
                    assumptions: Vec::new(),
                    label: "heis-full".into(),
                })
            }
            BackendSpec::Exhaustive => {
                let bound = group.bounds().exhaustive;
                if group.order() > bound as u128 {
                    return Err(Error::capability(format!(
                        "exhaustive automorphism search is limited to order {bound}; {} has order {}",
                        group.name(),
                        group.order()
                    )));
                }
                Ok(Backend {
                    kind: BackendKind::Exhaustive,
                    exhaustive: true,
                    assumptions: Vec::new(),
                    label: "exhaustive".into(),
                })
            }
            BackendSpec::Declared(name) => {
                let d = declared(group)?.ok_or_else(|| {
                    Error::capability(format!("no declared automorphism data for {}", group.name()))
                })?;
                if let Some(n) = name {
                    if *n != d.name {
                        return Err(Error::capability(format!(
                            "declared:{n} does not match the registry entry declared:{} for {}",
                            d.name,
                            group.name()
                        )));
                    }
                }
                Ok(Backend {
                    label: format!("declared:{}", d.name),
                    kind: BackendKind::Conjugation { ambient: d.ambient },
                    exhaustive: true,
                    assumptions: vec![d.assumption],
                })
            }
            BackendSpec::Product(parts) => {
                let fs = group.factors().ok_or_else(|| {
                    Error::capability(format!("product backend needs a direct product, not {}", group.name()))
                })?;
                if parts.len() != fs.len() {
                    return Err(Error::capability(format!(
                        "product backend lists {} factors but {} has {}",
                        parts.len(),
                        group.name(),
                        fs.len()
                    )));
                }
                let basis = product_basis(group)?;
                let subs = fs
                    .iter()
                    .zip(parts)
                    .map(|(f, s)| Backend::resolve(s, f))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Self::assemble_product(subs, basis))
            }
        }
    }

    fn assemble_product(subs: Vec<Backend>, basis: String) -> Backend {
        let mut assumptions = vec![basis];
        for s in &subs {
            assumptions.extend(s.assumptions.iter().cloned());
        }
        Backend {
            exhaustive: subs.iter().all(|s| s.exhaustive),
            label: format!(
                "product({})",
                subs.iter().map(|s| s.label.as_str()).collect::<Vec<_>>().join(",")
            ),
            kind: BackendKind::Product(subs),
            assumptions,
        }
    }

    fn resolve_auto(group: &Group) -> Result<Backend> {
        match group.kind() {
            GroupKind::Heisenberg(_) => Self::resolve(&BackendSpec::HeisFull, group),
            GroupKind::Abelian(_) => Self::resolve(&BackendSpec::Inversion, group),
            GroupKind::Product(fs) => {
                if let Ok(basis) = product_basis(group) {
                    let subs = fs.iter().map(Self::resolve_auto).collect::<Result<Vec<_>>>()?;
                    return Ok(Self::assemble_product(subs, basis));
                }
                Self::resolve(&BackendSpec::Exhaustive, group)
            }
            GroupKind::Perm(_) => {
                if declared(group)?.is_some() {
                    Self::resolve(&BackendSpec::Declared(None), group)
                } else if group.order() <= group.bounds().exhaustive as u128 {
                    Self::resolve(&BackendSpec::Exhaustive, group)
                } else {
                    Self::resolve(&BackendSpec::Inner, group)
                }
            }
        }
    }

    /// Enumerates the automorphisms, deduplicated as maps.
    pub fn automorphisms(&self, group: &Group) -> Result<Vec<AutMap>> {
        let limit = group.bounds().enumeration;
        match &self.kind {
            BackendKind::Inversion => Ok(vec![AutMap::Inversion]),
            BackendKind::Conjugation { ambient } => {
                let conjugators: Vec<AutMap> = match ambient {
                    None => group
                        .enumerate()?
                        .elements()
                        .iter()
                        .cloned()
                        .map(AutMap::Inner)
                        .collect(),
                    Some(k) => k.elements(limit)?.into_iter().map(AutMap::Ambient).collect(),
                };
                let gens = group.generators();
                let mut seen = HashSet::new();
                let mut out = Vec::new();
                for phi in conjugators {
                    let images: Vec<Element> =
                        gens.iter().map(|s| phi.apply(group, s)).collect::<Result<_>>()?;
                    if seen.insert(images) {
                        out.push(phi);
                    }
                }
                Ok(out)
            }
            BackendKind::Heisenberg(h) => {
                if h.order() > limit as u128 {
                    return Err(Error::capability("Heisenberg automorphism enumeration exceeds bound"));
                }
                let els: Vec<_> = h.elements().collect();
                let mut out = Vec::new();
                for u in &els {
                    for v in &els {
                        if h.hgenerates(u, v) {
                            out.push(AutMap::Heisenberg(haut_from_pair(h, u, v)?));
                        }
                    }
                }
                Ok(out)
            }
            BackendKind::Exhaustive => Ok(exhaustive_automorphisms(group)?
                .into_iter()
                .map(|t| AutMap::Table(Arc::new(t)))
                .collect()),
            BackendKind::Product(subs) => {
                let fs = group.factors().expect("resolved against a product");
                let mut acc: Vec<Vec<AutMap>> = vec![Vec::new()];
                for (f, b) in fs.iter().zip(subs) {
                    let list = b.automorphisms(f)?;
                    if (acc.len() as u128) * (list.len() as u128) > limit as u128 {
                        return Err(Error::capability("product automorphism enumeration exceeds bound"));
                    }
                    acc = acc
                        .into_iter()
                        .flat_map(|prefix| {
                            list.iter().map(move |m| {
                                let mut t = prefix.clone();
                                t.push(m.clone());
                                t
                            })
                        })
                        .collect();
                }
                Ok(acc.into_iter().map(AutMap::Product).collect())
            }
        }
    }

    /// The automorphisms as permutations of the enumeration indices.
    pub fn automorphism_tables(&self, group: &Group) -> Result<Vec<Vec<u32>>> {
        if let BackendKind::Exhaustive = self.kind {
            return exhaustive_automorphisms(group);
        }
        let en = group.enumerate()?;
        let auts = self.automorphisms(group)?;
        exec::try_map(group.bounds().exec, &auts, |phi| {
            en.elements()
                .iter()
                .map(|g| {
                    let im = phi.apply(group, g)?;
                    en.index_of(&im).ok_or_else(|| Error::Internal(format!("{im} outside group")))
                })
                .collect::<Result<Vec<u32>>>()
        })
    }

    /// The unique automorphism sending `(x, y)` to `(x⁻¹, y⁻¹)`, if the
    /// backend contains it. `(x, y)` must generate.
    pub fn pair_inverter(&self, group: &Group, x: &Element, y: &Element) -> Result<Option<AutMap>> {
        let xi = group.inv(x);
        let yi = group.inv(y);
        match &self.kind {
            BackendKind::Inversion => Ok(Some(AutMap::Inversion)),
            BackendKind::Conjugation { ambient: None } => Ok(group
                .simultaneous_transporter(x, &xi, y, &yi)?
                .map(AutMap::Inner)),
            BackendKind::Conjugation { ambient: Some(k) } => {
                let (Element::Perm(a), Element::Perm(b), Element::Perm(ai), Element::Perm(bi)) =
                    (x, y, &xi, &yi)
                else {
                    return Err(Error::invalid("ambient conjugation needs permutations"));
                };
                Ok(k.simultaneous_transporter(a, ai, b, bi, group.bounds())?
                    .map(AutMap::Ambient))
            }
            BackendKind::Heisenberg(h) => {
                let (Element::Heisenberg(u), Element::Heisenberg(v)) = (x, y) else {
                    return Err(Error::invalid("Heisenberg elements expected"));
                };
                let psi = haut_from_pair(h, u, v)?;
                let invert = haut_from_pair(h, &h.hinv(&h.x()), &h.hinv(&h.y()))?;
                Ok(Some(AutMap::Heisenberg(psi.after(&invert.after(&psi.inverse())))))
            }
            BackendKind::Exhaustive => {
                Ok(extend_to_automorphism(group, &[x.clone(), y.clone()], &[xi, yi])?
                    .map(|t| AutMap::Table(Arc::new(t))))
            }
            BackendKind::Product(subs) => {
                let (Some(fs), Element::Tuple(xs), Element::Tuple(ys)) = (group.factors(), x, y) else {
                    return Err(Error::invalid("product elements expected"));
                };
                let mut parts = Vec::new();
                for (k, (f, b)) in fs.iter().zip(subs).enumerate() {
                    match b.pair_inverter(f, &xs[k], &ys[k])? {
                        Some(m) => parts.push(m),
                        None => return Ok(None),
                    }
                }
                Ok(Some(AutMap::Product(parts)))
            }
        }
    }

    /// Whether some automorphism in the backend sends `g` into the class of
    /// `g⁻¹`.
    pub fn inverts_class(&self, group: &Group, g: &Element) -> Result<bool> {
        let gi = group.inv(g);
        match &self.kind {
            BackendKind::Inversion => Ok(true),
            BackendKind::Conjugation { ambient: None } => Ok(group.transporter(g, &gi)?.is_some()),
            BackendKind::Conjugation { ambient: Some(k) } => {
                let (Element::Perm(a), Element::Perm(b)) = (g, &gi) else {
                    return Err(Error::invalid("ambient conjugation needs permutations"));
                };
                Ok(k.transporter(a, b, group.bounds())?.representative.is_some())
            }
            BackendKind::Product(subs) => {
                let (Some(fs), Element::Tuple(xs)) = (group.factors(), g) else {
                    return Err(Error::invalid("product elements expected"));
                };
                for (k, (f, b)) in fs.iter().zip(subs).enumerate() {
                    if !b.inverts_class(f, &xs[k])? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            BackendKind::Heisenberg(_) | BackendKind::Exhaustive => {
                let target = group.class_id(&gi)?;
                for phi in self.automorphisms(group)? {
                    if group.class_id(&phi.apply(group, g)?)? == target {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }
}

/// Product basis: coprime orders, or declared pairwise non-isomorphic
/// non-abelian simple factors.
fn product_basis(group: &Group) -> Result<String> {
    let fs = group
        .factors()
        .ok_or_else(|| Error::capability("not a direct product"))?;
    if group.factors_coprime() {
        return Ok("Aut of the product is the product of the factor Aut groups: coprime factor orders".into());
    }
    let all_simple = fs.iter().all(declared_simple);
    let orders: HashSet<u128> = fs.iter().map(|f| f.order()).collect();
    if all_simple && orders.len() == fs.len() {
        return Ok("Aut of the product is the product of the factor Aut groups: declared pairwise non-isomorphic non-abelian simple factors".into());
    }
    Err(Error::capability(format!(
        "the product backend needs coprime factors or declared non-isomorphic simple factors; {} qualifies as neither",
        group.name()
    )))
}

/// Extends `gens[i] ↦ images[i]` to an automorphism of an enumerable group
/// by walking the Cayley graph; `None` if the assignment is inconsistent or
/// not bijective. `gens` must generate.
pub fn extend_to_automorphism(
    group: &Group,
    gens: &[Element],
    images: &[Element],
) -> Result<Option<Vec<u32>>> {
    let en = group.enumerate()?;
    let table = group.mul_table()?;
    let idx = |g: &Element| en.index_of(g).ok_or_else(|| Error::NotInGroup(g.to_string()));
    let s: Vec<u32> = gens.iter().map(idx).collect::<Result<_>>()?;
    let t: Vec<u32> = images.iter().map(idx).collect::<Result<_>>()?;
    Ok(extend_indices(&table, &s, &t))
}

fn extend_indices(table: &crate::group::MulTable, s: &[u32], t: &[u32]) -> Option<Vec<u32>> {
    let n = table.size();
    let mut map = vec![u32::MAX; n];
    let mut used = vec![false; n];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let g = queue[head];
        head += 1;
        for (a, b) in s.iter().zip(t) {
            let h = table.mul(g, *a);
            let image = table.mul(map[g as usize], *b);
            let slot = map[h as usize];
            if slot == u32::MAX {
                if used[image as usize] {
                    return None;
                }
                used[image as usize] = true;
                map[h as usize] = image;
                queue.push(h);
            } else if slot != image {
                return None;
            }
        }
    }
    (queue.len() == n).then_some(map)
}

/// All automorphisms of an enumerable group, as index tables.
///
/// Generator images are restricted to elements with the same order and
/// class size, and a pair of images must reproduce the order of the
/// product of the generators.
pub fn exhaustive_automorphisms(group: &Group) -> Result<Vec<Vec<u32>>> {
    let bound = group.bounds().exhaustive;
    if group.order() > bound as u128 {
        return Err(Error::capability(format!(
            "exhaustive automorphism search is limited to order {bound}"
        )));
    }
    let en = group.enumerate()?;
    let table = group.mul_table()?;
    let classes = group.class_table()?;
    let n = en.len() as u32;
    let gens: Vec<u32> = match group.standard_pair() {
        Ok((a, b)) => vec![en.index_of(&a).unwrap(), en.index_of(&b).unwrap()],
        Err(_) => group
            .generators()
            .iter()
            .map(|g| en.index_of(g).unwrap())
            .collect(),
    };
    let fingerprint = |i: u32| (table.order(i), classes.size(classes.class_of(i)));
    let mut by_print: HashMap<(u64, u32), Vec<u32>> = HashMap::new();
    for i in 0..n {
        by_print.entry(fingerprint(i)).or_default().push(i);
    }
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&g| by_print.get(&fingerprint(g)).cloned().unwrap_or_default())
        .collect();
    let product_order = if gens.len() >= 2 {
        Some(table.order(table.mul(gens[0], gens[1])))
    } else {
        None
    };
    let first = candidates[0].clone();
    let found: Vec<Vec<Vec<u32>>> = exec::map(group.bounds().exec, &first, |&t0| {
        let mut out = Vec::new();
        let mut images = vec![t0];
        search_images(&table, &gens, &candidates, product_order, &mut images, &mut out);
        out
    });
    let mut tables: Vec<Vec<u32>> = found.into_iter().flatten().collect();
    tables.sort();
    tables.dedup();
    Ok(tables)
}

fn search_images(
    table: &crate::group::MulTable,
    gens: &[u32],
    candidates: &[Vec<u32>],
    product_order: Option<u64>,
    images: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    let k = images.len();
    if k == gens.len() {
        if let Some(map) = extend_indices(table, gens, images) {
            out.push(map);
        }
        return;
    }
    for &c in &candidates[k] {
        if k == 1 {
            if let Some(o) = product_order {
                if table.order(table.mul(images[0], c)) != o {
                    continue;
                }
            }
        }
        images.push(c);
        search_images(table, gens, candidates, product_order, images, out);
        images.pop();
    }
}

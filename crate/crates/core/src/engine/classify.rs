use std::fmt;

use serde::{Deserialize, Serialize};

use crate::aut::{AutMap, Backend, BackendKind, BackendSpec};
use crate::error::{Error, Result};
use crate::exec;
use crate::group::{Element, Group, GroupKind, Origin};
use crate::group::{ClassTable, Enumeration, MulTable};

use super::reality::{sr_check_elements, SrOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Verdict {
    NotTwoGenerated,
    NotBeauville,
    PurelyStronglyReal,
    PurelyNonStronglyReal,
    Mixed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NotTwoGenerated => "notTwoGenerated",
            Verdict::NotBeauville => "notBeauville",
            Verdict::PurelyStronglyReal => "purelyStronglyReal",
            Verdict::PurelyNonStronglyReal => "purelyNonStronglyReal",
            Verdict::Mixed => "mixed",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SrStatus {
    Witnessed,
    Exhausted,
    Indeterminate,
}

/// A structure found by [`classify`], with its strong-reality status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoundStructure {
    pub x1: Element,
    pub y1: Element,
    pub x2: Element,
    pub y2: Element,
    pub status: SrStatus,
    /// Whether the witness makes `g₁ = g₂ = e`.
    pub trivial_conjugators: bool,
}

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    pub backend: BackendSpec,
    /// Cap on the structures kept in [`Classification::structures`].
    pub max_listed: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            backend: BackendSpec::Auto,
            max_listed: 1_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub verdict: Verdict,
    pub backend: String,
    pub exhaustive: bool,
    pub assumptions: Vec<String>,
    /// Ordered generating pairs of the group.
    pub generating_pairs: u64,
    /// First pairs actually tried: Aut-orbit representatives when
    /// `orbit_reduced`, otherwise every generating pair.
    pub first_pairs: u64,
    pub orbit_reduced: bool,
    /// Size of `Aut(G)` when the orbit reduction was used.
    pub automorphism_count: Option<u64>,
    /// Second pairs tested against each first pair.
    pub second_pairs_tested: u64,
    /// Structures found with the tried first pairs.
    pub structures_found: u64,
    /// Ordered structures `((x₁,y₁),(x₂,y₂))` of the whole group.
    pub structures_raw: u128,
    pub witnessed: u64,
    pub exhausted: u64,
    pub indeterminate: u64,
    /// Witnesses obtained by solving the Heisenberg congruences.
    pub congruence_witnesses: u64,
    /// Structures in canonical order (first pair index, then second).
    pub structures: Vec<FoundStructure>,
}

impl Classification {
    pub fn contains(&self, x1: &Element, y1: &Element, x2: &Element, y2: &Element) -> bool {
        self.structures
            .iter()
            .any(|s| (&s.x1, &s.y1, &s.x2, &s.y2) == (x1, y1, x2, y2))
    }
}

/// Refuses groups whose automorphism structure is out of reach.
pub fn check_classifiable(group: &Group) -> Result<()> {
    if let Origin::Alternating(6) | Origin::Symmetric(6) = group.origin() {
        return Err(Error::Refused(
            "A6 and S6 have exceptional outer automorphisms; purity questions for them are not supported".into(),
        ));
    }
    if let Some(h) = group.as_heisenberg() {
        if h.p() == 3 {
            return Err(Error::Refused(
                "Heisenberg-type groups with p = 3 are outside the proved purity range".into(),
            ));
        }
    }
    if let GroupKind::Product(fs) = group.kind() {
        for f in fs {
            check_classifiable(f)?;
        }
    }
    if group.order() > group.bounds().classify as u128 {
        return Err(Error::capability(format!(
            "|{}| = {} exceeds the classification bound {}",
            group.name(),
            group.order(),
            group.bounds().classify
        )));
    }
    Ok(())
}

struct Tables {
    en: std::sync::Arc<Enumeration>,
    mt: std::sync::Arc<MulTable>,
    words: usize,
    /// Class bitset of the powers of each element.
    cyc: Vec<u64>,
}

impl Tables {
    fn new(group: &Group) -> Result<Self> {
        let en = group.enumerate()?;
        let mt = group.mul_table()?;
        let ct: std::sync::Arc<ClassTable> = group.class_table()?;
        let n = en.len();
        let words = ct.class_count().div_ceil(64);
        let mut cyc = vec![0u64; n * words];
        for i in 0..n as u32 {
            let row = &mut cyc[i as usize * words..(i as usize + 1) * words];
            let mut p = i;
            loop {
                let c = ct.class_of(p) as usize;
                row[c / 64] |= 1 << (c % 64);
                if p == 0 {
                    break;
                }
                p = mt.mul(p, i);
            }
        }
        Ok(Tables { en, mt, words, cyc })
    }

    fn sigma(&self, a: u32, b: u32) -> Vec<u64> {
        let ab = self.mt.mul(a, b);
        let w = self.words;
        (0..w)
            .map(|k| {
                self.cyc[a as usize * w + k] | self.cyc[b as usize * w + k] | self.cyc[ab as usize * w + k]
            })
            .collect()
    }
}

/// Intersection equal to the identity class (class 0).
fn meets_only_in_identity(s: &[u64], t: &[u64]) -> bool {
    s.iter()
        .zip(t)
        .enumerate()
        .all(|(k, (a, b))| a & b == u64::from(k == 0))
}

/// All ordered generating pairs as enumeration indices, sorted.
pub(crate) fn generating_pairs(group: &Group, en: &Enumeration) -> Result<Vec<(u32, u32)>> {
    let n = en.len();
    let rows = exec::map_range(group.bounds().exec, n, |a| -> Result<Vec<(u32, u32)>> {
        let x = en.get(a as u32);
        let mut row = Vec::new();
        for b in 0..n as u32 {
            if group.is_generating_pair(x, en.get(b))? {
                row.push((a as u32, b));
            }
        }
        Ok(row)
    });
    let mut out = Vec::new();
    for r in rows {
        out.extend(r?);
        if out.len() as u64 > group.bounds().enumeration {
            return Err(Error::capability("generating-pair count exceeds the enumeration bound"));
        }
    }
    Ok(out)
}

/// One representative per Aut-orbit; `Aut` acts freely on generating pairs.
fn orbit_representatives(pairs: &[(u32, u32)], tables: &[Vec<u32>]) -> Result<Vec<usize>> {
    let mut seen = vec![false; pairs.len()];
    let mut reps = Vec::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        if seen[i] {
            continue;
        }
        reps.push(i);
        let mut size = 0;
        for t in tables {
            let image = (t[a as usize], t[b as usize]);
            let j = pairs
                .binary_search(&image)
                .map_err(|_| Error::Internal("automorphism image of a generating pair does not generate".into()))?;
            if !seen[j] {
                seen[j] = true;
                size += 1;
            }
        }
        if size != tables.len() {
            return Err(Error::Internal("automorphism action on generating pairs is not free".into()));
        }
    }
    Ok(reps)
}

fn as_table(group: &Group, en: &Enumeration, phi: &AutMap) -> Result<Vec<u32>> {
    if let AutMap::Table(t) = phi {
        return Ok(t.as_ref().clone());
    }
    en.elements()
        .iter()
        .map(|g| {
            let im = phi.apply(group, g)?;
            en.index_of(&im)
                .ok_or_else(|| Error::Internal(format!("{im} outside the group")))
        })
        .collect()
}

/// Decides the purity class of an enumerable group.
///
/// First pairs run over Aut-orbit representatives when the backend is
/// exhaustive and its automorphisms can be tabulated, and over all
/// generating pairs otherwise. Every generating pair is tried as second
/// pair.
pub fn classify(group: &Group, options: &ClassifyOptions) -> Result<Classification> {
    check_classifiable(group)?;
    let backend = Backend::resolve(&options.backend, group)?;
    let t = Tables::new(group)?;
    let en = &t.en;
    let pairs = generating_pairs(group, en)?;
    let mut result = Classification {
        verdict: Verdict::NotTwoGenerated,
        backend: backend.label.clone(),
        exhaustive: backend.exhaustive,
        assumptions: backend.assumptions.clone(),
        generating_pairs: pairs.len() as u64,
        first_pairs: 0,
        orbit_reduced: false,
        automorphism_count: None,
        second_pairs_tested: pairs.len() as u64,
        structures_found: 0,
        structures_raw: 0,
        witnessed: 0,
        exhausted: 0,
        indeterminate: 0,
        congruence_witnesses: 0,
        structures: Vec::new(),
    };
    if pairs.is_empty() {
        return Ok(result);
    }

    let auts = if backend.exhaustive {
        match backend.automorphism_tables(group) {
            Ok(tables) => Some(tables),
            Err(Error::Capability(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let firsts: Vec<usize> = match &auts {
        Some(tables) => orbit_representatives(&pairs, tables)?,
        None => (0..pairs.len()).collect(),
    };
    result.orbit_reduced = auts.is_some();
    result.automorphism_count = auts.as_ref().map(|a| a.len() as u64);
    result.first_pairs = firsts.len() as u64;

    let sigmas: Vec<Vec<u64>> = exec::map(group.bounds().exec, &pairs, |&(a, b)| t.sigma(a, b));
    let heisenberg = matches!(backend.kind, BackendKind::Heisenberg(_));
    let ex = group.bounds().exec;

    for &r in &firsts {
        let (a, b) = pairs[r];
        let (x1, y1) = (en.get(a), en.get(b));
        let inverter = if heisenberg {
            None
        } else {
            backend
                .pair_inverter(group, x1, y1)?
                .map(|phi| as_table(group, en, &phi))
                .transpose()?
        };
        let found = exec::map_range(ex, pairs.len(), |j| {
            if !meets_only_in_identity(&sigmas[r], &sigmas[j]) {
                return None;
            }
            let (c, d) = pairs[j];
            Some(status_of(group, &t, &backend, heisenberg, inverter.as_deref(), (a, b), (c, d)).map(|s| (c, d, s)))
        });
        for item in found.into_iter().flatten() {
            let (c, d, (status, trivial, congruence)) = item?;
            result.structures_found += 1;
            match status {
                SrStatus::Witnessed => result.witnessed += 1,
                SrStatus::Exhausted => result.exhausted += 1,
                SrStatus::Indeterminate => result.indeterminate += 1,
            }
            result.congruence_witnesses += u64::from(congruence);
            if result.structures.len() < options.max_listed {
                result.structures.push(FoundStructure {
                    x1: x1.clone(),
                    y1: y1.clone(),
                    x2: en.get(c).clone(),
                    y2: en.get(d).clone(),
                    status,
                    trivial_conjugators: trivial,
                });
            }
        }
    }
    result.structures_raw =
        result.structures_found as u128 * result.automorphism_count.unwrap_or(1) as u128;

    result.verdict = match (result.structures_found, result.witnessed, result.exhausted, result.indeterminate) {
        (0, ..) => Verdict::NotBeauville,
        (_, w, e, _) if w > 0 && e > 0 => Verdict::Mixed,
        (_, _, _, i) if i > 0 => {
            return Err(Error::capability(format!(
                "{i} structures received no witness from the non-exhaustive backend {}; use an exhaustive backend to decide",
                backend.label
            )))
        }
        (_, w, _, _) if w > 0 => Verdict::PurelyStronglyReal,
        _ => Verdict::PurelyNonStronglyReal,
    };
    Ok(result)
}

/// Status of one structure: `(status, g₁ = g₂ = e, congruence witness)`.
fn status_of(
    group: &Group,
    t: &Tables,
    backend: &Backend,
    heisenberg: bool,
    inverter: Option<&[u32]>,
    (a, b): (u32, u32),
    (c, d): (u32, u32),
) -> Result<(SrStatus, bool, bool)> {
    let no_witness = if backend.exhaustive {
        SrStatus::Exhausted
    } else {
        SrStatus::Indeterminate
    };
    if heisenberg {
        let en = &t.en;
        let out = sr_check_elements(group, [en.get(a), en.get(b), en.get(c), en.get(d)], backend)?;
        return Ok(match out {
            SrOutcome::Witness(w) => {
                let id = group.identity();
                (SrStatus::Witnessed, w.g1 == id && w.g2 == id, w.congruence.is_some())
            }
            SrOutcome::Exhausted { .. } => (SrStatus::Exhausted, false, false),
            SrOutcome::Indeterminate { .. } => (SrStatus::Indeterminate, false, false),
        });
    }
    let Some(psi) = inverter else {
        return Ok((no_witness, false, false));
    };
    let mt = &t.mt;
    let (src_c, src_d) = (psi[c as usize], psi[d as usize]);
    let (tgt_c, tgt_d) = (mt.inv(c), mt.inv(d));
    if src_c == tgt_c && src_d == tgt_d {
        return Ok((SrStatus::Witnessed, true, false));
    }
    let found = (0..mt.size() as u32).any(|g| mt.conj(src_c, g) == tgt_c && mt.conj(src_d, g) == tgt_d);
    Ok(if found {
        (SrStatus::Witnessed, false, false)
    } else {
        (no_witness, false, false)
    })
}

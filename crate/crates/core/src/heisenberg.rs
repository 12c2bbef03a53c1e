//! Normal-form arithmetic for the class-two groups
//! `⟨x, y, z | x^{p^n}, y^{p^n}, z^{p^r}, [x,y] = z, [x,z], [y,z]⟩`.
//!
//! Every element is written uniquely as `x^i y^j z^k` with `i, j` taken
//! modulo `p^n` and `k` modulo `p^r`. With `[x, y] = xyx⁻¹y⁻¹ = z` we get
//! `y^j x^a = x^a y^j z^{-ja}`, hence
//!
//! ```text
//! (i₁, j₁, k₁)·(i₂, j₂, k₂) = (i₁+i₂, j₁+j₂, k₁+k₂ − j₁i₂).
//! ```
//!
//! The test suite checks this rule against the closed forms for inverses
//! and conjugates on every element of small instances.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeisenbergParams {
    p: u64,
    n: u32,
    r: u32,
    outer: u64,
    central: u64,
}

/// The element `x^i y^j z^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalForm {
    pub i: u64,
    pub j: u64,
    pub k: u64,
}

impl NormalForm {
    pub const IDENTITY: NormalForm = NormalForm { i: 0, j: 0, k: 0 };

    pub fn new(i: u64, j: u64, k: u64) -> Self {
        NormalForm { i, j, k }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

/// Conjugacy-class label: `k` is only meaningful modulo `modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HeisenbergClass {
    pub i: u64,
    pub j: u64,
    pub k: u64,
    pub modulus: u64,
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn modulo(v: i128, m: u64) -> u64 {
    v.rem_euclid(m as i128) as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| modulo(old_s, m))
}

impl HeisenbergParams {
    pub fn new(p: u64, n: u32, r: u32) -> Result<Self> {
        if !is_prime(p) || p < 3 {
            return Err(Error::invalid(format!("p = {p} must be an odd prime")));
        }
        if r < 1 || n < r {
            return Err(Error::invalid(format!("need n ≥ r ≥ 1, got n = {n}, r = {r}")));
        }
        let outer = p
            .checked_pow(n)
            .filter(|&v| v < 1 << 31)
            .ok_or_else(|| Error::capability(format!("p^n = {p}^{n} is too large")))?;
        let central = p.pow(r);
        Ok(HeisenbergParams {
            p,
            n,
            r,
            outer,
            central,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `p^n`, the modulus of the `x` and `y` exponents.
    pub fn outer_modulus(&self) -> u64 {
        self.outer
    }

    /// `p^r`, the modulus of the `z` exponent.
    pub fn central_modulus(&self) -> u64 {
        self.central
    }

    pub fn order(&self) -> u128 {
        (self.outer as u128) * (self.outer as u128) * (self.central as u128)
    }

    pub fn x(&self) -> NormalForm {
        NormalForm::new(1, 0, 0)
    }

    pub fn y(&self) -> NormalForm {
        NormalForm::new(0, 1, 0)
    }

    pub fn z(&self) -> NormalForm {
        NormalForm::new(0, 0, 1)
    }

    pub fn element(&self, i: i128, j: i128, k: i128) -> NormalForm {
        NormalForm {
            i: modulo(i, self.outer),
            j: modulo(j, self.outer),
            k: modulo(k, self.central),
        }
    }

    pub fn is_valid(&self, g: &NormalForm) -> bool {
        g.i < self.outer && g.j < self.outer && g.k < self.central
    }

    pub fn hmul(&self, a: &NormalForm, b: &NormalForm) -> NormalForm {
        let cross = (a.j as u128 % self.central as u128) * (b.i as u128 % self.central as u128);
        NormalForm {
            i: (a.i + b.i) % self.outer,
            j: (a.j + b.j) % self.outer,
            k: modulo(
                a.k as i128 + b.k as i128 - (cross % self.central as u128) as i128,
                self.central,
            ),
        }
    }

    /// `(i, j, k)⁻¹ = (−i, −j, −k − ij)`.
    pub fn hinv(&self, g: &NormalForm) -> NormalForm {
        let ij = (g.i as i128 % self.central as i128) * (g.j as i128 % self.central as i128);
        self.element(-(g.i as i128), -(g.j as i128), -(g.k as i128) - ij)
    }

    /// `g^m = (mi, mj, mk − ij·m(m−1)/2)`.
    pub fn hpow(&self, g: &NormalForm, m: i64) -> NormalForm {
        // p is odd, so the exponent of the group divides p^n.
        let m = modulo(m as i128, self.outer) as i128;
        let c = self.central as i128;
        let tri = if m % 2 == 0 {
            ((m / 2) % c) * ((m - 1) % c)
        } else {
            (m % c) * (((m - 1) / 2) % c)
        };
        let ij = ((g.i as i128 % c) * (g.j as i128 % c)) % c;
        self.element(
            m * g.i as i128,
            m * g.j as i128,
            (m % c) * g.k as i128 - ij * (tri % c),
        )
    }

    /// `h g h⁻¹`; for `g = (I, J, K)`, `h = (a, b, c)` this is
    /// `(I, J, K − bI + aJ)`.
    pub fn hconj(&self, g: &NormalForm, h: &NormalForm) -> NormalForm {
        self.hmul(&self.hmul(h, g), &self.hinv(h))
    }

    pub fn commutator(&self, g: &NormalForm, h: &NormalForm) -> NormalForm {
        let gh = self.hmul(g, h);
        let gi = self.hinv(g);
        let hi = self.hinv(h);
        self.hmul(&self.hmul(&gh, &gi), &hi)
    }

    fn valuation(&self, v: u64, cap: u32) -> u32 {
        if v == 0 {
            return cap;
        }
        let mut v = v;
        let mut e = 0;
        while v.is_multiple_of(self.p) && e < cap {
            v /= self.p;
            e += 1;
        }
        e
    }

    pub fn element_order(&self, g: &NormalForm) -> u64 {
        let mut m = 1u64;
        loop {
            if self.hpow(g, m as i64) == NormalForm::IDENTITY {
                return m;
            }
            m *= self.p;
        }
    }

    /// Class label `(i, j, k mod p^{min(r, v)})` where `p^v` is the
    /// p-part of `gcd(i, j)`. Outside the Frattini subgroup the class is the
    /// whole coset `g⟨z⟩`, so the label is just `(i, j)`.
    pub fn hclass_id(&self, g: &NormalForm) -> HeisenbergClass {
        let v = self.valuation(g.i, self.n).min(self.valuation(g.j, self.n));
        let modulus = self.p.pow(v.min(self.r));
        HeisenbergClass {
            i: g.i,
            j: g.j,
            k: g.k % modulus,
            modulus,
        }
    }

    pub fn class_size(&self, g: &NormalForm) -> u64 {
        self.central / self.hclass_id(g).modulus
    }

    /// `⟨a, b⟩ = G` iff the Frattini-quotient determinant is a unit mod p.
    pub fn hgenerates(&self, a: &NormalForm, b: &NormalForm) -> bool {
        self.det_mod(a, b, self.p) != 0
    }

    fn det_mod(&self, a: &NormalForm, b: &NormalForm, m: u64) -> u64 {
        modulo(
            (a.i as i128) * (b.j as i128) - (a.j as i128) * (b.i as i128),
            m,
        )
    }

    /// All elements in lexicographic order of `(i, j, k)`.
    pub fn elements(&self) -> impl Iterator<Item = NormalForm> + '_ {
        (0..self.outer).flat_map(move |i| {
            (0..self.outer)
                .flat_map(move |j| (0..self.central).map(move |k| NormalForm::new(i, j, k)))
        })
    }

    /// Every class label with one representative each.
    pub fn classes(&self) -> Vec<(HeisenbergClass, NormalForm)> {
        let mut out = Vec::new();
        for i in 0..self.outer {
            for j in 0..self.outer {
                let v = self.valuation(i, self.n).min(self.valuation(j, self.n));
                let modulus = self.p.pow(v.min(self.r));
                for k in 0..modulus {
                    out.push((
                        HeisenbergClass { i, j, k, modulus },
                        NormalForm::new(i, j, k),
                    ));
                }
            }
        }
        out
    }

    /// `c` with `c g c⁻¹ = target`, if one exists.
    pub fn transporter(&self, g: &NormalForm, target: &NormalForm) -> Option<NormalForm> {
        if g.i != target.i || g.j != target.j {
            return None;
        }
        // Conjugating by (a, b, 0) adds aJ − bI to k.
        let delta = modulo(target.k as i128 - g.k as i128, self.central);
        let vi = self.valuation(g.i, self.n).min(self.r);
        let vj = self.valuation(g.j, self.n).min(self.r);
        let v = vi.min(vj);
        let pv = self.p.pow(v);
        if !delta.is_multiple_of(pv) {
            return None;
        }
        let reduced = self.central / pv;
        let d = delta / pv;
        if v == self.r {
            return Some(NormalForm::IDENTITY);
        }
        if vj == v {
            let unit = (g.j / pv) % reduced;
            let a = d * mod_inverse(unit, reduced)? % reduced;
            Some(self.element(a as i128, 0, 0))
        } else {
            let unit = (g.i / pv) % reduced;
            let b = d * mod_inverse(unit, reduced)? % reduced;
            Some(self.element(0, -(b as i128), 0))
        }
    }

    /// `c` with `c a c⁻¹ = a2` and `c b c⁻¹ = b2`, if one exists; `None`
    /// inside `Ok` when none exists.
    pub fn simultaneous_transporter(
        &self,
        a: &NormalForm,
        a2: &NormalForm,
        b: &NormalForm,
        b2: &NormalForm,
        search_bound: u64,
    ) -> Result<Option<NormalForm>> {
        if a.i != a2.i || a.j != a2.j || b.i != b2.i || b.j != b2.j {
            return Ok(None);
        }
        let r = self.central;
        let da = modulo(a2.k as i128 - a.k as i128, r);
        let db = modulo(b2.k as i128 - b.k as i128, r);
        // Unknowns (α, β):  α·J − β·I ≡ Δ  for each of the two elements.
        let (ia, ja) = (a.i % r, a.j % r);
        let (ib, jb) = (b.i % r, b.j % r);
        let det = modulo(ja as i128 * (-(ib as i128)) + (ia as i128) * (jb as i128), r);
        if let Some(inv) = mod_inverse(det, r) {
            // [ja  -ia] [α]   [da]
            // [jb  -ib] [β] = [db]
            let alpha = modulo(
                (-(ib as i128) * da as i128 + (ia as i128) * db as i128) * inv as i128,
                r,
            );
            let beta = modulo(
                ((ja as i128) * db as i128 - (jb as i128) * da as i128) * inv as i128,
                r,
            );
            let c = NormalForm::new(alpha, beta, 0);
            return Ok(Some(c));
        }
        if (r as u128) * (r as u128) > search_bound as u128 {
            return Err(Error::capability(format!(
                "singular congruence system modulo {r} exceeds search bound"
            )));
        }
        for alpha in 0..r {
            for beta in 0..r {
                let c = NormalForm::new(alpha, beta, 0);
                if self.hconj(a, &c) == *a2 && self.hconj(b, &c) == *b2 {
                    return Ok(Some(c));
                }
            }
        }
        Ok(None)
    }

    pub fn parse_element(&self, text: &str) -> Result<NormalForm> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::parse(0, format!("expected (i,j,k), found '{text}'")))?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::parse(0, "expected three coordinates"));
        }
        let mut v = [0i128; 3];
        for (slot, part) in v.iter_mut().zip(&parts) {
            *slot = part
                .parse::<i128>()
                .map_err(|_| Error::parse(0, format!("bad integer '{part}'")))?;
        }
        Ok(self.element(v[0], v[1], v[2]))
    }
}

impl fmt::Display for HeisenbergParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({},{},{})", self.p, self.n, self.r)
    }
}

/// The automorphism `x ↦ u, y ↦ v, z ↦ [u, v]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeisenbergAut {
    params: HeisenbergParams,
    pub u: NormalForm,
    pub v: NormalForm,
    c: NormalForm,
}

/// Builds the automorphism sending `(x, y)` to a generating pair `(u, v)`.
pub fn haut_from_pair(
    params: &HeisenbergParams,
    u: &NormalForm,
    v: &NormalForm,
) -> Result<HeisenbergAut> {
    if !params.is_valid(u) || !params.is_valid(v) {
        return Err(Error::invalid("residues out of range"));
    }
    if !params.hgenerates(u, v) {
        return Err(Error::invalid(format!("({u}, {v}) does not generate {params}")));
    }
    Ok(HeisenbergAut {
        params: *params,
        u: *u,
        v: *v,
        c: params.commutator(u, v),
    })
}

impl HeisenbergAut {
    pub fn identity(params: &HeisenbergParams) -> Self {
        haut_from_pair(params, &params.x(), &params.y()).unwrap()
    }

    pub fn params(&self) -> &HeisenbergParams {
        &self.params
    }

    pub fn apply(&self, g: &NormalForm) -> NormalForm {
        let h = &self.params;
        let a = h.hpow(&self.u, g.i as i64);
        let b = h.hpow(&self.v, g.j as i64);
        let c = h.hpow(&self.c, g.k as i64);
        h.hmul(&h.hmul(&a, &b), &c)
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &HeisenbergAut) -> HeisenbergAut {
        let h = &self.params;
        haut_from_pair(h, &self.apply(&other.u), &self.apply(&other.v))
            .expect("composition of automorphisms")
    }

    pub fn inverse(&self) -> HeisenbergAut {
        let h = &self.params;
        let m = h.outer;
        let det = h.det_mod(&self.u, &self.v, m);
        let inv = mod_inverse(det, m).expect("generating pair has unit determinant");
        // (I, J) = i·(u.i, u.j) + j·(v.i, v.j); invert the 2×2 matrix.
        let preimage = |t: &NormalForm| -> NormalForm {
            let (ui, uj, vi, vj) = (
                self.u.i as i128,
                self.u.j as i128,
                self.v.i as i128,
                self.v.j as i128,
            );
            let i = modulo((t.i as i128 * vj - t.j as i128 * vi) * inv as i128, m);
            let j = modulo((t.j as i128 * ui - t.i as i128 * uj) * inv as i128, m);
            let base = self.apply(&NormalForm::new(i, j, 0));
            let d = self.c.k;
            let dinv = mod_inverse(d, h.central).expect("commutator generates the centre");
            let k = modulo(
                (t.k as i128 - base.k as i128) * dinv as i128,
                h.central,
            );
            NormalForm::new(i, j, k)
        };
        haut_from_pair(h, &preimage(&h.x()), &preimage(&h.y())).expect("inverse automorphism")
    }
}

/// Conjugator exponents `(a, b)` such that `g = x^a y^b` inverts the second
/// pair after the first has been normalised to `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceWitness {
    pub a: u64,
    pub b: u64,
}

impl CongruenceWitness {
    pub fn conjugator(&self, params: &HeisenbergParams) -> NormalForm {
        params.element(self.a as i128, self.b as i128, 0)
    }
}

/// Solves `b·i₁ − a·j₁ ≡ −2k₁ − i₁j₁` and `b·i₂ − a·j₂ ≡ −2k₂ − i₂j₂`
/// (mod p^r) for a structure whose first pair is exactly `(x, y)`.
///
/// With `φ: (i, j, k) ↦ (−i, −j, k)` and `g₂ = x^a y^b`, these are the
/// conditions `g₂ φ(x₂) g₂⁻¹ = x₂⁻¹` and `g₂ φ(y₂) g₂⁻¹ = y₂⁻¹`.
pub fn sr_congruence_witness(
    params: &HeisenbergParams,
    first: (&NormalForm, &NormalForm),
    second: (&NormalForm, &NormalForm),
) -> Result<Option<CongruenceWitness>> {
    if *first.0 != params.x() || *first.1 != params.y() {
        return Err(Error::invalid(
            "first pair must be normalised to (x, y); apply the inverse of haut_from_pair first",
        ));
    }
    let (x2, y2) = second;
    if !params.hgenerates(x2, y2) {
        return Err(Error::invalid("second pair does not generate"));
    }
    let r = params.central as i128;
    let (i1, j1, k1) = (x2.i as i128 % r, x2.j as i128 % r, x2.k as i128);
    let (i2, j2, k2) = (y2.i as i128 % r, y2.j as i128 % r, y2.k as i128);
    let rhs1 = -2 * k1 - i1 * j1;
    let rhs2 = -2 * k2 - i2 * j2;
    let det = modulo(i1 * j2 - j1 * i2, params.central);
    let Some(inv) = mod_inverse(det, params.central) else {
        return Ok(None);
    };
    let a = modulo((rhs1 * i2 - i1 * rhs2) % r * inv as i128, params.central);
    let b = modulo((j2 * rhs1 - j1 * rhs2) % r * inv as i128, params.central);
    Ok(Some(CongruenceWitness { a, b }))
}

/// Moves a structure so that its first pair becomes `(x, y)`. Returns the
/// automorphism `ψ` with `ψ(x, y) = first` together with the image of the
/// second pair under `ψ⁻¹`.
pub fn normalize_structure(
    params: &HeisenbergParams,
    first: (&NormalForm, &NormalForm),
    second: (&NormalForm, &NormalForm),
) -> Result<(HeisenbergAut, (NormalForm, NormalForm))> {
    let psi = haut_from_pair(params, first.0, first.1)?;
    let inv = psi.inverse();
    Ok((psi, (inv.apply(second.0), inv.apply(second.1))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, HashSet};

    fn h(p: u64, n: u32, r: u32) -> HeisenbergParams {
        HeisenbergParams::new(p, n, r).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(HeisenbergParams::new(2, 1, 1).is_err());
        assert!(HeisenbergParams::new(9, 1, 1).is_err());
        assert!(HeisenbergParams::new(5, 1, 2).is_err());
        assert_eq!(h(5, 1, 1).order(), 125);
        assert_eq!(h(5, 2, 1).order(), 3125);
        assert_eq!(h(5, 1, 1).to_string(), "H(5,1,1)");
    }

    #[test]
    fn inverse_examples() {
        let g = h(5, 1, 1);
        assert_eq!(g.hinv(&NormalForm::new(1, 1, 0)), NormalForm::new(4, 4, 4));
        for a in g.elements() {
            assert_eq!(g.hmul(&a, &g.hinv(&a)), NormalForm::IDENTITY);
            assert_eq!(g.hmul(&g.hinv(&a), &a), NormalForm::IDENTITY);
        }
    }

    #[test]
    fn inverse_formula_is_reproduced_by_multiplication() {
        for g in [h(5, 1, 1), h(3, 2, 1)] {
            for a in g.elements() {
                // the unique b with a·b = e, found by search
                let b = g
                    .elements()
                    .find(|b| g.hmul(&a, b) == NormalForm::IDENTITY)
                    .unwrap();
                let c = g.central_modulus() as i128;
                let formula = g.element(
                    -(a.i as i128),
                    -(a.j as i128),
                    -(a.k as i128) - (a.i as i128 % c) * (a.j as i128 % c),
                );
                assert_eq!(b, formula);
            }
        }
    }

    #[test]
    fn conjugation_examples() {
        let g = h(5, 1, 1);
        let x = g.element(-1, -2, 0);
        assert_eq!(g.hconj(&x, &NormalForm::new(2, 2, 0)), NormalForm::new(4, 3, 3));
        let z = g.z();
        for a in g.elements() {
            assert_eq!(g.hconj(&z, &a), z);
        }
    }

    #[test]
    fn power_matches_iterated_product() {
        for g in [h(5, 1, 1), h(3, 2, 1)] {
            for a in g.elements() {
                let mut acc = NormalForm::IDENTITY;
                for m in 0..=g.outer_modulus() as i64 {
                    assert_eq!(g.hpow(&a, m), acc, "{a}^{m}");
                    acc = g.hmul(&acc, &a);
                }
                assert_eq!(g.hpow(&a, g.outer_modulus() as i64), NormalForm::IDENTITY);
                assert_eq!(g.hmul(&g.hpow(&a, -1), &a), NormalForm::IDENTITY);
            }
        }
    }

    #[test]
    fn class_labels_match_brute_force() {
        for g in [h(5, 1, 1), h(3, 2, 1), h(3, 2, 2)] {
            let all: Vec<_> = g.elements().collect();
            for a in &all {
                let class: BTreeSet<NormalForm> = all.iter().map(|c| g.hconj(a, c)).collect();
                let labelled: BTreeSet<NormalForm> = all
                    .iter()
                    .filter(|b| g.hclass_id(b) == g.hclass_id(a))
                    .copied()
                    .collect();
                assert_eq!(class, labelled, "{g} {a}");
                assert_eq!(class.len() as u64, g.class_size(a));
            }
            let total: usize = g.classes().len();
            let distinct: HashSet<_> = all.iter().map(|a| g.hclass_id(a)).collect();
            assert_eq!(total, distinct.len());
        }
    }

    #[test]
    fn class_label_in_frattini_subgroup() {
        let g = h(5, 2, 2);
        let a = NormalForm::new(5, 0, 3);
        let b = NormalForm::new(5, 0, 8);
        let c = NormalForm::new(5, 0, 4);
        assert_eq!(g.hclass_id(&a), g.hclass_id(&b));
        assert_ne!(g.hclass_id(&a), g.hclass_id(&c));
        assert_eq!(g.hclass_id(&a).modulus, 5);
        // central elements are singleton classes
        let z = g.z();
        assert_eq!(g.class_size(&z), 1);
    }

    #[test]
    fn generation_criterion() {
        let g = h(5, 1, 1);
        assert!(g.hgenerates(&g.x(), &g.y()));
        assert!(!g.hgenerates(&NormalForm::new(1, 2, 0), &NormalForm::new(2, 4, 3)));
    }

    #[test]
    fn automorphisms_from_pairs() {
        let g = h(5, 1, 1);
        let phi = haut_from_pair(&g, &g.hinv(&g.x()), &g.hinv(&g.y())).unwrap();
        for a in g.elements() {
            assert_eq!(phi.apply(&a), g.element(-(a.i as i128), -(a.j as i128), a.k as i128));
        }
        let id = haut_from_pair(&g, &g.x(), &g.y()).unwrap();
        for a in g.elements() {
            assert_eq!(id.apply(&a), a);
        }
        let psi = haut_from_pair(&g, &NormalForm::new(1, 2, 3), &NormalForm::new(3, 4, 1)).unwrap();
        let inv = psi.inverse();
        for a in g.elements() {
            assert_eq!(inv.apply(&psi.apply(&a)), a);
            assert_eq!(psi.apply(&inv.apply(&a)), a);
        }
        assert!(haut_from_pair(&g, &NormalForm::new(1, 2, 0), &NormalForm::new(2, 4, 3)).is_err());
    }

    #[test]
    fn congruence_witness_example() {
        let g = h(5, 1, 1);
        let x2 = NormalForm::new(1, 2, 0);
        let y2 = NormalForm::new(3, 4, 0);
        let w = sr_congruence_witness(&g, (&g.x(), &g.y()), (&x2, &y2)).unwrap().unwrap();
        assert_eq!((w.a, w.b), (2, 2));
        let phi = haut_from_pair(&g, &g.hinv(&g.x()), &g.hinv(&g.y())).unwrap();
        let c = w.conjugator(&g);
        assert_eq!(g.hconj(&phi.apply(&x2), &c), g.hinv(&x2));
        assert_eq!(g.hconj(&phi.apply(&y2), &c), g.hinv(&y2));
        assert!(sr_congruence_witness(&g, (&g.y(), &g.x()), (&x2, &y2)).is_err());
    }

    #[test]
    fn transporters_agree_with_search() {
        let g = h(3, 2, 2);
        let all: Vec<_> = g.elements().collect();
        for a in all.iter().step_by(7) {
            for b in all.iter().step_by(11) {
                let found = g.transporter(a, b);
                let brute = all.iter().find(|c| g.hconj(a, c) == *b);
                assert_eq!(found.is_some(), brute.is_some());
                if let Some(c) = found {
                    assert_eq!(g.hconj(a, &c), *b);
                }
            }
        }
    }

    #[test]
    fn parse() {
        let g = h(5, 1, 1);
        assert_eq!(g.parse_element("(1, 2, -1)").unwrap(), NormalForm::new(1, 2, 4));
        assert!(g.parse_element("(1,2)").is_err());
        assert!(g.parse_element("1,2,3").is_err());
    }
}

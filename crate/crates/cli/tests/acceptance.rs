//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

mod support;

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use beauville_core::aut::{Backend, BackendSpec};
use beauville_core::catalog::{an_structure, l2_8, macbeath_check, pgaml_2_8};
use beauville_core::engine::{
    class_inversion_report, classify, search, sr_check, verify_structure, ClassifyOptions, SearchStrategy,
    SrStatus,
};
use beauville_core::group::Element;
use beauville_core::heisenberg::{HeisenbergParams, NormalForm};
use beauville_core::perm::PermGroup;
use beauville_core::Bounds;
use serde_json::Value;
use support::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Wall-clock limits per criterion; `None` means unlimited.
const LIMITS: [Option<u64>; 11] = [
    Some(5),
    None,
    Some(30),
    None,
    Some(60),
    Some(10),
    Some(60),
    Some(600),
    None,
    None,
    None,
];

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn cli(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_beauville"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("beauville-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn read_json(path: &PathBuf) -> Result<Value, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

fn cycle(points: impl IntoIterator<Item = usize>) -> Vec<usize> {
    points.into_iter().collect()
}

fn criterion_1() -> Outcome {
    let out = scratch("m11a5.json");
    let (code, _) = cli(&["verify", "M11 x A5", "--structure", "paper.m11a5", "--out", out.to_str().unwrap()])?;
    ensure(code == 0, format!("exit code {code}"))?;
    let cert = read_json(&out)?;
    ensure(cert["verdict"] == "verified", "not verified")?;
    ensure(cert["type"] == "((55,55,55),(5,5,5))", format!("type {}", cert["type"]))?;
    Ok("verified, type ((55,55,55),(5,5,5))".into())
}

fn criterion_2() -> Outcome {
    for n in [7usize, 9, 11, 8, 10, 12] {
        let s = an_structure(n).map_err(|e| e.to_string())?;
        let [x1, y1, x2, y2] = s.as_array().map(to_images);
        let comm = |a: &[usize], b: &[usize]| perm_mul(&perm_mul(&perm_mul(a, b), &perm_inv(a)), &perm_inv(b));
        if n % 2 == 1 {
            let expected = perm_from_cycles(n, &[cycle([1, 3, 4, 2].into_iter().chain(5..=n))]);
            ensure(perm_mul(&x1, &y1) == expected, format!("A{n}: x1y1"))?;
            ensure(
                comm(&x2, &y2) == perm_from_cycles(n, &[vec![1, 5], vec![3, n]]),
                format!("A{n}: [x2,y2]"),
            )?;
        } else {
            let xy = perm_mul(&x1, &y1);
            let moved = (1..=n).filter(|&i| xy[i] != i).count();
            let mut orbit = vec![1];
            while xy[*orbit.last().unwrap()] != 1 {
                orbit.push(xy[*orbit.last().unwrap()]);
            }
            ensure(xy[4] == 4 && moved == n - 1 && orbit.len() == n - 1, format!("A{n}: x1y1"))?;
            ensure(
                perm_mul(&x2, &y2) == perm_from_cycles(n, &[cycle(std::iter::once(3).chain(5..=n))]),
                format!("A{n}: x2y2"),
            )?;
            let y2sq = perm_mul(&y2, &y2);
            ensure(
                comm(&x2, &y2sq) == perm_from_cycles(n, &[vec![2, 5], vec![3, n]]),
                format!("A{n}: [x2,y2^2]"),
            )?;
        }
    }
    Ok("products and commutators exact for n = 7..12".into())
}

fn criterion_3() -> Outcome {
    for n in 7usize..=12 {
        let g = group(&format!("A{n}"));
        let s = an_structure(n).map_err(|e| e.to_string())?;
        let [x1, y1, x2, y2] = s.as_array().map(|p| Element::Perm(p.clone()));
        let v = verify_structure(&g, &x1, &y1, &x2, &y2).map_err(|e| e.to_string())?;
        let st = v.structure().ok_or(format!("A{n}: {v:?}"))?;
        let backend = Backend::resolve(&BackendSpec::Auto, &g).map_err(|e| e.to_string())?;
        ensure(backend.exhaustive && backend.label == format!("declared:S{n}"), "backend")?;
        ensure(sr_check(&g, st, &backend).map_err(|e| e.to_string())?.is_exhausted(), format!("A{n}: sr_check"))?;
        // Independent check: every element of S_n conjugating y1 to y1⁻¹
        // lies in t·⟨y1⟩, and none of them sends x1 to x1⁻¹.
        let [a, b, _, _] = s.as_array().map(to_images);
        let cyc: Vec<usize> = if n % 2 == 1 { (1..=n).collect() } else { (2..=n).collect() };
        let mut t: Vec<usize> = (0..=n).collect();
        for (k, &p) in cyc.iter().enumerate() {
            t[p] = cyc[(cyc.len() - k) % cyc.len()];
        }
        let (ainv, binv) = (perm_inv(&a), perm_inv(&b));
        let conj = |x: &[usize], h: &[usize]| perm_mul(&perm_mul(&perm_inv(h), x), h);
        ensure(conj(&b, &t) == binv, format!("A{n}: reversal"))?;
        let mut h = t.clone();
        for _ in 0..cyc.len() {
            ensure(conj(&b, &h) == binv, "coset")?;
            ensure(conj(&a, &h) != ainv, format!("A{n}: simultaneous inverter found"))?;
            h = perm_mul(&b, &h);
        }
    }
    Ok("six structures verified; transporter cosets exhausted".into())
}

fn criterion_4() -> Outcome {
    for (p, n, r) in [(5u64, 1u32, 1u32), (3, 2, 1)] {
        let h = HeisenbergParams::new(p, n, r).map_err(|e| e.to_string())?;
        let els: Vec<NormalForm> = h.elements().collect();
        let neg = |v: u64| -(v as i128);
        for g in &els {
            let expected = h.element(neg(g.i), neg(g.j), neg(g.k) - (g.i * g.j) as i128);
            ensure(h.hinv(g) == expected, format!("inverse of {g}"))?;
            let mut acc = NormalForm::IDENTITY;
            for m in 0..=h.element_order(g) as i64 + 1 {
                ensure(h.hpow(g, m) == acc, format!("power {m} of {g}"))?;
                acc = h.hmul(&acc, g);
            }
            for c in &els {
                // g^c = c⁻¹ g c has third coordinate k + b·i − a·j.
                let gc = h.hmul(&h.hmul(&h.hinv(c), g), c);
                let k = g.k as i128 + (c.j * g.i) as i128 - (c.i * g.j) as i128;
                ensure(gc == h.element(g.i as i128, g.j as i128, k), format!("{g}^{c}"))?;
            }
        }
    }
    let g = group("H(5,1,1)");
    let t = Naive::new(&g);
    let class_of = t.class_of();
    let h = g.as_heisenberg().unwrap();
    for a in 0..t.len() {
        for b in 0..t.len() {
            let (Element::Heisenberg(x), Element::Heisenberg(y)) = (&t.elements[a], &t.elements[b]) else {
                return Err("element kind".into());
            };
            ensure(
                (class_of[a] == class_of[b]) == (h.hclass_id(x) == h.hclass_id(y)),
                format!("class of {x} vs {y}"),
            )?;
        }
    }
    Ok("inverse, conjugation and power formulas exact at (5,1,1), (3,2,1); classes match".into())
}

fn criterion_5() -> Outcome {
    let out = scratch("h511.json");
    let (code, _) = cli(&["classify", "H(5,1,1)", "--backend", "heis-full", "--out", out.to_str().unwrap()])?;
    ensure(code == 0, format!("exit code {code}"))?;
    let cert = read_json(&out)?;
    let d = &cert["details"];
    ensure(cert["verdict"] == "purelyStronglyReal", format!("verdict {}", cert["verdict"]))?;
    ensure(d["secondPairsTested"] == 12000, "second pairs")?;
    let found = d["structuresFound"].as_u64().unwrap_or(0);
    ensure(found > 0, "no structure")?;
    ensure(d["congruenceWitnesses"].as_u64() == Some(found), "congruence witnesses")?;

    let g = group("H(5,1,1)");
    let h = *g.as_heisenberg().unwrap();
    let e = |i, j, k| Element::Heisenberg(NormalForm::new(i, j, k));
    let (x1, y1, x2, y2) = (e(1, 0, 0), e(0, 1, 0), e(1, 2, 0), e(3, 4, 0));
    let v = verify_structure(&g, &x1, &y1, &x2, &y2).map_err(|e| e.to_string())?;
    let st = v.structure().ok_or("example not a structure")?;
    let backend = Backend::resolve(&BackendSpec::HeisFull, &g).map_err(|e| e.to_string())?;
    let out = sr_check(&g, st, &backend).map_err(|e| e.to_string())?;
    let w = out.witness().ok_or("no witness")?;
    let c = w.congruence.ok_or("no congruence solution")?;
    ensure((c.a, c.b) == (2, 2), format!("(a,b) = ({},{})", c.a, c.b))?;
    // Elementwise: φ(i,j,k) = (−i,−j,k), g₂ = x²y².
    let Element::Heisenberg(g2) = w.g2 else { return Err("g2 kind".into()) };
    ensure(g2 == h.hmul(&h.hpow(&h.x(), 2), &h.hpow(&h.y(), 2)), "g2 = x^2 y^2")?;
    for (gi, x, y) in [(NormalForm::IDENTITY, &x1, &y1), (g2, &x2, &y2)] {
        for t in [x, y] {
            let Element::Heisenberg(nf) = t else { unreachable!() };
            let phi_t = h.element(-(nf.i as i128), -(nf.j as i128), nf.k as i128);
            ensure(w.phi.apply(&g, t).map_err(|e| e.to_string())? == Element::Heisenberg(phi_t), "φ")?;
            let lhs = h.hmul(&h.hmul(&gi, &phi_t), &h.hinv(&gi));
            ensure(lhs == h.hinv(nf), format!("equation for {t}"))?;
        }
    }
    Ok(format!("purelyStronglyReal, {found} structures, all congruence-witnessed; (a,b) = (2,2)"))
}

fn criterion_6() -> Outcome {
    let out = scratch("c55.json");
    let (code, _) = cli(&["classify", "C(5,5)", "--out", out.to_str().unwrap()])?;
    ensure(code == 0, format!("exit code {code}"))?;
    let cert = read_json(&out)?;
    let d = &cert["details"];
    ensure(cert["verdict"] == "purelyStronglyReal", format!("verdict {}", cert["verdict"]))?;
    ensure(d["trivialConjugators"] == d["structuresFound"], "non-trivial conjugators")?;
    let g = group("C(5,5)");
    let c = classify(&g, &ClassifyOptions::default()).map_err(|e| e.to_string())?;
    let [a, b, u, v] = ["(1,0)", "(0,1)", "(1,2)", "(3,4)"].map(|t| g.parse_element(t).unwrap());
    ensure(c.contains(&a, &b, &u, &v), "example structure missing")?;
    ensure(c.structures.iter().all(|s| s.status == SrStatus::Witnessed && s.trivial_conjugators), "witnesses")?;
    Ok(format!("purelyStronglyReal, {} structures with g1 = g2 = e", c.structures_found))
}

fn criterion_7() -> Outcome {
    let g = group("A5");
    let c = classify(&g, &ClassifyOptions::default()).map_err(|e| e.to_string())?;
    ensure(c.verdict.to_string() == "notBeauville", c.verdict.to_string())?;
    let s = search(&g, &SearchStrategy::Systematic, 3600, 1).map_err(|e| e.to_string())?;
    ensure(s.structures.is_empty() && s.generating_pairs == 2280, "systematic search")?;
    let naive = naive_classify(&g);
    ensure(naive.structures == 0 && naive.generating_pairs == 2280, "naive double loop")?;
    Ok("notBeauville over all 2280 generating pairs".into())
}

fn criterion_8() -> Outcome {
    let r = macbeath_check(Bounds::default(), false).map_err(|e| e.to_string())?;
    ensure(r.holds(), format!("{} pairs without inverter", r.failures.len()))?;
    ensure(r.involution_classes == 1, format!("{} involution classes", r.involution_classes))?;
    // Independent count: 63 involutions, all conjugate to the first one.
    let g = l2_8(Bounds::default()).map_err(|e| e.to_string())?;
    let t = Naive::new(&g);
    let invs: Vec<u32> = (1..t.len() as u32).filter(|&a| t.order(a) == 2).collect();
    let orbit: std::collections::HashSet<u32> = (0..t.len() as u32).map(|h| t.conj(invs[0], h)).collect();
    ensure(invs.len() == 63 && orbit.len() == 63, "involution count")?;
    Ok(format!("{} generating pairs all inner-inverted; one involution class", r.generating_pairs))
}

fn criterion_9() -> Outcome {
    let g = group("M11");
    let backend = Backend::resolve(&BackendSpec::Auto, &g).map_err(|e| e.to_string())?;
    ensure(backend.exhaustive, "backend not exhaustive")?;
    let report = class_inversion_report(&g, &backend).map_err(|e| e.to_string())?;
    for r in &report {
        let o = r.class.element_order;
        if o == 8 || o == 11 {
            ensure(!r.invertible, format!("class {} invertible", r.class.id))?;
        }
    }
    // Independent check on one order-11 element: its conjugacy class,
    // computed by conjugating with all 7920 elements, misses its inverse.
    let all = closure_elements(&g);
    let a = all.iter().find(|a| g.order_of(a) == 11).unwrap();
    let ainv = g.inv(a);
    ensure(all.iter().all(|h| g.conj(a, h) != ainv), "order-11 element conjugate to its inverse")?;
    let out = search(&g, &SearchStrategy::Random { seed: 11 }, 200, 3).map_err(|e| e.to_string())?;
    ensure(!out.structures.is_empty(), "no M11 structure found")?;
    for s in &out.structures {
        ensure(sr_check(&g, s, &backend).map_err(|e| e.to_string())?.is_exhausted(), "M11 structure not exhausted")?;
    }
    Ok(format!("order 8 and 11 classes not invertible; {} structures found, all non-strongly real", out.structures.len()))
}

fn criterion_10() -> Outcome {
    let g = group("H(7,1,1) x C(5,5)");
    ensure(g.order() == 8575, "order")?;
    let tuple = |h: (u64, u64, u64), a: &str| {
        let f = g.factors().unwrap();
        Element::Tuple(vec![
            Element::Heisenberg(NormalForm::new(h.0, h.1, h.2)),
            f[1].parse_element(a).unwrap(),
        ])
    };
    let x1 = tuple((1, 0, 0), "(1,0)");
    let y1 = tuple((0, 1, 0), "(0,1)");
    let x2 = tuple((1, 2, 0), "(1,2)");
    let y2 = tuple((3, 4, 0), "(3,4)");
    let v = verify_structure(&g, &x1, &y1, &x2, &y2).map_err(|e| e.to_string())?;
    ensure(v.structure().is_some(), format!("{v:?}"))?;
    // Class labels against brute-force conjugacy in the product.
    let all = closure_elements(&g);
    let brute = brute_classes(&g, &all);
    let mut seen = std::collections::HashMap::new();
    for e in &all {
        let id = g.class_id(e).map_err(|e| e.to_string())?;
        let c = *seen.entry(id.clone()).or_insert(brute[e]);
        ensure(c == brute[e], format!("class label {id}"))?;
    }
    let brute_count = brute.values().collect::<std::collections::HashSet<_>>().len();
    ensure(seen.len() == brute_count, "class count")?;
    Ok(format!("product structure verified; {} classes match brute force", seen.len()))
}

fn criterion_11() -> Outcome {
    for spec in SMALL_SUITE {
        let g = group(spec);
        let naive = naive_classify(&g);
        let c = classify(&g, &ClassifyOptions { backend: BackendSpec::Auto, max_listed: 0 })
            .map_err(|e| e.to_string())?;
        let scale = c.automorphism_count.unwrap_or(1) as u128;
        ensure(
            c.verdict.to_string() == naive.verdict
                && c.structures_raw == naive.structures as u128
                && c.witnessed as u128 * scale == naive.strongly_real as u128,
            format!("{spec}: {} vs naive {}", c.verdict, naive.verdict),
        )?;
    }
    let perm_groups: Vec<(&str, Option<PermGroup>)> = vec![
        ("A5", None),
        ("S5", None),
        ("A7", None),
        ("S7", None),
        ("A8", None),
        ("L2(8)", None),
        ("M11", None),
        ("PGammaL(2,8)", Some(pgaml_2_8().map_err(|e| e.to_string())?)),
        ("perm(7){(1,2,3,4,5,6,7),(2,3)(4,7)}", None),
    ];
    for (name, given) in perm_groups {
        let p = match given {
            Some(p) => p,
            None => group(name).as_perm().unwrap().clone(),
        };
        let gens: Vec<Vec<usize>> = p.generators().iter().map(to_images).collect();
        ensure(p.order() == closure_order(&gens) as u128, format!("{name}: BSGS order"))?;
    }
    let a = group("M11 x A5");
    ensure(a.order() == 7920 * 60, "product order")?;
    Ok(format!("{} groups agree with the naive double loop; BSGS orders match closure", SMALL_SUITE.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("M11 x A5 example structure", criterion_1),
        ("A_n constants", criterion_2),
        ("A_n structures and non-strong-reality", criterion_3),
        ("Heisenberg formulas", criterion_4),
        ("H(5,1,1) purity", criterion_5),
        ("C(5,5) purity", criterion_6),
        ("A5 is not Beauville", criterion_7),
        ("L2(8) inner inverters", criterion_8),
        ("M11 obstruction", criterion_9),
        ("coprime product structure", criterion_10),
        ("oracle equivalence", criterion_11),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, LIMITS[k]) {
            (Ok(_), Some(limit)) if elapsed > Duration::from_secs(limit) => {
                Err(format!("took {:.1}s, limit {limit}s", elapsed.as_secs_f64()))
            }
            (o, _) => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2}: {tag} [{:>7.2}s] {name}: {detail}", k + 1, elapsed.as_secs_f64());
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

use std::fs;
use std::path::Path;

use beauville_core::aut::{Backend, BackendSpec};
use beauville_core::catalog::{self, an_structure, macbeath_check};
use beauville_core::certificate::{recheck, verdicts, Certificate, StructureText, WitnessText};
use beauville_core::engine::{
    class_inversion_report, classify, obstructed_slot, search, sigma, sr_check, verify_structure,
    ClassifyOptions, GeneratingPair, SearchStrategy, SrOutcome, SrStatus, Verification,
};
use beauville_core::exec;
use beauville_core::group::{Element, Group};
use beauville_core::structure_file::{builtin_structure, parse_structure, BUILTINS};
use beauville_core::{Bounds, Error, Exec, Result};
use serde_json::json;

use crate::{Cli, Command, Output};

/// Environment variable naming a directory that holds `bounds.json`.
pub const BOUNDS_DIR_VAR: &str = "BEAUVILLE_BOUNDS_DIR";

fn load_bounds(threads: usize) -> Result<Bounds> {
    let mut bounds = Bounds::default();
    if let Ok(dir) = std::env::var(BOUNDS_DIR_VAR) {
        let path = Path::new(&dir).join("bounds.json");
        if path.exists() {
            let text = fs::read_to_string(&path)
                .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
            bounds = serde_json::from_str(&text)
                .map_err(|e| Error::parse(0, format!("{}: {e}", path.display())))?;
        }
    }
    bounds.exec = if threads == 1 { Exec::Sequential } else { Exec::Parallel };
    Ok(bounds)
}

pub fn run(cli: Cli) -> Result<()> {
    exec::init_threads(cli.threads);
    let bounds = load_bounds(cli.threads)?;
    let group = |spec: &str| catalog::group(spec, bounds);
    match cli.command {
        Command::Order { spec, element } => {
            let g = group(&spec)?;
            match element {
                None => println!("|{}| = {}", g.name(), g.order()),
                Some(t) => {
                    let e = g.parse_element(&t)?;
                    println!("o({e}) = {}", g.element_order(&e)?);
                }
            }
            Ok(())
        }
        Command::Sigma { spec, x, y } => {
            let g = group(&spec)?;
            let pair = GeneratingPair::new(&g, g.parse_element(&x)?, g.parse_element(&y)?)?;
            let s = sigma(&g, &pair)?;
            let [a, b, c] = pair.orders;
            println!("orders ({a},{b},{c}), {} classes:", s.len());
            for class in &s.classes {
                println!("  {class}");
            }
            Ok(())
        }
        Command::Verify { spec, structure, output } => {
            let g = group(&spec)?;
            let els = load_structure(&g, &structure)?;
            let cert = verify_cert(&g, &els)?;
            emit(cert, &output)
        }
        Command::Reality { spec, structure, backend, output } => {
            let g = group(&spec)?;
            let els = load_structure(&g, &structure)?;
            let backend = Backend::resolve(&BackendSpec::parse(&backend)?, &g)?;
            emit(reality_cert(&g, &els, &backend)?, &output)
        }
        Command::Classify { spec, backend, list, output } => {
            let g = group(&spec)?;
            let options = ClassifyOptions {
                backend: BackendSpec::parse(&backend)?,
                max_listed: usize::MAX,
            };
            let c = classify(&g, &options)?;
            println!("verdict: {}", c.verdict);
            println!("backend: {} (exhaustive: {})", c.backend, c.exhaustive);
            println!("generating pairs: {}", c.generating_pairs);
            println!(
                "first pairs tried: {}{}",
                c.first_pairs,
                if c.orbit_reduced { " (Aut-orbit representatives)" } else { "" }
            );
            println!("second pairs tested per first pair: {}", c.second_pairs_tested);
            println!(
                "structures: {} found, {} ordered in total; witnessed {}, exhausted {}",
                c.structures_found, c.structures_raw, c.witnessed, c.exhausted
            );
            if c.congruence_witnesses > 0 {
                println!("congruence witnesses: {}", c.congruence_witnesses);
            }
            let trivial = c.structures.iter().filter(|s| s.trivial_conjugators).count();
            let listed: Vec<_> = c
                .structures
                .iter()
                .take(list)
                .map(|s| {
                    json!({
                        "structure": StructureText::from_elements([&s.x1, &s.y1, &s.x2, &s.y2]),
                        "status": s.status,
                        "trivialConjugators": s.trivial_conjugators,
                    })
                })
                .collect();
            let mut cert = Certificate::new("classify", &g, c.verdict.to_string());
            cert.backend = Some(c.backend.clone());
            cert.exhaustive = Some(c.exhaustive);
            cert.assumptions = c.assumptions.clone();
            cert.details = Some(json!({
                "generatingPairs": c.generating_pairs,
                "firstPairs": c.first_pairs,
                "orbitReduced": c.orbit_reduced,
                "automorphismCount": c.automorphism_count,
                "secondPairsTested": c.second_pairs_tested,
                "structuresFound": c.structures_found,
                "structuresRaw": c.structures_raw.to_string(),
                "witnessed": c.witnessed,
                "exhausted": c.exhausted,
                "indeterminate": c.indeterminate,
                "congruenceWitnesses": c.congruence_witnesses,
                "trivialConjugators": trivial,
                "structures": listed,
            }));
            if let Some(s) = c.structures.first() {
                let w = if s.status == SrStatus::Witnessed { "witnessed" } else { "not witnessed" };
                println!("first structure: ({}, {}), ({}, {}) [{w}]", s.x1, s.y1, s.x2, s.y2);
            }
            write_cert(&cert, &output)
        }
        Command::Search { spec, seed, budget, systematic, structure, max, output } => {
            let g = group(&spec)?;
            let strategy = match (systematic, structure) {
                (true, Some(_)) => {
                    return Err(Error::invalid("--systematic and --structure exclude each other"))
                }
                (true, None) => SearchStrategy::Systematic,
                (false, Some(s)) => {
                    let [x1, y1, x2, y2] = load_structure(&g, &s)?;
                    SearchStrategy::Seeded {
                        seed,
                        candidates: vec![(x1, y1), (x2, y2)],
                    }
                }
                (false, None) => SearchStrategy::Random { seed },
            };
            let out = search(&g, &strategy, budget, max)?;
            println!(
                "{} candidates, {} distinct generating pairs, {} structures",
                out.candidates,
                out.generating_pairs,
                out.structures.len()
            );
            let listed: Vec<_> = out
                .structures
                .iter()
                .map(|s| {
                    println!(
                        "  type {}: ({}, {}), ({}, {})",
                        s.structure_type(),
                        s.pair1.x,
                        s.pair1.y,
                        s.pair2.x,
                        s.pair2.y
                    );
                    json!({
                        "structure": StructureText::from_elements(s.elements()),
                        "type": s.structure_type().to_string(),
                    })
                })
                .collect();
            let verdict = if out.structures.is_empty() { "noneFound" } else { "found" };
            let mut cert = Certificate::new("search", &g, verdict);
            cert.seed = strategy.seed();
            cert.details = Some(json!({
                "strategy": match strategy {
                    SearchStrategy::Random { .. } => "random",
                    SearchStrategy::Systematic => "systematic",
                    SearchStrategy::Seeded { .. } => "seeded",
                },
                "budget": budget,
                "generatingPairs": out.generating_pairs,
                "structures": listed,
            }));
            write_cert(&cert, &output)
        }
        Command::ReportClasses { spec, backend } => {
            let g = group(&spec)?;
            let backend = Backend::resolve(&BackendSpec::parse(&backend)?, &g)?;
            println!("backend: {} (exhaustive: {})", backend.label, backend.exhaustive);
            for a in &backend.assumptions {
                println!("assumes: {a}");
            }
            for r in class_inversion_report(&g, &backend)? {
                println!(
                    "{:<24} order {:<4} size {:<8} {}",
                    r.class.id.to_string(),
                    r.class.element_order,
                    r.class.size,
                    if r.invertible { "invertible" } else { "not invertible" }
                );
            }
            Ok(())
        }
        Command::PaperAn { n, output } => {
            let g = group(&format!("A{n}"))?;
            let s = an_structure(n)?;
            let [x1, y1, x2, y2] = s.as_array();
            println!("x1 = {x1}\ny1 = {y1}\nx2 = {x2}\ny2 = {y2}");
            println!("x1y1 = {}", x1.compose(y1)?);
            println!("x2y2 = {}", x2.compose(y2)?);
            println!("[x2,y2] = {}", x2.commutator(y2)?);
            println!("[x2,y2^2] = {}", x2.commutator(&y2.pow(2))?);
            let els = s.as_array().map(|p| Element::Perm(p.clone()));
            let backend = Backend::resolve(&BackendSpec::Auto, &g)?;
            emit(reality_cert(&g, &els, &backend)?, &output)
        }
        Command::PaperM11a5 { output } => {
            let g = group("M11 x A5")?;
            let els = builtin_structure(&g, "paper.m11a5")?;
            let backend = Backend::resolve(&BackendSpec::Auto, &g)?;
            emit(reality_cert(&g, &els, &backend)?, &output)
        }
        Command::Macbeath { all } => {
            let r = macbeath_check(bounds, !all)?;
            println!("pairs checked: {}", r.pairs_checked);
            println!("generating pairs: {}", r.generating_pairs);
            println!("pairs without an inner inverter: {}", r.failures.len());
            println!("involution classes: {}", r.involution_classes);
            println!("holds: {}", r.holds() && r.involution_classes == 1);
            Ok(())
        }
        Command::Recheck { certificate } => {
            let text = fs::read_to_string(&certificate)
                .map_err(|e| Error::invalid(format!("cannot read {}: {e}", certificate.display())))?;
            let report = recheck(&Certificate::from_json(&text)?)?;
            for (name, ok) in &report.checks {
                println!("{:<24} {}", name, if *ok { "ok" } else { "FAILED" });
            }
            if report.passed() {
                println!("certificate valid");
                Ok(())
            } else {
                Err(Error::Internal("certificate failed re-validation".into()))
            }
        }
    }
}

fn load_structure(g: &Group, source: &str) -> Result<[Element; 4]> {
    if BUILTINS.contains(&source) {
        return builtin_structure(g, source);
    }
    let text = fs::read_to_string(source).map_err(|e| Error::invalid(format!("cannot read {source}: {e}")))?;
    parse_structure(g, &text)
}

fn verify_cert(g: &Group, els: &[Element; 4]) -> Result<Certificate> {
    let [x1, y1, x2, y2] = els;
    let mut cert = Certificate::new("verify", g, verdicts::VERIFIED);
    cert.structure = Some(StructureText::from_elements([x1, y1, x2, y2]));
    match verify_structure(g, x1, y1, x2, y2)? {
        Verification::Verified(s) => cert.structure_type = Some(s.structure_type().to_string()),
        Verification::Refuted(r) => {
            cert.verdict = verdicts::REFUTED.into();
            cert.details = Some(json!({ "reason": r.to_string() }));
        }
    }
    Ok(cert)
}

fn reality_cert(g: &Group, els: &[Element; 4], backend: &Backend) -> Result<Certificate> {
    let mut cert = verify_cert(g, els)?;
    cert.command = "reality".into();
    let [x1, y1, x2, y2] = els;
    let Some(s) = verify_structure(g, x1, y1, x2, y2)?.structure().cloned() else {
        return Ok(cert);
    };
    cert = cert.with_backend(backend);
    match sr_check(g, &s, backend)? {
        SrOutcome::Witness(w) => {
            cert.verdict = verdicts::STRONGLY_REAL.into();
            cert.witness = Some(WitnessText::from_witness(g, &w)?);
            if let Some(c) = w.congruence {
                cert.details = Some(json!({ "congruence": { "a": c.a, "b": c.b } }));
            }
        }
        SrOutcome::Exhausted { reason } => {
            cert.verdict = verdicts::NOT_STRONGLY_REAL.into();
            let blocked = obstructed_slot(g, backend, [x1, y1, x2, y2])?;
            cert.details = Some(json!({
                "reason": reason,
                "nonInvertibleElement": blocked.map(|e| e.to_string()),
            }));
        }
        SrOutcome::Indeterminate { reason } => {
            cert.verdict = verdicts::INDETERMINATE.into();
            cert.details = Some(json!({ "reason": reason }));
        }
    }
    Ok(cert)
}

fn emit(cert: Certificate, output: &Output) -> Result<()> {
    println!("group: {}", cert.group);
    if let Some(t) = &cert.structure_type {
        println!("type: {t}");
    }
    println!("verdict: {}", cert.verdict);
    if let Some(b) = &cert.backend {
        println!("backend: {b} (exhaustive: {})", cert.exhaustive.unwrap_or(false));
    }
    if let Some(w) = &cert.witness {
        println!("witness: g1 = {}, g2 = {}", w.g1, w.g2);
    }
    if let Some(d) = &cert.details {
        if let Some(r) = d.get("reason").and_then(|r| r.as_str()) {
            println!("reason: {r}");
        }
    }
    write_cert(&cert, output)
}

fn write_cert(cert: &Certificate, output: &Output) -> Result<()> {
    if let Some(path) = &output.out {
        fs::write(path, cert.to_json())
            .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display())))?;
        println!("certificate written to {}", path.display());
    }
    Ok(())
}

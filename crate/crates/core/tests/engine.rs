use beauville_core::aut::{Backend, BackendSpec};
use beauville_core::catalog;
use beauville_core::engine::*;
use beauville_core::group::{Element, Group};
use beauville_core::heisenberg::NormalForm;
use beauville_core::Bounds;

fn group(text: &str) -> Group {
    catalog::group(text, Bounds::default()).unwrap()
}

fn el(g: &Group, text: &str) -> Element {
    g.parse_element(text).unwrap()
}

#[test]
fn abelian_classification_is_purely_strongly_real() {
    let g = group("C(5,5)");
    let c = classify(&g, &ClassifyOptions::default()).unwrap();
    assert_eq!(c.verdict, Verdict::PurelyStronglyReal);
    assert_eq!(c.generating_pairs, 480);
    assert!(c.structures.iter().all(|s| s.trivial_conjugators));
    let [a, b, u, v] = ["(1,0)", "(0,1)", "(1,2)", "(3,4)"].map(|t| el(&g, t));
    assert!(c.contains(&a, &b, &u, &v));
}

#[test]
fn heisenberg_classification_uses_congruences() {
    let g = group("H(5,1,1)");
    let c = classify(&g, &ClassifyOptions::default()).unwrap();
    assert_eq!(c.verdict, Verdict::PurelyStronglyReal);
    assert_eq!(c.generating_pairs, 12000);
    assert_eq!(c.first_pairs, 1);
    assert_eq!(c.second_pairs_tested, 12000);
    assert!(c.structures_found > 0);
    assert_eq!(c.congruence_witnesses, c.structures_found);
}

#[test]
fn heisenberg_example_witness() {
    let g = group("H(5,1,1)");
    let h = *g.as_heisenberg().unwrap();
    let backend = Backend::resolve(&BackendSpec::HeisFull, &g).unwrap();
    let e = |i, j, k| Element::Heisenberg(NormalForm::new(i, j, k));
    let (x1, y1, x2, y2) = (e(1, 0, 0), e(0, 1, 0), e(1, 2, 0), e(3, 4, 0));
    let v = verify_structure(&g, &x1, &y1, &x2, &y2).unwrap();
    let s = v.structure().expect("structure");
    let out = sr_check(&g, s, &backend).unwrap();
    let w = out.witness().unwrap();
    let cw = w.congruence.unwrap();
    assert_eq!((cw.a, cw.b), (2, 2));
    let x2y2 = h.hmul(&h.hpow(&h.x(), 2), &h.hpow(&h.y(), 2));
    assert_eq!(w.g2, Element::Heisenberg(x2y2));
    assert!(w.validate(&g, [&x1, &y1, &x2, &y2]).unwrap());
}

#[test]
fn a5_is_not_beauville() {
    let g = group("A5");
    let c = classify(&g, &ClassifyOptions::default()).unwrap();
    assert_eq!(c.verdict, Verdict::NotBeauville);
    let s = search(&g, &SearchStrategy::Systematic, 3600, 10).unwrap();
    assert!(s.structures.is_empty());
}

#[test]
fn m11_a5_example() {
    let g = group("M11 x A5");
    let s = catalog::m11a5_structure();
    let [x1, y1, x2, y2] = s.as_array().map(|p| el(&g, &p.to_string()));
    let v = verify_structure(&g, &x1, &y1, &x2, &y2).unwrap();
    let st = v.structure().expect("verified");
    assert_eq!(st.structure_type().to_string(), "((55,55,55),(5,5,5))");
    let backend = Backend::resolve(&BackendSpec::Auto, &g).unwrap();
    assert!(backend.exhaustive);
    assert!(sr_check(&g, st, &backend).unwrap().is_exhausted());
}

#[test]
fn alternating_structures() {
    for n in 7..=12 {
        let g = group(&format!("A{n}"));
        let s = catalog::an_structure(n).unwrap();
        let [x1, y1, x2, y2] = s.as_array().map(|p| Element::Perm(p.clone()));
        let v = verify_structure(&g, &x1, &y1, &x2, &y2).unwrap();
        let st = v.structure().unwrap_or_else(|| panic!("A{n}: {v:?}"));
        let backend = Backend::resolve(&BackendSpec::Auto, &g).unwrap();
        assert!(backend.pair_inverter(&g, &x1, &y1).unwrap().is_none());
        assert!(sr_check(&g, st, &backend).unwrap().is_exhausted());
    }
}

#[test]
fn m11_search_and_obstruction() {
    let g = group("M11");
    let backend = Backend::resolve(&BackendSpec::Auto, &g).unwrap();
    let report = class_inversion_report(&g, &backend).unwrap();
    for r in &report {
        let o = r.class.element_order;
        assert_eq!(r.invertible, o != 8 && o != 11, "{}", r.class.id);
    }
    let out = search(&g, &SearchStrategy::Random { seed: 7 }, 200, 5).unwrap();
    assert!(!out.structures.is_empty());
    for s in &out.structures {
        assert!(sr_check(&g, s, &backend).unwrap().is_exhausted());
    }
}

#[test]
fn l2_8_search_witnessed_by_inner() {
    let g = group("L2(8)");
    let inner = Backend::resolve(&BackendSpec::Inner, &g).unwrap();
    let out = search(&g, &SearchStrategy::Random { seed: 1 }, 100, 20).unwrap();
    assert!(!out.structures.is_empty());
    for s in &out.structures {
        let w = sr_check(&g, s, &inner).unwrap();
        assert!(w.witness().unwrap().validate(&g, s.elements()).unwrap());
    }
}

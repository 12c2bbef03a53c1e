mod support;

use beauville_core::aut::BackendSpec;
use beauville_core::engine::{classify, ClassifyOptions};
use support::{group, naive_classify, SMALL_SUITE};

fn agree(spec: &str, backend: BackendSpec) {
    let g = group(spec);
    let naive = naive_classify(&g);
    let c = classify(&g, &ClassifyOptions { backend, max_listed: 0 }).unwrap();
    let scale = c.automorphism_count.unwrap_or(1) as u128;
    assert_eq!(c.generating_pairs, naive.generating_pairs, "{spec}: generating pairs");
    assert_eq!(c.structures_raw, naive.structures as u128, "{spec}: structures");
    assert_eq!(c.witnessed as u128 * scale, naive.strongly_real as u128, "{spec}: strongly real");
    assert_eq!(c.verdict.to_string(), naive.verdict, "{spec}: verdict");
}

#[test]
fn classify_matches_naive_double_loop() {
    for spec in SMALL_SUITE {
        agree(spec, BackendSpec::Auto);
    }
}

#[test]
fn exhaustive_backend_matches_naive_double_loop() {
    for spec in ["S3", "A4", "C(5,5)", "perm(4){(1,2,3,4),(1,3)}", "C(3)^2"] {
        agree(spec, BackendSpec::Exhaustive);
    }
}

#[test]
fn naive_automorphism_counts() {
    for (spec, count) in [("S3", 6), ("A4", 24), ("S4", 24), ("C(5,5)", 480), ("perm(4){(1,2,3,4),(1,3)}", 8)] {
        let t = support::Naive::new(&group(spec));
        assert_eq!(t.automorphisms().len(), count, "{spec}");
    }
}

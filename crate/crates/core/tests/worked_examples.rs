use std::path::Path;

use chainalg::canonical::{a_invariant, enumerate_canonical_degree, gorenstein_witness, AInvariant, GorensteinWitness};
use chainalg::corpus;
use chainalg::format::{emit_ranked_poset, parse_ranked_poset};
use chainalg::polytope::{is_indecomposable, polytope_dimension};
use chainalg::semigroup::krull_dimension;
use chainalg::width2::{classify, type_vector};
use chainalg::{BuildOptions, Budget, RankedPoset};

fn bundled(file: &str) -> RankedPoset {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(file);
    let text = std::fs::read_to_string(path).unwrap();
    let rp = parse_ranked_poset(&text, BuildOptions::default()).unwrap();
    assert_eq!(emit_ranked_poset(&rp), text, "{file} is in canonical form");
    rp
}

#[test]
fn bundled_files_are_the_named_posets() {
    for name in corpus::NAMED {
        let file = format!("{}.json", name.to_ascii_lowercase());
        assert_eq!(bundled(&file), corpus::named(name).unwrap(), "{name}");
    }
    let sum = corpus::ordinal_sum_of(&[corpus::pair(), corpus::basic(&[1])]);
    assert_eq!(bundled("pair_b1.json"), sum);
}

#[test]
fn dimensions() {
    let cases = [("chain.json", 1, 0), ("pair.json", 2, 1), ("diamond.json", 2, 1), ("b1.json", 3, 2), ("b2.json", 4, 3)];
    for (file, dim, pdim) in cases {
        let rp = bundled(file);
        assert_eq!((krull_dimension(&rp), polytope_dimension(&rp)), (dim, pdim), "{file}");
    }
    assert_eq!(is_indecomposable(&bundled("diamond.json")).unwrap().complete_levels, vec![0, 1]);
    assert!(is_indecomposable(&bundled("b2.json")).unwrap().indecomposable);
}

#[test]
fn canonical_pieces() {
    let b = Budget::default();
    assert_eq!(enumerate_canonical_degree(&bundled("b2.json"), 4, b).unwrap().len(), 1);
    assert_eq!(enumerate_canonical_degree(&bundled("b21.json"), 4, b).unwrap().len(), 2);
    let diamond = bundled("diamond.json");
    let report = a_invariant(&diamond, 6, b).unwrap();
    assert_eq!(report.a_invariant, AInvariant::Known(-2));
    assert_eq!(report.regularity, Some(0));
}

#[test]
fn gorenstein_refutations() {
    let b = Budget::default();
    match gorenstein_witness(&bundled("b21.json"), 6, b).unwrap() {
        GorensteinWitness::NotUnique { degree, elements } => assert_eq!((degree, elements.len()), (4, 2)),
        other => panic!("{other:?}"),
    }
    // Unique least element, but the module is not principal.
    match gorenstein_witness(&corpus::basic(&[2, 1, 2]), 6, b).unwrap() {
        GorensteinWitness::NotPrincipal { degree, .. } => assert_eq!(degree, 5),
        other => panic!("{other:?}"),
    }
    assert!(gorenstein_witness(&bundled("b2.json"), 6, b).unwrap().verified());
    assert!(gorenstein_witness(&bundled("diamond.json"), 5, b).unwrap().verified());
}

#[test]
fn width2_classification() {
    let b = Budget::default();
    let b21 = classify(&bundled("b21.json"), b).unwrap();
    assert_eq!(type_vector(&bundled("b21.json")).unwrap().c, vec![2, 1]);
    assert_eq!(b21.a_invariant, -4);
    assert!(!b21.gorenstein.value);

    let mixed = classify(&bundled("pair_b1.json"), b).unwrap();
    assert!(mixed.nearly_gorenstein.value);
    assert!(!mixed.gorenstein.value);

    let diamond = classify(&bundled("diamond.json"), b).unwrap();
    let names: Vec<String> = diamond.blocks.iter().map(|b| b.short_name()).collect();
    assert_eq!(names, ["S", "P", "S"]);
    assert!(diamond.gorenstein.value);
    assert!(diamond.rules[0].starts_with("segre-identity normalization"));
}

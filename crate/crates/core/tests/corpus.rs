//! Whole-corpus checks against tabulated invariants and independent oracles.

use std::collections::BTreeSet;

use repknot::corpus::{default_corpus, parse_corpus, CorpusEntry};
use repknot::diagram::parse_notation;
use repknot::dihedral::{enumerate_classes, image_order, lift_to_su2, DihedralClass};
use repknot::doublecover::{b_map, h1_sigma2, max_commutator_deviation_so3};
use repknot::presentation::{determinant, invariants, signature, wirtinger, WirtingerPresentation};
use repknot::variety::{character_distance, scan, Classification, ScanOptions};

/// name, det, σ, normalized Alexander coefficients from `t^{-g}` (links: empty)
const TABLE: &[(&str, u128, i64, &[i128])] = &[
    ("0_1", 1, 0, &[1]),
    ("3_1", 3, -2, &[1, -1, 1]),
    ("3_1m", 3, 2, &[1, -1, 1]),
    ("4_1", 5, 0, &[-1, 3, -1]),
    ("5_1", 5, 4, &[1, -1, 1, -1, 1]),
    ("5_2", 7, 2, &[2, -3, 2]),
    ("6_1", 9, 0, &[-2, 5, -2]),
    ("7_4", 15, -2, &[4, -7, 4]),
    ("8_19", 3, -6, &[1, -1, 0, 1, 0, -1, 1]),
    ("L2a1", 2, -1, &[]),
    ("L2a1m", 2, 1, &[]),
    ("L5a1", 8, -1, &[]),
    ("L4a1", 4, -3, &[]),
];

fn entry(name: &str) -> CorpusEntry {
    default_corpus().get(name).unwrap().clone()
}

fn presentation(name: &str) -> (WirtingerPresentation, u128) {
    let e = entry(name);
    let p = wirtinger(&e.diagram);
    let det = determinant(&e.diagram, &p).unwrap();
    (p, det)
}

#[test]
fn bundled_corpus_parses_cleanly() {
    let c = default_corpus();
    assert_eq!(c.entries.len(), 13);
    assert!(c.diagnostics.is_empty());
    let names: Vec<&str> = c.entries.iter().map(|e| e.name.as_str()).collect();
    let expected: Vec<&str> = TABLE.iter().map(|t| t.0).collect();
    assert_eq!(names, expected);
}

#[test]
fn malformed_line_is_reported_and_skipped() {
    let mut text = repknot::corpus::DEFAULT_CORPUS.to_string();
    text.push_str("broken ; X(1,2,3\n");
    let c = parse_corpus(&text);
    assert_eq!(c.entries.len(), 13);
    assert_eq!(c.diagnostics.len(), 1);
    assert_eq!(c.diagnostics[0].line, text.lines().count());
}

#[test]
fn tabulated_invariants() {
    for &(name, det, sigma, alex) in TABLE {
        let e = entry(name);
        let r = invariants(&e.diagram).unwrap();
        assert_eq!((r.det, r.sigma), (det, sigma), "{name}");
        if !alex.is_empty() {
            assert_eq!(r.alex_coeffs, alex, "{name}");
            assert_eq!(r.alex_low, -(alex.len() as i64 - 1) / 2, "{name}");
        }
        assert!(r.checks.all_pass(), "{name}: {:?}", r.checks);
    }
}

#[test]
fn knot_alexander_polynomials_are_symmetric_with_unit_value_at_one() {
    for &(name, ..) in TABLE.iter().filter(|t| !t.3.is_empty()) {
        let r = invariants(&entry(name).diagram).unwrap();
        let a = r.alexander();
        assert!(a.is_symmetric(), "{name}");
        assert_eq!(a.eval_at_one(), 1, "{name}");
        let sign = if (r.sigma / 2).rem_euclid(2) == 0 {
            1
        } else {
            -1
        };
        assert_eq!(a.eval_at_minus_one(), sign * r.det as i128, "{name}");
    }
}

#[test]
fn mirror_negates_signature_and_keeps_determinant() {
    for &(name, ..) in TABLE {
        let d = entry(name).diagram;
        let m = d.mirror().unwrap();
        let (a, b) = (invariants(&d).unwrap(), invariants(&m).unwrap());
        assert_eq!(a.det, b.det, "{name}");
        assert_eq!(a.sigma, -b.sigma, "{name}");
        assert_eq!(signature(&m).unwrap(), -signature(&d).unwrap());
    }
}

#[test]
fn branched_cover_mod2_rank_is_components_minus_one() {
    for &(name, det, ..) in TABLE {
        let d = entry(name).diagram;
        let h = h1_sigma2(&d).unwrap();
        assert_eq!(h.order, det, "{name}");
        assert_eq!(h.mod2_rank, d.n_components - 1, "{name}");
    }
}

/// Every labeling in `(ℤ/Δ)^s` satisfying the crossing congruences.
fn all_solutions(p: &WirtingerPresentation, delta: u64) -> Vec<Vec<u64>> {
    let s = p.n_generators();
    let mut out = Vec::new();
    let mut m = vec![0u64; s];
    loop {
        if DihedralClass::new(m.clone(), delta).satisfies(p) {
            out.push(m.clone());
        }
        let mut k = 0;
        loop {
            if k == s {
                return out;
            }
            m[k] += 1;
            if m[k] < delta {
                break;
            }
            m[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn class_count_matches_solution_count_by_brute_force() {
    // (N/Δ − 1)/2 with N the number of labelings mod Δ
    for name in ["3_1", "3_1m", "4_1", "5_1", "5_2", "8_19"] {
        let (p, det) = presentation(name);
        let n = all_solutions(&p, det as u64).len() as u128;
        let classes = enumerate_classes(&p, det as u64).unwrap();
        assert_eq!(classes.len() as u128, (n / det - 1) / 2, "{name}");
    }
}

#[test]
fn klassen_count_for_corpus_knots() {
    for (name, count) in [
        ("0_1", 0),
        ("3_1", 1),
        ("4_1", 2),
        ("5_1", 2),
        ("5_2", 3),
        ("6_1", 4),
        ("7_4", 7),
    ] {
        let (p, det) = presentation(name);
        let classes = enumerate_classes(&p, det as u64).unwrap();
        assert_eq!(classes.len(), count, "{name}");
        assert_eq!(classes.len() as u128, (det - 1) / 2, "{name}");
    }
}

#[test]
fn every_class_lifts_exactly_and_has_bounded_image() {
    for &(name, ..) in TABLE {
        let (p, det) = presentation(name);
        let knot = p.n_components == 1;
        for c in enumerate_classes(&p, det as u64).unwrap() {
            assert!(c.satisfies(&p));
            let r = lift_to_su2(&c, &p);
            assert!(r.residual < 1e-24, "{name}");
            assert!(r.images.iter().all(|q| q.w.abs() < 1e-12));
            let bound = if knot { 4 * det } else { 2 * det } as u64;
            assert_eq!(bound % image_order(&c), 0, "{name}: {c:?}");
        }
    }
}

#[test]
fn prime_determinant_images_have_order_4p() {
    for name in ["3_1", "4_1", "5_1", "5_2"] {
        let (p, det) = presentation(name);
        for c in enumerate_classes(&p, det as u64).unwrap() {
            assert_eq!(image_order(&c), 4 * det as u64, "{name}");
        }
    }
}

#[test]
fn scanned_dihedral_clusters_biject_with_exact_classes() {
    for name in ["3_1", "3_1m", "4_1", "5_1", "5_2", "6_1", "7_4", "8_19"] {
        let (p, det) = presentation(name);
        let lifts: Vec<_> = enumerate_classes(&p, det as u64)
            .unwrap()
            .iter()
            .map(|c| lift_to_su2(c, &p))
            .collect();
        let s = scan(&p, ScanOptions::new(300, 4, true)).unwrap();
        let dihedral: Vec<_> = s
            .clusters
            .iter()
            .filter(|c| c.classification == Classification::Dihedral)
            .collect();
        assert_eq!(dihedral.len(), lifts.len(), "{name}");
        let mut matched = BTreeSet::new();
        for k in &dihedral {
            let hits: Vec<usize> = lifts
                .iter()
                .enumerate()
                .filter(|(_, l)| {
                    character_distance(&l.character, &k.representative.character) < 1e-6
                })
                .map(|(i, _)| i)
                .collect();
            assert_eq!(hits.len(), 1, "{name}");
            matched.insert(hits[0]);
        }
        assert_eq!(matched.len(), lifts.len(), "{name}");
    }
}

#[test]
fn scan_shape_does_not_depend_on_the_rng_seed() {
    for name in ["3_1", "4_1", "8_19"] {
        let (p, _) = presentation(name);
        let shapes: BTreeSet<Vec<(Classification, usize)>> = [1, 2, 3]
            .iter()
            .map(|&rng| {
                let s = scan(&p, ScanOptions::new(200, rng, true)).unwrap();
                let mut v: Vec<_> = s
                    .clusters
                    .iter()
                    .map(|c| (c.classification, c.dimension))
                    .collect();
                v.sort();
                v
            })
            .collect();
        assert_eq!(shapes.len(), 1, "{name}: {shapes:?}");
    }
}

#[test]
fn non_dihedral_irreducibles_have_non_abelian_b() {
    let mut witnesses = 0;
    for &(name, det, ..) in TABLE {
        if det == 0 {
            continue;
        }
        let (p, _) = presentation(name);
        let s = scan(&p, ScanOptions::new(200, 9, true)).unwrap();
        for k in s
            .clusters
            .iter()
            .filter(|c| c.classification == Classification::OtherIrreducible)
        {
            let b = b_map(&k.representative, &p, det).unwrap();
            assert!(max_commutator_deviation_so3(&b) > 1e-3, "{name}");
            witnesses += 1;
        }
    }
    assert!(witnesses >= 1);
}

#[test]
fn unpinned_scan_sees_full_orbits() {
    let p = wirtinger(&parse_notation("BR[2; 1,1,1]").unwrap());
    let s = scan(&p, ScanOptions::new(100, 1, false)).unwrap();
    assert_eq!(s.count(Classification::Reducible), 1);
    assert_eq!(s.count(Classification::Dihedral), 1);
    for c in &s.clusters {
        assert_eq!(c.character_dimension, 0, "{:?}", c.classification);
    }
}

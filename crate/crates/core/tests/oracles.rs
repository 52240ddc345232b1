mod common;

use std::collections::BTreeSet;

use common::{build, small_fixtures, Brute, VSet};
use cubefactor::complex::{djokovic_classes, square_classes, Graph};
use cubefactor::hyperclosure::convex_subcomplexes;
use cubefactor::{
    hyperclosure, oracle_hyperclosure, validate, ConvexSubcomplex, Limits, MedianComplex,
};

fn as_sets(family: impl IntoIterator<Item = ConvexSubcomplex>) -> BTreeSet<VSet> {
    family.into_iter().map(|c| c.vertices().to_vec()).collect()
}

fn convex(c: &MedianComplex, vs: &[usize]) -> ConvexSubcomplex {
    c.convex(vs).unwrap()
}

#[test]
fn convex_enumeration_matches_subset_scan() {
    for (name, c) in small_fixtures() {
        let brute = Brute::new(&c);
        let scan: BTreeSet<VSet> = brute.convex_sets().into_iter().collect();
        assert_eq!(as_sets(convex_subcomplexes(&c)), scan, "{name}");
    }
}

#[test]
fn hull_matches_intersection_of_convex_supersets() {
    for (name, c) in small_fixtures() {
        let brute = Brute::new(&c);
        let all = brute.convex_sets();
        let n = c.vertex_count();
        for a in 0..n {
            for b in a..n {
                for d in [a, (a + b + 1) % n, (a * 7 + 3) % n] {
                    let s = [a, b, d];
                    assert_eq!(
                        c.hull(&s).unwrap().vertices(),
                        brute.hull(&all, &s).as_slice(),
                        "{name} {s:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn walls_match_distance_halfspaces() {
    for (name, c) in small_fixtures() {
        let brute = Brute::new(&c);
        let mut ours: Vec<(VSet, VSet)> = c
            .classes()
            .iter()
            .map(|h| {
                let (a, b) = (
                    h.halfspace(cubefactor::Side::Minus).to_vec(),
                    h.halfspace(cubefactor::Side::Plus).to_vec(),
                );
                if a < b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        ours.sort();
        assert_eq!(ours, brute.walls, "{name}");
    }
}

#[test]
fn two_class_algorithms_agree() {
    for (name, c) in small_fixtures() {
        let g = c.graph();
        assert_eq!(
            djokovic_classes(g, &g.distances()),
            square_classes(g),
            "{name}"
        );
    }
}

#[test]
fn gates_projections_and_copies_match() {
    for (name, c) in small_fixtures() {
        let brute = Brute::new(&c);
        let all = brute.convex_sets();
        for (i, y) in all.iter().enumerate().step_by(3) {
            let yc = convex(&c, y);
            for x in 0..c.vertex_count() {
                assert_eq!(c.gate(&yc, x), brute.gate(y, x), "{name}");
            }
            let z = &all[(i * 5 + 1) % all.len()];
            assert_eq!(
                c.project(&yc, &convex(&c, z)).vertices(),
                brute.project(y, z).as_slice(),
                "{name}"
            );
            assert_eq!(
                as_sets(c.parallel_copies(&yc)),
                brute.parallel_copies(&all, y).into_iter().collect(),
                "{name} {y:?}"
            );
        }
    }
}

#[test]
fn complement_formula_matches_product_region_fibre() {
    for (name, c) in small_fixtures() {
        let brute = Brute::new(&c);
        let all = brute.convex_sets();
        for a_set in &all {
            let ac = convex(&c, a_set);
            for &a in a_set {
                assert_eq!(
                    c.orth(&ac, a).unwrap().vertices(),
                    brute.orth(&all, a_set, a).as_slice(),
                    "{name} A={a_set:?} a={a}"
                );
            }
        }
    }
}

#[test]
fn hyperclosure_matches_naive_iteration() {
    for (name, c) in small_fixtures() {
        let brute = Brute::new(&c);
        let all = brute.convex_sets();
        let naive = brute.hyperclosure(&all);
        let h = hyperclosure(&c, Limits::default()).unwrap();
        assert_eq!(as_sets(h.members().iter().cloned()), naive, "{name}");
        assert_eq!(
            as_sets(oracle_hyperclosure(&c, 16).unwrap()),
            naive,
            "{name}"
        );
        assert_eq!(
            h.multiplicity().max_multiplicity,
            brute.max_multiplicity(&naive),
            "{name}"
        );
    }
}

#[test]
fn non_median_graphs_are_rejected() {
    let cases = [
        ("triangle", 3, vec![(0usize, 1usize), (1, 2), (0, 2)]),
        ("hexagon", 6, (0..6).map(|i| (i, (i + 1) % 6)).collect()),
        (
            "k23",
            5,
            vec![(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
        ),
        ("two components", 4, vec![(0, 1), (2, 3)]),
    ];
    for (name, n, edges) in cases {
        let g = Graph::new(n, edges).unwrap();
        let report = validate(&g);
        assert!(!report.passes(), "{name}");
        assert!(MedianComplex::new(g, None).is_err(), "{name}");
    }
}

#[test]
fn malformed_graphs_are_structural_errors() {
    assert!(Graph::new(2, [(0, 0)]).is_err());
    assert!(Graph::new(2, [(0, 2)]).is_err());
    assert!(Graph::new(2, [(0, 1), (1, 0)]).is_err());
}

#[test]
fn box_oracle_at_twenty_seven_vertices() {
    let c = build("box:2,2,2");
    let h = hyperclosure(&c, Limits::default()).unwrap();
    assert_eq!(oracle_hyperclosure(&c, 32).unwrap(), h.as_set());
    assert!(oracle_hyperclosure(&c, 20).is_err());
}

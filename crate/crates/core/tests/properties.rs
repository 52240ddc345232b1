mod common;

use common::Brute;
use cubefactor::generators::{generate, GeneratorSpec};
use cubefactor::verify::{random_convex, run_suite, Suite};
use cubefactor::{hyperclosure, Limits, MedianComplex};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_spec() -> impl Strategy<Value = GeneratorSpec> {
    prop_oneof![
        (0usize..4, 0usize..3).prop_map(|(width, height)| GeneratorSpec::Grid { width, height }),
        (1usize..9, any::<u64>())
            .prop_map(|(vertices, seed)| GeneratorSpec::Tree { vertices, seed }),
        (1usize..4).prop_map(|size| GeneratorSpec::Staircase { size }),
        (2usize..5, 2usize..6, any::<u64>()).prop_map(|(dimension, points, seed)| {
            GeneratorSpec::RandomMedian {
                dimension,
                points,
                seed,
            }
        }),
    ]
}

fn complex(spec: &GeneratorSpec) -> MedianComplex {
    generate(spec).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_complexes_validate(spec in small_spec()) {
        let c = complex(&spec);
        prop_assert!(c.validate().passes());
        let round: GeneratorSpec = spec.to_string().parse().unwrap();
        prop_assert_eq!(round, spec);
    }

    #[test]
    fn median_is_symmetric(spec in small_spec(), x in 0usize..64, y in 0usize..64, z in 0usize..64) {
        let c = complex(&spec);
        let n = c.vertex_count();
        let (x, y, z) = (x % n, y % n, z % n);
        let m = c.median(x, y, z);
        for (a, b, d) in [(x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)] {
            prop_assert_eq!(c.median(a, b, d), m);
        }
        for (a, b) in [(x, y), (y, z), (x, z)] {
            prop_assert_eq!(c.distance(a, m) + c.distance(m, b), c.distance(a, b));
        }
    }

    #[test]
    fn hull_is_a_closure_operator(spec in small_spec(), seed in any::<u64>()) {
        let c = complex(&spec);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_convex(&c, &mut rng);
        let b = random_convex(&c, &mut rng);
        prop_assert_eq!(c.hull(a.vertices()).unwrap(), a.clone());
        let mut union = a.vertices().to_vec();
        union.extend_from_slice(b.vertices());
        let h = c.hull(&union).unwrap();
        prop_assert!(a.is_subset(&h) && b.is_subset(&h));
        prop_assert_eq!(c.hull(h.vertices()).unwrap(), h);
    }

    #[test]
    fn gates_are_nearest_points(spec in small_spec(), seed in any::<u64>()) {
        let c = complex(&spec);
        let brute = Brute::new(&c);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = random_convex(&c, &mut rng);
        for x in 0..c.vertex_count() {
            prop_assert_eq!(c.gate(&y, x), brute.gate(y.vertices(), x));
        }
    }

    #[test]
    fn combinatorial_hyperplanes_are_convex(spec in small_spec()) {
        let c = complex(&spec);
        for h in c.classes() {
            for side in cubefactor::Side::BOTH {
                prop_assert!(c.is_convex(h.combinatorial_hyperplane(side).vertices()).unwrap());
                prop_assert!(c.is_convex(h.halfspace(side)).unwrap());
            }
        }
    }

    #[test]
    fn law_suites_hold(spec in small_spec(), seed in any::<u64>()) {
        let c = complex(&spec);
        let report = run_suite(&c, Suite::All, 20, seed).unwrap();
        let failures: Vec<String> = report.violations().map(|v| v.to_string()).collect();
        prop_assert!(failures.is_empty(), "{}: {:?}", spec, failures);
    }

    #[test]
    fn closure_members_are_graded_and_sorted(spec in small_spec()) {
        let c = complex(&spec);
        let h = hyperclosure(&c, Limits::default()).unwrap();
        prop_assert_eq!(h.member(0), &c.whole());
        for i in 1..h.len() {
            prop_assert!((h.grade(i - 1), h.member(i - 1)) < (h.grade(i), h.member(i)));
        }
        let (len, chain) = h.longest_chain();
        prop_assert_eq!(chain.len(), len);
        for w in chain.windows(2) {
            prop_assert!(w[0].is_proper_subset(&w[1]) || w[1].is_proper_subset(&w[0]));
        }
    }
}

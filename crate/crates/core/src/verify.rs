//! Randomized and exhaustive law checks over one complex.
//!
//! Each law is checked on `cases` random inputs (or exhaustively where the
//! input space is the set of hyperclosure members). Failures carry the inputs
//! needed to reproduce them.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::{ConvexSubcomplex, MedianComplex, Vertex};
use crate::error::Result;
use crate::gates::CrossingSignature;
use crate::hyperclosure::{
    hyperclosure, oracle_hyperclosure, Hyperclosure, Limits, DEFAULT_ORACLE_BOUND,
};
use crate::orthocomplement::witness_compact;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    All,
    Gates,
    Orth,
    Closure,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub law: &'static str,
    pub inputs: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.law, self.inputs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawOutcome {
    pub law: &'static str,
    pub cases: usize,
    pub violations: Vec<Counterexample>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub laws: Vec<LawOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.violations.is_empty())
    }

    pub fn violations(&self) -> impl Iterator<Item = &Counterexample> {
        self.laws.iter().flat_map(|l| l.violations.iter())
    }

    pub fn cases(&self, law: &str) -> usize {
        self.laws
            .iter()
            .filter(|l| l.law == law)
            .map(|l| l.cases)
            .sum()
    }

    pub fn merge(&mut self, other: SuiteReport) {
        for outcome in other.laws {
            match self.laws.iter_mut().find(|l| l.law == outcome.law) {
                Some(l) => {
                    l.cases += outcome.cases;
                    l.violations.extend(outcome.violations);
                }
                None => self.laws.push(outcome),
            }
        }
    }
}

const MAX_RECORDED: usize = 10;

struct Checker {
    report: SuiteReport,
}

impl Checker {
    fn law(&mut self, law: &'static str) -> &mut LawOutcome {
        if let Some(i) = self.report.laws.iter().position(|l| l.law == law) {
            return &mut self.report.laws[i];
        }
        self.report.laws.push(LawOutcome {
            law,
            cases: 0,
            violations: Vec::new(),
        });
        self.report.laws.last_mut().unwrap()
    }

    fn check(&mut self, law: &'static str, holds: bool, inputs: impl FnOnce() -> String) {
        let outcome = self.law(law);
        outcome.cases += 1;
        if !holds && outcome.violations.len() < MAX_RECORDED {
            outcome.violations.push(Counterexample {
                law,
                inputs: inputs(),
            });
        }
    }
}

/// A random convex subcomplex: the hull of a few random vertices, or an
/// intersection of random halfspaces through a random vertex.
pub fn random_convex(complex: &MedianComplex, rng: &mut impl Rng) -> ConvexSubcomplex {
    let n = complex.vertex_count();
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(1..=3);
        let picks: Vec<Vertex> = (0..k).map(|_| rng.gen_range(0..n)).collect();
        complex.hull(&picks).expect("nonempty")
    } else {
        let v = rng.gen_range(0..n);
        let keep = rng.gen_range(0.0..1.0);
        let mut set = complex.whole();
        for c in 0..complex.class_count() {
            if rng.gen_bool(keep) {
                let side = complex.side_of(c, v);
                let half: Vec<Vertex> = set
                    .vertices()
                    .iter()
                    .copied()
                    .filter(|&w| complex.side_of(c, w) == side)
                    .collect();
                set = complex
                    .convex(&half)
                    .expect("halfspace intersections are convex");
            }
        }
        set
    }
}

fn random_vertex_of(set: &ConvexSubcomplex, rng: &mut impl Rng) -> Vertex {
    *set.vertices().choose(rng).unwrap()
}

/// `v -> (gate(a, v), gate(b, v))` is a bijection from `region` onto `a x b`.
pub fn is_product(
    complex: &MedianComplex,
    region: &ConvexSubcomplex,
    a: &ConvexSubcomplex,
    b: &ConvexSubcomplex,
) -> bool {
    let coords: BTreeSet<(Vertex, Vertex)> = region
        .vertices()
        .iter()
        .map(|&v| (complex.gate(a, v), complex.gate(b, v)))
        .collect();
    coords.len() == region.len() && coords.len() == a.len() * b.len()
}

/// Every class of `a` crosses every class of `b`, and none is shared.
pub fn orthogonal_signatures(
    complex: &MedianComplex,
    a: &CrossingSignature,
    b: &CrossingSignature,
) -> bool {
    a.is_disjoint(b)
        && a.class_ids().iter().all(|&h| {
            b.class_ids()
                .iter()
                .all(|&w| complex.crosses(h, w).unwrap_or(false))
        })
}

/// Complement computed straight from its characterization: vertices `b`
/// such that every class separating `a` from `b` misses `set` and crosses
/// every class that crosses `set`.
pub fn complement_by_definition(
    complex: &MedianComplex,
    set: &ConvexSubcomplex,
    a: Vertex,
) -> Vec<Vertex> {
    let sig = complex.crossing_signature(set);
    (0..complex.vertex_count())
        .filter(|&b| {
            complex.separating_classes(a, b).iter().all(|&v| {
                !sig.contains(v)
                    && sig
                        .class_ids()
                        .iter()
                        .all(|&h| complex.crosses(h, v).unwrap_or(false))
            })
        })
        .collect()
}

fn union_hull(
    complex: &MedianComplex,
    a: &ConvexSubcomplex,
    b: &ConvexSubcomplex,
) -> ConvexSubcomplex {
    let mut union = a.vertices().to_vec();
    union.extend_from_slice(b.vertices());
    complex.hull(&union).expect("nonempty")
}

fn gate_laws(complex: &MedianComplex, cases: usize, rng: &mut ChaCha8Rng, ck: &mut Checker) {
    for _ in 0..cases {
        let (y, z) = (random_convex(complex, rng), random_convex(complex, rng));
        let p = complex.project(&y, &z);
        let expected = complex
            .crossing_signature(&y)
            .intersection(&complex.crossing_signature(&z));
        ck.check(
            "gate_crossing",
            complex.crossing_signature(&p) == expected
                && complex.is_convex(p.vertices()).unwrap_or(false),
            || format!("Y={y} Z={z} project={p}"),
        );
        let q = complex.project(&z, &y);
        ck.check("symmetric_parallelism", complex.is_parallel(&p, &q), || {
            format!("Y={y} Z={z}")
        });

        let (c, d, e) = (
            random_convex(complex, rng),
            random_convex(complex, rng),
            random_convex(complex, rng),
        );
        let first = complex.project(&complex.project(&c, &d), &e);
        let second = complex.project(&c, &complex.project(&d, &e));
        let third = complex.project(&c, &complex.project(&e, &d));
        ck.check(
            "projection_currying",
            complex.is_parallel(&first, &second) && complex.is_parallel(&second, &third),
            || format!("C={c} D={d} E={e}"),
        );

        let f = random_convex(complex, rng);
        let copies = complex.parallel_copies(&f);
        let g = copies.choose(rng).unwrap().clone();
        let hull = union_hull(complex, &f, &g);
        let seps = complex.separator_classes(&f, &g);
        let separating: Vec<usize> = (0..complex.class_count())
            .filter(|&c| {
                let s = complex.side_of(c, f.least());
                f.vertices().iter().all(|&v| complex.side_of(c, v) == s)
                    && g.vertices().iter().all(|&v| complex.side_of(c, v) != s)
            })
            .collect();
        let sig_f = complex.crossing_signature(&f);
        let decomposed = sig_f.union(&CrossingSignature::from_classes(seps.clone()));
        let fv = f.least();
        let bridge = complex.hull(&[fv, complex.gate(&g, fv)]).expect("nonempty");
        ck.check(
            "parallel_product",
            copies.contains(&f)
                && copies.iter().all(|c| complex.is_parallel(c, &f))
                && seps == separating
                && seps.iter().all(|&c| !sig_f.contains(c))
                && complex.crossing_signature(&hull) == decomposed
                && is_product(complex, &hull, &f, &bridge),
            || format!("F={f} F'={g} separators={seps:?}"),
        );

        let a = random_convex(complex, rng);
        let x = random_vertex_of(&a, rng);
        let ok = match complex.product_region(&a, x) {
            Ok(pr) => {
                let sig_a = complex.crossing_signature(&a);
                let sig_c = complex.crossing_signature(&pr.complement);
                pr.region == union_hull(complex, &a, &pr.complement)
                    && is_product(complex, &pr.region, &a, &pr.complement)
                    && complex.crossing_signature(&pr.region) == sig_a.union(&sig_c)
                    && orthogonal_signatures(complex, &sig_a, &sig_c)
                    && copies_count_matches(complex, &a, &pr.complement)
            }
            Err(_) => false,
        };
        ck.check("product_region", ok, || format!("A={a} basepoint={x}"));
    }

    // Crossing walls are exactly those with dual edges on a common square.
    let k = complex.class_count();
    let mut in_square = vec![vec![false; k]; k];
    for a in 0..complex.vertex_count() {
        let nbrs = complex.neighbors(a);
        for (i, &b) in nbrs.iter().enumerate() {
            for &c in &nbrs[i + 1..] {
                let closes = complex
                    .neighbors(b)
                    .iter()
                    .any(|&d| d != a && complex.graph().has_edge(c, d));
                if closes {
                    let h = complex.edge_class(a, b).unwrap();
                    let w = complex.edge_class(a, c).unwrap();
                    in_square[h][w] = true;
                    in_square[w][h] = true;
                }
            }
        }
    }
    for (h, row) in in_square.iter().enumerate() {
        for (w, &square) in row.iter().enumerate().skip(h + 1) {
            ck.check(
                "crossing_squares",
                complex.crosses(h, w).unwrap_or(false) == square,
                || format!("H={h} W={w}"),
            );
        }
    }
}

fn copies_count_matches(
    complex: &MedianComplex,
    a: &ConvexSubcomplex,
    complement: &ConvexSubcomplex,
) -> bool {
    complex.parallel_copies(a).len() == complement.len()
}

fn orth_laws(
    complex: &MedianComplex,
    cases: usize,
    rng: &mut ChaCha8Rng,
    ck: &mut Checker,
) -> Result<()> {
    for _ in 0..cases {
        let f = random_convex(complex, rng);
        let x = random_vertex_of(&f, rng);
        let once = complex.orth(&f, x)?;
        let twice = complex.orth(&once, x)?;
        let thrice = complex.orth(&twice, x)?;
        ck.check("triple_complement", thrice == once, || {
            format!("F={f} basepoint={x} orth={once} orth3={thrice}")
        });

        let sig_f = complex.crossing_signature(&f);
        let sig_o = complex.crossing_signature(&once);
        ck.check(
            "based_complement",
            once.contains(x)
                && orthogonal_signatures(complex, &sig_f, &sig_o)
                && (f.len() > 1 || once == complex.whole()),
            || format!("A={f} basepoint={x} orth={once}"),
        );

        let y = random_vertex_of(&f, rng);
        ck.check(
            "basepoint_parallel",
            complex.is_parallel(&once, &complex.orth(&f, y)?),
            || format!("A={f} a={x} b={y}"),
        );

        ck.check(
            "formula_vs_definition",
            once.vertices() == complement_by_definition(complex, &f, x).as_slice(),
            || format!("A={f} basepoint={x} orth={once}"),
        );

        let b = random_convex(complex, rng);
        let k = rng.gen_range(1..=2);
        let picks: Vec<Vertex> = (0..k).map(|_| random_vertex_of(&b, rng)).collect();
        let a = complex.hull(&picks)?;
        let base = random_vertex_of(&a, rng);
        ck.check(
            "contravariance",
            complex.orth(&b, base)?.is_subset(&complex.orth(&a, base)?),
            || format!("A={a} B={b} basepoint={base}"),
        );
    }
    Ok(())
}

/// Maximum number of (F, V) pairs examined by the clean-container law.
pub const CONTAINER_PAIR_BUDGET: usize = 20_000;

fn closure_laws(
    complex: &MedianComplex,
    h: &Hyperclosure,
    cases: usize,
    rng: &mut ChaCha8Rng,
    ck: &mut Checker,
) -> Result<()> {
    let members = h.members();
    for _ in 0..cases {
        let f = members.choose(rng).unwrap();
        let g = members.choose(rng).unwrap();
        let p = complex.project(f, g);
        ck.check("projection_closure", h.contains(&p), || {
            format!("F={f} F'={g} project={p}")
        });

        let a = random_convex(complex, rng);
        let x = random_vertex_of(&a, rng);
        let o = complex.orth(&a, x)?;
        ck.check("complement_closure", h.contains(&o), || {
            format!("A={a} basepoint={x} orth={o}")
        });
    }

    for (i, f) in members.iter().enumerate() {
        for copy in complex.parallel_copies(f) {
            ck.check("parallel_closure", h.contains(&copy), || {
                format!("F={f} copy={copy}")
            });
        }
        for &x in f.vertices() {
            let back = complex.orth(&complex.orth(f, x)?, x)?;
            ck.check("double_complement", back == *f, || {
                format!("F={f} basepoint={x} orth2={back}")
            });
        }

        // Replay the grading chain from the whole complex.
        let mut chain = Vec::new();
        let mut cur = i;
        while let Some(step) = h.grade_step(cur) {
            chain.push((step.hyperplane, h.grade(cur)));
            cur = step.source;
        }
        let mut rebuilt = complex.whole();
        let mut monotone = h.grade(cur) == 0 && chain.len() == h.grade(i);
        for &((class, side), grade) in chain.iter().rev() {
            rebuilt = complex.project(
                complex.class(class).combinatorial_hyperplane(side),
                &rebuilt,
            );
            monotone &= h.index_of(&rebuilt).map(|j| h.grade(j)) == Some(grade);
        }
        ck.check("grading_soundness", monotone && rebuilt == *f, || {
            format!("F={f} grade={} chain={chain:?}", h.grade(i))
        });

        let witness = witness_compact(complex, h, f);
        let ok = match &witness {
            Ok((c, x)) => c.contains(*x) && f.contains(*x) && complex.orth(c, *x)? == *f,
            Err(_) => false,
        };
        ck.check("witness_compact", ok, || {
            format!("F={f} witness={witness:?}")
        });
    }
    ck.check(
        "grading_cover",
        h.grades_report().values().sum::<usize>() == h.len(),
        || "grades do not cover the members".into(),
    );

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (fi, f) in members.iter().enumerate() {
        for (vi, v) in members.iter().enumerate() {
            if v.is_proper_subset(f) {
                pairs.push((fi, vi));
            }
        }
    }
    if pairs.len() > CONTAINER_PAIR_BUDGET {
        pairs.shuffle(rng);
        pairs.truncate(CONTAINER_PAIR_BUDGET);
    }
    for (fi, vi) in pairs {
        let (f, v) = (&members[fi], &members[vi]);
        let x = v.least();
        let ok = match h.clean_container(complex, f, v, x) {
            Ok(u) => {
                let sig_v = h.signature(vi);
                let sig_u = complex.crossing_signature(&u);
                let product = union_hull(complex, v, &u);
                let maximal = members.iter().enumerate().all(|(wi, w)| {
                    !(w.is_subset(f) && orthogonal_signatures(complex, sig_v, h.signature(wi)))
                        || h.signature(wi).is_subset(&sig_u)
                });
                u.is_subset(f)
                    && orthogonal_signatures(complex, sig_v, &sig_u)
                    && product.is_subset(f)
                    && is_product(complex, &product, v, &u)
                    && maximal
            }
            Err(_) => false,
        };
        ck.check("clean_container", ok, || {
            format!("F={f} V={v} basepoint={x}")
        });
    }

    if complex.vertex_count() <= DEFAULT_ORACLE_BOUND {
        let oracle = oracle_hyperclosure(complex, DEFAULT_ORACLE_BOUND)?;
        ck.check("oracle_agreement", oracle == h.as_set(), || {
            let ours = h.as_set();
            let diff: Vec<_> = oracle.symmetric_difference(&ours).collect();
            format!("symmetric difference {diff:?}")
        });
    }
    Ok(())
}

/// Runs the selected law families on `complex`.
pub fn run_suite(
    complex: &MedianComplex,
    suite: Suite,
    cases: usize,
    seed: u64,
) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ck = Checker {
        report: SuiteReport::default(),
    };
    if suite.includes(Suite::Gates) {
        gate_laws(complex, cases, &mut rng, &mut ck);
    }
    if suite.includes(Suite::Orth) {
        orth_laws(complex, cases, &mut rng, &mut ck)?;
    }
    if suite.includes(Suite::Closure) {
        let h = hyperclosure(complex, Limits::default())?;
        closure_laws(complex, &h, cases, &mut rng, &mut ck)?;
    }
    Ok(ck.report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, GeneratorSpec};

    #[test]
    fn square_passes_everything() {
        let q = generate(&GeneratorSpec::Grid {
            width: 1,
            height: 1,
        })
        .unwrap();
        let report = run_suite(&q, Suite::All, 50, 7).unwrap();
        assert!(
            report.passed(),
            "{:?}",
            report.violations().collect::<Vec<_>>()
        );
        assert_eq!(report.cases("gate_crossing"), 50);
        assert!(report.cases("clean_container") > 0);
        assert_eq!(report.cases("oracle_agreement"), 1);
    }

    #[test]
    fn suites_are_selective() {
        let p3 = generate(&GeneratorSpec::Grid {
            width: 2,
            height: 0,
        })
        .unwrap();
        let report = run_suite(&p3, Suite::Orth, 10, 1).unwrap();
        assert!(report.laws.iter().all(|l| l.law != "gate_crossing"));
        assert_eq!(report.cases("triple_complement"), 10);
    }

    #[test]
    fn definition_complement_on_staircase() {
        let s = generate(&GeneratorSpec::Staircase { size: 2 }).unwrap();
        let at = |x: i64, y: i64| s.vertex_with_label(&[x, y]).unwrap();
        let row = s.convex(&[at(0, 0), at(1, 0), at(2, 0)]).unwrap();
        let mut expected = vec![at(2, 0), at(2, 1)];
        expected.sort_unstable();
        assert_eq!(complement_by_definition(&s, &row, at(2, 0)), expected);
    }
}

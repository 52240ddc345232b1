//! The hyperclosure: the least family of convex subcomplexes containing the
//! whole complex and every combinatorial hyperplane, closed under gate
//! projection and parallelism.
//!
//! The family is computed as a worklist fixpoint. Members are then graded by
//! the least `n` such that the member is reached from the whole complex by
//! `n` successive projections onto combinatorial hyperplanes; every member
//! must be reached this way.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::complex::{ClassId, ConvexSubcomplex, MedianComplex, Side, Vertex};
use crate::error::{Error, Result};
use crate::gates::CrossingSignature;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_members: usize,
    pub max_grade: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_members: 100_000,
            max_grade: 32,
        }
    }
}

/// How a member first entered the fixpoint. Indices refer to members.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Derivation {
    Whole,
    HyperplaneSide {
        class: ClassId,
        side: Side,
    },
    /// `project(members[onto], members[of])`
    Projection {
        onto: usize,
        of: usize,
    },
    ParallelCopy {
        of: usize,
    },
}

/// `member = project(combinatorial hyperplane, members[source])` with
/// `grade(source) = grade(member) - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GradeStep {
    pub hyperplane: (ClassId, Side),
    pub source: usize,
}

#[derive(Clone, Debug)]
pub struct Hyperclosure {
    vertex_count: usize,
    members: Vec<ConvexSubcomplex>,
    index: HashMap<ConvexSubcomplex, usize>,
    grades: Vec<usize>,
    grade_steps: Vec<Option<GradeStep>>,
    provenance: Vec<Derivation>,
    signatures: Vec<CrossingSignature>,
    parallel_classes: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityProfile {
    pub per_vertex: Vec<usize>,
    pub max_multiplicity: usize,
    /// multiplicity -> number of vertices with it
    pub histogram: BTreeMap<usize, usize>,
}

struct Builder<'a> {
    complex: &'a MedianComplex,
    limits: Limits,
    members: Vec<ConvexSubcomplex>,
    index: HashMap<ConvexSubcomplex, usize>,
    provenance: Vec<Derivation>,
}

impl Builder<'_> {
    fn insert(&mut self, set: ConvexSubcomplex, how: Derivation) -> Result<()> {
        if self.index.contains_key(&set) {
            return Ok(());
        }
        if self.members.len() >= self.limits.max_members {
            return Err(Error::Resource {
                limit: "max_members",
                value: self.limits.max_members,
            });
        }
        self.index.insert(set.clone(), self.members.len());
        self.members.push(set);
        self.provenance.push(how);
        Ok(())
    }

    fn saturate(&mut self) -> Result<()> {
        let complex = self.complex;
        self.insert(complex.whole(), Derivation::Whole)?;
        for h in complex.classes() {
            for side in Side::BOTH {
                self.insert(
                    h.combinatorial_hyperplane(side).clone(),
                    Derivation::HyperplaneSide { class: h.id, side },
                )?;
            }
        }
        // Semi-naive: member i meets every earlier member exactly once.
        let mut done = 0;
        while done < self.members.len() {
            let i = done;
            let current = self.members[i].clone();
            for copy in complex.parallel_copies(&current) {
                self.insert(copy, Derivation::ParallelCopy { of: i })?;
            }
            for j in 0..=i {
                let other = self.members[j].clone();
                self.insert(
                    complex.project(&current, &other),
                    Derivation::Projection { onto: i, of: j },
                )?;
                if j != i {
                    self.insert(
                        complex.project(&other, &current),
                        Derivation::Projection { onto: j, of: i },
                    )?;
                }
            }
            done += 1;
        }
        Ok(())
    }

    /// Breadth-first layering by projections onto combinatorial hyperplanes.
    fn grade(&self) -> Result<(Vec<usize>, Vec<Option<GradeStep>>)> {
        let complex = self.complex;
        let m = self.members.len();
        let mut grades = vec![usize::MAX; m];
        let mut steps = vec![None; m];
        let whole = self.index[&complex.whole()];
        grades[whole] = 0;
        let mut frontier = vec![whole];
        let mut level = 0;
        while !frontier.is_empty() {
            level += 1;
            let mut next = Vec::new();
            for &src in &frontier {
                for h in complex.classes() {
                    for side in Side::BOTH {
                        let image =
                            complex.project(h.combinatorial_hyperplane(side), &self.members[src]);
                        let Some(&idx) = self.index.get(&image) else {
                            return Err(Error::Internal(format!(
                                "projection {image} escaped the fixpoint"
                            )));
                        };
                        if grades[idx] == usize::MAX {
                            if level > self.limits.max_grade {
                                return Err(Error::Resource {
                                    limit: "max_grade",
                                    value: self.limits.max_grade,
                                });
                            }
                            grades[idx] = level;
                            steps[idx] = Some(GradeStep {
                                hyperplane: (h.id, side),
                                source: src,
                            });
                            next.push(idx);
                        }
                    }
                }
            }
            frontier = next;
        }
        if let Some(i) = grades.iter().position(|&g| g == usize::MAX) {
            return Err(Error::Internal(format!(
                "member {} is not an iterated hyperplane projection",
                self.members[i]
            )));
        }
        Ok((grades, steps))
    }
}

/// Computes the hyperclosure of a complex, failing loudly when a limit is hit.
pub fn hyperclosure(complex: &MedianComplex, limits: Limits) -> Result<Hyperclosure> {
    let mut b = Builder {
        complex,
        limits,
        members: Vec::new(),
        index: HashMap::new(),
        provenance: Vec::new(),
    };
    b.saturate()?;
    let (grades, steps) = b.grade()?;

    // Canonical order: by grade, then by vertex list.
    let m = b.members.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| (grades[i], &b.members[i]).cmp(&(grades[j], &b.members[j])));
    let mut renumber = vec![0; m];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new;
    }
    let members: Vec<ConvexSubcomplex> = order.iter().map(|&i| b.members[i].clone()).collect();
    let provenance = order
        .iter()
        .map(|&i| match b.provenance[i] {
            Derivation::Projection { onto, of } => Derivation::Projection {
                onto: renumber[onto],
                of: renumber[of],
            },
            Derivation::ParallelCopy { of } => Derivation::ParallelCopy { of: renumber[of] },
            other => other,
        })
        .collect();
    let grade_steps = order
        .iter()
        .map(|&i| {
            steps[i].map(|s| GradeStep {
                hyperplane: s.hyperplane,
                source: renumber[s.source],
            })
        })
        .collect();
    let grades = order.iter().map(|&i| grades[i]).collect();
    let index = members
        .iter()
        .enumerate()
        .map(|(i, f)| (f.clone(), i))
        .collect();
    let signatures: Vec<CrossingSignature> = members
        .iter()
        .map(|f| complex.crossing_signature(f))
        .collect();
    let mut by_signature: BTreeMap<&CrossingSignature, Vec<usize>> = BTreeMap::new();
    for (i, s) in signatures.iter().enumerate() {
        by_signature.entry(s).or_default().push(i);
    }
    let mut parallel_classes: Vec<Vec<usize>> = by_signature.into_values().collect();
    parallel_classes.sort_by_key(|c| c[0]);

    Ok(Hyperclosure {
        vertex_count: complex.vertex_count(),
        members,
        index,
        grades,
        grade_steps,
        provenance,
        signatures,
        parallel_classes,
    })
}

impl Hyperclosure {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[ConvexSubcomplex] {
        &self.members
    }

    pub fn member(&self, idx: usize) -> &ConvexSubcomplex {
        &self.members[idx]
    }

    pub fn contains(&self, f: &ConvexSubcomplex) -> bool {
        self.index.contains_key(f)
    }

    pub fn index_of(&self, f: &ConvexSubcomplex) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn grade(&self, idx: usize) -> usize {
        self.grades[idx]
    }

    pub fn grade_step(&self, idx: usize) -> Option<GradeStep> {
        self.grade_steps[idx]
    }

    pub fn provenance(&self, idx: usize) -> Derivation {
        self.provenance[idx]
    }

    pub fn signature(&self, idx: usize) -> &CrossingSignature {
        &self.signatures[idx]
    }

    /// Members grouped by crossing signature; a reporting view only.
    pub fn parallel_classes(&self) -> &[Vec<usize>] {
        &self.parallel_classes
    }

    pub fn as_set(&self) -> BTreeSet<ConvexSubcomplex> {
        self.members.iter().cloned().collect()
    }

    /// Number of members of each grade; the grades cover every member.
    pub fn grades_report(&self) -> BTreeMap<usize, usize> {
        let mut report = BTreeMap::new();
        for &g in &self.grades {
            *report.entry(g).or_insert(0) += 1;
        }
        assert_eq!(
            report.values().sum::<usize>(),
            self.members.len(),
            "grades partition the members"
        );
        report
    }

    /// Members containing each vertex, counting every parallel copy.
    pub fn multiplicity(&self) -> MultiplicityProfile {
        let mut per_vertex = vec![0; self.vertex_count];
        for f in &self.members {
            for &v in f.vertices() {
                per_vertex[v] += 1;
            }
        }
        let max_multiplicity = per_vertex.iter().copied().max().unwrap_or(0);
        let mut histogram = BTreeMap::new();
        for &c in &per_vertex {
            *histogram.entry(c).or_insert(0) += 1;
        }
        MultiplicityProfile {
            per_vertex,
            max_multiplicity,
            histogram,
        }
    }

    /// Longest strictly increasing chain of members, smallest first.
    pub fn longest_chain(&self) -> (usize, Vec<ConvexSubcomplex>) {
        let m = self.members.len();
        if m == 0 {
            return (0, Vec::new());
        }
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| (self.members[i].len(), i));
        let mut length = vec![1usize; m];
        let mut pred = vec![usize::MAX; m];
        for (k, &i) in order.iter().enumerate() {
            for &j in &order[..k] {
                if length[j] + 1 > length[i] && self.members[j].is_proper_subset(&self.members[i]) {
                    length[i] = length[j] + 1;
                    pred[i] = j;
                }
            }
        }
        let mut top = order[0];
        for &i in &order {
            if length[i] > length[top] {
                top = i;
            }
        }
        let mut chain = vec![self.members[top].clone()];
        while pred[top] != usize::MAX {
            top = pred[top];
            chain.push(self.members[top].clone());
        }
        chain.reverse();
        (chain.len(), chain)
    }

    /// The member `U ⊆ f` orthogonal to `v` through `x`, realizing
    /// `v x U ⊆ f`: `U = orth(v, x) ∩ f`.
    pub fn clean_container(
        &self,
        complex: &MedianComplex,
        f: &ConvexSubcomplex,
        v: &ConvexSubcomplex,
        x: Vertex,
    ) -> Result<ConvexSubcomplex> {
        for (name, s) in [("container", f), ("inner", v)] {
            if !self.contains(s) {
                return Err(Error::Precondition(format!(
                    "{name} {s} is not a hyperclosure member"
                )));
            }
        }
        let u = container_slice(complex, f, v, x)?;
        if !self.contains(&u) {
            return Err(Error::Internal(format!(
                "clean container {u} of {v} in {f} is not a member"
            )));
        }
        Ok(u)
    }
}

/// `orth(v, x) ∩ f` for convex `v ⊊ f` and `x ∈ v`, without membership
/// requirements.
pub fn container_slice(
    complex: &MedianComplex,
    f: &ConvexSubcomplex,
    v: &ConvexSubcomplex,
    x: Vertex,
) -> Result<ConvexSubcomplex> {
    if !v.is_proper_subset(f) {
        return Err(Error::Precondition(format!(
            "{v} is not properly contained in {f}"
        )));
    }
    if !v.contains(x) {
        return Err(Error::Precondition(format!("basepoint {x} is not in {v}")));
    }
    let u = complex.orth(v, x)?;
    Ok(u.intersection(f).expect("x lies in both"))
}

/// Every convex subcomplex, as the nonempty intersections of halfspaces.
pub fn convex_subcomplexes(complex: &MedianComplex) -> BTreeSet<ConvexSubcomplex> {
    fn descend(
        complex: &MedianComplex,
        class: usize,
        current: Vec<Vertex>,
        out: &mut BTreeSet<ConvexSubcomplex>,
    ) {
        if class == complex.class_count() {
            out.insert(ConvexSubcomplex::from_sorted(current));
            return;
        }
        for side in Side::BOTH {
            let cut: Vec<Vertex> = current
                .iter()
                .copied()
                .filter(|&v| complex.side_of(class, v) == side)
                .collect();
            if !cut.is_empty() && cut.len() < current.len() {
                descend(complex, class + 1, cut, out);
            }
        }
        descend(complex, class + 1, current, out);
    }
    let mut out = BTreeSet::new();
    descend(complex, 0, (0..complex.vertex_count()).collect(), &mut out);
    out
}

pub const DEFAULT_ORACLE_BOUND: usize = 14;

/// The hyperclosure as `{ orth(C, x) : C convex, x ∈ C }`.
pub fn oracle_hyperclosure(
    complex: &MedianComplex,
    max_vertices: usize,
) -> Result<BTreeSet<ConvexSubcomplex>> {
    if complex.vertex_count() > max_vertices {
        return Err(Error::Resource {
            limit: "oracle_max_vertices",
            value: max_vertices,
        });
    }
    let mut out = BTreeSet::new();
    for c in convex_subcomplexes(complex) {
        for &x in c.vertices() {
            out.insert(complex.orth(&c, x)?);
        }
    }
    Ok(out)
}

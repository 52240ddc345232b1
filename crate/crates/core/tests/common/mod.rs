//! Brute-force reference implementations. These use only the raw edge list
//! of a complex: their own BFS distances, walls derived from distance
//! comparisons, and exhaustive subset scans.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use cubefactor::generators::{generate, GeneratorSpec};
use cubefactor::MedianComplex;

pub type VSet = Vec<usize>;

pub struct Brute {
    pub n: usize,
    pub dist: Vec<Vec<usize>>,
    /// Each wall as its two halfspaces, smaller one first.
    pub walls: Vec<(VSet, VSet)>,
}

impl Brute {
    pub fn new(complex: &MedianComplex) -> Brute {
        let n = complex.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in complex.edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        let dist: Vec<Vec<usize>> = (0..n)
            .map(|s| {
                let mut d = vec![usize::MAX; n];
                d[s] = 0;
                let mut q = VecDeque::from([s]);
                while let Some(x) = q.pop_front() {
                    for &y in &adj[x] {
                        if d[y] == usize::MAX {
                            d[y] = d[x] + 1;
                            q.push_back(y);
                        }
                    }
                }
                d
            })
            .collect();
        let mut walls = BTreeSet::new();
        for &(u, v) in complex.edges() {
            let near_u: VSet = (0..n).filter(|&w| dist[w][u] < dist[w][v]).collect();
            let near_v: VSet = (0..n).filter(|&w| dist[w][v] < dist[w][u]).collect();
            walls.insert(if near_u < near_v {
                (near_u, near_v)
            } else {
                (near_v, near_u)
            });
        }
        Brute {
            n,
            dist,
            walls: walls.into_iter().collect(),
        }
    }

    pub fn interval(&self, x: usize, y: usize) -> VSet {
        (0..self.n)
            .filter(|&z| self.dist[x][z] + self.dist[z][y] == self.dist[x][y])
            .collect()
    }

    pub fn is_convex(&self, s: &[usize]) -> bool {
        !s.is_empty()
            && s.iter().all(|&x| {
                s.iter()
                    .all(|&y| self.interval(x, y).iter().all(|z| s.contains(z)))
            })
    }

    /// Every convex vertex set, by scanning all subsets.
    pub fn convex_sets(&self) -> Vec<VSet> {
        assert!(self.n <= 16, "subset scan is exponential");
        (1u32..(1 << self.n))
            .map(|mask| {
                (0..self.n)
                    .filter(|&i| mask & (1 << i) != 0)
                    .collect::<VSet>()
            })
            .filter(|s| self.is_convex(s))
            .collect()
    }

    pub fn hull(&self, convex_sets: &[VSet], s: &[usize]) -> VSet {
        (0..self.n)
            .filter(|v| {
                convex_sets
                    .iter()
                    .filter(|c| s.iter().all(|x| c.contains(x)))
                    .all(|c| c.contains(v))
            })
            .collect()
    }

    /// The nearest vertex of `y` to `x`, asserting it is unique.
    pub fn gate(&self, y: &[usize], x: usize) -> usize {
        let best = y.iter().map(|&v| self.dist[x][v]).min().unwrap();
        let nearest: Vec<usize> = y
            .iter()
            .copied()
            .filter(|&v| self.dist[x][v] == best)
            .collect();
        assert_eq!(nearest.len(), 1, "convex sets are gated");
        nearest[0]
    }

    pub fn project(&self, y: &[usize], z: &[usize]) -> VSet {
        let set: BTreeSet<usize> = z.iter().map(|&v| self.gate(y, v)).collect();
        set.into_iter().collect()
    }

    /// Indices of the walls with vertices of `s` on both sides.
    pub fn signature(&self, s: &[usize]) -> Vec<usize> {
        (0..self.walls.len())
            .filter(|&i| {
                let (a, b) = &self.walls[i];
                s.iter().any(|v| a.contains(v)) && s.iter().any(|v| b.contains(v))
            })
            .collect()
    }

    pub fn parallel_copies(&self, convex_sets: &[VSet], a: &[usize]) -> Vec<VSet> {
        let sig = self.signature(a);
        convex_sets
            .iter()
            .filter(|c| self.signature(c) == sig)
            .cloned()
            .collect()
    }

    /// Complement of `a_set` at `a`: the vertices of the union of its
    /// parallel copies whose nearest point in `a_set` is `a`.
    pub fn orth(&self, convex_sets: &[VSet], a_set: &[usize], a: usize) -> VSet {
        let region: BTreeSet<usize> = self
            .parallel_copies(convex_sets, a_set)
            .into_iter()
            .flatten()
            .collect();
        region
            .into_iter()
            .filter(|&v| self.gate(a_set, v) == a)
            .collect()
    }

    /// Vertices of one halfspace adjacent to the other: the combinatorial
    /// hyperplanes bounding each wall.
    pub fn combinatorial_hyperplanes(&self) -> Vec<VSet> {
        let mut out = Vec::new();
        for (a, b) in &self.walls {
            for (near, far) in [(a, b), (b, a)] {
                out.push(
                    near.iter()
                        .copied()
                        .filter(|&v| far.iter().any(|&w| self.dist[v][w] == 1))
                        .collect(),
                );
            }
        }
        out
    }

    /// Least family containing the whole vertex set and every combinatorial
    /// hyperplane, closed under projections and parallel copies, by naive
    /// iteration.
    pub fn hyperclosure(&self, convex_sets: &[VSet]) -> BTreeSet<VSet> {
        let mut family: BTreeSet<VSet> = BTreeSet::from([(0..self.n).collect()]);
        family.extend(self.combinatorial_hyperplanes());
        loop {
            let mut next = family.clone();
            for f in &family {
                for g in &family {
                    next.insert(self.project(f, g));
                }
                next.extend(self.parallel_copies(convex_sets, f));
            }
            if next.len() == family.len() {
                return family;
            }
            family = next;
        }
    }

    pub fn max_multiplicity(&self, family: &BTreeSet<VSet>) -> usize {
        (0..self.n)
            .map(|v| family.iter().filter(|f| f.contains(&v)).count())
            .max()
            .unwrap_or(0)
    }
}

pub fn build(spec: &str) -> MedianComplex {
    generate(&spec.parse::<GeneratorSpec>().unwrap()).unwrap()
}

/// Small fixtures with at most twelve vertices.
pub fn small_fixtures() -> Vec<(String, MedianComplex)> {
    let mut specs: Vec<String> = [
        "grid:0,0",
        "grid:2,0",
        "grid:1,1",
        "grid:2,1",
        "grid:2,2",
        "box:1,1,1",
        "staircase:1",
        "staircase:2",
        "wedge(grid:1,1;3;grid:1,1;0)",
        "product(grid:2,0;tree:3@0)",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    specs.extend((0..3).map(|s| format!("tree:8@{s}")));
    specs.extend((0..3).map(|s| format!("random_median:4,4@{s}")));
    specs
        .into_iter()
        .map(|s| {
            let c = build(&s);
            (s, c)
        })
        .filter(|(_, c)| c.vertex_count() <= 12)
        .collect()
}

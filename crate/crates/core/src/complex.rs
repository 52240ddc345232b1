//! Finite CAT(0) cube complexes, represented by their 1-skeleta.
//!
//! A finite graph is the 1-skeleton of a CAT(0) cube complex exactly when it
//! is a median graph, so everything here works on vertex sets of a validated
//! median graph: intervals, medians, convexity and hulls, and the wall
//! (hyperplane) classes of edges together with their halfspaces.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type ClassId = usize;
/// An edge `(u, v)` with `u < v`.
pub type Edge = (Vertex, Vertex);
/// Per-vertex metadata, usually integer coordinates from a generator.
pub type Labels = BTreeMap<Vertex, Vec<i64>>;

const UNREACHABLE: u32 = u32::MAX;

fn normalize(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple undirected graph on `0..vertex_count`, not yet known to be median.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Rejects self-loops, repeated edges and out-of-range endpoints.
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::Structural(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{vertex_count}"
                )));
            }
            if u == v {
                return Err(Error::Structural(format!("self-loop at vertex {u}")));
            }
            normalized.push(normalize(u, v));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Structural(format!(
                "parallel edges between {} and {}",
                w[0].0, w[0].1
            )));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &normalized {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(Graph {
            vertex_count,
            edges: normalized,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    fn bfs_from(&self, source: Vertex, out: &mut [u32]) {
        out.fill(UNREACHABLE);
        out[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if out[w] == UNREACHABLE {
                    out[w] = out[u] + 1;
                    queue.push_back(w);
                }
            }
        }
    }

    /// All-pairs BFS distances.
    pub fn distances(&self) -> Distances {
        let n = self.vertex_count;
        let mut table = vec![UNREACHABLE; n * n];
        for v in 0..n {
            self.bfs_from(v, &mut table[v * n..(v + 1) * n]);
        }
        Distances { n, table }
    }

    /// Number of connected components after deleting `removed` edges.
    fn components_without(&self, removed: &[Edge]) -> Vec<usize> {
        let n = self.vertex_count;
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &w in &self.adjacency[u] {
                    if comp[w] == usize::MAX && removed.binary_search(&normalize(u, w)).is_err() {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }
}

#[derive(Clone, Debug)]
pub struct Distances {
    n: usize,
    table: Vec<u32>,
}

impl Distances {
    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> u32 {
        self.table[u * self.n + v]
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.table[..self.n].iter().all(|&d| d != UNREACHABLE)
    }
}

/// One failed median-graph invariant together with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "invariant", rename_all = "snake_case")]
pub enum Violation {
    Empty,
    Disconnected {
        unreachable: Vertex,
    },
    NotBipartite {
        odd_cycle: Vec<Vertex>,
    },
    MedianCount {
        triple: [Vertex; 3],
        medians: Vec<Vertex>,
    },
    NonTransitiveTheta {
        first: Edge,
        second: Edge,
    },
    ClassNotSplitting {
        class_edge: Edge,
        components: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "graph has no vertices"),
            Violation::Disconnected { unreachable } => {
                write!(f, "disconnected: vertex {unreachable} unreachable from 0")
            }
            Violation::NotBipartite { odd_cycle } => {
                write!(f, "not bipartite: odd cycle {odd_cycle:?}")
            }
            Violation::MedianCount { triple, medians } => write!(
                f,
                "triple {triple:?} has {} medians {medians:?}",
                medians.len()
            ),
            Violation::NonTransitiveTheta { first, second } => write!(
                f,
                "Djokovic relation not transitive: {first:?} and {second:?} share a class but are unrelated"
            ),
            Violation::ClassNotSplitting {
                class_edge,
                components,
            } => write!(
                f,
                "removing the class of {class_edge:?} leaves {components} components"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passes() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn odd_cycle(graph: &Graph) -> Option<Vec<Vertex>> {
    let n = graph.vertex_count();
    let mut depth = vec![UNREACHABLE; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if depth[root] != UNREACHABLE {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in graph.neighbors(u) {
                if depth[w] == UNREACHABLE {
                    depth[w] = depth[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if depth[w] == depth[u] {
                    // Walk both endpoints up to their common ancestor.
                    let (mut a, mut b) = (u, w);
                    let mut left = vec![a];
                    let mut right = vec![b];
                    while a != b {
                        a = parent[a];
                        b = parent[b];
                        left.push(a);
                        right.push(b);
                    }
                    right.pop();
                    right.reverse();
                    left.extend(right);
                    return Some(left);
                }
            }
        }
    }
    None
}

/// Djokovic's relation: `xy ~ uv` iff `d(x,u) + d(y,v) != d(x,v) + d(y,u)`.
pub fn djokovic_related(dist: &Distances, e: Edge, f: Edge) -> bool {
    let (x, y) = e;
    let (u, v) = f;
    dist.get(x, u) + dist.get(y, v) != dist.get(x, v) + dist.get(y, u)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Groups of indices, each sorted, ordered by least element.
    fn groups(mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = self.find(i);
            by_root.entry(r).or_default().push(i);
        }
        let mut groups: Vec<Vec<usize>> = by_root.into_values().collect();
        groups.sort_by_key(|g| g[0]);
        groups
    }
}

fn edge_groups(graph: &Graph, groups: Vec<Vec<usize>>) -> Vec<Vec<Edge>> {
    groups
        .into_iter()
        .map(|g| g.into_iter().map(|i| graph.edges()[i]).collect())
        .collect()
}

/// Edge classes of the transitive closure of Djokovic's relation, ordered by
/// least edge.
pub fn djokovic_classes(graph: &Graph, dist: &Distances) -> Vec<Vec<Edge>> {
    let edges = graph.edges();
    let mut uf = UnionFind::new(edges.len());
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            if djokovic_related(dist, edges[i], edges[j]) {
                uf.union(i, j);
            }
        }
    }
    edge_groups(graph, uf.groups())
}

/// Edge classes generated by "opposite sides of a 4-cycle", ordered by least
/// edge. On median graphs this agrees with [`djokovic_classes`].
pub fn square_classes(graph: &Graph) -> Vec<Vec<Edge>> {
    let edges = graph.edges();
    let index = |u: Vertex, v: Vertex| edges.binary_search(&normalize(u, v)).unwrap();
    let mut uf = UnionFind::new(edges.len());
    for a in 0..graph.vertex_count() {
        let nbrs = graph.neighbors(a);
        for (i, &b) in nbrs.iter().enumerate() {
            for &c in &nbrs[i + 1..] {
                for &d in graph.neighbors(b) {
                    if d != a && graph.has_edge(c, d) {
                        uf.union(index(a, b), index(c, d));
                        uf.union(index(a, c), index(b, d));
                    }
                }
            }
        }
    }
    edge_groups(graph, uf.groups())
}

/// Checks every median-graph invariant, recording one witness per failure.
pub fn validate(graph: &Graph) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = graph.vertex_count();
    if n == 0 {
        report.violations.push(Violation::Empty);
        return report;
    }
    let dist = graph.distances();
    if let Some(unreachable) = (0..n).find(|&v| dist.get(0, v) == UNREACHABLE) {
        report
            .violations
            .push(Violation::Disconnected { unreachable });
        return report;
    }
    if let Some(cycle) = odd_cycle(graph) {
        report
            .violations
            .push(Violation::NotBipartite { odd_cycle: cycle });
    }

    'triples: for x in 0..n {
        for y in (x + 1)..n {
            for z in (y + 1)..n {
                let (dxy, dyz, dxz) = (dist.get(x, y), dist.get(y, z), dist.get(x, z));
                let medians: Vec<Vertex> = (0..n)
                    .filter(|&m| {
                        dist.get(x, m) + dist.get(m, y) == dxy
                            && dist.get(y, m) + dist.get(m, z) == dyz
                            && dist.get(x, m) + dist.get(m, z) == dxz
                    })
                    .collect();
                if medians.len() != 1 {
                    report.violations.push(Violation::MedianCount {
                        triple: [x, y, z],
                        medians,
                    });
                    break 'triples;
                }
            }
        }
    }

    let classes = djokovic_classes(graph, &dist);
    'transitive: for class in &classes {
        for (i, &e) in class.iter().enumerate() {
            for &f in &class[i + 1..] {
                if !djokovic_related(&dist, e, f) {
                    report.violations.push(Violation::NonTransitiveTheta {
                        first: e,
                        second: f,
                    });
                    break 'transitive;
                }
            }
        }
    }
    for class in &classes {
        let comp = graph.components_without(class);
        let components = comp.iter().copied().max().map_or(0, |m| m + 1);
        if components != 2 {
            report.violations.push(Violation::ClassNotSplitting {
                class_edge: class[0],
                components,
            });
            break;
        }
    }
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Minus,
    Plus,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::Plus => Side::Minus,
        }
    }

    pub const BOTH: [Side; 2] = [Side::Minus, Side::Plus];
}

/// A convex vertex set of a median graph in canonical (strictly sorted) form.
///
/// Values are produced by [`MedianComplex`] methods that establish convexity;
/// equality is equality of the vertex lists.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ConvexSubcomplex {
    vertices: Vec<Vertex>,
}

impl ConvexSubcomplex {
    pub(crate) fn from_sorted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        ConvexSubcomplex { vertices }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Always false; kept for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn least(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn is_subset(&self, other: &ConvexSubcomplex) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.vertices.iter();
        'outer: for v in &self.vertices {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn is_proper_subset(&self, other: &ConvexSubcomplex) -> bool {
        self.len() < other.len() && self.is_subset(other)
    }

    /// Intersection of two convex sets; `None` when disjoint.
    pub fn intersection(&self, other: &ConvexSubcomplex) -> Option<ConvexSubcomplex> {
        let common: Vec<Vertex> = self
            .vertices
            .iter()
            .copied()
            .filter(|v| other.contains(*v))
            .collect();
        if common.is_empty() {
            None
        } else {
            Some(ConvexSubcomplex::from_sorted(common))
        }
    }
}

impl fmt::Display for ConvexSubcomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.vertices)
    }
}

/// A wall: one class of the edge partition, with its halfspaces and the two
/// combinatorial hyperplanes bounding its carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneClass {
    pub id: ClassId,
    pub dual_edges: Vec<Edge>,
    /// Halfspace containing the lesser endpoint of the least dual edge.
    pub side_minus: Vec<Vertex>,
    pub side_plus: Vec<Vertex>,
    hyperplane_minus: ConvexSubcomplex,
    hyperplane_plus: ConvexSubcomplex,
}

impl HyperplaneClass {
    pub fn halfspace(&self, side: Side) -> &[Vertex] {
        match side {
            Side::Minus => &self.side_minus,
            Side::Plus => &self.side_plus,
        }
    }

    /// Endpoints of dual edges lying in the given halfspace.
    pub fn combinatorial_hyperplane(&self, side: Side) -> &ConvexSubcomplex {
        match side {
            Side::Minus => &self.hyperplane_minus,
            Side::Plus => &self.hyperplane_plus,
        }
    }
}

/// A validated finite median graph with precomputed wall classes.
#[derive(Clone, Debug)]
pub struct MedianComplex {
    graph: Graph,
    dist: Distances,
    classes: Vec<HyperplaneClass>,
    edge_class: Vec<ClassId>,
    /// `sides[class][vertex]`
    sides: Vec<Vec<Side>>,
    labels: Option<Labels>,
    validated: bool,
}

impl MedianComplex {
    /// Validates the graph and builds its wall classes.
    pub fn new(graph: Graph, labels: Option<Labels>) -> Result<Self> {
        let report = validate(&graph);
        if !report.passes() {
            return Err(Error::NotMedian(report));
        }
        Self::build(graph, labels, true)
    }

    /// Skips the (cubic) validation pass; the result is marked unvalidated.
    pub fn new_unvalidated(graph: Graph, labels: Option<Labels>) -> Result<Self> {
        if graph.vertex_count() == 0 {
            return Err(Error::Structural("graph has no vertices".into()));
        }
        Self::build(graph, labels, false)
    }

    fn build(graph: Graph, labels: Option<Labels>, validated: bool) -> Result<Self> {
        let n = graph.vertex_count();
        if let Some(labels) = &labels {
            if let Some(v) = labels.keys().find(|&&v| v >= n) {
                return Err(Error::Structural(format!("label for missing vertex {v}")));
            }
        }
        let dist = graph.distances();
        if !dist.is_connected() {
            return Err(Error::Structural("graph is disconnected".into()));
        }
        let groups = djokovic_classes(&graph, &dist);
        let mut edge_class = vec![0; graph.edges().len()];
        let mut classes = Vec::with_capacity(groups.len());
        let mut sides = Vec::with_capacity(groups.len());
        for (id, dual_edges) in groups.into_iter().enumerate() {
            for e in &dual_edges {
                let idx = graph.edges().binary_search(e).unwrap();
                edge_class[idx] = id;
            }
            let comp = graph.components_without(&dual_edges);
            let anchor = comp[dual_edges[0].0];
            if comp.iter().any(|&c| c > 1) {
                return Err(Error::Internal(format!(
                    "class of edge {:?} does not split the graph in two",
                    dual_edges[0]
                )));
            }
            let side_of: Vec<Side> = comp
                .iter()
                .map(|&c| if c == anchor { Side::Minus } else { Side::Plus })
                .collect();
            let mut side_minus = Vec::new();
            let mut side_plus = Vec::new();
            for (v, s) in side_of.iter().enumerate() {
                match s {
                    Side::Minus => side_minus.push(v),
                    Side::Plus => side_plus.push(v),
                }
            }
            let mut hyp_minus = Vec::new();
            let mut hyp_plus = Vec::new();
            for &(u, v) in &dual_edges {
                for w in [u, v] {
                    match side_of[w] {
                        Side::Minus => hyp_minus.push(w),
                        Side::Plus => hyp_plus.push(w),
                    }
                }
            }
            hyp_minus.sort_unstable();
            hyp_plus.sort_unstable();
            if hyp_minus.len() != dual_edges.len() || hyp_plus.len() != dual_edges.len() {
                return Err(Error::Internal(format!(
                    "class of edge {:?} has a dual edge inside one halfspace",
                    dual_edges[0]
                )));
            }
            classes.push(HyperplaneClass {
                id,
                dual_edges,
                side_minus,
                side_plus,
                hyperplane_minus: ConvexSubcomplex::from_sorted(hyp_minus),
                hyperplane_plus: ConvexSubcomplex::from_sorted(hyp_plus),
            });
            sides.push(side_of);
        }
        Ok(MedianComplex {
            graph,
            dist,
            classes,
            edge_class,
            sides,
            labels,
            validated,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edges(&self) -> &[Edge] {
        self.graph.edges()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        self.graph.neighbors(v)
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn validate(&self) -> ValidationReport {
        validate(&self.graph)
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_ref()
    }

    pub fn label(&self, v: Vertex) -> Option<&[i64]> {
        self.labels.as_ref()?.get(&v).map(Vec::as_slice)
    }

    pub fn vertex_with_label(&self, label: &[i64]) -> Option<Vertex> {
        self.labels
            .as_ref()?
            .iter()
            .find(|(_, l)| l.as_slice() == label)
            .map(|(&v, _)| v)
    }

    #[inline]
    pub fn distance(&self, u: Vertex, v: Vertex) -> usize {
        self.dist.get(u, v) as usize
    }

    /// The whole complex as a subcomplex.
    pub fn whole(&self) -> ConvexSubcomplex {
        ConvexSubcomplex::from_sorted((0..self.vertex_count()).collect())
    }

    pub fn singleton(&self, v: Vertex) -> ConvexSubcomplex {
        ConvexSubcomplex::from_sorted(vec![v])
    }

    /// Hyperplane classes, numbered by least dual edge.
    pub fn classes(&self) -> &[HyperplaneClass] {
        &self.classes
    }

    pub fn class(&self, id: ClassId) -> &HyperplaneClass {
        &self.classes[id]
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn edge_class(&self, u: Vertex, v: Vertex) -> Option<ClassId> {
        let idx = self.graph.edges().binary_search(&normalize(u, v)).ok()?;
        Some(self.edge_class[idx])
    }

    #[inline]
    pub fn side_of(&self, class: ClassId, v: Vertex) -> Side {
        self.sides[class][v]
    }

    pub fn separates(&self, class: ClassId, u: Vertex, v: Vertex) -> bool {
        self.sides[class][u] != self.sides[class][v]
    }

    pub fn separating_classes(&self, u: Vertex, v: Vertex) -> Vec<ClassId> {
        (0..self.classes.len())
            .filter(|&c| self.separates(c, u, v))
            .collect()
    }

    pub fn interval(&self, x: Vertex, y: Vertex) -> Vec<Vertex> {
        let d = self.dist.get(x, y);
        (0..self.vertex_count())
            .filter(|&v| self.dist.get(x, v) + self.dist.get(v, y) == d)
            .collect()
    }

    /// The unique vertex on geodesics between each pair of `x`, `y`, `z`.
    pub fn median(&self, x: Vertex, y: Vertex, z: Vertex) -> Vertex {
        let (dxy, dyz, dxz) = (
            self.dist.get(x, y),
            self.dist.get(y, z),
            self.dist.get(x, z),
        );
        (0..self.vertex_count())
            .find(|&m| {
                self.dist.get(x, m) + self.dist.get(m, y) == dxy
                    && self.dist.get(y, m) + self.dist.get(m, z) == dyz
                    && self.dist.get(x, m) + self.dist.get(m, z) == dxz
            })
            .expect("validated median graph has a median for every triple")
    }

    fn check_vertices(&self, set: &[Vertex]) -> Result<()> {
        if set.is_empty() {
            return Err(Error::Precondition("vertex set is empty".into()));
        }
        if let Some(&v) = set.iter().find(|&&v| v >= self.vertex_count()) {
            return Err(Error::Precondition(format!("vertex {v} out of range")));
        }
        Ok(())
    }

    /// Connected and closed under intervals.
    pub fn is_convex(&self, set: &[Vertex]) -> Result<bool> {
        self.check_vertices(set)?;
        let n = self.vertex_count();
        let mut member = vec![false; n];
        for &v in set {
            member[v] = true;
        }
        let mut seen = vec![false; n];
        seen[set[0]] = true;
        let mut stack = vec![set[0]];
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &w in self.neighbors(u) {
                if member[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        let distinct = member.iter().filter(|&&m| m).count();
        if reached != distinct {
            return Ok(false);
        }
        let mut verts: Vec<Vertex> = set.to_vec();
        verts.sort_unstable();
        verts.dedup();
        for (i, &x) in verts.iter().enumerate() {
            for &y in &verts[i + 1..] {
                let d = self.dist.get(x, y);
                let escapes =
                    (0..n).any(|v| !member[v] && self.dist.get(x, v) + self.dist.get(v, y) == d);
                if escapes {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Wraps a vertex set that is already convex.
    pub fn convex(&self, set: &[Vertex]) -> Result<ConvexSubcomplex> {
        if !self.is_convex(set)? {
            return Err(Error::Precondition(format!("{set:?} is not convex")));
        }
        let mut verts = set.to_vec();
        verts.sort_unstable();
        verts.dedup();
        Ok(ConvexSubcomplex::from_sorted(verts))
    }

    /// Least interval-closed superset of `set`.
    pub fn hull(&self, set: &[Vertex]) -> Result<ConvexSubcomplex> {
        self.check_vertices(set)?;
        let n = self.vertex_count();
        let mut member = vec![false; n];
        let mut closed: Vec<Vertex> = Vec::new();
        let mut pending: VecDeque<Vertex> = VecDeque::new();
        for &v in set {
            if !member[v] {
                member[v] = true;
                pending.push_back(v);
            }
        }
        // Every pair is closed when its later vertex is processed.
        while let Some(v) = pending.pop_front() {
            for &u in &closed {
                let d = self.dist.get(u, v);
                for (w, seen) in member.iter_mut().enumerate() {
                    if !*seen && self.dist.get(u, w) + self.dist.get(w, v) == d {
                        *seen = true;
                        pending.push_back(w);
                    }
                }
            }
            closed.push(v);
        }
        Ok(ConvexSubcomplex::from_sorted(
            (0..n).filter(|&v| member[v]).collect(),
        ))
    }

    /// Largest `k` such that the graph contains a `k`-cube.
    pub fn dimension(&self) -> usize {
        let mut best = 0;
        for v in 0..self.vertex_count() {
            let nbrs = self.neighbors(v);
            if nbrs.len() <= best {
                continue;
            }
            // Two edges at v span a square iff their far ends share a
            // neighbor other than v.
            let k = nbrs.len();
            let mut square = vec![vec![false; k]; k];
            for i in 0..k {
                for j in (i + 1)..k {
                    let spans = self
                        .neighbors(nbrs[i])
                        .iter()
                        .any(|&w| w != v && self.graph.has_edge(w, nbrs[j]));
                    square[i][j] = spans;
                    square[j][i] = spans;
                }
            }
            let mut clique = Vec::new();
            self.grow_cube(v, nbrs, &square, 0, &mut clique, &mut best);
        }
        best
    }

    fn grow_cube(
        &self,
        v: Vertex,
        nbrs: &[Vertex],
        square: &[Vec<bool>],
        from: usize,
        clique: &mut Vec<usize>,
        best: &mut usize,
    ) {
        if clique.len() > *best && self.spans_cube(v, nbrs, clique) {
            *best = clique.len();
        }
        for i in from..nbrs.len() {
            if clique.len() + (nbrs.len() - i) <= *best {
                return;
            }
            if clique.iter().all(|&j| square[i][j]) {
                clique.push(i);
                self.grow_cube(v, nbrs, square, i + 1, clique, best);
                clique.pop();
            }
        }
    }

    /// Every subset of the chosen edges at `v` is realized by a vertex
    /// separated from `v` by exactly that subset of classes.
    fn spans_cube(&self, v: Vertex, nbrs: &[Vertex], chosen: &[usize]) -> bool {
        let classes: Vec<ClassId> = chosen
            .iter()
            .map(|&i| self.edge_class(v, nbrs[i]).unwrap())
            .collect();
        (0u64..(1u64 << classes.len())).all(|mask| {
            let size = mask.count_ones();
            (0..self.vertex_count()).any(|w| {
                self.dist.get(v, w) == size
                    && classes
                        .iter()
                        .enumerate()
                        .all(|(bit, &c)| self.separates(c, v, w) == (mask >> bit & 1 == 1))
            })
        })
    }
}

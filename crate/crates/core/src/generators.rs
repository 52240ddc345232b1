//! Fixture families: grids, boxes, random trees, products, staircases,
//! wedges, staircases glued along a ray, and random median subalgebras of
//! hypercubes.
//!
//! Seeded kinds draw from ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`),
//! which produces the same stream on every platform, so a spec always
//! generates the same complex.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{Edge, Graph, Labels, MedianComplex, Vertex};
use crate::error::{Error, Result};

/// Generated complexes are capped at this many vertices.
pub const MAX_VERTICES: usize = 2048;
pub const MAX_STAIRCASE: usize = 40;
pub const MAX_RAY: usize = 12;
pub const MAX_CUBE_DIMENSION: usize = 8;
pub const MAX_RANDOM_POINTS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    /// `(width+1) x (height+1)` vertex lattice.
    Grid { width: usize, height: usize },
    /// Product of paths with the given numbers of edges.
    Box { sides: Vec<usize> },
    /// Uniform random labelled tree (via a random Prüfer sequence).
    Tree { vertices: usize, seed: u64 },
    Product {
        left: Box<GeneratorSpec>,
        right: Box<GeneratorSpec>,
    },
    /// Squares `(i, j)` with `0 <= j <= i < size` of the `size x size` grid.
    Staircase { size: usize },
    /// Disjoint union with `left_vertex` and `right_vertex` identified.
    Wedge {
        left: Box<GeneratorSpec>,
        left_vertex: usize,
        right: Box<GeneratorSpec>,
        right_vertex: usize,
    },
    /// Path `0..=length` with `staircase(k)` attached at vertex `k` by its
    /// corner `(0, 0)`, for `k = 1..=length`.
    GluedStaircaseRay { length: usize },
    /// Majority closure of `points` random vertices of the `dimension`-cube,
    /// joined along covering pairs.
    RandomMedian {
        dimension: usize,
        points: usize,
        seed: u64,
    },
}

/// Graph data with coordinates, before validation.
#[derive(Clone, Debug)]
struct Raw {
    vertex_count: usize,
    edges: Vec<Edge>,
    labels: Labels,
}

impl Raw {
    fn into_complex(self) -> Result<MedianComplex> {
        let graph = Graph::new(self.vertex_count, self.edges)?;
        MedianComplex::new(graph, Some(self.labels))
    }

    fn from_complex(c: &MedianComplex) -> Raw {
        let labels = (0..c.vertex_count())
            .map(|v| {
                (
                    v,
                    c.label(v).map_or_else(|| vec![v as i64], <[i64]>::to_vec),
                )
            })
            .collect();
        Raw {
            vertex_count: c.vertex_count(),
            edges: c.edges().to_vec(),
            labels,
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::Spec(format!(
            "complex would have {n} vertices (limit {MAX_VERTICES})"
        )));
    }
    Ok(())
}

fn boxes(sides: &[usize]) -> Result<Raw> {
    let mut n: usize = 1;
    for &s in sides {
        n = n
            .checked_mul(s + 1)
            .filter(|&n| n <= MAX_VERTICES)
            .ok_or_else(|| Error::Spec(format!("box {sides:?} is too large")))?;
    }
    let mut labels = Labels::new();
    let mut edges = Vec::new();
    for v in 0..n {
        let mut rest = v;
        let mut coord = Vec::with_capacity(sides.len());
        for &s in sides {
            coord.push((rest % (s + 1)) as i64);
            rest /= s + 1;
        }
        let mut stride = 1;
        for (axis, &s) in sides.iter().enumerate() {
            if (coord[axis] as usize) < s {
                edges.push((v, v + stride));
            }
            stride *= s + 1;
        }
        labels.insert(v, coord);
    }
    Ok(Raw {
        vertex_count: n,
        edges,
        labels,
    })
}

fn tree(vertices: usize, seed: u64) -> Result<Raw> {
    if vertices == 0 {
        return Err(Error::Spec("a tree needs at least one vertex".into()));
    }
    check_size(vertices)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(vertices.saturating_sub(1));
    if vertices == 2 {
        edges.push((0, 1));
    } else if vertices > 2 {
        let prufer: Vec<usize> = (0..vertices - 2)
            .map(|_| rng.gen_range(0..vertices))
            .collect();
        let mut degree = vec![1usize; vertices];
        for &p in &prufer {
            degree[p] += 1;
        }
        let mut leaves: BTreeSet<usize> = (0..vertices).filter(|&v| degree[v] == 1).collect();
        for &p in &prufer {
            let leaf = *leaves
                .iter()
                .next()
                .expect("a Prüfer step always has a leaf");
            leaves.remove(&leaf);
            edges.push((leaf, p));
            degree[p] -= 1;
            if degree[p] == 1 {
                leaves.insert(p);
            }
        }
        let last: Vec<usize> = leaves.into_iter().collect();
        edges.push((last[0], last[1]));
    }
    Ok(Raw {
        vertex_count: vertices,
        edges,
        labels: (0..vertices).map(|v| (v, vec![v as i64])).collect(),
    })
}

fn product(a: &Raw, b: &Raw) -> Result<Raw> {
    let n = a
        .vertex_count
        .checked_mul(b.vertex_count)
        .ok_or_else(|| Error::Spec("product is too large".into()))?;
    check_size(n)?;
    let id = |x: usize, y: usize| y * a.vertex_count + x;
    let mut edges = Vec::new();
    let mut labels = Labels::new();
    for y in 0..b.vertex_count {
        for x in 0..a.vertex_count {
            let mut l = a.labels[&x].clone();
            l.extend_from_slice(&b.labels[&y]);
            labels.insert(id(x, y), l);
        }
        for &(u, v) in &a.edges {
            edges.push((id(u, y), id(v, y)));
        }
    }
    for x in 0..a.vertex_count {
        for &(u, v) in &b.edges {
            edges.push((id(x, u), id(x, v)));
        }
    }
    Ok(Raw {
        vertex_count: n,
        edges,
        labels,
    })
}

fn staircase(size: usize) -> Result<Raw> {
    if size == 0 || size > MAX_STAIRCASE {
        return Err(Error::Spec(format!(
            "staircase size must be in 1..={MAX_STAIRCASE}, got {size}"
        )));
    }
    let mut corners = BTreeSet::new();
    let mut sides = BTreeSet::new();
    for i in 0..size as i64 {
        for j in 0..=i {
            let (a, b, c, d) = ((i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1));
            corners.extend([a, b, c, d]);
            sides.extend([(a, b), (a, c), (b, d), (c, d)]);
        }
    }
    let corners: Vec<(i64, i64)> = corners.into_iter().collect();
    let idx = |p: (i64, i64)| corners.binary_search(&p).unwrap();
    Ok(Raw {
        vertex_count: corners.len(),
        edges: sides.into_iter().map(|(p, q)| (idx(p), idx(q))).collect(),
        labels: corners
            .iter()
            .enumerate()
            .map(|(v, &(x, y))| (v, vec![x, y]))
            .collect(),
    })
}

/// Appends `b` to `a`, identifying `b`'s `bv` with `a`'s `av`. Labels of the
/// appended vertices come from `relabel`.
fn glue(
    a: &Raw,
    av: usize,
    b: &Raw,
    bv: usize,
    relabel: impl Fn(&[i64]) -> Vec<i64>,
) -> Result<Raw> {
    if av >= a.vertex_count || bv >= b.vertex_count {
        return Err(Error::Spec(format!(
            "wedge vertices ({av}, {bv}) out of range ({}, {})",
            a.vertex_count, b.vertex_count
        )));
    }
    let n = a.vertex_count + b.vertex_count - 1;
    check_size(n)?;
    let map = |v: usize| -> usize {
        match v.cmp(&bv) {
            std::cmp::Ordering::Equal => av,
            std::cmp::Ordering::Less => a.vertex_count + v,
            std::cmp::Ordering::Greater => a.vertex_count + v - 1,
        }
    };
    let mut edges = a.edges.clone();
    edges.extend(b.edges.iter().map(|&(u, v)| (map(u), map(v))));
    let mut labels = a.labels.clone();
    for v in (0..b.vertex_count).filter(|&v| v != bv) {
        labels.insert(map(v), relabel(&b.labels[&v]));
    }
    Ok(Raw {
        vertex_count: n,
        edges,
        labels,
    })
}

fn wedge(a: &Raw, av: usize, b: &Raw, bv: usize) -> Result<Raw> {
    let mut tagged = a.clone();
    for l in tagged.labels.values_mut() {
        l.insert(0, 0);
    }
    glue(&tagged, av, b, bv, |l| {
        let mut out = vec![1];
        out.extend_from_slice(l);
        out
    })
}

fn glued_staircase_ray(length: usize) -> Result<Raw> {
    if length == 0 || length > MAX_RAY {
        return Err(Error::Spec(format!(
            "ray length must be in 1..={MAX_RAY}, got {length}"
        )));
    }
    let mut raw = Raw {
        vertex_count: length + 1,
        edges: (0..length).map(|k| (k, k + 1)).collect(),
        labels: (0..=length).map(|k| (k, vec![k as i64, 0, 0])).collect(),
    };
    for k in 1..=length {
        let stair = staircase(k)?;
        let corner = stair
            .labels
            .iter()
            .find(|(_, l)| l[..] == [0, 0])
            .map(|(&v, _)| v)
            .unwrap();
        raw = glue(&raw, k, &stair, corner, |l| vec![k as i64, l[0], l[1]])?;
    }
    Ok(raw)
}

fn majority(a: u32, b: u32, c: u32) -> u32 {
    (a & b) | (b & c) | (a & c)
}

fn random_median(dimension: usize, points: usize, seed: u64) -> Result<Raw> {
    if dimension == 0 || dimension > MAX_CUBE_DIMENSION {
        return Err(Error::Spec(format!(
            "hypercube dimension must be in 1..={MAX_CUBE_DIMENSION}, got {dimension}"
        )));
    }
    if points == 0 || points > MAX_RANDOM_POINTS {
        return Err(Error::Spec(format!(
            "point count must be in 1..={MAX_RANDOM_POINTS}, got {points}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut closure: BTreeSet<u32> = (0..points)
        .map(|_| rng.gen_range(0..1u32 << dimension))
        .collect();
    loop {
        let current: Vec<u32> = closure.iter().copied().collect();
        let mut grew = false;
        for (i, &a) in current.iter().enumerate() {
            for (j, &b) in current.iter().enumerate().skip(i + 1) {
                for &c in &current[j + 1..] {
                    grew |= closure.insert(majority(a, b, c));
                }
            }
        }
        if !grew {
            break;
        }
    }
    let pts: Vec<u32> = closure.into_iter().collect();
    let mut edges = Vec::new();
    for (i, &u) in pts.iter().enumerate() {
        for (j, &v) in pts.iter().enumerate().skip(i + 1) {
            let covering = pts
                .iter()
                .all(|&w| w == u || w == v || majority(u, w, v) != w);
            if covering {
                edges.push((i, j));
            }
        }
    }
    Ok(Raw {
        vertex_count: pts.len(),
        edges,
        labels: pts
            .iter()
            .enumerate()
            .map(|(v, &p)| (v, (0..dimension).map(|b| i64::from(p >> b & 1)).collect()))
            .collect(),
    })
}

fn raw(spec: &GeneratorSpec) -> Result<Raw> {
    match spec {
        GeneratorSpec::Grid { width, height } => boxes(&[*width, *height]),
        GeneratorSpec::Box { sides } => boxes(sides),
        GeneratorSpec::Tree { vertices, seed } => tree(*vertices, *seed),
        GeneratorSpec::Product { left, right } => product(&raw(left)?, &raw(right)?),
        GeneratorSpec::Staircase { size } => staircase(*size),
        GeneratorSpec::Wedge {
            left,
            left_vertex,
            right,
            right_vertex,
        } => wedge(&raw(left)?, *left_vertex, &raw(right)?, *right_vertex),
        GeneratorSpec::GluedStaircaseRay { length } => glued_staircase_ray(*length),
        GeneratorSpec::RandomMedian {
            dimension,
            points,
            seed,
        } => random_median(*dimension, *points, *seed),
    }
}

/// Builds and validates the complex described by `spec`.
pub fn generate(spec: &GeneratorSpec) -> Result<MedianComplex> {
    let is_random_median = matches!(spec, GeneratorSpec::RandomMedian { .. });
    match raw(spec)?.into_complex() {
        Err(Error::NotMedian(report)) if is_random_median => Err(Error::Internal(format!(
            "median closure {spec} failed validation: {report}"
        ))),
        other => other,
    }
}

/// Cartesian product of two complexes; labels are concatenated.
pub fn product_of(a: &MedianComplex, b: &MedianComplex) -> Result<MedianComplex> {
    product(&Raw::from_complex(a), &Raw::from_complex(b))?.into_complex()
}

/// Wedge of two complexes at the given vertices.
pub fn wedge_of(
    a: &MedianComplex,
    av: Vertex,
    b: &MedianComplex,
    bv: Vertex,
) -> Result<MedianComplex> {
    wedge(&Raw::from_complex(a), av, &Raw::from_complex(b), bv)?.into_complex()
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Grid { width, height } => write!(f, "grid:{width},{height}"),
            GeneratorSpec::Box { sides } => {
                let parts: Vec<String> = sides.iter().map(ToString::to_string).collect();
                write!(f, "box:{}", parts.join(","))
            }
            GeneratorSpec::Tree { vertices, seed } => write!(f, "tree:{vertices}@{seed}"),
            GeneratorSpec::Product { left, right } => write!(f, "product({left};{right})"),
            GeneratorSpec::Staircase { size } => write!(f, "staircase:{size}"),
            GeneratorSpec::Wedge {
                left,
                left_vertex,
                right,
                right_vertex,
            } => write!(f, "wedge({left};{left_vertex};{right};{right_vertex})"),
            GeneratorSpec::GluedStaircaseRay { length } => {
                write!(f, "glued_staircase_ray:{length}")
            }
            GeneratorSpec::RandomMedian {
                dimension,
                points,
                seed,
            } => write!(f, "random_median:{dimension},{points}@{seed}"),
        }
    }
}

/// Splits on `;` outside parentheses.
fn split_top(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ';' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn parse_num<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Spec(format!("cannot parse {what} from {s:?}")))
}

impl GeneratorSpec {
    /// Builds an atomic spec from a kind name, integer parameters and a seed.
    pub fn from_parts(kind: &str, params: &[usize], seed: u64) -> Result<GeneratorSpec> {
        let want = |n: usize| -> Result<()> {
            if params.len() == n {
                Ok(())
            } else {
                Err(Error::Spec(format!(
                    "{kind} takes {n} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        Ok(match kind {
            "grid" => {
                want(2)?;
                GeneratorSpec::Grid {
                    width: params[0],
                    height: params[1],
                }
            }
            "box" => GeneratorSpec::Box {
                sides: params.to_vec(),
            },
            "tree" => {
                want(1)?;
                GeneratorSpec::Tree {
                    vertices: params[0],
                    seed,
                }
            }
            "staircase" => {
                want(1)?;
                GeneratorSpec::Staircase { size: params[0] }
            }
            "glued_staircase_ray" => {
                want(1)?;
                GeneratorSpec::GluedStaircaseRay { length: params[0] }
            }
            "random_median" => {
                want(2)?;
                GeneratorSpec::RandomMedian {
                    dimension: params[0],
                    points: params[1],
                    seed,
                }
            }
            "product" | "wedge" => {
                return Err(Error::Spec(format!("{kind} is built from two sub-specs")))
            }
            other => return Err(Error::Spec(format!("unknown generator kind {other:?}"))),
        })
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    /// Parses the compact form produced by `Display`, e.g. `grid:2,2`,
    /// `tree:8@3`, `product(grid:1,1;tree:3@0)`, `wedge(grid:1,1;3;staircase:2;0)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        for (name, arity) in [("product", 2), ("wedge", 4)] {
            if let Some(inner) = s.strip_prefix(name).and_then(|r| r.strip_prefix('(')) {
                let inner = inner
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Spec(format!("unbalanced parentheses in {s:?}")))?;
                let parts = split_top(inner);
                if parts.len() != arity {
                    return Err(Error::Spec(format!(
                        "{name} takes {arity} ';'-separated arguments in {s:?}"
                    )));
                }
                return Ok(if arity == 2 {
                    GeneratorSpec::Product {
                        left: Box::new(parts[0].parse()?),
                        right: Box::new(parts[1].parse()?),
                    }
                } else {
                    GeneratorSpec::Wedge {
                        left: Box::new(parts[0].parse()?),
                        left_vertex: parse_num(parts[1], "wedge vertex")?,
                        right: Box::new(parts[2].parse()?),
                        right_vertex: parse_num(parts[3], "wedge vertex")?,
                    }
                });
            }
        }
        let (body, seed) = match s.split_once('@') {
            Some((b, seed)) => (b, parse_num(seed, "seed")?),
            None => (s, 0),
        };
        let (kind, params) = body.split_once(':').unwrap_or((body, ""));
        let params: Vec<usize> = if params.trim().is_empty() {
            Vec::new()
        } else {
            params
                .split(',')
                .map(|p| parse_num(p, "parameter"))
                .collect::<Result<_>>()?
        };
        GeneratorSpec::from_parts(kind.trim(), &params, seed)
    }
}

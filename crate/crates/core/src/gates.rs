//! Gate maps onto convex subcomplexes and what they induce: projections,
//! crossing signatures, parallelism, carriers and product regions.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::complex::{ClassId, ConvexSubcomplex, MedianComplex, Side, Vertex};
use crate::error::{Error, Result};

/// The hyperplane classes crossing a convex subcomplex, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct CrossingSignature {
    class_ids: Vec<ClassId>,
}

impl CrossingSignature {
    pub fn from_classes(mut class_ids: Vec<ClassId>) -> Self {
        class_ids.sort_unstable();
        class_ids.dedup();
        CrossingSignature { class_ids }
    }

    pub fn class_ids(&self) -> &[ClassId] {
        &self.class_ids
    }

    pub fn len(&self) -> usize {
        self.class_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_ids.is_empty()
    }

    pub fn contains(&self, class: ClassId) -> bool {
        self.class_ids.binary_search(&class).is_ok()
    }

    pub fn is_subset(&self, other: &CrossingSignature) -> bool {
        self.class_ids.iter().all(|&c| other.contains(c))
    }

    pub fn is_disjoint(&self, other: &CrossingSignature) -> bool {
        self.class_ids.iter().all(|&c| !other.contains(c))
    }

    pub fn intersection(&self, other: &CrossingSignature) -> CrossingSignature {
        CrossingSignature {
            class_ids: self
                .class_ids
                .iter()
                .copied()
                .filter(|&c| other.contains(c))
                .collect(),
        }
    }

    pub fn union(&self, other: &CrossingSignature) -> CrossingSignature {
        let mut ids = self.class_ids.clone();
        ids.extend_from_slice(&other.class_ids);
        CrossingSignature::from_classes(ids)
    }
}

impl fmt::Display for CrossingSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.class_ids)
    }
}

/// `P_A`, the hull of all parallel copies of `A`, with its splitting
/// `P_A = A x (complement of A at the basepoint)`.
#[derive(Clone, Debug)]
pub struct ProductRegion {
    pub base: ConvexSubcomplex,
    pub basepoint: Vertex,
    pub complement: ConvexSubcomplex,
    pub region: ConvexSubcomplex,
    /// region vertex -> (vertex of `base`, vertex of `complement`)
    pub coordinates: BTreeMap<Vertex, (Vertex, Vertex)>,
}

impl ProductRegion {
    /// The copy of the base sitting over a complement vertex.
    pub fn slice_over(&self, b: Vertex) -> Vec<Vertex> {
        self.coordinates
            .iter()
            .filter(|(_, &(_, c))| c == b)
            .map(|(&v, _)| v)
            .collect()
    }
}

impl MedianComplex {
    /// Closest vertex of `y` to `x`.
    pub fn gate(&self, y: &ConvexSubcomplex, x: Vertex) -> Vertex {
        if y.contains(x) {
            return x;
        }
        *y.vertices()
            .iter()
            .min_by_key(|&&v| self.distance(x, v))
            .expect("convex subcomplexes are nonempty")
    }

    /// Image of `z` under the gate map onto `y`.
    pub fn project(&self, y: &ConvexSubcomplex, z: &ConvexSubcomplex) -> ConvexSubcomplex {
        let mut image: Vec<Vertex> = z.vertices().iter().map(|&v| self.gate(y, v)).collect();
        image.sort_unstable();
        image.dedup();
        ConvexSubcomplex::from_sorted(image)
    }

    /// A class crosses a convex set iff the set meets both of its halfspaces.
    pub fn class_crosses_set(&self, class: ClassId, s: &ConvexSubcomplex) -> bool {
        let first = self.side_of(class, s.least());
        s.vertices()
            .iter()
            .any(|&v| self.side_of(class, v) != first)
    }

    pub fn crossing_signature(&self, s: &ConvexSubcomplex) -> CrossingSignature {
        CrossingSignature {
            class_ids: (0..self.class_count())
                .filter(|&c| self.class_crosses_set(c, s))
                .collect(),
        }
    }

    /// Two distinct walls cross iff all four quarter-spaces are nonempty.
    pub fn crosses(&self, h: ClassId, w: ClassId) -> Result<bool> {
        if h == w {
            return Err(Error::Precondition(format!(
                "crossing is defined for distinct classes, got {h} twice"
            )));
        }
        let mut seen = [[false; 2]; 2];
        for v in 0..self.vertex_count() {
            let i = (self.side_of(h, v) == Side::Plus) as usize;
            let j = (self.side_of(w, v) == Side::Plus) as usize;
            seen[i][j] = true;
        }
        Ok(seen.iter().flatten().all(|&b| b))
    }

    pub fn is_parallel(&self, s: &ConvexSubcomplex, t: &ConvexSubcomplex) -> bool {
        self.crossing_signature(s) == self.crossing_signature(t)
    }

    /// `s` is parallel to a subcomplex of `t`.
    pub fn parallel_into(&self, s: &ConvexSubcomplex, t: &ConvexSubcomplex) -> bool {
        self.crossing_signature(s)
            .is_subset(&self.crossing_signature(t))
    }

    /// Classes crossing `hull(f ∪ g)` but neither `f` nor `g`.
    pub fn separator_classes(&self, f: &ConvexSubcomplex, g: &ConvexSubcomplex) -> Vec<ClassId> {
        let mut union = f.vertices().to_vec();
        union.extend_from_slice(g.vertices());
        let hull = self.hull(&union).expect("nonempty union");
        let (sf, sg) = (self.crossing_signature(f), self.crossing_signature(g));
        self.crossing_signature(&hull)
            .class_ids()
            .iter()
            .copied()
            .filter(|&c| !sf.contains(c) && !sg.contains(c))
            .collect()
    }

    /// Least distance between a vertex of `a` and a vertex of `b`.
    pub fn set_distance(&self, a: &ConvexSubcomplex, b: &ConvexSubcomplex) -> usize {
        a.vertices()
            .iter()
            .flat_map(|&u| b.vertices().iter().map(move |&v| (u, v)))
            .map(|(u, v)| self.distance(u, v))
            .min()
            .unwrap_or(0)
    }

    pub fn product_region(
        &self,
        base: &ConvexSubcomplex,
        basepoint: Vertex,
    ) -> Result<ProductRegion> {
        let complement = self.orth(base, basepoint)?;
        let mut union = base.vertices().to_vec();
        union.extend_from_slice(complement.vertices());
        let region = self.hull(&union)?;
        let mut coordinates = BTreeMap::new();
        let mut seen = std::collections::BTreeSet::new();
        for &v in region.vertices() {
            let coord = (self.gate(base, v), self.gate(&complement, v));
            if !seen.insert(coord) {
                return Err(Error::Internal(format!(
                    "product coordinates collide at {coord:?} for base {base}"
                )));
            }
            coordinates.insert(v, coord);
        }
        if coordinates.len() != base.len() * complement.len() {
            return Err(Error::Internal(format!(
                "region of {base} has {} vertices, expected {} x {}",
                coordinates.len(),
                base.len(),
                complement.len()
            )));
        }
        Ok(ProductRegion {
            base: base.clone(),
            basepoint,
            complement,
            region,
            coordinates,
        })
    }

    /// Every convex subcomplex parallel to `a` (including `a`), sorted.
    pub fn parallel_copies(&self, a: &ConvexSubcomplex) -> Vec<ConvexSubcomplex> {
        let pr = self
            .product_region(a, a.least())
            .expect("product region of a convex subcomplex");
        let mut copies: Vec<ConvexSubcomplex> = pr
            .complement
            .vertices()
            .iter()
            .map(|&b| ConvexSubcomplex::from_sorted(pr.slice_over(b)))
            .collect();
        copies.sort();
        copies
    }

    /// Union of the closed cubes meeting a hyperplane.
    pub fn carrier(&self, class: ClassId) -> ConvexSubcomplex {
        let h = self.class(class);
        let mut verts = h.combinatorial_hyperplane(Side::Minus).vertices().to_vec();
        verts.extend_from_slice(h.combinatorial_hyperplane(Side::Plus).vertices());
        verts.sort_unstable();
        ConvexSubcomplex::from_sorted(verts)
    }
}

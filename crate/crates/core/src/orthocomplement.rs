//! Orthogonal complements at a basepoint, and compact witnesses realizing
//! hyperclosure members as complements.

use crate::complex::{ClassId, ConvexSubcomplex, MedianComplex, Side, Vertex};
use crate::error::{Error, Result};
use crate::hyperclosure::Hyperclosure;

/// `⊥A` at `a`: the fibre through `a` of `P_A = A x ⊥A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedComplement {
    pub base: ConvexSubcomplex,
    pub basepoint: Vertex,
    pub complement: ConvexSubcomplex,
}

impl MedianComplex {
    /// Orthogonal complement of `a_set` at `a`.
    ///
    /// For a single vertex this is the whole complex. Otherwise let `Y` be
    /// the intersection of the combinatorial hyperplanes through `a` of the
    /// classes that cross `a_set` at `a`; the complement is the intersection
    /// of the gate images in `Y` of every combinatorial hyperplane of every
    /// class crossing `a_set`.
    pub fn orth(&self, a_set: &ConvexSubcomplex, a: Vertex) -> Result<ConvexSubcomplex> {
        if !a_set.contains(a) {
            return Err(Error::Precondition(format!(
                "basepoint {a} is not in {a_set}"
            )));
        }
        if a_set.len() == 1 {
            return Ok(self.whole());
        }
        let signature = self.crossing_signature(a_set);
        let at_basepoint: Vec<ClassId> = {
            let mut cs: Vec<ClassId> = self
                .neighbors(a)
                .iter()
                .filter_map(|&w| self.edge_class(a, w))
                .filter(|&c| signature.contains(c))
                .collect();
            cs.sort_unstable();
            cs.dedup();
            cs
        };
        let mut y = self.whole();
        for &c in &at_basepoint {
            let side = self.side_of(c, a);
            y = y
                .intersection(self.class(c).combinatorial_hyperplane(side))
                .expect("combinatorial hyperplanes through a share a");
        }
        let mut result = y.clone();
        for &c in signature.class_ids() {
            for side in Side::BOTH {
                let image = self.project(&y, self.class(c).combinatorial_hyperplane(side));
                result = result.intersection(&image).ok_or_else(|| {
                    Error::Internal(format!("complement of {a_set} at {a} lost its basepoint"))
                })?;
            }
        }
        Ok(result)
    }

    pub fn based_complement(
        &self,
        base: &ConvexSubcomplex,
        basepoint: Vertex,
    ) -> Result<BasedComplement> {
        Ok(BasedComplement {
            base: base.clone(),
            basepoint,
            complement: self.orth(base, basepoint)?,
        })
    }
}

/// A convex `C` and `x ∈ C ∩ F` with `orth(C, x) = F`, for a member `F` of
/// the hyperclosure.
///
/// Follows the member's grading: hyperplane sides come from a dual edge, and
/// `F = g_H(F')` comes from the hull of a dual edge of `H` and the witness of
/// `F'`, both slid within their parallelism classes to be as close as
/// possible.
pub fn witness_compact(
    complex: &MedianComplex,
    closure: &Hyperclosure,
    f: &ConvexSubcomplex,
) -> Result<(ConvexSubcomplex, Vertex)> {
    let idx = closure
        .index_of(f)
        .ok_or_else(|| Error::Domain(format!("{f} is not in the hyperclosure")))?;
    witness_for(complex, closure, idx)
}

fn witness_for(
    complex: &MedianComplex,
    closure: &Hyperclosure,
    idx: usize,
) -> Result<(ConvexSubcomplex, Vertex)> {
    let f = closure.member(idx);
    let Some(step) = closure.grade_step(idx) else {
        let x = f.least();
        return Ok((complex.singleton(x), x));
    };
    let (class, side) = step.hyperplane;
    let hyperplane = complex.class(class).dual_edges.clone();

    if closure.grade(step.source) == 0 {
        // f is the combinatorial hyperplane itself: any dual edge works.
        let &(u, v) = hyperplane
            .iter()
            .find(|&&(u, v)| f.contains(u) || f.contains(v))
            .expect("dual edges meet both combinatorial hyperplanes");
        let x = if complex.side_of(class, u) == side {
            u
        } else {
            v
        };
        let c = complex.convex(&[u, v])?;
        return check_witness(complex, f, c, x);
    }

    let (c_prev, _) = witness_for(complex, closure, step.source)?;
    let mut best: Option<(usize, (usize, usize), ConvexSubcomplex)> = None;
    for copy in complex.parallel_copies(&c_prev) {
        for &(u, v) in &hyperplane {
            let e = complex.convex(&[u, v])?;
            let key = (complex.set_distance(&e, &copy), (u, v));
            let better = match &best {
                None => true,
                Some((d, pair, prev)) => (key.0, key.1, &copy) < (*d, *pair, prev),
            };
            if better {
                best = Some((key.0, key.1, copy.clone()));
            }
        }
    }
    let (_, (u, v), c_slid) = best.expect("a class has at least one dual edge");
    let mut union = c_slid.vertices().to_vec();
    union.extend([u, v]);
    let c = complex.hull(&union)?;

    if let Some(found) = basepoint_in(complex, f, &c)? {
        return Ok(found);
    }
    // orth(C, x) is parallel to f for every x; slide C to meet f correctly.
    for copy in complex.parallel_copies(&c) {
        if let Some(found) = basepoint_in(complex, f, &copy)? {
            return Ok(found);
        }
    }
    Err(Error::Internal(format!(
        "no basepoint of the constructed witness {c} has complement {f}"
    )))
}

fn basepoint_in(
    complex: &MedianComplex,
    f: &ConvexSubcomplex,
    c: &ConvexSubcomplex,
) -> Result<Option<(ConvexSubcomplex, Vertex)>> {
    for &x in c.vertices() {
        if f.contains(x) && complex.orth(c, x)? == *f {
            return Ok(Some((c.clone(), x)));
        }
    }
    Ok(None)
}

fn check_witness(
    complex: &MedianComplex,
    f: &ConvexSubcomplex,
    c: ConvexSubcomplex,
    x: Vertex,
) -> Result<(ConvexSubcomplex, Vertex)> {
    if complex.orth(&c, x)? == *f {
        Ok((c, x))
    } else {
        Err(Error::Internal(format!(
            "dual edge {c} at {x} does not have complement {f}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, GeneratorSpec};
    use crate::hyperclosure::{hyperclosure, Limits};

    fn at(c: &MedianComplex, x: i64, y: i64) -> Vertex {
        c.vertex_with_label(&[x, y]).unwrap()
    }

    fn set(c: &MedianComplex, pts: &[(i64, i64)]) -> ConvexSubcomplex {
        let vs: Vec<Vertex> = pts.iter().map(|&(x, y)| at(c, x, y)).collect();
        c.convex(&vs).unwrap()
    }

    #[test]
    fn complement_examples() {
        let q = generate(&GeneratorSpec::Grid {
            width: 1,
            height: 1,
        })
        .unwrap();
        let e = q.convex(&[0, 1]).unwrap();
        assert_eq!(q.orth(&e, 0).unwrap().vertices(), &[0, 2]);
        for x in 0..4 {
            assert_eq!(q.orth(&q.singleton(x), x).unwrap(), q.whole());
            assert_eq!(q.orth(&q.whole(), x).unwrap(), q.singleton(x));
        }
        assert!(matches!(q.orth(&e, 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn staircase_row_complement() {
        // The row's product region stops at height 1: (2,2) is separated
        // from (2,0) by a wall that misses the left square.
        let s = generate(&GeneratorSpec::Staircase { size: 2 }).unwrap();
        let bottom = set(&s, &[(0, 0), (1, 0), (2, 0)]);
        assert_eq!(
            s.orth(&bottom, at(&s, 2, 0)).unwrap(),
            set(&s, &[(2, 0), (2, 1)])
        );
    }

    #[test]
    fn witness_examples() {
        let q = generate(&GeneratorSpec::Grid {
            width: 1,
            height: 1,
        })
        .unwrap();
        let h = hyperclosure(&q, Limits::default()).unwrap();
        let f = q.convex(&[0, 2]).unwrap();
        let (c, x) = witness_compact(&q, &h, &f).unwrap();
        assert_eq!((c.vertices(), x), (&[0, 1][..], 0));
        let (c, x) = witness_compact(&q, &h, &q.whole()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(q.orth(&c, x).unwrap(), q.whole());

        let s = generate(&GeneratorSpec::Staircase { size: 2 }).unwrap();
        let hs = hyperclosure(&s, Limits::default()).unwrap();
        let f = set(&s, &[(1, 0), (2, 0)]);
        let (c, x) = witness_compact(&s, &hs, &f).unwrap();
        assert!(c.contains(x) && f.contains(x));
        assert_eq!(s.orth(&c, x).unwrap(), f);

        let not_member = set(&s, &[(0, 0), (1, 0)]);
        assert!(matches!(
            witness_compact(&s, &hs, &not_member),
            Err(Error::Domain(_))
        ));
    }
}

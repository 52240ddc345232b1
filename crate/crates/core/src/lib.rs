//! Finite CAT(0) cube complexes as median graphs: hyperplanes, gate
//! projections, parallelism, orthogonal complements and the hyperclosure,
//! each checked against brute-force oracles.

pub mod cli;
pub mod complex;
pub mod error;
pub mod format;
pub mod gates;
pub mod generators;
pub mod hyperclosure;
pub mod orthocomplement;
pub mod verify;

pub use complex::{
    validate, ClassId, ConvexSubcomplex, Edge, Graph, HyperplaneClass, MedianComplex, Side,
    ValidationReport, Vertex,
};
pub use error::{Error, Result};
pub use gates::{CrossingSignature, ProductRegion};
pub use generators::{generate, GeneratorSpec};
pub use hyperclosure::{
    hyperclosure, oracle_hyperclosure, Hyperclosure, Limits, MultiplicityProfile,
};
pub use orthocomplement::{witness_compact, BasedComplement};

//! The JSON complex file and DOT export.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complex::{Graph, MedianComplex};
use crate::error::Result;

/// On-disk form: `{"vertices": n, "edges": [[u, v], ...], "labels": {...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<usize, Vec<i64>>>,
    /// Compact generator spec the complex was built from, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

impl ComplexFile {
    pub fn from_complex(complex: &MedianComplex, generator: Option<String>) -> Self {
        ComplexFile {
            vertices: complex.vertex_count(),
            edges: complex.edges().iter().map(|&(u, v)| [u, v]).collect(),
            labels: complex.labels().cloned(),
            generator,
        }
    }

    /// Builds the complex, running the median-graph validator unless
    /// `validate` is false.
    pub fn to_complex(&self, validate: bool) -> Result<MedianComplex> {
        let graph = Graph::new(self.vertices, self.edges.iter().map(|&[u, v]| (u, v)))?;
        if validate {
            MedianComplex::new(graph, self.labels.clone())
        } else {
            MedianComplex::new_unvalidated(graph, self.labels.clone())
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()?)?;
        Ok(())
    }
}

const PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#393b79", "#637939",
];

/// Undirected DOT graph; vertices show coordinates when labelled, edges are
/// coloured and tagged by hyperplane class.
pub fn to_dot(complex: &MedianComplex) -> String {
    let mut out = String::from("graph complex {\n  node [shape=circle, fontsize=10];\n");
    for v in 0..complex.vertex_count() {
        let label = match complex.label(v) {
            Some(coords) => {
                let parts: Vec<String> = coords.iter().map(ToString::to_string).collect();
                format!("({})", parts.join(","))
            }
            None => v.to_string(),
        };
        writeln!(out, "  {v} [label=\"{label}\"];").unwrap();
    }
    for &(u, v) in complex.edges() {
        let class = complex.edge_class(u, v).expect("every edge has a class");
        writeln!(
            out,
            "  {u} -- {v} [color=\"{}\", label=\"H{class}\"];",
            PALETTE[class % PALETTE.len()]
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

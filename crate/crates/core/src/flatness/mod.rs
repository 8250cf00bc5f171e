//! Ricci flatness of a vertex, encoded by assignment matrices.
//!
//! With `S₁(x) = {v_1, …, v_d}` and maps `η_i` normalized to `η_i(x) = v_i`,
//! the matrix `A_ij = η_i(v_j)` certifies flatness when every entry is
//! adjacent to `v_j`, every column is injective and row `i` enumerates
//! `S₁(v_i)`. Flavor (R) adds `A_ii = x`, flavor (S) adds `A_ij = A_ji`.

mod certificate;
mod kdd;
mod search;

pub use certificate::CertificateJson;
pub use kdd::{kdd_graph, kdd_matrix};
pub use search::{search_flatness, search_flatness_with, FlatnessOutcome, FlatnessVerdict, SearchOptions, SearchStats};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FlatnessFlavor {
    Plain,
    R,
    S,
    RS,
}

impl FlatnessFlavor {
    pub const ALL: [FlatnessFlavor; 4] = [FlatnessFlavor::Plain, FlatnessFlavor::R, FlatnessFlavor::S, FlatnessFlavor::RS];

    pub fn reflexive(self) -> bool {
        matches!(self, FlatnessFlavor::R | FlatnessFlavor::RS)
    }

    pub fn symmetric(self) -> bool {
        matches!(self, FlatnessFlavor::S | FlatnessFlavor::RS)
    }

    /// True when every constraint of `other` is also a constraint of `self`.
    pub fn implies(self, other: FlatnessFlavor) -> bool {
        (self.reflexive() || !other.reflexive()) && (self.symmetric() || !other.symmetric())
    }
}

impl fmt::Display for FlatnessFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FlatnessFlavor::Plain => "plain",
            FlatnessFlavor::R => "R",
            FlatnessFlavor::S => "S",
            FlatnessFlavor::RS => "RS",
        })
    }
}

impl FromStr for FlatnessFlavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "plain" | "flat" => Ok(FlatnessFlavor::Plain),
            "r" => Ok(FlatnessFlavor::R),
            "s" => Ok(FlatnessFlavor::S),
            "rs" | "sr" => Ok(FlatnessFlavor::RS),
            other => Err(format!("unknown flavor `{other}`; expected plain, R, S or RS")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlatnessError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {vertex} in the 1-ball has degree {degree}, expected {expected}")]
    NotRegular { vertex: VertexId, degree: usize, expected: usize },
    #[error("degree {d} exceeds the search cap {cap}")]
    TooLarge { d: usize, cap: usize },
    #[error("K_{{d,d}} is (RS)-Ricci flat only for even d, got d = {0}")]
    OddRs(usize),
    #[error("degree must be at least {min}, got {d}")]
    TooSmall { d: usize, min: usize },
    #[error("malformed certificate: {0}")]
    Malformed(String),
}

/// `A_ij = η_i(v_j)` as parent vertex ids, for `neighbors = (v_1, …, v_d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentMatrix {
    pub center: VertexId,
    pub neighbors: Vec<VertexId>,
    pub entries: Vec<Vec<VertexId>>,
}

impl AssignmentMatrix {
    pub fn degree(&self) -> usize {
        self.neighbors.len()
    }

    /// `η_i(u)` for `u ∈ B₁(x)`.
    pub fn eta(&self, i: usize, u: VertexId) -> Option<VertexId> {
        if u == self.center {
            return Some(self.neighbors[i]);
        }
        let j = self.neighbors.iter().position(|&v| v == u)?;
        Some(self.entries[i][j])
    }
}

/// Which condition an entry breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rule {
    /// The matrix or neighbor list has the wrong shape.
    Shape,
    /// `v_i` has a degree other than `d`.
    Degree,
    /// `A_ij` is not adjacent to `v_j`.
    Adjacency,
    /// `A_ij` is not adjacent to `v_i`.
    RowRange,
    /// `A_ij` repeats an earlier entry of row `i`.
    RowRepeat,
    /// `A_ij` repeats an earlier entry of column `j`.
    ColumnRepeat,
    /// `A_ii ≠ x` under a reflexive flavor.
    Reflexive,
    /// `A_ij ≠ A_ji` under a symmetric flavor.
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub rule: Rule,
}

/// `D_ij = S₁(v_i) ∩ S₁(v_j)` for `i ≠ j` and `D_ii = S₁(v_i)`, with the
/// neighbors of `x` in increasing order.
pub fn candidate_domains(g: &Graph, x: VertexId) -> Result<Vec<Vec<Vec<VertexId>>>, GraphError> {
    g.require_vertex(x)?;
    let nbrs = g.neighbors(x);
    Ok(nbrs
        .iter()
        .map(|&vi| {
            nbrs.iter()
                .map(|&vj| if vi == vj { g.neighbors(vi).to_vec() } else { g.common_neighbors(vi, vj).collect() })
                .collect()
        })
        .collect())
}

/// Fails unless every vertex of `B₁(x)` has the degree of `x`.
pub(crate) fn require_local_regularity(g: &Graph, x: VertexId) -> Result<usize, FlatnessError> {
    g.require_vertex(x)?;
    let d = g.degree(x);
    for &v in g.neighbors(x) {
        if g.degree(v) != d {
            return Err(FlatnessError::NotRegular { vertex: v, degree: g.degree(v), expected: d });
        }
    }
    Ok(d)
}

/// Lists every violated condition; an empty list means `a` certifies the
/// flavor at `a.center`.
pub fn verify_certificate(g: &Graph, a: &AssignmentMatrix, flavor: FlatnessFlavor) -> Vec<Violation> {
    let mut out = Vec::new();
    let x = a.center;
    let d = a.degree();
    let expected: BTreeSet<VertexId> = if x < g.vertex_count() { g.neighbors(x).iter().copied().collect() } else { BTreeSet::new() };
    let given: BTreeSet<VertexId> = a.neighbors.iter().copied().collect();
    let in_range = |v: VertexId| v < g.vertex_count();
    if given != expected
        || given.len() != d
        || a.entries.len() != d
        || a.entries.iter().any(|row| row.len() != d || !row.iter().all(|&v| in_range(v)))
    {
        return vec![Violation { i: 0, j: 0, rule: Rule::Shape }];
    }
    for (i, &vi) in a.neighbors.iter().enumerate() {
        if g.degree(vi) != d {
            out.push(Violation { i, j: i, rule: Rule::Degree });
        }
    }
    for i in 0..d {
        let vi = a.neighbors[i];
        let mut row_seen = BTreeSet::new();
        for j in 0..d {
            let entry = a.entries[i][j];
            let vj = a.neighbors[j];
            if !g.has_edge(entry, vj) {
                out.push(Violation { i, j, rule: Rule::Adjacency });
            }
            if !g.has_edge(entry, vi) {
                out.push(Violation { i, j, rule: Rule::RowRange });
            }
            if !row_seen.insert(entry) {
                out.push(Violation { i, j, rule: Rule::RowRepeat });
            }
            if (0..i).any(|k| a.entries[k][j] == entry) {
                out.push(Violation { i, j, rule: Rule::ColumnRepeat });
            }
            if flavor.reflexive() && i == j && entry != x {
                out.push(Violation { i, j, rule: Rule::Reflexive });
            }
            if flavor.symmetric() && i < j && entry != a.entries[j][i] {
                out.push(Violation { i, j, rule: Rule::Symmetric });
            }
        }
    }
    out
}

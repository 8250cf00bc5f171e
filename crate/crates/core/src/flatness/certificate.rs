use serde::{Deserialize, Serialize};

use super::{AssignmentMatrix, FlatnessError};
use crate::graph::{Graph, VertexId};

/// Serialized certificate. Entries are labels: `0` is the center, `1..=d`
/// are `neighbors` in the given order, and `d+1, …` are the vertices of
/// `second_sphere` (always listed in increasing id order).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub center: VertexId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flavor: Option<String>,
    pub neighbors: Vec<VertexId>,
    #[serde(default)]
    pub second_sphere: Vec<VertexId>,
    pub entries: Vec<Vec<usize>>,
}

fn malformed(message: impl Into<String>) -> FlatnessError {
    FlatnessError::Malformed(message.into())
}

/// Vertices in label order: center, neighbors as given, then `S₂(x)`.
fn label_table(g: &Graph, center: VertexId, neighbors: &[VertexId]) -> Vec<VertexId> {
    std::iter::once(center).chain(neighbors.iter().copied()).chain(g.sphere(center, 2)).collect()
}

impl CertificateJson {
    pub fn from_matrix(g: &Graph, a: &AssignmentMatrix) -> Result<Self, FlatnessError> {
        g.require_vertex(a.center)?;
        let table = label_table(g, a.center, &a.neighbors);
        let label = |v: VertexId| {
            table.iter().position(|&w| w == v).ok_or_else(|| malformed(format!("entry {v} lies outside B_2(x)")))
        };
        let entries = a
            .entries
            .iter()
            .map(|row| row.iter().map(|&v| label(v)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CertificateJson {
            center: a.center,
            flavor: None,
            neighbors: a.neighbors.clone(),
            second_sphere: g.sphere(a.center, 2),
            entries,
        })
    }

    /// Resolves labels against `g`. Neighbor order is taken as given; the
    /// verifier decides whether the matrix is a certificate.
    pub fn to_matrix(&self, g: &Graph) -> Result<AssignmentMatrix, FlatnessError> {
        g.require_vertex(self.center)?;
        let mut sorted = self.neighbors.clone();
        sorted.sort_unstable();
        if sorted != g.neighbors(self.center) {
            return Err(malformed(format!("neighbor list is not a permutation of S_1({})", self.center)));
        }
        let s2 = g.sphere(self.center, 2);
        if !self.second_sphere.is_empty() && self.second_sphere != s2 {
            return Err(malformed("second sphere does not match the graph"));
        }
        let table = label_table(g, self.center, &self.neighbors);
        let entries = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&m| table.get(m).copied().ok_or_else(|| malformed(format!("label {m} out of range"))))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AssignmentMatrix { center: self.center, neighbors: self.neighbors.clone(), entries })
    }
}

impl AssignmentMatrix {
    /// Builds a matrix from label rows with neighbors in increasing order.
    pub fn from_labels(g: &Graph, center: VertexId, rows: &[Vec<usize>]) -> Result<Self, FlatnessError> {
        CertificateJson {
            center,
            flavor: None,
            neighbors: g.neighbors(center).to_vec(),
            second_sphere: Vec::new(),
            entries: rows.to_vec(),
        }
        .to_matrix(g)
    }
}

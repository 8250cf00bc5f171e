//! Finite simple connected graphs with dense vertex ids.
//!
//! A [`Graph`] is immutable once built. Construction rejects loops,
//! out-of-range ids and disconnected edge sets; duplicate edges are
//! collapsed with a warning.

mod drg;
mod io;
mod iso;
mod local;
mod matching;

pub use drg::{intersection_array, IntersectionArray, NotDistanceRegular, Parameter};
pub use io::{parse_edge_list, parse_graph_json, parse_graph_text, to_edge_list, to_json, GraphJson};
pub use iso::rooted_isomorphism;
pub use local::{Direction, LocalBall};
pub use matching::{max_bipartite_matching, BipartiteMatching};

use std::collections::VecDeque;

use thiserror::Error;

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("self-loop at vertex {0}")]
    Loop(VertexId),
    #[error("vertex id {id} out of range for {n} vertices")]
    OutOfRange { id: VertexId, n: usize },
    #[error("graph is disconnected: vertex {0} is unreachable from vertex 0")]
    Disconnected(VertexId),
    #[error("{0} labels given for {1} vertices")]
    LabelCount(usize, usize),
    #[error("{{{0}, {1}}} is not an edge")]
    NotAnEdge(VertexId, VertexId),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Simple undirected connected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<VertexId>>,
    edge_count: usize,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list.
    pub fn new(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let g = Self::unchecked(n, edges)?;
        if let Some(v) = g.first_unreachable(0) {
            return Err(GraphError::Disconnected(v));
        }
        Ok(g)
    }

    /// Builds the connected component containing `root`.
    ///
    /// Returns the component (vertices renumbered in increasing order of
    /// their original ids) together with the map from new ids to original
    /// ids.
    pub fn component_of(
        n: usize,
        edges: &[(VertexId, VertexId)],
        root: VertexId,
    ) -> Result<(Self, Vec<VertexId>), GraphError> {
        let whole = Self::unchecked(n, edges)?;
        if root >= n {
            return Err(GraphError::OutOfRange { id: root, n });
        }
        let dist = whole.bfs(root);
        let keep: Vec<VertexId> = (0..n).filter(|&v| dist[v].is_some()).collect();
        let mut new_id = vec![usize::MAX; n];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let sub: Vec<(VertexId, VertexId)> = whole
            .edges()
            .filter(|&(u, _)| new_id[u] != usize::MAX)
            .map(|(u, v)| (new_id[u], new_id[v]))
            .collect();
        let mut g = Self::unchecked(keep.len(), &sub)?;
        if let Some(labels) = &whole.labels {
            g.labels = Some(keep.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok((g, keep))
    }

    fn unchecked(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(GraphError::OutOfRange { id, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut duplicates = 0;
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
            let before = nbrs.len();
            nbrs.dedup();
            duplicates += before - nbrs.len();
        }
        if duplicates > 0 {
            log::warn!("collapsed {} duplicate edge(s)", duplicates / 2);
        }
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Graph { adjacency, edge_count, labels: None })
    }

    /// Attaches vertex labels (metadata only).
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.vertex_count() {
            return Err(GraphError::LabelCount(labels.len(), self.vertex_count()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of `v`, or its id when the graph is unlabeled.
    pub fn label(&self, v: VertexId) -> String {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.vertex_count()
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Fails with [`GraphError::NotAnEdge`] unless `{u, v}` is an edge.
    pub fn require_edge(&self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        let n = self.vertex_count();
        for id in [u, v] {
            if id >= n {
                return Err(GraphError::OutOfRange { id, n });
            }
        }
        if self.has_edge(u, v) {
            Ok(())
        } else {
            Err(GraphError::NotAnEdge(u, v))
        }
    }

    pub fn require_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::OutOfRange { id: v, n: self.vertex_count() })
        }
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Common degree, if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        self.vertices().all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub(crate) fn bfs(&self, source: VertexId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    fn first_unreachable(&self, source: VertexId) -> Option<VertexId> {
        self.bfs(source).iter().position(Option::is_none)
    }
}

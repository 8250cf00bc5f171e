use std::collections::VecDeque;

use super::{Graph, GraphError, VertexId};

/// Which neighbors of `z` to count relative to a base vertex `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Neighbors one step closer to `x`.
    In,
    /// Neighbors one step further from `x`.
    Out,
}

/// A ball around a vertex, extracted as a graph in its own right.
///
/// Local id 0 is the root; the remaining vertices follow in order of
/// distance from the root, ties broken by parent id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalBall {
    pub root: VertexId,
    pub radius: usize,
    pub subgraph: Graph,
    pub to_parent: Vec<VertexId>,
}

impl LocalBall {
    /// Local id of parent vertex `v`, if it lies in the ball.
    pub fn local_id(&self, v: VertexId) -> Option<VertexId> {
        self.to_parent.iter().position(|&p| p == v)
    }
}

impl Graph {
    /// Breadth-first distances from `x` to every vertex.
    pub fn distances_from(&self, x: VertexId) -> Vec<usize> {
        self.bfs(x)
            .into_iter()
            .map(|d| d.expect("graphs are connected"))
            .collect()
    }

    /// `S_k(x)`, sorted.
    pub fn sphere(&self, x: VertexId, k: usize) -> Vec<VertexId> {
        let dist = self.distances_from(x);
        self.vertices().filter(|&v| dist[v] == k).collect()
    }

    /// `B_k(x)`, sorted by vertex id.
    pub fn ball(&self, x: VertexId, k: usize) -> Vec<VertexId> {
        let dist = self.distances_from(x);
        self.vertices().filter(|&v| dist[v] <= k).collect()
    }

    /// Vertices of `B_k(x)` listed root first, then by distance, ties by id.
    pub(crate) fn ball_by_layers(&self, x: VertexId, k: usize) -> Vec<VertexId> {
        let dist = self.bfs_limited(x, k);
        let mut layered: Vec<(usize, VertexId)> = dist.into_iter().map(|(v, d)| (d, v)).collect();
        layered.sort_unstable();
        layered.into_iter().map(|(_, v)| v).collect()
    }

    /// Distances from `x` to the vertices within distance `k`, without
    /// visiting the rest of the graph.
    pub(crate) fn bfs_limited(&self, x: VertexId, k: usize) -> Vec<(VertexId, usize)> {
        let mut seen = std::collections::HashMap::from([(x, 0usize)]);
        let mut queue = VecDeque::from([x]);
        let mut out = vec![(x, 0)];
        while let Some(u) = queue.pop_front() {
            let du = seen[&u];
            if du == k {
                continue;
            }
            for &w in self.neighbors(u) {
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(w) {
                    e.insert(du + 1);
                    out.push((w, du + 1));
                    queue.push_back(w);
                }
            }
        }
        out
    }

    /// Induced subgraph on `B_k(x)`.
    pub fn induced_ball(&self, x: VertexId, k: usize) -> LocalBall {
        self.local_ball(x, k, false)
    }

    /// Induced subgraph on `B_2(x)` with every edge inside `S_2(x)` removed.
    pub fn incomplete_two_ball(&self, x: VertexId) -> LocalBall {
        self.local_ball(x, 2, true)
    }

    fn local_ball(&self, x: VertexId, radius: usize, drop_outer_edges: bool) -> LocalBall {
        let dist: std::collections::HashMap<VertexId, usize> =
            self.bfs_limited(x, radius).into_iter().collect();
        let to_parent = self.ball_by_layers(x, radius);
        let local: std::collections::HashMap<VertexId, VertexId> =
            to_parent.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        for (i, &u) in to_parent.iter().enumerate() {
            for &w in self.neighbors(u) {
                let Some(&j) = local.get(&w) else { continue };
                if i < j && !(drop_outer_edges && dist[&u] == radius && dist[&w] == radius) {
                    edges.push((i, j));
                }
            }
        }
        let mut subgraph =
            Graph::new(to_parent.len(), &edges).expect("a ball around a vertex is connected");
        if let Some(labels) = &self.labels {
            subgraph.labels = Some(to_parent.iter().map(|&v| labels[v].clone()).collect());
        }
        LocalBall { root: x, radius, subgraph, to_parent }
    }

    /// Number of triangles through `x`.
    pub fn triangles_at_vertex(&self, x: VertexId) -> usize {
        let nbrs = self.neighbors(x);
        let mut count = 0;
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if self.has_edge(a, b) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Number of triangles containing the edge `{x, y}`, i.e. `|S_1(x) ∩ S_1(y)|`.
    pub fn triangles_on_edge(&self, x: VertexId, y: VertexId) -> Result<usize, GraphError> {
        self.require_edge(x, y)?;
        Ok(self.common_neighbors(x, y).count())
    }

    pub(crate) fn common_neighbors(&self, x: VertexId, y: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let other = self.neighbors(y);
        self.neighbors(x).iter().copied().filter(move |w| other.binary_search(w).is_ok())
    }

    /// `d_x^-(z)` or `d_x^+(z)`: neighbors of `z` one step closer to, or
    /// further from, `x`.
    pub fn directional_degree(&self, x: VertexId, z: VertexId, direction: Direction) -> usize {
        let dist = self.distances_from(x);
        self.directional_degree_with(&dist, z, direction)
    }

    pub(crate) fn directional_degree_with(&self, dist: &[usize], z: VertexId, direction: Direction) -> usize {
        let k = dist[z];
        self.neighbors(z)
            .iter()
            .filter(|&&w| match direction {
                Direction::In => dist[w] + 1 == k,
                Direction::Out => dist[w] == k + 1,
            })
            .count()
    }

    /// Vertices `z ∈ S_2(x)` with `y1 ~ z ~ y2`.
    pub fn links(&self, x: VertexId, y1: VertexId, y2: VertexId) -> Result<Vec<VertexId>, GraphError> {
        self.require_edge(x, y1)?;
        self.require_edge(x, y2)?;
        if y1 == y2 {
            return Err(GraphError::NotAnEdge(y1, y2));
        }
        Ok(self
            .common_neighbors(y1, y2)
            .filter(|&z| z != x && !self.has_edge(x, z))
            .collect())
    }

    /// Length of a shortest cycle; `None` for trees.
    pub fn girth(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for s in self.vertices() {
            dist.fill(usize::MAX);
            parent.fill(usize::MAX);
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[u] >= b) {
                    break;
                }
                for &w in self.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn cube3() -> Graph {
        let mut edges = Vec::new();
        for v in 0..8usize {
            for b in 0..3 {
                let w = v ^ (1 << b);
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        Graph::new(8, &edges).unwrap()
    }

    fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn cycle_distances() {
        assert_eq!(cycle(6).distances_from(0), vec![0, 1, 2, 3, 2, 1]);
    }

    #[test]
    fn cube_antipodes_and_spheres() {
        let q = cube3();
        assert_eq!(q.distances_from(0)[7], 3);
        assert_eq!(q.sphere(0, 1), vec![1, 2, 4]);
        assert_eq!(q.sphere(0, 2), vec![3, 5, 6]);
        assert_eq!(q.ball(0, 1), vec![0, 1, 2, 4]);
    }

    #[test]
    fn incomplete_ball_of_cube() {
        let ball = cube3().incomplete_two_ball(0);
        assert_eq!(ball.subgraph.vertex_count(), 7);
        assert_eq!(ball.to_parent, vec![0, 1, 2, 4, 3, 5, 6]);
        for local in 4..7 {
            assert_eq!(ball.subgraph.degree(local), 2);
        }
        assert_eq!(ball.local_id(6), Some(6));
        assert_eq!(ball.local_id(7), None);
    }

    #[test]
    fn incomplete_ball_drops_outer_edges() {
        // C5: S2(0) = {2, 3} and the edge {2, 3} must disappear.
        let ball = cycle(5).incomplete_two_ball(0);
        assert_eq!(ball.subgraph.edge_count(), 4);
        let full = cycle(5).induced_ball(0, 2);
        assert_eq!(full.subgraph.edge_count(), 5);
    }

    #[test]
    fn incomplete_ball_of_k2() {
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        let ball = k2.incomplete_two_ball(1);
        assert_eq!(ball.to_parent, vec![1, 0]);
        assert_eq!(ball.subgraph.edge_count(), 1);
    }

    #[test]
    fn triangles() {
        assert_eq!(k4().triangles_on_edge(0, 1), Ok(2));
        assert_eq!(k4().triangles_at_vertex(0), 3);
        assert_eq!(cube3().triangles_at_vertex(0), 0);
        assert!(cube3().triangles_on_edge(0, 3).is_err());
    }

    #[test]
    fn directional_degrees() {
        let q = cube3();
        assert_eq!(q.directional_degree(0, 3, Direction::In), 2);
        assert_eq!(q.directional_degree(0, 3, Direction::Out), 1);
        assert_eq!(q.directional_degree(0, 1, Direction::In), 1);
    }

    #[test]
    fn links_in_cube() {
        let q = cube3();
        assert_eq!(q.links(0, 1, 2), Ok(vec![3]));
        assert_eq!(q.links(0, 2, 4), Ok(vec![6]));
        assert!(q.links(0, 3, 1).is_err());
        assert!(cycle(6).links(0, 1, 5).unwrap().is_empty());
    }

    #[test]
    fn girths() {
        assert_eq!(cube3().girth(), Some(4));
        assert_eq!(k4().girth(), Some(3));
        assert_eq!(cycle(5).girth(), Some(5));
        assert_eq!(cycle(8).girth(), Some(8));
        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.girth(), None);
    }
}

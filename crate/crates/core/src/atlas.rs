//! Named graphs, transcribed local balls, and seeded random regular graphs.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId};
use crate::products::{product, ProductKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtlasError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{name}: parameter {value} outside the supported range {range}")]
    Size { name: &'static str, value: usize, range: &'static str },
    #[error("no {d}-regular graph on {n} vertices: n·d must be even and d < n")]
    Handshake { n: usize, d: usize },
    #[error("no simple connected {d}-regular graph on {n} vertices found after {attempts} attempts")]
    Exhausted { n: usize, d: usize, attempts: usize },
    #[error("unknown graph `{0}`; try `atlas list`")]
    Unknown(String),
    #[error("graph `{name}` expects {expected} parameter(s), got {got}")]
    Arity { name: String, expected: usize, got: usize },
}

fn check(name: &'static str, value: usize, lo: usize, hi: usize, range: &'static str) -> Result<(), AtlasError> {
    if value < lo || value > hi {
        return Err(AtlasError::Size { name, value, range });
    }
    Ok(())
}

fn labeled(n: usize, edges: &[(VertexId, VertexId)], labels: Vec<String>) -> Graph {
    Graph::new(n, edges).and_then(|g| g.with_labels(labels)).expect("atlas graphs are valid")
}

/// `Q^d` on bit strings of length `d`.
pub fn hypercube(d: usize) -> Result<Graph, AtlasError> {
    check("hypercube", d, 1, 16, "1..=16")?;
    let n = 1usize << d;
    let edges: Vec<_> =
        (0..n).flat_map(|v| (0..d).map(move |b| (v, v ^ (1 << b)))).filter(|&(v, w)| v < w).collect();
    Ok(Graph::new(n, &edges)?)
}

pub fn complete(n: usize) -> Result<Graph, AtlasError> {
    check("complete", n, 1, 512, "1..=512")?;
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Ok(Graph::new(n, &edges)?)
}

pub fn cycle(n: usize) -> Result<Graph, AtlasError> {
    check("cycle", n, 3, 1 << 20, "3..=1048576")?;
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Graph::new(n, &edges)?)
}

/// `K_{m,n}` with the left side `0..m` and the right side `m..m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph, AtlasError> {
    check("complete_bipartite", m, 1, 256, "1..=256")?;
    check("complete_bipartite", n, 1, 256, "1..=256")?;
    let edges: Vec<_> = (0..m).flat_map(|u| (m..m + n).map(move |v| (u, v))).collect();
    Ok(Graph::new(m + n, &edges)?)
}

/// The triplex: a 12-cycle `x1 … x12` with six chords; vertex `i` is `x{i+1}`.
pub fn triplex() -> Graph {
    let mut edges: Vec<_> = (0..12).map(|i| (i, (i + 1) % 12)).collect();
    for (a, b) in [(1, 7), (2, 10), (3, 8), (4, 12), (5, 9), (6, 11)] {
        edges.push((a - 1, b - 1));
    }
    labeled(12, &edges, (1..=12).map(|i| format!("x{i}")).collect())
}

/// Icosahedron as a pentagonal antiprism (`0..5` top ring, `5..10` bottom
/// ring) capped by apexes 10 and 11.
fn icosahedron() -> Vec<(VertexId, VertexId)> {
    let mut edges = Vec::new();
    for i in 0..5 {
        let j = (i + 1) % 5;
        edges.extend([(i, j), (5 + i, 5 + j), (i, 5 + i), (i, 5 + j), (10, i), (11, 5 + i)]);
    }
    edges
}

/// The icosidodecahedral graph, built as the line-graph-like rectification
/// of the icosahedron: vertices are icosahedron edges, and `{a,b}` meets
/// `{a,c}` when `b ~ c`.
pub fn icosidodecahedron() -> Graph {
    let ico = Graph::new(12, &icosahedron()).expect("icosahedron is connected");
    let vertices: Vec<(VertexId, VertexId)> = ico.edges().collect();
    let mut edges = Vec::new();
    for (i, &(a, b)) in vertices.iter().enumerate() {
        for (j, &(c, e)) in vertices.iter().enumerate().skip(i + 1) {
            let shared: Vec<VertexId> = [a, b].into_iter().filter(|v| *v == c || *v == e).collect();
            if let [s] = shared[..] {
                let p = if a == s { b } else { a };
                let q = if c == s { e } else { c };
                if ico.has_edge(p, q) {
                    edges.push((i, j));
                }
            }
        }
    }
    Graph::new(vertices.len(), &edges).expect("rectified icosahedron is connected")
}

/// Cayley graph of `Z₄ × Z₄` with generators `±(0,1), ±(1,0), ±(1,1)`;
/// vertex `4i + j` is `(i, j)`.
pub fn shrikhande() -> Graph {
    let id = |i: usize, j: usize| 4 * (i % 4) + (j % 4);
    let mut edges = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            for (di, dj) in [(0, 1), (1, 0), (1, 1)] {
                edges.push((id(i, j), id(i + di, j + dj)));
            }
        }
    }
    labeled(16, &edges, (0..16).map(|v| format!("({},{})", v / 4, v % 4)).collect())
}

/// Incidence graph of the symmetric `(11, 6, 3)` design with point set
/// `Z₁₁` and blocks `B_j = j + D`, `D = {0, 2, 6, 7, 8, 10}`.
/// Points are `0..11`, block `B_j` is vertex `11 + j`.
pub fn incidence_11_6_3() -> Graph {
    const DIFFERENCE_SET: [usize; 6] = [0, 2, 6, 7, 8, 10];
    let edges: Vec<_> =
        (0..11).flat_map(|j| DIFFERENCE_SET.iter().map(move |r| ((j + r) % 11, 11 + j))).collect();
    let labels = (0..11).map(|p| format!("p{p}")).chain((0..11).map(|j| format!("B{j}"))).collect();
    labeled(22, &edges, labels)
}

fn v_labels(count: usize) -> Vec<String> {
    std::iter::once("x".to_string()).chain((1..count).map(|i| format!("v{i}"))).collect()
}

/// Incomplete 2-ball that is not Ricci flat: `x = 0`, `v_i = i`.
pub fn unflat_ball() -> Graph {
    let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (2, 5), (3, 5), (3, 6)];
    labeled(7, &edges, v_labels(7))
}

/// Incomplete 2-ball of the Shrikhande graph: `x = 0`, `v_i = i`, the
/// neighbors `v1 … v6` forming a hexagon.
pub fn shrikhande_ball() -> Graph {
    let mut edges: Vec<_> = (1..=6).map(|i| (0, i)).collect();
    edges.extend((1..=6).map(|i| (i, i % 6 + 1)));
    let outer = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 4), (2, 5), (3, 6), (1, 6)];
    for (k, (a, b)) in outer.into_iter().enumerate() {
        edges.extend([(a, 7 + k), (b, 7 + k)]);
    }
    labeled(16, &edges, v_labels(16))
}

/// Labels and `S₁` pairs of the second sphere in [`triangle_free_ball`].
const TRIANGLE_FREE_OUTER: [(&str, usize, usize); 15] = [
    ("v12", 1, 2),
    ("v12'", 1, 2),
    ("v34", 3, 4),
    ("v34'", 3, 4),
    ("v56", 5, 6),
    ("v56'", 5, 6),
    ("v14", 1, 4),
    ("v14'", 1, 4),
    ("v25", 2, 5),
    ("v25'", 2, 5),
    ("v36", 3, 6),
    ("v36'", 3, 6),
    ("v23", 2, 3),
    ("v45", 4, 5),
    ("v16", 1, 6),
];

/// Triangle-free 6-regular incomplete 2-ball with `K_∞(x) = 0` and
/// `κ₀(x, v_i) = −1/3`: `x = 0`, `v_i = i`, second sphere `7..22` as listed
/// in `TRIANGLE_FREE_OUTER`.
pub fn triangle_free_ball() -> Graph {
    let mut edges: Vec<_> = (1..=6).map(|i| (0, i)).collect();
    let mut labels = v_labels(7);
    for (k, &(label, a, b)) in TRIANGLE_FREE_OUTER.iter().enumerate() {
        edges.extend([(a, 7 + k), (b, 7 + k)]);
        labels.push(label.to_string());
    }
    labeled(22, &edges, labels)
}

/// Incomplete 2-ball with `κ_p(x, ·) ≡ 0` but `K_∞(x) ≈ −0.194`:
/// vertex `i` is `x{i+1}`, with `x1 = x` at id 0.
pub fn bone_idle_ball() -> Graph {
    let adjacency: [(usize, [usize; 4]); 5] = [
        (2, [7, 8, 10, 11]),
        (3, [9, 8, 10, 13]),
        (4, [10, 11, 12, 15]),
        (5, [11, 13, 14, 16]),
        (6, [13, 15, 16, 17]),
    ];
    let mut edges: Vec<_> = (2..=6).map(|i| (0, i - 1)).collect();
    for (a, outs) in adjacency {
        edges.extend(outs.iter().map(|&b| (a - 1, b - 1)));
    }
    let labels = std::iter::once("x".to_string()).chain((2..=17).map(|i| format!("x{i}"))).collect();
    labeled(17, &edges, labels)
}

/// Incomplete 2-ball of the `(11, 6, 3)` incidence graph in the labeling
/// used for its Ricci-flatness matrix: `x = 0`, `S₁ = 1..=6`, `S₂ = 7..=16`.
pub fn incidence_local() -> Graph {
    let adjacency: [[usize; 5]; 6] = [
        [8, 11, 13, 14, 15],
        [7, 10, 11, 12, 13],
        [9, 10, 11, 15, 16],
        [7, 8, 10, 14, 16],
        [8, 9, 12, 13, 16],
        [7, 9, 12, 14, 15],
    ];
    let mut edges: Vec<_> = (1..=6).map(|i| (0, i)).collect();
    for (i, outs) in adjacency.iter().enumerate() {
        edges.extend(outs.iter().map(|&z| (i + 1, z)));
    }
    labeled(17, &edges, v_labels(17))
}

/// Seeded `d`-regular simple connected graph from the pairing model.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, AtlasError> {
    check("random_regular", n, 2, 4096, "2..=4096")?;
    if d == 0 || d >= n || (n * d) % 2 == 1 {
        return Err(AtlasError::Handshake { n, d });
    }
    const ATTEMPTS: usize = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<VertexId> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'attempt: for _ in 0..ATTEMPTS {
        points.shuffle(&mut rng);
        let mut seen = BTreeSet::new();
        for pair in points.chunks(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                continue 'attempt;
            }
        }
        let edges: Vec<_> = seen.into_iter().collect();
        if let Ok(g) = Graph::new(n, &edges) {
            return Ok(g);
        }
    }
    Err(AtlasError::Exhausted { n, d, attempts: ATTEMPTS })
}

/// Atlas entries: name, parameter names, description.
pub const CATALOG: &[(&str, &[&str], &str)] = &[
    ("hypercube", &["d"], "d-dimensional hypercube Q^d"),
    ("complete", &["n"], "complete graph K_n"),
    ("cycle", &["n"], "cycle C_n"),
    ("complete-bipartite", &["m", "n"], "complete bipartite graph K_{m,n}"),
    ("triplex", &[], "3-regular triplex on 12 vertices"),
    ("icosidodecahedron", &[], "4-regular icosidodecahedral graph on 30 vertices"),
    ("shrikhande", &[], "Shrikhande graph, Cayley graph of Z4 x Z4"),
    ("rook3", &[], "rook graph K3 x K3"),
    ("incidence-11-6-3", &[], "incidence graph of the (11,6,3) design"),
    ("incidence-local", &[], "incomplete 2-ball of the (11,6,3) incidence graph, matrix labeling"),
    ("unflat-ball", &[], "incomplete 2-ball that is not Ricci flat"),
    ("shrikhande-ball", &[], "incomplete 2-ball of the Shrikhande graph"),
    ("triangle-free-ball", &[], "triangle-free 2-ball with K_inf = 0 and kappa_0 = -1/3"),
    ("bone-idle-ball", &[], "2-ball with kappa_p = 0 at x but K_inf < 0"),
    ("random-regular", &["n", "d", "seed"], "seeded random d-regular graph"),
];

/// Builds an atlas graph by name, with integer parameters.
pub fn by_name(name: &str, params: &[u64]) -> Result<Graph, AtlasError> {
    let (_, names, _) = CATALOG
        .iter()
        .find(|(n, _, _)| *n == name)
        .ok_or_else(|| AtlasError::Unknown(name.to_string()))?;
    if params.len() != names.len() {
        return Err(AtlasError::Arity { name: name.to_string(), expected: names.len(), got: params.len() });
    }
    let p = |i: usize| usize::try_from(params[i]).unwrap_or(usize::MAX);
    Ok(match name {
        "hypercube" => hypercube(p(0))?,
        "complete" => complete(p(0))?,
        "cycle" => cycle(p(0))?,
        "complete-bipartite" => complete_bipartite(p(0), p(1))?,
        "triplex" => triplex(),
        "icosidodecahedron" => icosidodecahedron(),
        "shrikhande" => shrikhande(),
        "rook3" => rook3(),
        "incidence-11-6-3" => incidence_11_6_3(),
        "incidence-local" => incidence_local(),
        "unflat-ball" => unflat_ball(),
        "shrikhande-ball" => shrikhande_ball(),
        "triangle-free-ball" => triangle_free_ball(),
        "bone-idle-ball" => bone_idle_ball(),
        "random-regular" => random_regular(p(0), p(1), params[2])?,
        _ => unreachable!("catalog and dispatch agree"),
    })
}

/// `K₃ × K₃`.
pub fn rook3() -> Graph {
    let k3 = complete(3).expect("K3");
    product(&k3, &k3, ProductKind::Cartesian).expect("connected").graph
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{intersection_array, rooted_isomorphism, IntersectionArray};

    #[test]
    fn sizes() {
        let q = hypercube(4).unwrap();
        assert_eq!((q.vertex_count(), q.edge_count(), q.regular_degree()), (16, 32, Some(4)));
        assert_eq!(q.sphere(0, 2).len(), 6);
        assert!(hypercube(17).is_err());
        let t = triplex();
        assert_eq!((t.vertex_count(), t.edge_count(), t.regular_degree()), (12, 18, Some(3)));
        assert!(t.vertices().all(|v| t.distances_from(v).into_iter().max() == Some(3)));
        let ico = icosidodecahedron();
        assert_eq!((ico.vertex_count(), ico.edge_count(), ico.regular_degree()), (30, 60, Some(4)));
        assert_eq!(shrikhande().regular_degree(), Some(6));
        assert_eq!(complete_bipartite(3, 3).unwrap().girth(), Some(4));
        assert_eq!(cycle(5).unwrap().girth(), Some(5));
        assert!(cycle(2).is_err());
    }

    #[test]
    fn icosidodecahedron_triangles() {
        let g = icosidodecahedron();
        // Every vertex lies on exactly two triangles.
        assert!(g.vertices().all(|v| g.triangles_at_vertex(v) == 2));
        assert_eq!(g.girth(), Some(3));
    }

    #[test]
    fn shrikhande_parameters() {
        let g = shrikhande();
        let a = intersection_array(&g).unwrap();
        assert_eq!(a, IntersectionArray { b: vec![6, 3], c: vec![1, 2] });
        for (x, y) in g.edges() {
            assert_eq!(g.triangles_on_edge(x, y), Ok(2));
        }
        let ball = g.incomplete_two_ball(5);
        assert!(rooted_isomorphism(&ball.subgraph, 0, &shrikhande_ball(), 0).is_some());
    }

    #[test]
    fn incidence_graph() {
        let g = incidence_11_6_3();
        assert_eq!(g.regular_degree(), Some(6));
        assert_eq!(intersection_array(&g).unwrap(), IntersectionArray { b: vec![6, 5, 3], c: vec![1, 3, 6] });
        assert_eq!(g.girth(), Some(4));
        assert_eq!(g.sphere(0, 2).len(), 10);
        let ball = g.incomplete_two_ball(0);
        assert!(rooted_isomorphism(&incidence_local(), 0, &ball.subgraph, 0).is_some());
    }

    #[test]
    fn small_ball_audits() {
        let f3 = unflat_ball();
        assert_eq!(f3.neighbors(0), &[1, 2, 3]);
        let f5 = triangle_free_ball();
        assert_eq!(f5.vertex_count(), 22);
        assert!((0..7).all(|v| f5.degree(v) == 6));
        assert_eq!(f5.links(0, 1, 2).unwrap(), vec![7, 8]);
        assert_eq!(f5.label(8), "v12'");
        let f6 = bone_idle_ball();
        assert!((0..6).all(|v| f6.degree(v) == 5));
        assert_eq!(f6.triangles_at_vertex(0), 0);
        assert_eq!(f6.directional_degree(0, 9, crate::graph::Direction::In), 3);
        assert_eq!(f6.label(9), "x10");
        assert_eq!(rook3().regular_degree(), Some(4));
    }

    #[test]
    fn random_regular_is_seeded() {
        let a = random_regular(8, 3, 7).unwrap();
        assert_eq!(a, random_regular(8, 3, 7).unwrap());
        assert_eq!(a.regular_degree(), Some(3));
        assert!(matches!(random_regular(7, 3, 0), Err(AtlasError::Handshake { .. })));
    }

    #[test]
    fn registry() {
        assert_eq!(by_name("hypercube", &[3]).unwrap().vertex_count(), 8);
        assert!(matches!(by_name("hypercube", &[]), Err(AtlasError::Arity { .. })));
        assert!(matches!(by_name("nope", &[]), Err(AtlasError::Unknown(_))));
        for (name, params, _) in CATALOG {
            if params.is_empty() {
                by_name(name, &[]).unwrap();
            }
        }
    }
}

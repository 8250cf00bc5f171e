use super::{Graph, VertexId};

/// Finds an isomorphism `a -> b` sending `root_a` to `root_b`, as a map from
/// vertices of `a` to vertices of `b`.
pub fn rooted_isomorphism(a: &Graph, root_a: VertexId, b: &Graph, root_b: VertexId) -> Option<Vec<VertexId>> {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    let da = a.distances_from(root_a);
    let db = b.distances_from(root_b);
    let signature = |g: &Graph, dist: &[usize], v: VertexId| (dist[v], g.degree(v));
    let mut sig_a: Vec<_> = a.vertices().map(|v| signature(a, &da, v)).collect();
    let mut sig_b: Vec<_> = b.vertices().map(|v| signature(b, &db, v)).collect();
    let (sa, sb) = (sig_a.clone(), sig_b.clone());
    sig_a.sort_unstable();
    sig_b.sort_unstable();
    if sig_a != sig_b {
        return None;
    }
    // Assign in BFS order so each new vertex has an already mapped neighbor.
    let order = a.ball_by_layers(root_a, n);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[root_a] = root_b;
    used[root_b] = true;
    if extend(a, b, &order, 1, &sa, &sb, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Graph,
    b: &Graph,
    order: &[VertexId],
    pos: usize,
    sa: &[(usize, usize)],
    sb: &[(usize, usize)],
    map: &mut [VertexId],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(pos) else { return true };
    let anchor = a.neighbors(v).iter().copied().find(|&w| map[w] != usize::MAX);
    let candidates: Vec<VertexId> = match anchor {
        Some(w) => b.neighbors(map[w]).to_vec(),
        None => b.vertices().collect(),
    };
    for c in candidates {
        if used[c] || sa[v] != sb[c] {
            continue;
        }
        let consistent = order[..pos].iter().all(|&u| a.has_edge(u, v) == b.has_edge(map[u], c));
        if !consistent {
            continue;
        }
        map[v] = c;
        used[c] = true;
        if extend(a, b, order, pos + 1, sa, sb, map, used) {
            return true;
        }
        map[v] = usize::MAX;
        used[c] = false;
    }
    false
}

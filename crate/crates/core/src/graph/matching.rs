use std::collections::VecDeque;

/// Maximum matching in a bipartite graph with left side `0..left` and right
/// side `0..right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMatching {
    /// `(left, right)` pairs, sorted by left vertex.
    pub pairs: Vec<(usize, usize)>,
    pub left_to_right: Vec<Option<usize>>,
    pub right_to_left: Vec<Option<usize>>,
    /// When the matching is not left-perfect: a set `S` of left vertices
    /// with `|N(S)| < |S|`, together with `N(S)`.
    pub hall_violator: Option<(Vec<usize>, Vec<usize>)>,
}

impl BipartiteMatching {
    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_left_perfect(&self) -> bool {
        self.hall_violator.is_none()
    }
}

/// Hopcroft-Karp. `adj(l)` lists the right neighbors of left vertex `l`.
pub fn max_bipartite_matching<F>(left: usize, right: usize, adj: F) -> BipartiteMatching
where
    F: Fn(usize) -> Vec<usize>,
{
    let adjacency: Vec<Vec<usize>> = (0..left).map(&adj).collect();
    let mut ml: Vec<Option<usize>> = vec![None; left];
    let mut mr: Vec<Option<usize>> = vec![None; right];
    let mut layer = vec![usize::MAX; left];
    loop {
        // BFS layering from free left vertices.
        let mut queue = VecDeque::new();
        for l in 0..left {
            if ml[l].is_none() {
                layer[l] = 0;
                queue.push_back(l);
            } else {
                layer[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adjacency[l] {
                match mr[r] {
                    None => found = true,
                    Some(l2) if layer[l2] == usize::MAX => {
                        layer[l2] = layer[l] + 1;
                        queue.push_back(l2);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        for l in 0..left {
            if ml[l].is_none() {
                augment(l, &adjacency, &mut ml, &mut mr, &mut layer);
            }
        }
    }

    let hall_violator = if ml.iter().all(Option::is_some) {
        None
    } else {
        let mut in_s = vec![false; left];
        let mut in_n = vec![false; right];
        let mut queue: VecDeque<usize> = (0..left).filter(|&l| ml[l].is_none()).collect();
        for &l in &queue {
            in_s[l] = true;
        }
        while let Some(l) = queue.pop_front() {
            for &r in &adjacency[l] {
                if !in_n[r] {
                    in_n[r] = true;
                    if let Some(l2) = mr[r] {
                        if !in_s[l2] {
                            in_s[l2] = true;
                            queue.push_back(l2);
                        }
                    }
                }
            }
        }
        let s = (0..left).filter(|&l| in_s[l]).collect();
        let n = (0..right).filter(|&r| in_n[r]).collect();
        Some((s, n))
    };
    let pairs = ml.iter().enumerate().filter_map(|(l, r)| r.map(|r| (l, r))).collect();
    BipartiteMatching { pairs, left_to_right: ml, right_to_left: mr, hall_violator }
}

fn augment(
    l: usize,
    adjacency: &[Vec<usize>],
    ml: &mut [Option<usize>],
    mr: &mut [Option<usize>],
    layer: &mut [usize],
) -> bool {
    for &r in &adjacency[l] {
        let ok = match mr[r] {
            None => true,
            Some(l2) => layer[l2] == layer[l] + 1 && augment(l2, adjacency, ml, mr, layer),
        };
        if ok {
            ml[l] = Some(r);
            mr[r] = Some(l);
            return true;
        }
    }
    layer[l] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_matching() {
        let adj = [vec![0, 1], vec![0], vec![1, 2]];
        let m = max_bipartite_matching(3, 3, |l| adj[l].clone());
        assert_eq!(m.size(), 3);
        assert!(m.is_left_perfect());
        assert_eq!(m.pairs, vec![(0, 1), (1, 0), (2, 2)]);
    }

    #[test]
    fn hall_violator_is_reported() {
        let adj = [vec![0], vec![0], vec![0, 1, 2]];
        let m = max_bipartite_matching(3, 3, |l| adj[l].clone());
        assert_eq!(m.size(), 2);
        let (s, n) = m.hall_violator.unwrap();
        assert!(n.len() < s.len());
        assert_eq!(s, vec![0, 1]);
        assert_eq!(n, vec![0]);
    }
}

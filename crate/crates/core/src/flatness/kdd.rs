use super::{AssignmentMatrix, FlatnessError, FlatnessFlavor};
use crate::atlas::complete_bipartite;
use crate::graph::Graph;

/// `K_{d,d}` with sides `0..d` and `d..2d`.
pub fn kdd_graph(d: usize) -> Result<Graph, FlatnessError> {
    complete_bipartite(d, d).map_err(|e| FlatnessError::Malformed(e.to_string()))
}

/// Explicit certificate at vertex 0 of [`kdd_graph`]`(d)`.
///
/// Entries use the labeling `0 = x` and `m = z_m` for the second sphere
/// `{1, …, d−1}`, which coincides with the vertex ids. Plain and (R) use the
/// right-shift matrix, (S) the left-shift matrix, and (RS) the block
/// construction for even `d`.
pub fn kdd_matrix(d: usize, flavor: FlatnessFlavor) -> Result<AssignmentMatrix, FlatnessError> {
    if d < 2 {
        return Err(FlatnessError::TooSmall { d, min: 2 });
    }
    let entries: Vec<Vec<usize>> = match flavor {
        FlatnessFlavor::Plain | FlatnessFlavor::R => {
            (0..d).map(|i| (0..d).map(|j| (j + d - i) % d).collect()).collect()
        }
        FlatnessFlavor::S => (0..d).map(|i| (0..d).map(|j| (i + j) % d).collect()).collect(),
        FlatnessFlavor::RS => {
            if d % 2 == 1 {
                return Err(FlatnessError::OddRs(d));
            }
            let n = d / 2;
            let m = 2 * n - 1;
            // 1-based (i, j) as in the block construction.
            let entry = |i: usize, j: usize| -> usize {
                if i == j {
                    0
                } else if i == d || j == d {
                    let k = i.min(j);
                    if k == 1 {
                        m
                    } else if k <= n {
                        2 * (k - 1)
                    } else {
                        2 * (k - n) - 1
                    }
                } else {
                    let s = (i + j - 2) % m;
                    if s == 0 {
                        m
                    } else {
                        s
                    }
                }
            };
            (1..=d).map(|i| (1..=d).map(|j| entry(i, j)).collect()).collect()
        }
    };
    Ok(AssignmentMatrix { center: 0, neighbors: (d..2 * d).collect(), entries })
}

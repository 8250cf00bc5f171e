use serde::Serialize;

use super::{candidate_domains, require_local_regularity, AssignmentMatrix, FlatnessError, FlatnessFlavor};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest degree the search accepts.
    pub cap: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { cap: 12 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SearchStats {
    /// Number of tentative cell assignments.
    pub nodes: u64,
    pub max_depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlatnessOutcome {
    Certificate(AssignmentMatrix),
    /// The whole search tree was explored without finding a certificate.
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatnessVerdict {
    pub flavor: FlatnessFlavor,
    pub outcome: FlatnessOutcome,
    pub stats: SearchStats,
}

impl FlatnessVerdict {
    pub fn is_flat(&self) -> bool {
        matches!(self.outcome, FlatnessOutcome::Certificate(_))
    }

    pub fn certificate(&self) -> Option<&AssignmentMatrix> {
        match &self.outcome {
            FlatnessOutcome::Certificate(a) => Some(a),
            FlatnessOutcome::Exhausted => None,
        }
    }
}

pub fn search_flatness(g: &Graph, x: VertexId, flavor: FlatnessFlavor) -> Result<FlatnessVerdict, FlatnessError> {
    search_flatness_with(g, x, flavor, SearchOptions::default())
}

/// Exhaustive backtracking over assignment matrices in canonical form.
///
/// Cells are chosen most-constrained first (ties by row, then column).
/// After each assignment the search checks that every open cell still has
/// a candidate, that every value missing from a row or column still fits an
/// open cell of it, and, for symmetric flavors, that values can still be
/// paired off across the diagonal.
pub fn search_flatness_with(
    g: &Graph,
    x: VertexId,
    flavor: FlatnessFlavor,
    options: SearchOptions,
) -> Result<FlatnessVerdict, FlatnessError> {
    let d = require_local_regularity(g, x)?;
    if d > options.cap {
        return Err(FlatnessError::TooLarge { d, cap: options.cap });
    }
    let neighbors = g.neighbors(x).to_vec();
    // Work with local value ids: position in the sorted list of all values.
    let mut values: Vec<VertexId> = neighbors.iter().flat_map(|&v| g.neighbors(v).iter().copied()).collect();
    values.sort_unstable();
    values.dedup();
    let local = |v: VertexId| values.binary_search(&v).expect("value is a neighbor of some v_i");
    let domains: Vec<Vec<Vec<usize>>> = candidate_domains(g, x)?
        .into_iter()
        .map(|row| row.into_iter().map(|cell| cell.into_iter().map(local).collect()).collect())
        .collect();
    let row_sets: Vec<Vec<usize>> = neighbors.iter().map(|&v| g.neighbors(v).iter().map(|&w| local(w)).collect()).collect();
    let mut state = State {
        d,
        flavor,
        domains,
        row_sets,
        grid: vec![vec![None; d]; d],
        row_used: vec![vec![false; values.len()]; d],
        col_used: vec![vec![false; values.len()]; d],
        stats: SearchStats::default(),
        values: values.len(),
    };
    if flavor.reflexive() {
        let center = local(x);
        for i in 0..d {
            if !state.fits(i, i, center) {
                return Ok(FlatnessVerdict { flavor, outcome: FlatnessOutcome::Exhausted, stats: state.stats });
            }
            state.place(i, i, center);
        }
    }
    let found = state.solve(0);
    let outcome = if found {
        let entries =
            state.grid.iter().map(|row| row.iter().map(|c| values[c.expect("complete grid")]).collect()).collect();
        FlatnessOutcome::Certificate(AssignmentMatrix { center: x, neighbors, entries })
    } else {
        FlatnessOutcome::Exhausted
    };
    Ok(FlatnessVerdict { flavor, outcome, stats: state.stats })
}

struct State {
    d: usize,
    flavor: FlatnessFlavor,
    domains: Vec<Vec<Vec<usize>>>,
    row_sets: Vec<Vec<usize>>,
    grid: Vec<Vec<Option<usize>>>,
    row_used: Vec<Vec<bool>>,
    col_used: Vec<Vec<bool>>,
    stats: SearchStats,
    values: usize,
}

impl State {
    fn fits(&self, i: usize, j: usize, v: usize) -> bool {
        if self.grid[i][j].is_some() || self.row_used[i][v] || self.col_used[j][v] {
            return false;
        }
        if !self.domains[i][j].contains(&v) {
            return false;
        }
        if self.flavor.symmetric() && i != j {
            return self.grid[j][i].is_none() && !self.row_used[j][v] && !self.col_used[i][v];
        }
        true
    }

    fn place(&mut self, i: usize, j: usize, v: usize) {
        for (a, b) in self.mirror(i, j) {
            self.grid[a][b] = Some(v);
            self.row_used[a][v] = true;
            self.col_used[b][v] = true;
        }
    }

    fn unplace(&mut self, i: usize, j: usize, v: usize) {
        for (a, b) in self.mirror(i, j) {
            self.grid[a][b] = None;
            self.row_used[a][v] = false;
            self.col_used[b][v] = false;
        }
    }

    fn mirror(&self, i: usize, j: usize) -> Vec<(usize, usize)> {
        if self.flavor.symmetric() && i != j {
            vec![(i, j), (j, i)]
        } else {
            vec![(i, j)]
        }
    }

    fn candidates(&self, i: usize, j: usize) -> Vec<usize> {
        self.domains[i][j].iter().copied().filter(|&v| self.fits(i, j, v)).collect()
    }

    /// Rows and columns are bijections onto fixed value sets; every value
    /// they still miss needs an open cell that accepts it.
    fn hidden_values_fit(&self) -> bool {
        let d = self.d;
        for i in 0..d {
            for &v in &self.row_sets[i] {
                if !self.row_used[i][v] && !(0..d).any(|j| self.fits(i, j, v)) {
                    return false;
                }
            }
        }
        for j in 0..d {
            // Column j must enumerate S₁(v_j), the same set as row j.
            for &v in &self.row_sets[j] {
                if !self.col_used[j][v] && !(0..d).any(|i| self.fits(i, j, v)) {
                    return false;
                }
            }
        }
        true
    }

    /// In a symmetric matrix, off-diagonal copies of a value pair up rows,
    /// so an odd number of rows still missing it needs an open diagonal cell.
    fn parity_possible(&self) -> bool {
        if !self.flavor.symmetric() {
            return true;
        }
        for v in 0..self.values {
            let missing: Vec<usize> =
                (0..self.d).filter(|&i| self.row_sets[i].contains(&v) && !self.row_used[i][v]).collect();
            if missing.len() % 2 == 1 && !missing.iter().any(|&i| self.fits(i, i, v)) {
                return false;
            }
        }
        true
    }

    fn solve(&mut self, depth: usize) -> bool {
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let mut best: Option<(usize, usize, Vec<usize>)> = None;
        for i in 0..self.d {
            let start = if self.flavor.symmetric() { i } else { 0 };
            for j in start..self.d {
                if self.grid[i][j].is_some() {
                    continue;
                }
                let c = self.candidates(i, j);
                if c.is_empty() {
                    return false;
                }
                if best.as_ref().is_none_or(|(_, _, b)| c.len() < b.len()) {
                    best = Some((i, j, c));
                }
            }
        }
        let Some((i, j, candidates)) = best else { return true };
        for v in candidates {
            self.stats.nodes += 1;
            self.place(i, j, v);
            if self.hidden_values_fit() && self.parity_possible() && self.solve(depth + 1) {
                return true;
            }
            self.unplace(i, j, v);
        }
        false
    }
}

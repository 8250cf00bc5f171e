use num_traits::{One, Zero};
use serde::Serialize;

use super::{wasserstein, Measure, TransportError};
use crate::graph::{max_bipartite_matching, Graph, VertexId};
use crate::rational::{fraction, Rational};

/// `μ_x^p`: mass `p` at `x` and `(1 − p)/d_x` on each neighbor.
pub fn vertex_measure(g: &Graph, x: VertexId, p: Rational) -> Result<Measure, TransportError> {
    g.require_vertex(x)?;
    if p < Rational::zero() || p > Rational::one() {
        return Err(TransportError::Idleness(fraction(&p)));
    }
    let share = (Rational::one() - p) / Rational::from_integer(g.degree(x) as i64);
    Measure::new(std::iter::once((x, p)).chain(g.neighbors(x).iter().map(|&v| (v, share))))
}

/// `κ_p(x, y) = 1 − W₁(μ_x^p, μ_y^p)` on an edge.
pub fn kappa_p(g: &Graph, x: VertexId, y: VertexId, p: Rational) -> Result<Rational, TransportError> {
    g.require_edge(x, y)?;
    let mu_x = vertex_measure(g, x, p)?;
    let mu_y = vertex_measure(g, y, p)?;
    Ok(Rational::one() - wasserstein(g, &mu_x, &mu_y)?.cost)
}

fn equal_degree(g: &Graph, x: VertexId, y: VertexId) -> Result<usize, TransportError> {
    g.require_edge(x, y)?;
    let (dx, dy) = (g.degree(x), g.degree(y));
    if dx != dy {
        return Err(TransportError::UnequalDegrees { x, y, dx, dy });
    }
    Ok(dx)
}

/// Lin-Lu-Yau curvature on an edge whose endpoints share the degree `d`,
/// via `κ_LLY = (d+1)/d · κ_{1/(d+1)}`.
pub fn kappa_lly(g: &Graph, x: VertexId, y: VertexId) -> Result<Rational, TransportError> {
    let d = equal_degree(g, x, y)? as i64;
    let k = kappa_p(g, x, y, Rational::new(1, d + 1))?;
    Ok(k * Rational::new(d + 1, d))
}

/// True iff `κ₀ = κ_LLY = 0`; by concavity of `p ↦ κ_p` this forces
/// `κ_p = 0` for every idleness.
pub fn is_bone_idle(g: &Graph, x: VertexId, y: VertexId) -> Result<bool, TransportError> {
    let lly = kappa_lly(g, x, y)?;
    Ok(lly.is_zero() && kappa_p(g, x, y, Rational::zero())?.is_zero())
}

/// Vertices of the edge neighborhood, split as in the proof that positive
/// Lin-Lu-Yau curvature forces nonnegative `κ₀`, with the pairing of `V_x`
/// onto `V_y` taken from an optimal plan at idleness `1/(d+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisplacementHistogram {
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    /// Common neighbors of `x` and `y`.
    pub t_xy: Vec<VertexId>,
    /// Neighbors of `x` other than `y` that are not neighbors of `y`.
    pub v_x: Vec<VertexId>,
    pub v_y: Vec<VertexId>,
    /// `(u, σ(u))` for `u` in `V_x`.
    pub pairs: Vec<(VertexId, VertexId)>,
}

impl DisplacementHistogram {
    /// `N₁ + 2N₂ + 3N₃`.
    pub fn weighted_total(&self) -> usize {
        self.n1 + 2 * self.n2 + 3 * self.n3
    }
}

pub fn displacement_histogram(g: &Graph, x: VertexId, y: VertexId) -> Result<DisplacementHistogram, TransportError> {
    let d = equal_degree(g, x, y)?;
    let p = Rational::new(1, d as i64 + 1);
    let mu_x = vertex_measure(g, x, p)?;
    let mu_y = vertex_measure(g, y, p)?;
    let result = wasserstein(g, &mu_x, &mu_y)?;
    let t_xy: Vec<VertexId> = g.common_neighbors(x, y).collect();
    let v_x: Vec<VertexId> =
        g.neighbors(x).iter().copied().filter(|&u| u != y && !g.has_edge(u, y)).collect();
    let v_y: Vec<VertexId> =
        g.neighbors(y).iter().copied().filter(|&v| v != x && !g.has_edge(v, x)).collect();
    for &fixed in t_xy.iter().chain([&x, &y]) {
        assert_eq!(result.plan.get(fixed, fixed), p, "diagonal-maximal plan fixes the shared support");
    }
    let mut pairs = Vec::with_capacity(v_x.len());
    let (mut n1, mut n2, mut n3) = (0, 0, 0);
    for &u in &v_x {
        let targets: Vec<VertexId> =
            result.plan.entries.iter().filter(|((a, _), _)| *a == u).map(|((_, b), _)| *b).collect();
        assert!(targets.len() == 1 && v_y.contains(&targets[0]), "unit masses move without splitting");
        let v = targets[0];
        match g.distances_from(u)[v] {
            1 => n1 += 1,
            2 => n2 += 1,
            3 => n3 += 1,
            other => unreachable!("V_x and V_y are within distance 3, found {other}"),
        }
        pairs.push((u, v));
    }
    Ok(DisplacementHistogram { n1, n2, n3, t_xy, v_x, v_y, pairs })
}

/// Perfect-matching characterizations of extremal curvature on an edge in
/// no triangle: `kappa0_zero` iff `S₁(x)` matches onto `S₁(y)`, `lly_max` iff
/// `S₁(x)∖{y}` matches onto `S₁(y)∖{x}`, with `u` matchable to `v` when
/// `d(u, v) ≤ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingCheck {
    pub kappa0_zero: bool,
    pub lly_max: bool,
}

pub fn matching_curvature_check(g: &Graph, x: VertexId, y: VertexId) -> Result<MatchingCheck, TransportError> {
    g.require_edge(x, y)?;
    if g.common_neighbors(x, y).next().is_some() {
        return Err(TransportError::InTriangle(x, y));
    }
    let perfect = |left: Vec<VertexId>, right: Vec<VertexId>| {
        if left.len() != right.len() {
            return false;
        }
        let m = max_bipartite_matching(left.len(), right.len(), |i| {
            (0..right.len()).filter(|&j| left[i] == right[j] || g.has_edge(left[i], right[j])).collect()
        });
        m.size() == left.len()
    };
    let sx = g.neighbors(x).to_vec();
    let sy = g.neighbors(y).to_vec();
    let kappa0_zero = perfect(sx.clone(), sy.clone());
    let lly_max = perfect(
        sx.into_iter().filter(|&u| u != y).collect(),
        sy.into_iter().filter(|&v| v != x).collect(),
    );
    Ok(MatchingCheck { kappa0_zero, lly_max })
}

/// Triangle upper bounds on a regular graph: `κ₀ ≤ #Δ(x,y)/d` and
/// `κ_LLY ≤ (2 + #Δ(x,y))/d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpperBounds {
    #[serde(serialize_with = "crate::rational::serialize_fraction")]
    pub k0_bound: Rational,
    #[serde(serialize_with = "crate::rational::serialize_fraction")]
    pub lly_bound: Rational,
}

pub fn curvature_upper_bounds(g: &Graph, x: VertexId, y: VertexId) -> Result<UpperBounds, TransportError> {
    let d = g.regular_degree().ok_or(TransportError::NotRegular)? as i64;
    let t = g.triangles_on_edge(x, y)? as i64;
    Ok(UpperBounds { k0_bound: Rational::new(t, d), lly_bound: Rational::new(2 + t, d) })
}

//! Exact optimal transport between vertex measures and the Ollivier-type
//! curvatures built on it.
//!
//! All masses are rationals. The transport problem is solved as an integral
//! min-cost flow after scaling every mass by the least common multiple of
//! the denominators, so costs, plans and Kantorovich potentials are exact.

mod curvature;
mod flow;

pub use curvature::{
    curvature_upper_bounds, displacement_histogram, is_bone_idle, kappa_lly, kappa_p, matching_curvature_check,
    vertex_measure, DisplacementHistogram, MatchingCheck, UpperBounds,
};

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId};
use crate::rational::{fraction, Rational};
use flow::FlowNetwork;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransportError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("idleness {0} is outside [0, 1]")]
    Idleness(String),
    #[error("negative mass {mass} at vertex {vertex}")]
    NegativeMass { vertex: VertexId, mass: String },
    #[error("measure has total mass {0}, expected 1")]
    NotNormalized(String),
    #[error("endpoints {x} and {y} have degrees {dx} and {dy}; only equal degrees are supported")]
    UnequalDegrees { x: VertexId, y: VertexId, dx: usize, dy: usize },
    #[error("edge {{{0}, {1}}} lies in a triangle")]
    InTriangle(VertexId, VertexId),
    #[error("graph is not regular")]
    NotRegular,
    #[error("mass denominators overflow the integer range")]
    Overflow,
}

/// Probability measure with finite support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measure {
    support: BTreeMap<VertexId, Rational>,
}

impl Measure {
    /// Builds a measure; zero entries are dropped.
    pub fn new(masses: impl IntoIterator<Item = (VertexId, Rational)>) -> Result<Self, TransportError> {
        let mut support = BTreeMap::new();
        for (v, m) in masses {
            if m.is_negative() {
                return Err(TransportError::NegativeMass { vertex: v, mass: fraction(&m) });
            }
            *support.entry(v).or_insert_with(Rational::zero) += m;
        }
        support.retain(|_, m| !m.is_zero());
        let total: Rational = support.values().sum();
        if !total.is_one() {
            return Err(TransportError::NotNormalized(fraction(&total)));
        }
        Ok(Measure { support })
    }

    pub fn point(v: VertexId) -> Self {
        Measure { support: BTreeMap::from([(v, Rational::one())]) }
    }

    pub fn mass(&self, v: VertexId) -> Rational {
        self.support.get(&v).copied().unwrap_or_else(Rational::zero)
    }

    /// Vertices with positive mass, in increasing order.
    pub fn support(&self) -> impl Iterator<Item = (VertexId, Rational)> + '_ {
        self.support.iter().map(|(&v, &m)| (v, m))
    }

    pub fn support_len(&self) -> usize {
        self.support.len()
    }
}

/// Coupling of two measures.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TransportPlan {
    pub entries: BTreeMap<(VertexId, VertexId), Rational>,
}

impl TransportPlan {
    pub fn get(&self, u: VertexId, v: VertexId) -> Rational {
        self.entries.get(&(u, v)).copied().unwrap_or_else(Rational::zero)
    }

    /// Mass left in place.
    pub fn diagonal_mass(&self) -> Rational {
        self.entries.iter().filter(|((u, v), _)| u == v).map(|(_, m)| *m).sum()
    }
}

/// Optimal cost, an optimal plan, and a 1-Lipschitz potential `φ` on the
/// union of the supports with `Σ φ (μ₁ − μ₂) = cost`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportResult {
    pub cost: Rational,
    pub plan: TransportPlan,
    pub potential: BTreeMap<VertexId, Rational>,
}

impl TransportResult {
    /// Re-checks marginals, plan cost, the Lipschitz property of the
    /// potential and the absence of a duality gap.
    pub fn check_certificate(&self, g: &Graph, mu1: &Measure, mu2: &Measure) -> Result<(), String> {
        let mut row: BTreeMap<VertexId, Rational> = BTreeMap::new();
        let mut col: BTreeMap<VertexId, Rational> = BTreeMap::new();
        let mut cost = Rational::zero();
        let mut dist_cache: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
        let mut dist = |u: VertexId, v: VertexId| dist_cache.entry(u).or_insert_with(|| g.distances_from(u))[v];
        for (&(u, v), &m) in &self.plan.entries {
            if m.is_negative() {
                return Err(format!("negative plan entry at ({u}, {v})"));
            }
            *row.entry(u).or_insert_with(Rational::zero) += m;
            *col.entry(v).or_insert_with(Rational::zero) += m;
            cost += m * Rational::from_integer(dist(u, v) as i64);
        }
        for (marginal, mu, side) in [(&row, mu1, "first"), (&col, mu2, "second")] {
            let expected: BTreeMap<VertexId, Rational> = mu.support().collect();
            let found: BTreeMap<VertexId, Rational> =
                marginal.iter().filter(|(_, m)| !m.is_zero()).map(|(&v, &m)| (v, m)).collect();
            if expected != found {
                return Err(format!("{side} marginal of the plan differs from the measure"));
            }
        }
        if cost != self.cost {
            return Err(format!("plan cost {} differs from reported cost {}", fraction(&cost), fraction(&self.cost)));
        }
        let domain: Vec<(VertexId, Rational)> = self.potential.iter().map(|(&v, &p)| (v, p)).collect();
        for (i, &(u, pu)) in domain.iter().enumerate() {
            for &(v, pv) in &domain[i + 1..] {
                if (pu - pv).abs() > Rational::from_integer(dist(u, v) as i64) {
                    return Err(format!("potential is not 1-Lipschitz on ({u}, {v})"));
                }
            }
        }
        let mut dual = Rational::zero();
        for v in mu1.support().chain(mu2.support()).map(|(v, _)| v).collect::<std::collections::BTreeSet<_>>() {
            let Some(p) = self.potential.get(&v) else {
                return Err(format!("potential undefined at support vertex {v}"));
            };
            dual += *p * (mu1.mass(v) - mu2.mass(v));
        }
        if dual != self.cost {
            return Err(format!("duality gap: dual value {} vs cost {}", fraction(&dual), fraction(&self.cost)));
        }
        Ok(())
    }
}

fn common_denominator(measures: &[&Measure]) -> Result<i64, TransportError> {
    let mut l: i64 = 1;
    for mu in measures {
        for (_, m) in mu.support() {
            let d = *m.denom();
            let g = l.gcd(&d);
            l = (l / g).checked_mul(d).ok_or(TransportError::Overflow)?;
        }
    }
    Ok(l)
}

/// Exact `W₁(μ₁, μ₂)` with graph distance as ground cost.
///
/// Among optimal plans the one with the largest diagonal mass is returned,
/// and that plan moves mass in multiples of `1/L`, where `L` is the least
/// common denominator of all masses.
pub fn wasserstein(g: &Graph, mu1: &Measure, mu2: &Measure) -> Result<TransportResult, TransportError> {
    for (v, _) in mu1.support().chain(mu2.support()) {
        g.require_vertex(v)?;
    }
    let scale = common_denominator(&[mu1, mu2])?;
    let units = |m: Rational| -> i64 { (m * Rational::from_integer(scale)).to_integer() };
    let sources: Vec<(VertexId, i64)> = mu1.support().map(|(v, m)| (v, units(m))).collect();
    let sinks: Vec<(VertexId, i64)> = mu2.support().map(|(v, m)| (v, units(m))).collect();
    let sink_dist: Vec<Vec<usize>> = sinks.iter().map(|&(v, _)| g.distances_from(v)).collect();

    // Cost weight beyond the total flow makes "keep mass in place" a strict
    // secondary objective that never trades against transport cost.
    let weight = scale.checked_add(1).ok_or(TransportError::Overflow)?;
    let (ns, nt) = (sources.len(), sinks.len());
    let (s, t) = (ns + nt, ns + nt + 1);
    let mut net = FlowNetwork::new(ns + nt + 2);
    for (i, &(_, supply)) in sources.iter().enumerate() {
        net.add_arc(s, i, supply, 0);
    }
    for (j, &(_, demand)) in sinks.iter().enumerate() {
        net.add_arc(ns + j, t, demand, 0);
    }
    let mut arcs = Vec::with_capacity(ns * nt);
    for (i, &(u, supply)) in sources.iter().enumerate() {
        for (j, &(v, _)) in sinks.iter().enumerate() {
            let d = sink_dist[j][u] as i64;
            let cost = d.checked_mul(weight).ok_or(TransportError::Overflow)? - i64::from(u == v);
            arcs.push((i, j, net.add_arc(i, ns + j, supply, cost)));
        }
    }
    let pushed = net.min_cost_flow(s, t, scale);
    debug_assert_eq!(pushed, scale, "balanced transport problem must be feasible");

    let mut plan = TransportPlan::default();
    let mut cost_units: i64 = 0;
    let mut flows = vec![vec![0i64; nt]; ns];
    for &(i, j, arc) in &arcs {
        let f = net.flow(arc);
        if f > 0 {
            flows[i][j] = f;
            plan.entries.insert((sources[i].0, sinks[j].0), Rational::new(f, scale));
            cost_units += f * sink_dist[j][sources[i].0] as i64;
        }
    }
    let cost = Rational::new(cost_units, scale);

    // Kantorovich potentials from shortest paths in the residual graph with
    // true costs; the all-zero start plays the role of a virtual root.
    let mut p = vec![0i64; ns + nt];
    for round in 0.. {
        assert!(round <= ns + nt + 1, "residual graph of an optimal plan has no negative cycle");
        let mut changed = false;
        for i in 0..ns {
            for j in 0..nt {
                let d = sink_dist[j][sources[i].0] as i64;
                if p[i] + d < p[ns + j] {
                    p[ns + j] = p[i] + d;
                    changed = true;
                }
                if flows[i][j] > 0 && p[ns + j] - d < p[i] {
                    p[i] = p[ns + j] - d;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let psi: Vec<i64> = (0..nt).map(|j| -p[ns + j]).collect();
    let mut potential = BTreeMap::new();
    for &w in sources.iter().chain(&sinks).map(|(w, _)| w) {
        let phi = (0..nt).map(|j| psi[j] + sink_dist[j][w] as i64).min().expect("measures are nonempty");
        potential.insert(w, Rational::from_integer(phi));
    }
    Ok(TransportResult { cost, plan, potential })
}

//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use curvlab::{Graph, Rational, VertexId};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

/// Largest off-diagonal support side the plan enumeration accepts.
pub const MAX_SIDE: usize = 5;
/// Largest total scaled excess mass the plan enumeration accepts.
pub const MAX_UNITS: i64 = 40;

fn bfs(g: &Graph, s: VertexId) -> Vec<i64> {
    let mut dist = vec![-1; g.vertex_count()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] < 0 {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// `W₁` by exhaustive enumeration of integral plans.
///
/// Mass common to both measures stays put (optimal for a metric cost). The
/// excess masses are scaled to integers and every integral coupling of the
/// excesses is enumerated; integral margins make the transportation
/// polytope's vertices integral, so the minimum is exact. Returns `None`
/// when either excess support exceeds [`MAX_SIDE`] or the scaled mass
/// exceeds [`MAX_UNITS`].
pub fn brute_force_w1(g: &Graph, mu1: &BTreeMap<VertexId, Rational>, mu2: &BTreeMap<VertexId, Rational>) -> Option<Rational> {
    let mut vertices: Vec<VertexId> = mu1.keys().chain(mu2.keys()).copied().collect();
    vertices.sort_unstable();
    vertices.dedup();
    let get = |m: &BTreeMap<VertexId, Rational>, v| m.get(&v).copied().unwrap_or_else(Rational::zero);
    let mut excess1 = Vec::new();
    let mut excess2 = Vec::new();
    for &v in &vertices {
        let (a, b) = (get(mu1, v), get(mu2, v));
        if a > b {
            excess1.push((v, a - b));
        } else if b > a {
            excess2.push((v, b - a));
        }
    }
    if excess1.len() > MAX_SIDE || excess2.len() > MAX_SIDE {
        return None;
    }
    if excess1.is_empty() {
        return Some(Rational::zero());
    }
    let scale = excess1.iter().chain(&excess2).fold(1i64, |l, (_, m)| l.lcm(m.denom()));
    let units = |m: &Rational| (m * scale).to_integer();
    let supply: Vec<i64> = excess1.iter().map(|(_, m)| units(m)).collect();
    let demand: Vec<i64> = excess2.iter().map(|(_, m)| units(m)).collect();
    if supply.iter().sum::<i64>() > MAX_UNITS {
        return None;
    }
    let cost: Vec<Vec<i64>> = excess1
        .iter()
        .map(|&(u, _)| {
            let d = bfs(g, u);
            excess2.iter().map(|&(v, _)| d[v]).collect()
        })
        .collect();
    let mut best = i64::MAX;
    let mut demand_left = demand.clone();
    enumerate(&cost, &supply, 0, 0, supply[0], &mut demand_left, 0, &mut best);
    Some(Rational::new(best, scale))
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    cost: &[Vec<i64>],
    supply: &[i64],
    i: usize,
    j: usize,
    row_left: i64,
    demand_left: &mut [i64],
    acc: i64,
    best: &mut i64,
) {
    if acc >= *best {
        return;
    }
    if i == supply.len() {
        if demand_left.iter().all(|&d| d == 0) {
            *best = acc;
        }
        return;
    }
    let last = j + 1 == demand_left.len();
    let hi = row_left.min(demand_left[j]);
    let lo = if last { row_left } else { 0 };
    if lo > hi {
        return;
    }
    for amount in lo..=hi {
        demand_left[j] -= amount;
        let step = acc + amount * cost[i][j];
        if last {
            let next = supply.get(i + 1).copied().unwrap_or(0);
            enumerate(cost, supply, i + 1, 0, next, demand_left, step, best);
        } else {
            enumerate(cost, supply, i, j + 1, row_left - amount, demand_left, step, best);
        }
        demand_left[j] += amount;
    }
}

/// `μ_x^p` written out from the definition.
pub fn lazy_measure(g: &Graph, x: VertexId, p: Rational) -> BTreeMap<VertexId, Rational> {
    let mut m = BTreeMap::new();
    if !p.is_zero() {
        m.insert(x, p);
    }
    let share = (Rational::from_integer(1) - p) / Rational::from_integer(g.degree(x) as i64);
    if !share.is_zero() {
        for &v in g.neighbors(x) {
            m.insert(v, share);
        }
    }
    m
}

/// Flavors found by brute force at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FlatFlavors {
    pub plain: bool,
    pub r: bool,
    pub s: bool,
    pub rs: bool,
}

/// Decides all four flatness flavors at `x` straight from the definition.
///
/// With `η_i(x) = v_i` fixed, property (ii) at `u = v_j` says that
/// `i ↦ η_i(v_j)` is a bijection onto `S₁(v_j)`; every such column choice
/// is enumerated. Property (iii) then says that row `i` enumerates
/// `S₁(v_i)`; (R) is `η_i(v_i) = x` and (S) is `η_j(v_i) = η_i(v_j)`.
/// Assumes every vertex of `B₁(x)` has degree `d = deg(x)`.
pub fn brute_force_flatness(g: &Graph, x: VertexId) -> FlatFlavors {
    let nbrs = g.neighbors(x).to_vec();
    let d = nbrs.len();
    let columns: Vec<Vec<Vec<VertexId>>> = nbrs.iter().map(|&v| permutations(g.neighbors(v))).collect();
    let mut chosen: Vec<usize> = Vec::with_capacity(d);
    let mut found = FlatFlavors::default();
    search(g, x, &nbrs, &columns, &mut chosen, &mut found);
    found
}

fn search(
    g: &Graph,
    x: VertexId,
    nbrs: &[VertexId],
    columns: &[Vec<Vec<VertexId>>],
    chosen: &mut Vec<usize>,
    found: &mut FlatFlavors,
) {
    if found.plain && found.r && found.s && found.rs {
        return;
    }
    let d = nbrs.len();
    let j = chosen.len();
    if j == d {
        let a = |i: usize, j: usize| columns[j][chosen[j]][i];
        for (i, &v) in nbrs.iter().enumerate() {
            let mut row: Vec<VertexId> = (0..d).map(|j| a(i, j)).collect();
            row.sort_unstable();
            if row != g.neighbors(v) {
                return;
            }
        }
        let r = (0..d).all(|i| a(i, i) == x);
        let s = (0..d).all(|i| (0..d).all(|j| a(i, j) == a(j, i)));
        found.plain = true;
        found.r |= r;
        found.s |= s;
        found.rs |= r && s;
        return;
    }
    for k in 0..columns[j].len() {
        // Row i must stay inside S₁(v_i).
        if (0..d).all(|i| g.has_edge(columns[j][k][i], nbrs[i])) {
            chosen.push(k);
            search(g, x, nbrs, columns, chosen, found);
            chosen.pop();
        }
    }
}

fn permutations(items: &[VertexId]) -> Vec<Vec<VertexId>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (k, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Whether every vertex of `B₁(x)` has the degree of `x`.
pub fn locally_regular(g: &Graph, x: VertexId) -> bool {
    g.neighbors(x).iter().all(|&v| g.degree(v) == g.degree(x))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `Δf(v) = Σ_{w~v} (f(w) − f(v))` over the whole graph.
pub fn laplacian(g: &Graph, f: &[Rational]) -> Vec<Rational> {
    g.vertices().map(|v| g.neighbors(v).iter().map(|&w| f[w] - f[v]).sum()).collect()
}

/// `Γ(f, h)(v) = ½ Σ_{w~v} (f(w) − f(v))(h(w) − h(v))`.
pub fn gamma_at(g: &Graph, f: &[Rational], h: &[Rational], v: VertexId) -> Rational {
    let sum: Rational = g.neighbors(v).iter().map(|&w| (f[w] - f[v]) * (h[w] - h[v])).sum();
    sum / Rational::from_integer(2)
}

/// `Γ₂(f)(x) = ½ ΔΓ(f)(x) − Γ(f, Δf)(x)`, evaluated on the whole graph.
pub fn gamma2_at(g: &Graph, f: &[Rational], x: VertexId) -> Rational {
    let gf: Vec<Rational> = g.vertices().map(|v| gamma_at(g, f, f, v)).collect();
    let half = Rational::new(1, 2);
    laplacian(g, &gf)[x] * half - gamma_at(g, f, &laplacian(g, f), x)
}

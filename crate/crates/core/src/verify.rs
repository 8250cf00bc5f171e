//! Property sweeps over named graphs and seeded random regular graphs.
//!
//! Each [`Suite`] checks one family of curvature relations. Graphs are
//! processed in parallel and results are merged in corpus order, so reports
//! are identical for any thread count.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::atlas::{self, AtlasError};
use crate::bakry_emery::{self, Dimension};
use crate::flatness::{
    kdd_graph, kdd_matrix, search_flatness_with, verify_certificate, FlatnessError, FlatnessFlavor, SearchOptions,
};
use crate::graph::{intersection_array, Direction, Graph, VertexId};
use crate::products::{
    check_cartesian_be, check_flatness_preservation, check_strong_bounds, EdgeClass, ProductKind,
};
use crate::rational::{fraction, Rational};
use crate::transport::{
    curvature_upper_bounds, displacement_histogram, is_bone_idle, kappa_lly, kappa_p, matching_curvature_check,
};

/// Absolute slack for floating-point Bakry-Émery comparisons.
pub const BE_SLACK: f64 = 1e-8;
/// Tolerance for Bakry-Émery equalities.
pub const BE_EQUAL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    /// Positive Lin-Lu-Yau curvature forces `κ₀ ≥ 0`.
    LlyK0,
    /// `p ↦ κ_p` is concave on the grid `k/8` and `κ_p ≤ (1 − p)·κ_LLY`.
    Concavity,
    /// `d ≥ N₁ + 2N₂ + 3N₃` whenever `κ_{1/(d+1)} > 0`.
    Displacement,
    /// Triangle upper bounds for `κ₀` and `κ_LLY`.
    EdgeBounds,
    /// `K_∞(x) ≤ 2 + #Δ(x)/d`, and `K(x, N)` nondecreasing in `N`.
    VertexBound,
    /// Perfect matchings characterize extremal curvature on triangle-free edges.
    Matching,
    /// Extremal Ollivier curvature at a triangle-free vertex with
    /// in-degrees at most 2 bounds `K_∞` from below.
    TriangleFree,
    /// At the same vertices, extremal Ollivier curvature is equivalent to
    /// (S)- and (RS)-Ricci flatness.
    FlatEquivalence,
    /// Ricci flat vertices have nonnegative curvature; (R)-flat ones have
    /// `κ_LLY ≥ 2/d` and `K_∞ ≥ 2`.
    FlatBounds,
    /// Product certificates assembled from factor certificates verify.
    ProductFlatness,
    /// Lower bounds on horizontal and vertical edges of strong products.
    StrongBounds,
    /// Nonnegative factors give nonnegative horizontal and vertical edges.
    StrongNonnegative,
    /// `K_∞` of a Cartesian product is the minimum over the factors.
    CartesianBe,
    /// Distance-regular graphs of girth 4 attain all extremal values.
    DistanceRegular,
    /// Explicit `K_{d,d}` certificates, and (RS)-flatness iff `d` is even.
    Kdd,
}

impl Suite {
    pub const ALL: [Suite; 15] = [
        Suite::LlyK0,
        Suite::Concavity,
        Suite::Displacement,
        Suite::EdgeBounds,
        Suite::VertexBound,
        Suite::Matching,
        Suite::TriangleFree,
        Suite::FlatEquivalence,
        Suite::FlatBounds,
        Suite::ProductFlatness,
        Suite::StrongBounds,
        Suite::StrongNonnegative,
        Suite::CartesianBe,
        Suite::DistanceRegular,
        Suite::Kdd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LlyK0 => "lly-k0",
            Suite::Concavity => "concavity",
            Suite::Displacement => "displacement",
            Suite::EdgeBounds => "edge-bounds",
            Suite::VertexBound => "vertex-bound",
            Suite::Matching => "matching",
            Suite::TriangleFree => "triangle-free",
            Suite::FlatEquivalence => "flat-equivalence",
            Suite::FlatBounds => "flat-bounds",
            Suite::ProductFlatness => "product-flatness",
            Suite::StrongBounds => "strong-bounds",
            Suite::StrongNonnegative => "strong-nonnegative",
            Suite::CartesianBe => "cartesian-be",
            Suite::DistanceRegular => "distance-regular",
            Suite::Kdd => "kdd",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::LlyK0 => "kappa_LLY > 0 implies kappa_0 >= 0 on every edge",
            Suite::Concavity => "p -> kappa_p concave on p = k/8 and kappa_p <= (1 - p) kappa_LLY",
            Suite::Displacement => "d >= N1 + 2 N2 + 3 N3 whenever kappa_{1/(d+1)} > 0",
            Suite::EdgeBounds => "kappa_0 <= #tri/d and kappa_LLY <= (2 + #tri)/d",
            Suite::VertexBound => "K_inf <= 2 + #tri(x)/d and K(x, N) monotone in N",
            Suite::Matching => "perfect matchings iff kappa_0 = 0 / kappa_LLY = 2/d on triangle-free edges",
            Suite::TriangleFree => "extremal kappa_0 / kappa_LLY imply K_inf >= 0 / K_inf = 2",
            Suite::FlatEquivalence => "extremal kappa_0 / kappa_LLY iff (S) / (RS) Ricci flat",
            Suite::FlatBounds => "Ricci flat / (R) Ricci flat imply curvature lower bounds",
            Suite::ProductFlatness => "product certificates verify for every kind and flavor",
            Suite::StrongBounds => "strong product horizontal/vertical lower bounds",
            Suite::StrongNonnegative => "nonnegative factors give nonnegative horizontal/vertical edges",
            Suite::CartesianBe => "K_inf of a Cartesian product is the factor minimum",
            Suite::DistanceRegular => "girth-4 distance-regular graphs: kappa_0 = 0, kappa_LLY = 2/d, K_inf = 2",
            Suite::Kdd => "K_{d,d} certificates verify; (RS) flat iff d even",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
            format!("unknown suite `{s}`; expected one of {}", names.join(", "))
        })
    }
}

impl Serialize for Suite {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Number of random regular graphs.
    pub seeds: u64,
    pub max_n: usize,
    pub min_d: usize,
    pub max_d: usize,
    pub search: SearchOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seeds: 200, max_n: 14, min_d: 3, max_d: 5, search: SearchOptions::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

impl NamedGraph {
    fn new(name: impl Into<String>, graph: Graph) -> Self {
        NamedGraph { name: name.into(), graph }
    }
}

/// Regular named graphs swept by the single-graph suites.
pub fn atlas_corpus() -> Vec<NamedGraph> {
    let mut out = Vec::new();
    for d in 2..=4 {
        out.push(NamedGraph::new(format!("hypercube {d}"), atlas::hypercube(d).expect("small cube")));
    }
    for n in 3..=5 {
        out.push(NamedGraph::new(format!("complete {n}"), atlas::complete(n).expect("small clique")));
    }
    for n in 5..=8 {
        out.push(NamedGraph::new(format!("cycle {n}"), atlas::cycle(n).expect("small cycle")));
    }
    for d in 2..=4 {
        out.push(NamedGraph::new(format!("complete-bipartite {d} {d}"), atlas::complete_bipartite(d, d).expect("small")));
    }
    out.push(NamedGraph::new("triplex", atlas::triplex()));
    out.push(NamedGraph::new("icosidodecahedron", atlas::icosidodecahedron()));
    out.push(NamedGraph::new("shrikhande", atlas::shrikhande()));
    out.push(NamedGraph::new("rook3", atlas::rook3()));
    out.push(NamedGraph::new("incidence-11-6-3", atlas::incidence_11_6_3()));
    out
}

/// Parameters of the `seed`-th random graph: `d` cycles through
/// `min_d..=max_d`, and `n` is drawn from the admissible sizes up to
/// `max_n`.
pub fn random_parameters(seed: u64, options: &VerifyOptions) -> Option<(usize, usize)> {
    let span = options.max_d.checked_sub(options.min_d)? + 1;
    let d = options.min_d + (seed % span as u64) as usize;
    let sizes: Vec<usize> = (d + 1..=options.max_n).filter(|n| (n * d).is_multiple_of(2)).collect();
    if sizes.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    Some((sizes[rng.gen_range(0..sizes.len())], d))
}

/// Random regular graphs, named by their `atlas emit` parameters.
pub fn random_corpus(options: &VerifyOptions) -> (Vec<NamedGraph>, Vec<String>) {
    let results: Vec<Result<NamedGraph, String>> = (0..options.seeds)
        .into_par_iter()
        .filter_map(|seed| {
            let (n, d) = random_parameters(seed, options)?;
            Some(match atlas::random_regular(n, d, seed) {
                Ok(g) => Ok(NamedGraph::new(format!("random-regular {n} {d} {seed}"), g)),
                Err(e @ AtlasError::Exhausted { .. }) => Err(format!("seed {seed}: {e}")),
                Err(e) => Err(format!("seed {seed}: {e}")),
            })
        })
        .collect();
    let mut graphs = Vec::new();
    let mut notices = Vec::new();
    for r in results {
        match r {
            Ok(g) => graphs.push(g),
            Err(e) => notices.push(format!("skipped {e}")),
        }
    }
    (graphs, notices)
}

/// Standalone recipe to reproduce a failure: the graph plus a command in
/// which `{graph}` stands for the graph file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reproducer {
    pub graph: Graph,
    pub command: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub graph: String,
    pub detail: String,
    #[serde(skip)]
    pub reproducer: Reproducer,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Tally {
    pub checks: u64,
    pub failures: Vec<Failure>,
    pub notices: Vec<String>,
}

impl Tally {
    fn merge(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self.notices.extend(other.notices);
    }

    fn check(&mut self, ok: bool, failure: impl FnOnce() -> (String, String)) -> bool {
        self.checks += 1;
        if !ok {
            let (detail, command) = failure();
            self.failures.push(Failure {
                graph: String::new(),
                detail,
                reproducer: Reproducer { graph: Graph::new(1, &[]).expect("K1"), command },
            });
        }
        ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: u64,
    pub failures: Vec<Failure>,
    pub notices: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs `f` on every graph in parallel and attaches the graph to each
/// failure. Errors from `f` count as failures.
fn sweep<F>(graphs: &[NamedGraph], f: F) -> Tally
where
    F: Fn(&Graph, &mut Tally) -> Result<(), String> + Sync,
{
    let tallies: Vec<Tally> = graphs
        .par_iter()
        .map(|ng| {
            let mut t = Tally::default();
            if let Err(e) = f(&ng.graph, &mut t) {
                t.check(false, || (format!("error: {e}"), String::new()));
            }
            for failure in &mut t.failures {
                failure.graph = ng.name.clone();
                failure.reproducer.graph = ng.graph.clone();
            }
            t
        })
        .collect();
    let mut total = Tally::default();
    for t in tallies {
        total.merge(t);
    }
    total
}

fn edge_cmd(notion: &str, p: Option<&Rational>, u: VertexId, v: VertexId) -> String {
    let p = p.map(|p| format!(" --p {}", fraction(p))).unwrap_or_default();
    format!("curvlab curvature {{graph}} --notion {notion}{p} --edges {u}-{v}")
}

fn vertex_cmd(x: VertexId, dim: &str) -> String {
    format!("curvlab curvature {{graph}} --notion bakry-emery --dim {dim} --vertices {x}")
}

fn flat_cmd(x: VertexId, flavor: FlatnessFlavor) -> String {
    format!("curvlab flatness {{graph}} --flavor {flavor} --vertex {x}")
}

fn err(e: impl fmt::Display) -> String {
    e.to_string()
}

fn k_inf(g: &Graph, x: VertexId) -> Result<f64, String> {
    Ok(bakry_emery::curvature(g, x, Dimension::Infinite).map_err(err)?.value)
}

/// Triangle-free at `x` with `d_x^-(z) ≤ 2` on the second sphere.
pub fn is_eligible(g: &Graph, x: VertexId) -> bool {
    g.triangles_at_vertex(x) == 0
        && g.sphere(x, 2).into_iter().all(|z| g.directional_degree(x, z, Direction::In) <= 2)
}

fn edge_suite(graphs: &[NamedGraph], suite: Suite) -> Tally {
    let zero = Rational::zero();
    sweep(graphs, |g, t| {
        let d = g.regular_degree().ok_or("graph is not regular")? as i64;
        for (x, y) in g.edges() {
            match suite {
                Suite::LlyK0 => {
                    let lly = kappa_lly(g, x, y).map_err(err)?;
                    if lly > zero {
                        let k0 = kappa_p(g, x, y, zero).map_err(err)?;
                        t.check(k0 >= zero, || {
                            (format!("edge {x}-{y}: kappa_LLY = {} > 0 but kappa_0 = {}", fraction(&lly), fraction(&k0)), edge_cmd("ollivier", Some(&zero), x, y))
                        });
                    }
                }
                Suite::Concavity => {
                    let grid: Vec<Rational> = (0..=8).map(|k| Rational::new(k, 8)).collect();
                    let kappas =
                        grid.iter().map(|&p| kappa_p(g, x, y, p)).collect::<Result<Vec<_>, _>>().map_err(err)?;
                    let lly = kappa_lly(g, x, y).map_err(err)?;
                    for k in 1..8 {
                        // Equal spacing: concavity is κ_{k−1} + κ_{k+1} ≤ 2κ_k.
                        t.check(kappas[k - 1] + kappas[k + 1] <= kappas[k] * 2, || {
                            (format!("edge {x}-{y}: concavity fails at p = {}", fraction(&grid[k])), edge_cmd("ollivier", Some(&grid[k]), x, y))
                        });
                    }
                    // With κ₁ = 0, concavity gives κ_p ≤ (1 − p)·κ_LLY.
                    for (p, kappa) in grid.iter().zip(&kappas) {
                        let bound = (Rational::one() - p) * lly;
                        t.check(*kappa <= bound, || {
                            (format!("edge {x}-{y}: kappa_{} = {} exceeds (1 - p) kappa_LLY = {}", fraction(p), fraction(kappa), fraction(&bound)), edge_cmd("lly", None, x, y))
                        });
                    }
                    t.check(kappas[8].is_zero(), || (format!("edge {x}-{y}: kappa_1 != 0"), edge_cmd("ollivier", Some(&Rational::one()), x, y)));
                }
                Suite::Displacement => {
                    let h = displacement_histogram(g, x, y).map_err(err)?;
                    t.check(h.n1 + h.n2 + h.n3 == h.v_x.len() && h.v_x.len() == h.v_y.len(), || {
                        (format!("edge {x}-{y}: histogram counts do not add up"), edge_cmd("lly", None, x, y))
                    });
                    let p = Rational::new(1, d + 1);
                    if kappa_p(g, x, y, p).map_err(err)? > zero {
                        t.check(d as usize >= h.weighted_total(), || {
                            (format!("edge {x}-{y}: d = {d} < N1 + 2N2 + 3N3 = {}", h.weighted_total()), edge_cmd("ollivier", Some(&p), x, y))
                        });
                    }
                }
                Suite::EdgeBounds => {
                    let b = curvature_upper_bounds(g, x, y).map_err(err)?;
                    let k0 = kappa_p(g, x, y, zero).map_err(err)?;
                    let lly = kappa_lly(g, x, y).map_err(err)?;
                    t.check(k0 <= b.k0_bound, || {
                        (format!("edge {x}-{y}: kappa_0 = {} > {}", fraction(&k0), fraction(&b.k0_bound)), edge_cmd("ollivier", Some(&zero), x, y))
                    });
                    t.check(lly <= b.lly_bound, || {
                        (format!("edge {x}-{y}: kappa_LLY = {} > {}", fraction(&lly), fraction(&b.lly_bound)), edge_cmd("lly", None, x, y))
                    });
                }
                Suite::Matching => {
                    if g.triangles_on_edge(x, y).map_err(err)? > 0 {
                        continue;
                    }
                    let m = matching_curvature_check(g, x, y).map_err(err)?;
                    let k0 = kappa_p(g, x, y, zero).map_err(err)?;
                    let lly = kappa_lly(g, x, y).map_err(err)?;
                    t.check(m.kappa0_zero == k0.is_zero(), || {
                        (format!("edge {x}-{y}: matching says {} but kappa_0 = {}", m.kappa0_zero, fraction(&k0)), edge_cmd("ollivier", Some(&zero), x, y))
                    });
                    t.check(m.lly_max == (lly == Rational::new(2, d)), || {
                        (format!("edge {x}-{y}: matching says {} but kappa_LLY = {}", m.lly_max, fraction(&lly)), edge_cmd("lly", None, x, y))
                    });
                }
                _ => unreachable!("not an edge suite"),
            }
        }
        Ok(())
    })
}

fn vertex_bound_suite(graphs: &[NamedGraph]) -> Tally {
    let dims = [Dimension::Finite(1.0), Dimension::Finite(2.0), Dimension::Finite(5.0), Dimension::Infinite];
    sweep(graphs, |g, t| {
        for x in g.vertices() {
            let bound = crate::rational::to_f64(&bakry_emery::be_upper_bound(g, x).map_err(err)?);
            let values = dims
                .iter()
                .map(|&n| bakry_emery::curvature(g, x, n).map(|s| s.value))
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?;
            let k = values[values.len() - 1];
            t.check(k <= bound + BE_SLACK, || (format!("vertex {x}: K_inf = {k} exceeds {bound}"), vertex_cmd(x, "inf")));
            for (i, w) in values.windows(2).enumerate() {
                t.check(w[0] <= w[1] + BE_SLACK, || {
                    (format!("vertex {x}: K(x, {}) = {} > K(x, {}) = {}", dims[i], w[0], dims[i + 1], w[1]), vertex_cmd(x, &dims[i].to_string()))
                });
            }
        }
        Ok(())
    })
}

/// `(all κ₀ = 0, all κ_LLY = 2/d)` over the edges at `x`.
fn extremal_at(g: &Graph, x: VertexId) -> Result<(bool, bool), String> {
    let d = g.degree(x) as i64;
    let mut k0_all = true;
    let mut lly_all = true;
    for &y in g.neighbors(x) {
        k0_all &= kappa_p(g, x, y, Rational::zero()).map_err(err)?.is_zero();
        lly_all &= kappa_lly(g, x, y).map_err(err)? == Rational::new(2, d);
    }
    Ok((k0_all, lly_all))
}

fn triangle_free_suite(graphs: &[NamedGraph]) -> Tally {
    sweep(graphs, |g, t| {
        for x in g.vertices().filter(|&x| is_eligible(g, x)) {
            let (k0_all, lly_all) = extremal_at(g, x)?;
            if !(k0_all || lly_all) {
                continue;
            }
            let k = k_inf(g, x)?;
            if k0_all {
                t.check(k >= -BE_SLACK, || (format!("vertex {x}: kappa_0 = 0 around x but K_inf = {k}"), vertex_cmd(x, "inf")));
            }
            if lly_all {
                t.check((k - 2.0).abs() <= BE_EQUAL, || (format!("vertex {x}: kappa_LLY = 2/d around x but K_inf = {k}"), vertex_cmd(x, "inf")));
            }
        }
        Ok(())
    })
}

fn flat_equivalence_suite(graphs: &[NamedGraph], search: SearchOptions) -> Tally {
    sweep(graphs, |g, t| {
        for x in g.vertices().filter(|&x| is_eligible(g, x)) {
            if g.degree(x) > search.cap {
                t.notices.push(format!("vertex {x}: degree above search cap"));
                continue;
            }
            let (k0_all, lly_all) = extremal_at(g, x)?;
            let s = search_flatness_with(g, x, FlatnessFlavor::S, search).map_err(err)?.is_flat();
            let rs = search_flatness_with(g, x, FlatnessFlavor::RS, search).map_err(err)?.is_flat();
            t.check(k0_all == s, || {
                (format!("vertex {x}: all kappa_0 = 0 is {k0_all} but (S) flat is {s}"), flat_cmd(x, FlatnessFlavor::S))
            });
            t.check(lly_all == rs, || {
                (format!("vertex {x}: all kappa_LLY = 2/d is {lly_all} but (RS) flat is {rs}"), flat_cmd(x, FlatnessFlavor::RS))
            });
        }
        Ok(())
    })
}

fn flat_bounds_suite(graphs: &[NamedGraph], search: SearchOptions) -> Tally {
    sweep(graphs, |g, t| {
        let d = g.regular_degree().ok_or("graph is not regular")? as i64;
        if d as usize > search.cap {
            t.notices.push(format!("degree {d} above search cap"));
            return Ok(());
        }
        for x in g.vertices() {
            let flat = search_flatness_with(g, x, FlatnessFlavor::Plain, search).map_err(err)?.is_flat();
            if !flat {
                continue;
            }
            let r_flat = search_flatness_with(g, x, FlatnessFlavor::R, search).map_err(err)?.is_flat();
            let k = k_inf(g, x)?;
            t.check(k >= -BE_SLACK, || (format!("vertex {x}: Ricci flat but K_inf = {k}"), vertex_cmd(x, "inf")));
            if r_flat {
                t.check(k >= 2.0 - BE_SLACK, || (format!("vertex {x}: (R) Ricci flat but K_inf = {k}"), vertex_cmd(x, "inf")));
            }
            for &y in g.neighbors(x) {
                let k0 = kappa_p(g, x, y, Rational::zero()).map_err(err)?;
                t.check(k0 >= Rational::zero(), || {
                    (format!("edge {x}-{y}: x Ricci flat but kappa_0 = {}", fraction(&k0)), edge_cmd("ollivier", Some(&Rational::zero()), x, y))
                });
                if r_flat {
                    let lly = kappa_lly(g, x, y).map_err(err)?;
                    t.check(lly >= Rational::new(2, d), || {
                        (format!("edge {x}-{y}: x (R) Ricci flat but kappa_LLY = {}", fraction(&lly)), edge_cmd("lly", None, x, y))
                    });
                }
            }
        }
        Ok(())
    })
}

fn factor(name: &str) -> NamedGraph {
    let mut parts = name.split(' ');
    let base = parts.next().expect("nonempty name");
    let params: Vec<u64> = parts.map(|p| p.parse().expect("numeric parameter")).collect();
    NamedGraph::new(name, atlas::by_name(base, &params).expect("atlas factor"))
}

/// Ordered factor pairs used by the product suites.
fn pairs(names: &[(&str, &str)]) -> Vec<(NamedGraph, NamedGraph)> {
    names.iter().map(|(a, b)| (factor(a), factor(b))).collect()
}

/// Runs `f` on every pair in parallel; failures reproduce on `reproducer`
/// graphs chosen by `f`.
fn sweep_pairs<F>(list: &[(NamedGraph, NamedGraph)], f: F) -> Tally
where
    F: Fn(&Graph, &Graph, &mut Tally) -> Result<Option<Graph>, String> + Sync,
{
    let tallies: Vec<Tally> = list
        .par_iter()
        .map(|(a, b)| {
            let mut t = Tally::default();
            let dump = match f(&a.graph, &b.graph, &mut t) {
                Ok(dump) => dump,
                Err(e) => {
                    t.check(false, || (format!("error: {e}"), String::new()));
                    None
                }
            };
            for failure in &mut t.failures {
                failure.graph = format!("{} / {}", a.name, b.name);
                if let Some(g) = &dump {
                    failure.reproducer.graph = g.clone();
                }
            }
            for notice in &mut t.notices {
                *notice = format!("{} / {}: {notice}", a.name, b.name);
            }
            t
        })
        .collect();
    let mut total = Tally::default();
    for t in tallies {
        total.merge(t);
    }
    total
}

fn product_flatness_suite(search: SearchOptions) -> Tally {
    let factors = ["cycle 4", "hypercube 3", "complete-bipartite 4 4"];
    let mut names = Vec::new();
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i..] {
            names.push((*a, *b));
        }
    }
    sweep_pairs(&pairs(&names), |g, h, t| {
        let mut dump = None;
        for kind in ProductKind::ALL {
            for flavor in FlatnessFlavor::ALL {
                let r = check_flatness_preservation(g, h, kind, 0, 0, flavor, search).map_err(err)?;
                if !r.product.is_full() && flavor == FlatnessFlavor::Plain {
                    t.notices.push(format!("{kind} product is disconnected; checked the component of (0, 0)"));
                }
                let ok = t.check(r.constructed_verifies(), || {
                    (format!("{kind} {flavor}: constructed certificate fails: {:?}", r.violations), flat_cmd(r.vertex, flavor))
                });
                if let Some(v) = &r.search {
                    t.check(v.is_flat(), || (format!("{kind} {flavor}: search finds no certificate"), flat_cmd(r.vertex, flavor)));
                } else if flavor == FlatnessFlavor::Plain {
                    t.notices.push(format!("{kind}: product degree above search cap, search skipped"));
                }
                if !ok || r.search.as_ref().is_some_and(|v| !v.is_flat()) {
                    dump = Some(r.product.graph.clone());
                }
            }
        }
        Ok(dump)
    })
}

const STRONG_PAIRS: [(&str, &str); 7] = [
    ("hypercube 3", "cycle 4"),
    ("complete 2", "complete 2"),
    ("complete 3", "complete 2"),
    ("cycle 5", "cycle 6"),
    ("triplex", "complete 2"),
    ("complete-bipartite 3 3", "cycle 5"),
    ("complete 4", "cycle 6"),
];

fn strong_suite(nonnegative: bool) -> Tally {
    let zero = Rational::zero();
    sweep_pairs(&pairs(&STRONG_PAIRS), |g, h, t| {
        let rows = check_strong_bounds(g, h, None).map_err(err)?;
        let p = crate::products::product(g, h, ProductKind::Strong).map_err(err)?;
        let min_over = |f: &Graph, lly: bool| -> Result<Rational, String> {
            let mut m: Option<Rational> = None;
            for (a, b) in f.edges() {
                let k = if lly { kappa_lly(f, a, b) } else { kappa_p(f, a, b, zero) }.map_err(err)?;
                m = Some(m.map_or(k, |m| m.min(k)));
            }
            Ok(m.unwrap_or(zero))
        };
        if !nonnegative {
            for row in &rows {
                if let Some(holds) = row.holds() {
                    let (u, v) = (row.u, row.v);
                    t.check(holds, || {
                        (format!("{:?} edge {u}-{v}: kappa_0 = {}, kappa_LLY = {} below the factor bound", row.class, fraction(&row.kappa0), fraction(&row.kappa_lly)), edge_cmd("lly", None, u, v))
                    });
                }
            }
            return Ok(Some(p.graph));
        }
        let k0_nonneg = min_over(g, false)? >= zero && min_over(h, false)? >= zero;
        let lly_nonneg = min_over(g, true)? >= zero && min_over(h, true)? >= zero;
        if !(k0_nonneg || lly_nonneg) {
            t.notices.push("a factor has negative curvature; nothing to check".to_string());
        }
        let mut diagonal: Option<(Rational, Rational)> = None;
        for row in &rows {
            let (u, v) = (row.u, row.v);
            if row.class == EdgeClass::Diagonal {
                diagonal = Some(diagonal.map_or((row.kappa0, row.kappa_lly), |(a, b)| (a.min(row.kappa0), b.min(row.kappa_lly))));
                continue;
            }
            if k0_nonneg {
                t.check(row.kappa0 >= zero, || (format!("{:?} edge {u}-{v}: kappa_0 = {}", row.class, fraction(&row.kappa0)), edge_cmd("ollivier", Some(&zero), u, v)));
            }
            if lly_nonneg {
                t.check(row.kappa_lly >= zero, || (format!("{:?} edge {u}-{v}: kappa_LLY = {}", row.class, fraction(&row.kappa_lly)), edge_cmd("lly", None, u, v)));
            }
        }
        if let Some((k0, lly)) = diagonal {
            t.notices.push(format!("diagonal edges (no bound asserted): min kappa_0 = {}, min kappa_LLY = {}", fraction(&k0), fraction(&lly)));
        }
        Ok(Some(p.graph))
    })
}

const CARTESIAN_PAIRS: [(&str, &str); 12] = [
    ("complete 2", "complete 2"),
    ("complete 2", "complete 3"),
    ("complete 3", "complete 3"),
    ("cycle 5", "cycle 6"),
    ("cycle 6", "cycle 6"),
    ("hypercube 3", "complete 2"),
    ("complete-bipartite 3 3", "cycle 4"),
    ("triplex", "complete 2"),
    ("triplex", "triplex"),
    ("icosidodecahedron", "complete 2"),
    ("complete 4", "cycle 5"),
    ("shrikhande", "complete 2"),
];

fn cartesian_suite() -> Tally {
    sweep_pairs(&pairs(&CARTESIAN_PAIRS), |g, h, t| {
        let (ng, nh) = (g.vertex_count(), h.vertex_count());
        let mut samples = vec![(0, 0), (ng - 1, nh - 1), (ng / 2, nh / 2)];
        samples.dedup();
        let rows = check_cartesian_be(g, h, &samples).map_err(err)?;
        for row in &rows {
            let v = row.x * nh + row.y;
            t.check(row.agrees, || {
                (format!("vertex ({}, {}): K_inf = {} but factor minimum is {}", row.x, row.y, row.product_value, row.g_value.min(row.h_value)), vertex_cmd(v, "inf"))
            });
        }
        Ok(Some(crate::products::product(g, h, ProductKind::Cartesian).map_err(err)?.graph))
    })
}

/// Girth-4 distance-regular atlas graphs.
pub fn distance_regular_corpus() -> Vec<NamedGraph> {
    let mut out = Vec::new();
    for d in 2..=5 {
        out.push(factor(&format!("hypercube {d}")));
    }
    for d in 2..=6 {
        out.push(factor(&format!("complete-bipartite {d} {d}")));
    }
    out.push(factor("incidence-11-6-3"));
    out
}

fn distance_regular_suite() -> Tally {
    sweep(&distance_regular_corpus(), |g, t| {
        let array = intersection_array(g).map_err(err)?;
        let d = g.regular_degree().ok_or("not regular")? as i64;
        let triangle_free = g.vertices().all(|x| g.triangles_at_vertex(x) == 0);
        t.check(triangle_free && array.c2().is_some_and(|c| c >= 2), || {
            (format!("intersection array {array} is not girth 4"), "curvlab curvature {graph} --notion lly".to_string())
        });
        for (x, y) in g.edges() {
            let k0 = kappa_p(g, x, y, Rational::zero()).map_err(err)?;
            let lly = kappa_lly(g, x, y).map_err(err)?;
            t.check(k0.is_zero(), || (format!("edge {x}-{y}: kappa_0 = {}", fraction(&k0)), edge_cmd("ollivier", Some(&Rational::zero()), x, y)));
            t.check(lly == Rational::new(2, d), || (format!("edge {x}-{y}: kappa_LLY = {}", fraction(&lly)), edge_cmd("lly", None, x, y)));
        }
        for x in g.vertices() {
            let k = k_inf(g, x)?;
            t.check((k - 2.0).abs() <= BE_EQUAL, || (format!("vertex {x}: K_inf = {k}"), vertex_cmd(x, "inf")));
        }
        Ok(())
    })
}

fn kdd_suite(search: SearchOptions) -> Tally {
    let graphs: Vec<NamedGraph> =
        (2..=10).map(|d| NamedGraph::new(format!("complete-bipartite {d} {d}"), kdd_graph(d).expect("small"))).collect();
    sweep(&graphs, |g, t| {
        let d = g.degree(0);
        for flavor in FlatnessFlavor::ALL {
            match kdd_matrix(d, flavor) {
                Ok(a) => {
                    let v = verify_certificate(g, &a, flavor);
                    t.check(v.is_empty(), || (format!("{flavor} matrix fails: {v:?}"), flat_cmd(0, flavor)));
                }
                Err(FlatnessError::OddRs(_)) => {
                    t.check(d % 2 == 1 && flavor == FlatnessFlavor::RS, || (format!("{flavor}: no matrix"), flat_cmd(0, flavor)));
                }
                Err(e) => return Err(err(e)),
            }
        }
        if d <= search.cap {
            let rs = search_flatness_with(g, 0, FlatnessFlavor::RS, search).map_err(err)?.is_flat();
            t.check(rs == (d % 2 == 0), || (format!("(RS) search says {rs} for d = {d}"), flat_cmd(0, FlatnessFlavor::RS)));
        }
        Ok(())
    })
}

/// Full corpus of single-graph suites: atlas graphs then random graphs.
pub fn corpus(options: &VerifyOptions) -> (Vec<NamedGraph>, Vec<String>) {
    let (random, notices) = random_corpus(options);
    let mut graphs = atlas_corpus();
    graphs.extend(random);
    (graphs, notices)
}

/// Runs one suite. Single-graph suites use `corpus`; product and special
/// family suites build their own graphs.
pub fn run_suite(suite: Suite, corpus: &[NamedGraph], options: &VerifyOptions) -> SuiteReport {
    let tally = match suite {
        Suite::LlyK0 | Suite::Concavity | Suite::Displacement | Suite::EdgeBounds | Suite::Matching => {
            edge_suite(corpus, suite)
        }
        Suite::VertexBound => vertex_bound_suite(corpus),
        Suite::TriangleFree => triangle_free_suite(corpus),
        Suite::FlatEquivalence => flat_equivalence_suite(corpus, options.search),
        Suite::FlatBounds => flat_bounds_suite(corpus, options.search),
        Suite::ProductFlatness => product_flatness_suite(options.search),
        Suite::StrongBounds => strong_suite(false),
        Suite::StrongNonnegative => strong_suite(true),
        Suite::CartesianBe => cartesian_suite(),
        Suite::DistanceRegular => distance_regular_suite(),
        Suite::Kdd => kdd_suite(options.search),
    };
    SuiteReport { suite, checks: tally.checks, failures: tally.failures, notices: tally.notices }
}

/// Convenience wrapper building the corpus from `options`.
pub fn verify(suite: Suite, options: &VerifyOptions) -> SuiteReport {
    let (graphs, notices) = corpus(options);
    let mut report = run_suite(suite, &graphs, options);
    report.notices.splice(0..0, notices);
    report
}

/// Bone-idleness of every edge, for reporting.
pub fn bone_idle_edges(g: &Graph) -> Result<Vec<(VertexId, VertexId)>, String> {
    let mut out = Vec::new();
    for (x, y) in g.edges() {
        if is_bone_idle(g, x, y).map_err(err)? {
            out.push((x, y));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyOptions {
        VerifyOptions { seeds: 12, max_n: 10, ..VerifyOptions::default() }
    }

    #[test]
    fn names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>(), Ok(suite));
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn random_parameters_are_admissible() {
        let options = VerifyOptions::default();
        for seed in 0..50 {
            let (n, d) = random_parameters(seed, &options).unwrap();
            assert!((3..=5).contains(&d) && n <= 14 && n > d && n * d % 2 == 0);
        }
        assert_eq!(random_parameters(7, &options), random_parameters(7, &options));
    }

    #[test]
    fn edge_suites_pass_on_a_small_corpus() {
        let options = small();
        let (graphs, _) = corpus(&options);
        for suite in [Suite::LlyK0, Suite::EdgeBounds, Suite::Matching, Suite::Displacement] {
            let r = run_suite(suite, &graphs, &options);
            assert!(r.passed(), "{suite}: {:?}", r.failures);
            assert!(r.checks > 0);
        }
    }

    #[test]
    fn failures_carry_reproducers() {
        let graphs = vec![NamedGraph::new("path", Graph::new(3, &[(0, 1), (1, 2)]).unwrap())];
        let t = edge_suite(&graphs, Suite::LlyK0);
        assert_eq!(t.failures.len(), 1);
        assert_eq!(t.failures[0].graph, "path");
        assert_eq!(t.failures[0].reproducer.graph.vertex_count(), 3);
    }
}

//! One PASS/FAIL line per acceptance criterion.

mod common;

use std::collections::BTreeMap;

use curvlab::atlas;
use curvlab::bakry_emery::{curvature, Dimension};
use curvlab::flatness::{
    kdd_graph, kdd_matrix, search_flatness, verify_certificate, AssignmentMatrix, FlatnessFlavor,
};
use curvlab::products::check_cartesian_be;
use curvlab::transport::{is_bone_idle, kappa_lly, kappa_p, vertex_measure, wasserstein};
use curvlab::verify::{distance_regular_corpus, verify, Suite, VerifyOptions};
use curvlab::{Graph, Rational};
use num_traits::Zero;
use FlatnessFlavor::*;

/// Absolute tolerance for `K_∞` values given to six places.
const BE_TOL: f64 = 1e-6;
/// Tolerance for the value given to three places.
const BE_TOL_COARSE: f64 = 1e-3;
/// Tolerance for the Cartesian minimum formula.
const CARTESIAN_TOL: f64 = 1e-6;

struct Criterion {
    failures: Vec<String>,
}

impl Criterion {
    fn new() -> Self {
        Criterion { failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn suite(&mut self, suite: Suite, options: &VerifyOptions) {
        let report = verify(suite, options);
        self.check(report.checks > 0, || format!("suite {suite} ran no checks"));
        for f in report.failures.iter().take(3) {
            self.failures.push(format!("suite {suite}: {}: {}", f.graph, f.detail));
        }
        if report.failures.len() > 3 {
            self.failures.push(format!("suite {suite}: {} more failures", report.failures.len() - 3));
        }
    }
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn k_inf(g: &Graph, x: usize) -> f64 {
    curvature(g, x, Dimension::Infinite).unwrap().value
}

fn edge_values(c: &mut Criterion, name: &str, g: &Graph, edges: &[(usize, usize)], k0: Rational, lly: Rational) {
    for &(x, y) in edges {
        let a = kappa_p(g, x, y, Rational::zero()).unwrap();
        let b = kappa_lly(g, x, y).unwrap();
        c.check(a == k0 && b == lly, || format!("{name} edge {x}-{y}: kappa0 = {a}, kappa_lly = {b}"));
    }
}

fn vertex_values(c: &mut Criterion, name: &str, g: &Graph, vertices: &[usize], value: f64, tol: f64) {
    for &x in vertices {
        let k = k_inf(g, x);
        c.check((k - value).abs() <= tol, || format!("{name} vertex {x}: K_inf = {k}, expected {value}"));
    }
}

fn atlas_table() -> Criterion {
    let mut c = Criterion::new();
    for d in 2..=5 {
        let g = atlas::hypercube(d).unwrap();
        let edges: Vec<_> = g.edges().collect();
        let vertices: Vec<_> = g.vertices().collect();
        edge_values(&mut c, &format!("Q{d}"), &g, &edges, Rational::zero(), r(2, d as i64));
        vertex_values(&mut c, &format!("Q{d}"), &g, &vertices, 2.0, BE_TOL);
    }
    let t = atlas::triplex();
    edge_values(&mut c, "triplex", &t, &t.edges().collect::<Vec<_>>(), r(-1, 3), Rational::zero());
    vertex_values(&mut c, "triplex", &t, &t.vertices().collect::<Vec<_>>(), -1.0, BE_TOL);

    let ico = atlas::icosidodecahedron();
    edge_values(&mut c, "icosidodecahedron", &ico, &ico.edges().collect::<Vec<_>>(), Rational::zero(), Rational::zero());
    for (x, y) in ico.edges() {
        c.check(is_bone_idle(&ico, x, y).unwrap(), || format!("icosidodecahedron edge {x}-{y} is not bone-idle"));
    }
    vertex_values(&mut c, "icosidodecahedron", &ico, &ico.vertices().collect::<Vec<_>>(), -1.5, BE_TOL);

    let rook = atlas::rook3();
    for (x, y) in rook.edges() {
        let b = kappa_lly(&rook, x, y).unwrap();
        c.check(b == r(3, 4), || format!("K3xK3 edge {x}-{y}: kappa_lly = {b}"));
    }

    let tf = atlas::triangle_free_ball();
    for v in 1..=6 {
        let a = kappa_p(&tf, 0, v, Rational::zero()).unwrap();
        c.check(a == r(-1, 3), || format!("triangle-free ball edge 0-{v}: kappa0 = {a}"));
    }
    vertex_values(&mut c, "triangle-free ball", &tf, &[0], 0.0, BE_TOL);

    let bi = atlas::bone_idle_ball();
    let at_x: Vec<_> = bi.neighbors(0).iter().map(|&v| (0, v)).collect();
    edge_values(&mut c, "bone-idle ball", &bi, &at_x, Rational::zero(), Rational::zero());
    vertex_values(&mut c, "bone-idle ball", &bi, &[0], -0.194, BE_TOL_COARSE);

    let inc = atlas::incidence_11_6_3();
    edge_values(&mut c, "incidence", &inc, &inc.edges().collect::<Vec<_>>(), Rational::zero(), r(1, 3));
    vertex_values(&mut c, "incidence", &inc, &inc.vertices().collect::<Vec<_>>(), 2.0, BE_TOL);
    c
}

fn flat(g: &Graph, x: usize, flavor: FlatnessFlavor) -> bool {
    search_flatness(g, x, flavor).unwrap().is_flat()
}

fn flatness_verdicts() -> Criterion {
    let mut c = Criterion::new();
    let u = atlas::unflat_ball();
    c.check(!flat(&u, 0, Plain), || "unflat ball is flat".into());
    let k33 = atlas::complete_bipartite(3, 3).unwrap();
    let got = (flat(&k33, 0, R), flat(&k33, 0, S), flat(&k33, 0, RS));
    c.check(got == (true, true, false), || format!("K33 (R, S, RS) = {got:?}"));
    let sh = atlas::shrikhande();
    c.check(sh.vertices().all(|x| flat(&sh, x, RS)), || "Shrikhande is not RS-flat everywhere".into());
    let inc = atlas::incidence_11_6_3();
    let got = (flat(&inc, 0, Plain), flat(&inc, 0, R));
    c.check(got == (true, false), || format!("incidence graph (Plain, R) = {got:?}"));
    for d in 2..=7 {
        let g = kdd_graph(d).unwrap();
        c.check(flat(&g, 0, RS) == (d % 2 == 0), || format!("K_{{{d},{d}}} RS verdict is wrong"));
    }

    let from = |g: &Graph, rows: Vec<Vec<usize>>| AssignmentMatrix::from_labels(g, 0, &rows).unwrap();
    let supplied = [
        (k33.clone(), from(&k33, vec![vec![0, 4, 5], vec![5, 0, 4], vec![4, 5, 0]]), R),
        (k33.clone(), from(&k33, vec![vec![0, 4, 5], vec![4, 5, 0], vec![5, 0, 4]]), S),
    ];
    for (g, a, flavor) in &supplied {
        c.check(verify_certificate(g, a, *flavor).is_empty(), || format!("supplied K33 {flavor} matrix fails"));
    }
    let il = atlas::incidence_local();
    let rows = vec![
        vec![11, 0, 15, 8, 13, 14],
        vec![13, 12, 11, 10, 0, 7],
        vec![0, 11, 10, 16, 9, 15],
        vec![14, 10, 16, 7, 8, 0],
        vec![8, 13, 9, 0, 16, 12],
        vec![15, 7, 0, 14, 12, 9],
    ];
    c.check(verify_certificate(&il, &from(&il, rows), Plain).is_empty(), || "supplied incidence matrix fails".into());
    for d in 2..=10 {
        let g = kdd_graph(d).unwrap();
        for flavor in FlatnessFlavor::ALL {
            if let Ok(a) = kdd_matrix(d, flavor) {
                c.check(verify_certificate(&g, &a, flavor).is_empty(), || format!("K_{{{d},{d}}} {flavor} matrix fails"));
            }
        }
    }
    c
}

fn fuzz_suites(options: &VerifyOptions) -> Criterion {
    let mut c = Criterion::new();
    for suite in [
        Suite::LlyK0,
        Suite::Concavity,
        Suite::Displacement,
        Suite::EdgeBounds,
        Suite::VertexBound,
        Suite::Matching,
        Suite::TriangleFree,
        Suite::FlatEquivalence,
        Suite::FlatBounds,
    ] {
        c.suite(suite, options);
    }
    c
}

fn product_suites(options: &VerifyOptions) -> Criterion {
    let mut c = Criterion::new();
    for suite in [Suite::CartesianBe, Suite::StrongBounds, Suite::StrongNonnegative, Suite::ProductFlatness] {
        c.suite(suite, options);
    }
    let pairs = [
        (atlas::complete(2).unwrap(), atlas::complete(3).unwrap()),
        (atlas::complete(3).unwrap(), atlas::complete(3).unwrap()),
        (atlas::cycle(5).unwrap(), atlas::cycle(6).unwrap()),
        (atlas::hypercube(3).unwrap(), atlas::complete(2).unwrap()),
        (atlas::complete_bipartite(3, 3).unwrap(), atlas::cycle(4).unwrap()),
        (atlas::triplex(), atlas::complete(2).unwrap()),
        (atlas::triplex(), atlas::cycle(5).unwrap()),
        (atlas::icosidodecahedron(), atlas::complete(2).unwrap()),
        (atlas::complete(4).unwrap(), atlas::cycle(5).unwrap()),
        (atlas::shrikhande(), atlas::complete(2).unwrap()),
    ];
    for (i, (g, h)) in pairs.iter().enumerate() {
        for row in check_cartesian_be(g, h, &[(0, 0), (1, 1)]).unwrap() {
            let min = row.g_value.min(row.h_value);
            c.check((row.product_value - min).abs() <= CARTESIAN_TOL, || {
                format!("pair {i} at ({}, {}): {} vs {min}", row.x, row.y, row.product_value)
            });
        }
    }
    c
}

fn distance_regular(options: &VerifyOptions) -> Criterion {
    let mut c = Criterion::new();
    c.suite(Suite::DistanceRegular, options);
    for named in distance_regular_corpus() {
        let g = &named.graph;
        let d = g.regular_degree().unwrap() as i64;
        edge_values(&mut c, &named.name, g, &g.edges().collect::<Vec<_>>(), Rational::zero(), r(2, d));
        vertex_values(&mut c, &named.name, g, &g.vertices().collect::<Vec<_>>(), 2.0, BE_TOL);
    }
    c
}

fn measure_map(g: &Graph, x: usize, p: Rational) -> BTreeMap<usize, Rational> {
    vertex_measure(g, x, p).unwrap().support().collect()
}

fn oracle_equivalence() -> Criterion {
    let mut c = Criterion::new();
    let mut compared = 0;
    let mut graphs = vec![
        atlas::triplex(),
        atlas::hypercube(3).unwrap(),
        atlas::complete_bipartite(3, 3).unwrap(),
        atlas::cycle(6).unwrap(),
        atlas::rook3(),
        atlas::icosidodecahedron(),
        atlas::shrikhande(),
        atlas::triangle_free_ball(),
        atlas::bone_idle_ball(),
    ];
    graphs.extend((0..20).map(|s| atlas::random_regular(10, 3, s).unwrap()));
    graphs.extend((0..20).map(|s| atlas::random_regular(9, 4, s).unwrap()));
    for g in &graphs {
        for (x, y) in g.edges() {
            if g.degree(x) != g.degree(y) {
                continue;
            }
            for p in (0..=4).map(|k| r(k, 8)) {
                let (mu, nu) = (measure_map(g, x, p), measure_map(g, y, p));
                if let Some(expected) = common::brute_force_w1(g, &mu, &nu) {
                    let got = wasserstein(g, &vertex_measure(g, x, p).unwrap(), &vertex_measure(g, y, p).unwrap())
                        .unwrap()
                        .cost;
                    c.check(got == expected, || format!("W1 at edge {x}-{y}, p = {p}: {got} vs {expected}"));
                    compared += 1;
                }
            }
        }
    }
    c.check(compared > 1000, || format!("only {compared} transport instances compared"));

    let mut vertices = 0;
    for seed in 0..50u64 {
        let (n, d) = [(8, 3), (10, 3), (12, 3), (7, 4), (9, 4)][seed as usize % 5];
        let g = atlas::random_regular(n, d, seed).unwrap();
        for x in g.vertices() {
            let oracle = common::brute_force_flatness(&g, x);
            let got = common::FlatFlavors { plain: flat(&g, x, Plain), r: flat(&g, x, R), s: flat(&g, x, S), rs: flat(&g, x, RS) };
            c.check(got == oracle, || format!("flatness at seed {seed} vertex {x}: {got:?} vs {oracle:?}"));
            vertices += 1;
        }
    }
    c.check(vertices > 0, || "no flatness instances compared".into());
    c
}

fn main() {
    let options = VerifyOptions::default();
    assert_eq!((options.seeds, options.max_n, options.min_d, options.max_d), (200, 14, 3, 5));
    type Run<'a> = Box<dyn Fn() -> Criterion + 'a>;
    let criteria: Vec<(&str, Run)> = vec![
        ("1 atlas regression table", Box::new(atlas_table)),
        ("2 flatness verdicts", Box::new(flatness_verdicts)),
        ("3 fuzz suites", Box::new(|| fuzz_suites(&options))),
        ("4 product suites", Box::new(|| product_suites(&options))),
        ("5 distance-regular girth-4 graphs", Box::new(|| distance_regular(&options))),
        ("6 oracle equivalence", Box::new(oracle_equivalence)),
    ];
    let mut failed = Vec::new();
    for (name, run) in &criteria {
        let c = run();
        if c.failures.is_empty() {
            println!("PASS {name}");
        } else {
            println!("FAIL {name}");
            for f in c.failures.iter().take(10) {
                println!("    {f}");
            }
            failed.push(*name);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

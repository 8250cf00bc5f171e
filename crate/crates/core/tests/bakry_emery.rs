mod common;

use curvlab::atlas;
use curvlab::bakry_emery::{
    be_upper_bound, curvature, curvature_with, gamma2_form, gamma_form, CdForms, CurvatureOptions, Dimension,
};
use curvlab::{Graph, Rational};
use nalgebra::SymmetricEigen;
use num_traits::Zero;
use proptest::prelude::*;

const TOL: f64 = 1e-6;

fn k_inf(g: &Graph, x: usize) -> f64 {
    curvature(g, x, Dimension::Infinite).unwrap().value
}

fn int_fn(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| Rational::from_integer(v)).collect()
}

fn restrict(f: &[Rational], index: &[usize]) -> Vec<Rational> {
    index.iter().map(|&v| f[v]).collect()
}

#[test]
fn named_values() {
    for d in 1..=5 {
        let q = atlas::hypercube(d).unwrap();
        assert!((k_inf(&q, 0) - 2.0).abs() < TOL, "Q{d}");
    }
    for n in 3..=6 {
        let k = atlas::complete(n).unwrap();
        assert!((k_inf(&k, 0) - (n as f64 + 2.0) / 2.0).abs() < TOL, "K{n}");
    }
    for n in 6..=9 {
        assert!(k_inf(&atlas::cycle(n).unwrap(), 0).abs() < TOL, "C{n}");
    }
    let triplex = atlas::triplex();
    assert!(triplex.vertices().all(|x| (k_inf(&triplex, x) + 1.0).abs() < TOL));
    assert!((k_inf(&atlas::icosidodecahedron(), 0) + 1.5).abs() < TOL);
    assert!((k_inf(&atlas::bone_idle_ball(), 0) + 0.194).abs() < 1e-3);
    assert!(k_inf(&atlas::triangle_free_ball(), 0).abs() < TOL);
}

#[test]
fn reported_value_is_on_the_psd_side() {
    for g in [atlas::triplex(), atlas::hypercube(3).unwrap(), atlas::bone_idle_ball(), atlas::shrikhande()] {
        let forms = CdForms::new(&g, 0).unwrap();
        for dim in [Dimension::Infinite, Dimension::Finite(2.0), Dimension::Finite(7.5)] {
            let s = forms.curvature(&g, dim, CurvatureOptions::default());
            assert!(forms.is_psd(s.value, dim));
            assert!(!forms.is_psd(s.value + TOL, dim));
            // The least eigenvector just above K is an explicit violating function.
            let eig = SymmetricEigen::new(forms.matrix(s.value + TOL, dim));
            let (i, _) = eig.eigenvalues.iter().enumerate().fold((0, f64::INFINITY), |a, (i, &e)| if e < a.1 { (i, e) } else { a });
            let v = eig.eigenvectors.column(i);
            assert!((forms.matrix(s.value + TOL, dim) * v).dot(&v) < 0.0);
        }
    }
}

#[test]
fn depends_only_on_incomplete_two_ball() {
    for g in [atlas::triplex(), atlas::shrikhande(), atlas::icosidodecahedron(), atlas::random_regular(14, 4, 3).unwrap()] {
        for x in g.vertices().take(5) {
            let ball = g.incomplete_two_ball(x);
            for dim in [Dimension::Infinite, Dimension::Finite(3.0)] {
                let full = curvature(&g, x, dim).unwrap().value;
                let local = curvature(&ball.subgraph, 0, dim).unwrap().value;
                assert!((full - local).abs() < TOL, "vertex {x}: {full} vs {local}");
            }
        }
    }
}

#[test]
fn upper_bound_on_regular_graphs() {
    for g in [atlas::complete(5).unwrap(), atlas::rook3(), atlas::shrikhande(), atlas::hypercube(4).unwrap()] {
        for x in g.vertices().take(4) {
            let bound = common::to_f64(&be_upper_bound(&g, x).unwrap());
            assert!(k_inf(&g, x) <= bound + 1e-8);
        }
    }
    assert_eq!(be_upper_bound(&atlas::complete(4).unwrap(), 0).unwrap(), Rational::new(3, 1));
    assert!(be_upper_bound(&atlas::bone_idle_ball(), 0).is_err());
}

#[test]
fn invalid_dimension() {
    let g = atlas::cycle(5).unwrap();
    let opts = CurvatureOptions::default();
    assert!(curvature_with(&g, 0, Dimension::Finite(0.0), opts).is_err());
    assert!(curvature_with(&g, 0, Dimension::Finite(-1.0), opts).is_err());
    assert!("0".parse::<Dimension>().is_err());
    assert_eq!("inf".parse::<Dimension>().unwrap(), Dimension::Infinite);
    assert!(curvature(&g, 9, Dimension::Infinite).is_err());
}

#[test]
fn forms_are_symmetric_and_kill_constants() {
    for g in [atlas::triplex(), atlas::shrikhande_ball(), atlas::rook3()] {
        for x in g.vertices().take(3) {
            for form in [gamma_form(&g, x), gamma2_form(&g, x)] {
                assert!(form.is_symmetric());
                assert!(form.annihilates_constants());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn forms_match_direct_evaluation(seed in 0u64..5_000, values in prop::collection::vec(-4i64..5, 12)) {
        let g = atlas::random_regular(12, 3, seed).unwrap();
        let f = int_fn(&values);
        for x in [0, 5] {
            let g2 = gamma2_form(&g, x);
            prop_assert_eq!(g2.evaluate(&restrict(&f, &g2.index)), common::gamma2_at(&g, &f, x));
            let g1 = gamma_form(&g, x);
            prop_assert_eq!(g1.evaluate(&restrict(&f, &g1.index)), common::gamma_at(&g, &f, &f, x));
        }
    }

    #[test]
    fn value_is_below_every_rayleigh_quotient(seed in 0u64..5_000, values in prop::collection::vec(-6i64..7, 10)) {
        let g = atlas::random_regular(10, 4, seed).unwrap();
        let f = int_fn(&values);
        let gamma = common::gamma_at(&g, &f, &f, 0);
        prop_assume!(!gamma.is_zero());
        let ratio = common::to_f64(&common::gamma2_at(&g, &f, 0)) / common::to_f64(&gamma);
        prop_assert!(k_inf(&g, 0) <= ratio + 1e-8);
        let lap = common::to_f64(&common::laplacian(&g, &f)[0]);
        let n = 3.0;
        let finite = (common::to_f64(&common::gamma2_at(&g, &f, 0)) - lap * lap / n) / common::to_f64(&gamma);
        prop_assert!(curvature(&g, 0, Dimension::Finite(n)).unwrap().value <= finite + 1e-8);
    }

    #[test]
    fn monotone_in_dimension(seed in 0u64..5_000, n1 in 0.5f64..20.0, n2 in 0.5f64..20.0) {
        let g = atlas::random_regular(10, 3, seed).unwrap();
        let (lo, hi) = if n1 <= n2 { (n1, n2) } else { (n2, n1) };
        let a = curvature(&g, 1, Dimension::Finite(lo)).unwrap().value;
        let b = curvature(&g, 1, Dimension::Finite(hi)).unwrap().value;
        let c = k_inf(&g, 1);
        prop_assert!(a <= b + TOL && b <= c + TOL);
    }

    #[test]
    fn relabelling_preserves_value(seed in 0u64..5_000, perm in Just((0..10).collect::<Vec<usize>>()).prop_shuffle()) {
        let g = atlas::random_regular(10, 3, seed).unwrap();
        let edges: Vec<_> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        let h = Graph::new(10, &edges).unwrap();
        prop_assert!((k_inf(&g, 2) - k_inf(&h, perm[2])).abs() < TOL);
    }
}

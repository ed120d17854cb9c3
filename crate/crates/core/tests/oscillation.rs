use approx::assert_abs_diff_eq;
use plankcap::oscillation::{
    flow_trace, graph_cover_check, min_dual_grad, oscillation, verify_oscillation_bound, EmbeddedGraph,
    OscillationOptions, Polynomial, Variant,
};
use plankcap::{vector as v, ConvexBody, Gauge, Vector};
use proptest::prelude::*;

fn pentagon() -> ConvexBody {
    ConvexBody::polygon(&[&[-1.0, -0.6], &[0.9, -0.8], &[1.2, 0.4], &[0.1, 1.1], &[-0.9, 0.7]]).unwrap()
}

fn coeff() -> impl Strategy<Value = f64> {
    -2.0f64..2.0
}

fn quadratic() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(coeff(), 5).prop_map(|c| {
        Polynomial::new(
            2,
            vec![
                (vec![1, 0], c[0]),
                (vec![0, 1], c[1]),
                (vec![2, 0], c[2]),
                (vec![1, 1], c[3]),
                (vec![0, 2], c[4]),
            ],
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn polynomial_json_round_trips(f in quadratic()) {
        let text = serde_json::to_string(&f).unwrap();
        let back: Polynomial = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        // terms come back in key order, so only the summation order differs
        for x in [v(&[0.3, -0.7]), v(&[1.5, 2.0])] {
            prop_assert!((back.eval(&x) - f.eval(&x)).abs() <= 1e-14 * (1.0 + f.eval(&x).abs()));
        }
        prop_assert!(f.gradient_mismatch(&[v(&[0.2, 0.1]), v(&[-1.0, 0.5])]) < 1e-6);
    }

    #[test]
    fn linear_oscillation_is_the_width(a in coeff(), b in coeff()) {
        // max - min of <c, x> over a polygon is attained at vertices
        let k = pentagon();
        let verts = k.as_polytope().unwrap().vertices().to_vec();
        let c = v(&[a, b]);
        let vals: Vec<f64> = verts.iter().map(|p| c.dot(p)).collect();
        let exact = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let f = Polynomial::linear(&[a, b], 0.5);
        prop_assert!((oscillation(&f, &k, 500).unwrap() - exact).abs() <= 1e-6 * (1.0 + exact));
    }

    #[test]
    fn difference_bound_holds_for_quadratics(f in quadratic()) {
        let k = pentagon();
        let g = Gauge::difference(&k).unwrap();
        let r = verify_oscillation_bound(&f, &k, Variant::Diff1x, &g, &OscillationOptions::default()).unwrap();
        prop_assert!(r.ok, "{:?}", r);
        prop_assert_eq!(r.factor, 1.0);
    }

    #[test]
    fn single_edge_cover_is_tight(x0 in -0.5f64..0.5, y0 in -0.5f64..0.5, x1 in -0.5f64..0.5, y1 in -0.5f64..0.5) {
        // a segment fits in lambda K + t exactly when its K - K length is at most lambda
        prop_assume!((x0 - x1).abs() + (y0 - y1).abs() > 1e-3);
        let k = pentagon();
        let g = EmbeddedGraph::new(vec![v(&[x0, y0]), v(&[x1, y1])], vec![(0, 1)]).unwrap();
        let r = graph_cover_check(&g, &k).unwrap();
        let len = Gauge::difference(&k).unwrap().eval(&v(&[x1 - x0, y1 - y0])).unwrap();
        prop_assert!((r.h - len).abs() <= 1e-12);
        prop_assert!((r.lambda - len).abs() <= 1e-7 * (1.0 + len), "{} vs {}", r.lambda, len);
        prop_assert!(r.ok);
    }
}

#[test]
fn linear_examples() {
    let disk = ConvexBody::unit_ball(2);
    let e = Gauge::euclidean(2);
    let f = Polynomial::linear(&[1.0, 0.0], 0.0);
    assert_abs_diff_eq!(oscillation(&f, &disk, 500).unwrap(), 2.0, epsilon = 1e-9);
    let f = Polynomial::linear(&[2.0, 0.0], 0.0);
    assert_abs_diff_eq!(min_dual_grad(&f, &disk, &e, 100).unwrap(), 2.0, epsilon = 1e-12);
    let r = verify_oscillation_bound(&f, &disk, Variant::Ball2x, &e, &OscillationOptions::default()).unwrap();
    assert!(r.ok);
    assert_abs_diff_eq!(r.lhs, r.rhs, epsilon = 1e-8);
}

#[test]
fn flow_along_a_constant_gradient() {
    let f = Polynomial::linear(&[1.0, 0.0], 0.0);
    let dt = 1e-3;
    let trace = flow_trace(&f, &Gauge::euclidean(2), &v(&[0.0, 0.0]), 1.0, dt).unwrap();
    let end = trace.last().unwrap();
    assert!((end[0] - 1.0).abs() <= dt && end[1].abs() <= 1e-12, "{end:?}");
    // a vanishing gradient has no steepest direction
    let flat = Polynomial::half_square_norm(2);
    assert!(flow_trace(&flat, &Gauge::euclidean(2), &v(&[0.0, 0.0]), 1.0, dt).is_err());
}

#[test]
fn merged_homothet_contains_every_node() {
    let k = pentagon();
    let nodes: Vec<Vector> = vec![v(&[0.0, 0.0]), v(&[1.0, 0.2]), v(&[0.4, 1.0]), v(&[-0.8, 0.3]), v(&[1.5, 1.5])];
    let g = EmbeddedGraph::new(nodes.clone(), vec![(0, 1), (0, 2), (2, 3), (1, 4)]).unwrap();
    let r = graph_cover_check(&g, &k).unwrap();
    assert!(r.ok);
    assert!(r.lambda <= r.merge_lambda + 1e-9 && r.merge_lambda <= r.h + 1e-9);
    let hom = k.scale(r.merge_lambda).translate(&Vector::from_vec(r.merge_translation.clone()));
    for p in &nodes {
        assert!(hom.contains(p, 1e-9), "{p:?}");
    }
    assert!(EmbeddedGraph::new(nodes.clone(), vec![(0, 1), (2, 3)]).is_err());
    assert!(EmbeddedGraph::new(vec![v(&[0.0, 0.0]), v(&[0.0, 0.0])], vec![(0, 1)]).is_err());
}

use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use plankcap::fractional::{
    cylinder_bound, cylinder_target, fractional_bang_bound, mahler_product, rho_density, sum_norm_lower, w_constant,
};
use plankcap::{vector as v, ConvexBody, Vector};
use proptest::prelude::*;

/// `vol B^d` from `vol B^0 = 1`, `vol B^1 = 2` and `vol B^d = 2π/d vol B^(d-2)`.
fn ball_volume(d: usize) -> f64 {
    match d {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / d as f64 * ball_volume(d - 2),
    }
}

#[test]
fn w_constant_recursion() {
    // W_(n+2) = W_n (n - 1) / n from Γ(x + 1) = x Γ(x)
    let mut w = [PI, 2.0];
    for n in 2..=60 {
        let expected = w[n % 2];
        assert_abs_diff_eq!(w_constant(n).unwrap(), expected, epsilon = 1e-12 * expected);
        w[n % 2] = expected * (n as f64 - 1.0) / n as f64;
    }
    assert!(w_constant(1).is_err());
}

#[test]
fn cylinder_bounds_against_ball_volumes() {
    for n in 3..=30 {
        assert_abs_diff_eq!(cylinder_bound(n, 2).unwrap(), ball_volume(n - 2), epsilon = 1e-12 * ball_volume(n - 2));
        for m in 2..n {
            let target = cylinder_target(n, m).unwrap();
            assert_abs_diff_eq!(target, ball_volume(n - m), epsilon = 1e-12 * target);
            assert!(cylinder_bound(n, m).unwrap() <= target * (1.0 + 1e-12));
        }
    }
    assert!(cylinder_bound(3, 3).is_err());
}

#[test]
fn rho_density_values() {
    assert_abs_diff_eq!(rho_density(2, &v(&[0.3, 0.1])).unwrap(), 2.0 * PI, epsilon = 1e-12);
    // |S^3| = 2π², scaled by (1 - |x|^2)
    assert_abs_diff_eq!(rho_density(4, &v(&[0.0, 0.0])).unwrap(), 2.0 * PI * PI, epsilon = 1e-12);
    assert_abs_diff_eq!(rho_density(4, &v(&[0.6])).unwrap(), 2.0 * PI * PI * 0.64, epsilon = 1e-12);
    assert!(rho_density(3, &v(&[1.5])).is_err());
}

#[test]
fn bang_bound_endpoints() {
    for k in 1..=50 {
        let kf = k as f64;
        assert_abs_diff_eq!(fractional_bang_bound(k, 0.0).unwrap(), 2.0 * kf.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(fractional_bang_bound(k, 1.0).unwrap(), 2.0 * kf, epsilon = 1e-12);
    }
    assert!(fractional_bang_bound(0, 0.5).is_err());
    assert!(fractional_bang_bound(2, 1.5).is_err());
}

#[test]
fn volume_product_of_a_triangle() {
    // T - T is the hexagon ±(1,0), ±(0,1), ±(1,-1); its polar is
    // |y1|, |y2|, |y1 - y2| <= 1 with area 3, and vol T = 1/2
    let t = ConvexBody::polygon(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]).unwrap();
    let r = mahler_product(&t).unwrap();
    assert_abs_diff_eq!(r.product, 1.5, epsilon = 1e-12);
    assert_abs_diff_eq!(r.bound, 9.0 / 8.0, epsilon = 1e-15);
    assert!(r.ok);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn volume_product_is_affine_invariant(a in -0.8f64..0.8, b in -0.8f64..0.8, s in 0.3f64..3.0, tx in -2.0f64..2.0) {
        let map = |x: f64, y: f64| vec![s * (x + a * y) + tx, b * x + y];
        let pts: Vec<Vector> = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)].iter().map(|&(x, y)| Vector::from_vec(map(x, y))).collect();
        let t = ConvexBody::from_vertices(&pts).unwrap();
        prop_assume!((1.0 - a * b).abs() > 0.05);
        prop_assert!((mahler_product(&t).unwrap().product - 1.5).abs() <= 1e-9);
    }

    #[test]
    fn sum_norm_bound_holds(dirs in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 3), 2..8), pull in 0.0f64..3.0) {
        // pulling random directions toward a common axis and taking c as the
        // smallest pairwise dot product gives a valid instance
        let axis = v(&[0.0, 0.0, 1.0]);
        let vs: Vec<Vector> = dirs.iter().map(|d| (Vector::from_vec(d.clone()) + &axis * pull).normalize()).collect();
        prop_assume!(vs.iter().all(|x| x.iter().all(|c| c.is_finite())));
        let mut c = 1.0f64;
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                c = c.min(vs[i].dot(&vs[j]));
            }
        }
        prop_assume!(c >= 0.0);
        let r = sum_norm_lower(&vs, c, 1e-12).unwrap();
        prop_assert!(r.ok, "{:?}", r);
        let k = vs.len() as f64;
        prop_assert!((r.rhs - (k + c * k * (k - 1.0)).sqrt()).abs() <= 1e-12);
    }
}

use approx::assert_abs_diff_eq;
use plankcap::billiards::{shortest_trajectory, trajectory_length, verify_reflection, SolverOptions};
use plankcap::{vector as v, ConvexBody, Gauge, Vector};

fn triangle() -> ConvexBody {
    ConvexBody::polygon(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]).unwrap()
}

fn simplex3() -> ConvexBody {
    ConvexBody::from_vertices(&[
        v(&[0.0, 0.0, 0.0]),
        v(&[1.0, 0.0, 0.0]),
        v(&[0.0, 1.0, 0.0]),
        v(&[0.0, 0.0, 1.0]),
    ])
    .unwrap()
}

fn opts(starts: usize) -> SolverOptions {
    SolverOptions {
        starts,
        ..Default::default()
    }
}

#[test]
fn triangle_with_difference_gauge() {
    let t = triangle();
    let g = Gauge::difference(&t).unwrap();
    let traj = shortest_trajectory(&t, &g, &SolverOptions::default()).unwrap();
    assert_abs_diff_eq!(traj.length, 1.5, epsilon = 1e-3);
    assert_eq!(traj.points.len(), 3);
    let cert = verify_reflection(&traj.points, &t, &g, 1e-4).unwrap();
    assert!(cert.max_violation <= 1e-4, "{}", cert.max_violation);
}

#[test]
fn equilateral_triangle_euclidean() {
    let side = 2.0 / 3f64.sqrt();
    let k = ConvexBody::polygon(&[&[0.0, 0.0], &[side, 0.0], &[side / 2.0, 1.0]]).unwrap();
    let g = Gauge::euclidean(2);
    let traj = shortest_trajectory(&k, &g, &opts(32)).unwrap();
    assert_abs_diff_eq!(traj.length, 3f64.sqrt(), epsilon = 1e-3);
    let cert = verify_reflection(&traj.points, &k, &g, 1e-4).unwrap();
    assert!(cert.max_violation <= 1e-4, "{}", cert.max_violation);
}

#[test]
fn simplex_with_difference_gauge() {
    let k = simplex3();
    let g = Gauge::difference(&k).unwrap();
    let traj = shortest_trajectory(&k, &g, &opts(16)).unwrap();
    assert_abs_diff_eq!(traj.length, 4.0 / 3.0, epsilon = 1e-2);
    // the facet-center quadrilateral
    let centers: Vec<Vector> = [
        [1.0, 1.0, 1.0],
        [0.0, 1.0, 1.0],
        [1.0, 0.0, 1.0],
        [1.0, 1.0, 0.0],
    ]
    .iter()
    .map(|c| v(c) / 3.0)
    .collect();
    let centers_len = trajectory_length(&centers, &g).unwrap();
    assert_abs_diff_eq!(centers_len, 4.0 / 3.0, epsilon = 1e-12);
}

#[test]
fn scaling_covariance() {
    let k = ConvexBody::polygon(&[&[0.3, -1.0], &[2.0, 0.5], &[-0.5, 1.5], &[-1.0, 0.0]]).unwrap();
    let b = ConvexBody::polygon(&[&[1.0, 0.0], &[0.0, 1.0], &[-1.0, -0.5]]).unwrap();
    let g = Gauge::new(b.clone()).unwrap();
    let base = shortest_trajectory(&k, &g, &opts(8)).unwrap().length;
    let alpha = 2.5;
    let g2 = Gauge::new(b.scale(alpha)).unwrap();
    let scaled = shortest_trajectory(&k.scale(alpha), &g2, &opts(8)).unwrap().length;
    // lengths scale by alpha from the body and by 1/alpha from the gauge
    assert_abs_diff_eq!(scaled, base, epsilon = 1e-6 * base);
    let g3 = g.scaled(1.0).unwrap();
    let bigger = shortest_trajectory(&k.scale(alpha), &g3, &opts(8)).unwrap().length;
    assert_abs_diff_eq!(bigger, alpha * base, epsilon = 1e-6 * alpha * base);
}

//! Reference computations that share no code path with the quantities they
//! check.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use plankcap::ballcut::BallCutParams;
use plankcap::fractional::sphere_point;
use plankcap::lp::{LinearProgram, Relation};
use plankcap::planks::Plank;
use plankcap::{ConvexBody, Vector};
use rand::Rng;

/// Shortest billiard length in a polytope `k` for the gauge with polytope
/// unit ball `b`, by enumerating closed momentum polygons.
///
/// A trajectory with bounces on facets `i_1..i_m` has momentum jumps
/// `y_l u_l` along the facet normals, closing up (`Σ y_l u_l = 0`), with
/// action `Σ y_l h_K(u_l)`. Normalizing the action to one, the momentum
/// polygon must not fit into a smaller homothet of `B°`, whose gauge is
/// `h_B`; the length is then `1 / min_c max_l h_B(P_l - c)` for the partial
/// sums `P_l`. Minimizing over facet circuits of size at most `d + 1` and
/// their cyclic orders gives the answer whenever the optimal trajectory hits
/// facet interiors.
pub fn billiard_by_enumeration(k: &ConvexBody, b: &ConvexBody) -> Option<f64> {
    let kp = k.as_polytope()?;
    let bp = b.as_polytope()?;
    let d = k.dim();
    let normals: Vec<(Vector, f64)> = kp
        .facets()
        .iter()
        .map(|f| {
            let s = f.normal.norm();
            (&f.normal / s, f.offset / s)
        })
        .collect();
    let mut best_r: f64 = 0.0;
    let mut subset = Vec::new();
    for size in 2..=d + 1 {
        subsets(normals.len(), size, 0, &mut subset, &mut |s| {
            if let Some(y) = circuit_weights(&normals, s) {
                for order in cyclic_orders(s.len()) {
                    let mut partial = Vec::with_capacity(s.len());
                    let mut acc = Vector::zeros(d);
                    for &o in &order {
                        acc += &normals[s[o]].0 * y[o];
                        partial.push(acc.clone());
                    }
                    if let Some(r) = polygon_ratio(bp.vertices(), &partial) {
                        best_r = best_r.max(r);
                    }
                }
            }
        });
    }
    (best_r > 0.0).then(|| 1.0 / best_r)
}

fn subsets(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == size {
        f(cur);
        return;
    }
    for i in start..n {
        cur.push(i);
        subsets(n, size, i + 1, cur, f);
        cur.pop();
    }
}

/// Positive weights with `Σ y u = 0`, `Σ y b = 1` when the normals in `s`
/// form a circuit.
fn circuit_weights(normals: &[(Vector, f64)], s: &[usize]) -> Option<Vec<f64>> {
    let d = normals[0].0.len();
    let a = DMatrix::from_fn(d, s.len(), |i, j| normals[s[j]].0[i]);
    // null space of a via the smallest right singular vector of a^T a
    let ata = a.transpose() * &a;
    let eig = ata.symmetric_eigen();
    let mut idx: Vec<usize> = (0..s.len()).collect();
    idx.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    if eig.eigenvalues[idx[0]].abs() > 1e-12 {
        return None;
    }
    if s.len() > 1 && eig.eigenvalues[idx[1]].abs() <= 1e-10 {
        return None;
    }
    let v = eig.eigenvectors.column(idx[0]);
    let sign = if v[0] >= 0.0 { 1.0 } else { -1.0 };
    let y: Vec<f64> = v.iter().map(|x| x * sign).collect();
    if y.iter().any(|&x| x <= 1e-9) {
        return None;
    }
    let total: f64 = y.iter().zip(s).map(|(yi, &i)| yi * normals[i].1).sum();
    Some(y.iter().map(|x| x / total).collect())
}

/// All cyclic orders of `0..n` starting at 0.
fn cyclic_orders(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (1..n).collect();
    permute(&mut rest, 0, &mut |p| {
        let mut o = vec![0];
        o.extend_from_slice(p);
        out.push(o);
    });
    out
}

fn permute(xs: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, f);
        xs.swap(k, i);
    }
}

/// `min_c max_l max_j <v_j, P_l - c>`.
fn polygon_ratio(bv: &[Vector], partial: &[Vector]) -> Option<f64> {
    let d = partial[0].len();
    let mut obj = vec![0.0; d + 1];
    obj[d] = 1.0;
    let mut lp = LinearProgram::minimize(obj);
    lp.set_free_range(0..d + 1);
    for p in partial {
        for v in bv {
            // <v, p> - <v, c> - r <= 0
            let mut row: Vec<f64> = v.iter().map(|x| -x).collect();
            row.push(-1.0);
            lp.add_row(row, Relation::Le, -v.dot(p));
        }
    }
    lp.solve().ok().map(|s| s.value)
}

/// Smallest weighted multiplicity over a square grid of the bounding box,
/// restricted to points of `k`.
pub fn grid_multiplicity(k: &ConvexBody, planks: &[Plank], n: usize) -> f64 {
    let (lo, hi) = k.bounding_box();
    let mut best = f64::INFINITY;
    for i in 0..=n {
        for j in 0..=n {
            let x = Vector::from_vec(vec![
                lo[0] + (hi[0] - lo[0]) * i as f64 / n as f64,
                lo[1] + (hi[1] - lo[1]) * j as f64 / n as f64,
            ]);
            if !k.contains(&x, 0.0) {
                continue;
            }
            let m: f64 = planks
                .iter()
                .filter(|p| {
                    let t = p.normal().dot(&x);
                    t >= p.lo() && t <= p.hi()
                })
                .map(|p| p.weight())
                .sum();
            best = best.min(m);
        }
    }
    best
}

/// `∫_{-1}^{1} (1 - x^2)^((n-3)/2) dx` after `x = sin θ`, composite Simpson
/// with `intervals` panels.
pub fn w_quadrature(n: usize, intervals: usize) -> f64 {
    let p = n as f64 - 2.0;
    let f = |t: f64| t.cos().max(0.0).powf(p);
    let (a, b) = (-PI / 2.0, PI / 2.0);
    let h = (b - a) / intervals as f64;
    let mut s = f(a) + f(b);
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// Radial histogram of the projection of `samples` uniform points of
/// `S^{n-1}` onto the first `n - m` coordinates, scaled to a density of
/// total mass `|S^{n-1}|`: `(shell inner radius, shell outer radius, density)`.
/// Shells have equal volume in `B^{n-m}`.
pub fn pushforward_histogram(rng: &mut impl Rng, n: usize, m: usize, samples: usize, shells: usize) -> Vec<(f64, f64, f64)> {
    let k = n - m;
    let mut counts = vec![0usize; shells];
    for _ in 0..samples {
        let x = sphere_point(rng, n);
        let r = x.rows(0, k).norm();
        let s = ((r.powi(k as i32) * shells as f64) as usize).min(shells - 1);
        counts[s] += 1;
    }
    let area = sphere_area(n);
    let ball = ball_volume(k);
    counts
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let edge = |j: usize| (j as f64 / shells as f64).powf(1.0 / k as f64);
            let (r0, r1) = (edge(i), edge(i + 1));
            let shell = ball / shells as f64;
            (r0, r1, area * c as f64 / samples as f64 / shell)
        })
        .collect()
}

/// Monte-Carlo integral over `B^k` of `f`, uniform points by rejection.
pub fn ball_integral(rng: &mut impl Rng, k: usize, samples: usize, f: impl Fn(&Vector) -> f64) -> f64 {
    let mut sum = 0.0;
    let mut n = 0;
    while n < samples {
        let x = Vector::from_fn(k, |_, _| rng.random_range(-1.0..1.0));
        if x.norm_squared() <= 1.0 {
            sum += f(&x);
            n += 1;
        }
    }
    ball_volume(k) * sum / samples as f64
}

/// Ball volumes and sphere areas by the dimension recursion, no gamma
/// function involved.
pub fn ball_volume(k: usize) -> f64 {
    match k {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / k as f64 * ball_volume(k - 2),
    }
}

pub fn sphere_area(n: usize) -> f64 {
    n as f64 * ball_volume(n)
}

/// Action `Σ_j ½ ∮ (x_j dy_j - y_j dx_j)` of a closed polygonal path in `C^2`
/// given as `(z_1, z_2)` samples with `z = (re, im)`.
fn polyline_action(path: &[[f64; 4]]) -> f64 {
    let mut a = 0.0;
    for w in path.windows(2) {
        let (p, q) = (w[0], w[1]);
        a += 0.5 * (p[0] * q[1] - p[1] * q[0]) + 0.5 * (p[2] * q[3] - p[3] * q[2]);
    }
    a
}

/// Action of the closed characteristic of `(k, m, ρ)` on the cap, traced
/// as `m` boundary arcs and `m` chords in the cut, `steps` samples per arc.
pub fn orbit_action_by_integration(p: &BallCutParams, steps: usize) -> f64 {
    let tau = p.tau();
    let rho = p.rho;
    let r2 = (1.0 - rho * rho).max(0.0).sqrt();
    let mut phase: f64 = 0.0;
    let mut path = Vec::with_capacity(p.m as usize * (steps + 1) + 1);
    for _ in 0..p.m {
        for s in 0..=steps {
            let t = 2.0 * tau * s as f64 / steps as f64;
            let a1 = -tau + t;
            let a2 = phase + t;
            path.push([rho * a1.cos(), rho * a1.sin(), r2 * a2.cos(), r2 * a2.sin()]);
        }
        phase += 2.0 * tau;
        // the chord back to ρ e^{-iτ} closes up with the next arc's first sample
    }
    path.push(path[0]);
    polyline_action(&path)
}

/// Action of the principal circle of the ball cut at `τ0`.
pub fn principal_action_by_integration(tau0: f64, steps: usize) -> f64 {
    let mut path: Vec<[f64; 4]> = (0..=steps)
        .map(|s| {
            let a = -tau0 + 2.0 * tau0 * s as f64 / steps as f64;
            [a.cos(), a.sin(), 0.0, 0.0]
        })
        .collect();
    path.push(path[0]);
    polyline_action(&path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use plankcap::Gauge;

    #[test]
    fn enumeration_on_triangle() {
        let t = ConvexBody::polygon(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]).unwrap();
        let hex = Gauge::difference(&t).unwrap();
        let xi = billiard_by_enumeration(&t, hex.unit_ball()).unwrap();
        assert_abs_diff_eq!(xi, 1.5, epsilon = 1e-9);
    }

    #[test]
    fn enumeration_on_square() {
        // width 2 in both directions: the two-bounce orbit of length 4
        let sq = ConvexBody::polygon(&[&[-1.0, -1.0], &[1.0, -1.0], &[1.0, 1.0], &[-1.0, 1.0]]).unwrap();
        let e = ConvexBody::polygon(&[&[1.0, 0.0], &[0.0, 1.0], &[-1.0, 0.0], &[0.0, -1.0]]).unwrap();
        // gauge with unit ball the cross-polytope is the l1 norm
        assert_abs_diff_eq!(billiard_by_enumeration(&sq, &e).unwrap(), 4.0, epsilon = 1e-9);
    }

    #[test]
    fn quadrature_matches_known_values() {
        assert_abs_diff_eq!(w_quadrature(3, 2000), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(w_quadrature(2, 2000), PI, epsilon = 1e-12);
        assert_abs_diff_eq!(w_quadrature(4, 2000), PI / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn ball_recursion() {
        assert_abs_diff_eq!(ball_volume(2), PI, epsilon = 1e-15);
        assert_abs_diff_eq!(ball_volume(3), 4.0 * PI / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(sphere_area(2), 2.0 * PI, epsilon = 1e-15);
        assert_abs_diff_eq!(sphere_area(3), 4.0 * PI, epsilon = 1e-14);
    }

    #[test]
    fn integrator_on_circles() {
        assert_abs_diff_eq!(principal_action_by_integration(PI / 2.0, 10_000), PI / 2.0, epsilon = 1e-6);
        assert_abs_diff_eq!(
            principal_action_by_integration(PI / 3.0, 10_000),
            PI / 3.0 - 3f64.sqrt() / 4.0,
            epsilon = 1e-6
        );
    }
}

//! Smallest homothet `lambda K + t` covering a finite point set.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::body::{dot, ConvexBody};
use crate::error::{check_dim, check_finite, Error, Result};
use crate::lp::{LinearProgram, LpError, Relation};
use crate::Vector;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomothetFit {
    pub lambda: f64,
    pub translation: Vec<f64>,
}

impl HomothetFit {
    pub fn translation(&self) -> Vector {
        Vector::from_vec(self.translation.clone())
    }
}

/// Minimal `lambda >= 0` and translation `t` with `S` inside `lambda K + t`.
///
/// Polytopes go through the dual of the covering LP, which has one row per
/// coordinate rather than one per (point, facet) pair; the translation is
/// read off the equality-row duals. Balls use the minimal enclosing ball.
pub fn min_homothet_cover(k: &ConvexBody, s: &[Vector]) -> Result<HomothetFit> {
    if s.is_empty() {
        return Err(Error::InvalidParameter("empty point set".into()));
    }
    let d = k.dim();
    for p in s {
        check_dim(d, p.len())?;
        check_finite(p.as_slice(), "point set")?;
    }
    match k {
        ConvexBody::Ball(b) => {
            let (c, r) = min_enclosing_ball(s);
            let lambda = r / b.radius();
            Ok(HomothetFit {
                lambda,
                translation: (c - b.center() * lambda).iter().copied().collect(),
            })
        }
        ConvexBody::Polytope(_) => {
            // the LP tolerances are absolute, so bring the points to the size of K
            let spread = s.iter().map(|x| (x - &s[0]).norm()).fold(0.0, f64::max);
            if spread == 0.0 {
                return Ok(HomothetFit {
                    lambda: 0.0,
                    translation: s[0].iter().copied().collect(),
                });
            }
            let a = k.extent() / spread;
            let scaled: Vec<Vector> = s.iter().map(|x| (x - &s[0]) * a).collect();
            let fit = polytope_cover(k, &scaled)?;
            let t = &s[0] + fit.translation() / a;
            Ok(HomothetFit {
                lambda: fit.lambda / a,
                translation: t.iter().copied().collect(),
            })
        }
    }
}

/// Covering ratio only; the hot path of the billiard search.
pub fn cover_ratio(k: &ConvexBody, s: &[Vector]) -> Result<f64> {
    Ok(min_homothet_cover(k, s)?.lambda)
}

fn polytope_cover(k: &ConvexBody, s: &[Vector]) -> Result<HomothetFit> {
    let p = k.as_polytope().expect("polytope body");
    let d = p.dim();
    let c = p.centroid();
    // facets of K - c: <u_j, x> <= b_j with b_j > 0
    let facets: Vec<(&Vector, f64)> = p
        .facets()
        .iter()
        .map(|f| (&f.normal, f.offset - f.normal.dot(&c)))
        .collect();
    let nf = facets.len();
    let ncols = s.len() * nf;
    let mut obj = Vec::with_capacity(ncols);
    for x in s {
        for (u, _) in &facets {
            obj.push(u.dot(x));
        }
    }
    let mut lp = LinearProgram::maximize(obj);
    let mut brow = Vec::with_capacity(ncols);
    for _ in s {
        brow.extend(facets.iter().map(|(_, b)| *b));
    }
    lp.add_row(brow, Relation::Le, 1.0);
    for axis in 0..d {
        let mut row = Vec::with_capacity(ncols);
        for _ in s {
            row.extend(facets.iter().map(|(u, _)| u[axis]));
        }
        lp.add_row(row, Relation::Eq, 0.0);
    }
    let fit = match lp.solve() {
        Ok(sol) => {
            let t0 = DVector::from_iterator(d, sol.duals[1..].iter().copied());
            let lambda = ratio_for(&facets, s, &t0);
            if lambda <= sol.value + 1e-9 * (1.0 + sol.value.abs()) {
                Some((lambda, t0))
            } else {
                None
            }
        }
        Err(LpError::IterationLimit) => None,
        Err(e) => return Err(e.into()),
    };
    let (lambda, t0) = match fit {
        Some(f) => f,
        None => primal_cover(&facets, s)?,
    };
    let t = t0 - c * lambda;
    Ok(HomothetFit {
        lambda,
        translation: t.iter().copied().collect(),
    })
}

/// Smallest ratio for a fixed translation.
fn ratio_for(facets: &[(&Vector, f64)], s: &[Vector], t: &Vector) -> f64 {
    let mut lambda: f64 = 0.0;
    for x in s {
        let w = x - t;
        for (u, b) in facets {
            lambda = lambda.max(dot(u.as_slice(), w.as_slice()) / b);
        }
    }
    lambda
}

/// Direct form of the covering LP, used when the dual read-off is degenerate.
fn primal_cover(facets: &[(&Vector, f64)], s: &[Vector]) -> Result<(f64, Vector)> {
    let d = s[0].len();
    let mut obj = vec![0.0; d + 1];
    obj[0] = 1.0;
    let mut lp = LinearProgram::minimize(obj);
    lp.set_free_range(1..d + 1);
    for x in s {
        for (u, b) in facets {
            let mut row = Vec::with_capacity(d + 1);
            row.push(*b);
            row.extend(u.iter());
            lp.add_row(row, Relation::Ge, u.dot(x));
        }
    }
    let sol = lp.solve()?;
    let t = DVector::from_iterator(d, sol.x[1..].iter().copied());
    Ok((ratio_for(facets, s, &t), t))
}

/// Smallest Euclidean ball containing the points (move-to-front Welzl).
pub fn min_enclosing_ball(points: &[Vector]) -> (Vector, f64) {
    let d = points[0].len();
    let mut pts: Vec<Vector> = points.to_vec();
    let mut boundary = Vec::with_capacity(d + 1);
    let n = pts.len();
    let (c, r2) = mtf(&mut pts, n, &mut boundary, d);
    // the recursion is exact up to rounding; make the radius cover everything
    let r = points
        .iter()
        .map(|p| (p - &c).norm())
        .fold(r2.max(0.0).sqrt(), f64::max);
    (c, r)
}

fn mtf(pts: &mut Vec<Vector>, n: usize, boundary: &mut Vec<Vector>, d: usize) -> (Vector, f64) {
    let (mut c, mut r2) = circumball(boundary, d);
    if boundary.len() == d + 1 {
        return (c, r2);
    }
    let mut i = 0;
    while i < n {
        let out = (&pts[i] - &c).norm_squared() > r2 * (1.0 + 1e-12) + 1e-300;
        if out {
            boundary.push(pts[i].clone());
            let (c2, r22) = mtf(pts, i, boundary, d);
            boundary.pop();
            c = c2;
            r2 = r22;
            let p = pts.remove(i);
            pts.insert(0, p);
        }
        i += 1;
    }
    (c, r2)
}

/// Smallest ball with all given points on its boundary.
fn circumball(boundary: &[Vector], d: usize) -> (Vector, f64) {
    match boundary.len() {
        0 => (DVector::zeros(d), -1.0),
        1 => (boundary[0].clone(), 0.0),
        k => {
            let p0 = &boundary[0];
            let q: Vec<Vector> = boundary[1..].iter().map(|p| p - p0).collect();
            let m = k - 1;
            let a = DMatrix::from_fn(m, m, |i, j| 2.0 * q[i].dot(&q[j]));
            let b = DVector::from_fn(m, |i, _| q[i].norm_squared());
            let alpha = a
                .clone()
                .lu()
                .solve(&b)
                .unwrap_or_else(|| a.pseudo_inverse(1e-14).expect("pseudo-inverse") * &b);
            let mut c = p0.clone();
            for (qi, ai) in q.iter().zip(alpha.iter()) {
                c += qi * *ai;
            }
            let r2 = (p0 - &c).norm_squared();
            (c, r2)
        }
    }
}

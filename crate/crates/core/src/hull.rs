//! Convex hulls of finite point sets: facets and extreme points.
//!
//! Dimension 1 and 2 are handled directly (the planar case by Andrew's
//! monotone chain), dimension 3 by an incremental beneath-beyond hull whose
//! triangles are merged into facets afterwards, and higher dimensions by
//! brute-force enumeration of candidate supporting hyperplanes.

use std::collections::HashSet;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::Vector;

/// Outward unit normal and offset: the facet hyperplane is `<normal, x> = offset`
/// and the body lies on the side `<normal, x> <= offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct Facet {
    pub normal: Vector,
    pub offset: f64,
}

impl Facet {
    pub fn slack(&self, x: &Vector) -> f64 {
        self.offset - self.normal.dot(x)
    }
}

#[derive(Debug, Clone)]
pub struct Hull {
    /// Indices of extreme points in the input; counter-clockwise in 2D.
    pub vertices: Vec<usize>,
    pub facets: Vec<Facet>,
}

pub(crate) fn scale_of(points: &[Vector]) -> f64 {
    let d = points[0].len();
    let mut c = DVector::zeros(d);
    for p in points {
        c += p;
    }
    c /= points.len() as f64;
    points
        .iter()
        .map(|p| (p - &c).norm())
        .fold(0.0, f64::max)
        .max(1e-300)
}

pub fn convex_hull(points: &[Vector]) -> Result<Hull> {
    if points.is_empty() {
        return Err(Error::EmptyInterior);
    }
    let d = points[0].len();
    for p in points {
        crate::error::check_dim(d, p.len())?;
        crate::error::check_finite(p.as_slice(), "hull input")?;
    }
    let scale = scale_of(points);
    let eps = 1e-10 * scale;
    match d {
        0 => Err(Error::EmptyInterior),
        1 => hull1(points, eps),
        2 => hull2(points, eps),
        3 => hull3(points, eps),
        _ => hull_brute(points, eps),
    }
}

fn hull1(points: &[Vector], eps: f64) -> Result<Hull> {
    let (mut lo, mut hi) = (0, 0);
    for (i, p) in points.iter().enumerate() {
        if p[0] < points[lo][0] {
            lo = i;
        }
        if p[0] > points[hi][0] {
            hi = i;
        }
    }
    if points[hi][0] - points[lo][0] <= eps {
        return Err(Error::EmptyInterior);
    }
    Ok(Hull {
        vertices: vec![lo, hi],
        facets: vec![
            Facet {
                normal: DVector::from_vec(vec![-1.0]),
                offset: -points[lo][0],
            },
            Facet {
                normal: DVector::from_vec(vec![1.0]),
                offset: points[hi][0],
            },
        ],
    })
}

fn cross2(o: &Vector, a: &Vector, b: &Vector) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Counter-clockwise extreme points of a planar set (collinear points dropped).
pub(crate) fn monotone_chain(points: &[Vector], eps: f64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| {
        points[a][0]
            .partial_cmp(&points[b][0])
            .unwrap()
            .then(points[a][1].partial_cmp(&points[b][1]).unwrap())
    });
    idx.dedup_by(|a, b| (&points[*a] - &points[*b]).norm() <= eps);
    if idx.len() < 3 {
        return idx;
    }
    // cross products scale with length squared
    let tol = eps * scale_of(points);
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && cross2(
                &points[lower[lower.len() - 2]],
                &points[lower[lower.len() - 1]],
                &points[i],
            ) <= tol
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && cross2(
                &points[upper[upper.len() - 2]],
                &points[upper[upper.len() - 1]],
                &points[i],
            ) <= tol
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn hull2(points: &[Vector], eps: f64) -> Result<Hull> {
    let vertices = monotone_chain(points, eps);
    if vertices.len() < 3 {
        return Err(Error::EmptyInterior);
    }
    let k = vertices.len();
    let facets = (0..k)
        .map(|i| {
            let a = &points[vertices[i]];
            let b = &points[vertices[(i + 1) % k]];
            let n = DVector::from_vec(vec![b[1] - a[1], a[0] - b[0]]);
            let n = n.normalize();
            let offset = n.dot(a);
            Facet { normal: n, offset }
        })
        .collect();
    Ok(Hull { vertices, facets })
}

type P3 = [f64; 3];

fn sub3(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}
fn dot3(a: P3, b: P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
fn cross3(a: P3, b: P3) -> P3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}
fn norm3(a: P3) -> f64 {
    dot3(a, a).sqrt()
}

struct Tri {
    v: [usize; 3],
    n: P3,
    off: f64,
}

fn make_tri(p: &[P3], v: [usize; 3], interior: P3) -> Tri {
    let mut n = cross3(sub3(p[v[1]], p[v[0]]), sub3(p[v[2]], p[v[0]]));
    let len = norm3(n).max(1e-300);
    n = [n[0] / len, n[1] / len, n[2] / len];
    let mut off = dot3(n, p[v[0]]);
    let mut v = v;
    if dot3(n, interior) > off {
        v.swap(1, 2);
        n = [-n[0], -n[1], -n[2]];
        off = -off;
    }
    Tri { v, n, off }
}

fn hull3(points: &[Vector], eps: f64) -> Result<Hull> {
    let p: Vec<P3> = points.iter().map(|v| [v[0], v[1], v[2]]).collect();
    let n = p.len();
    if n < 4 {
        return Err(Error::EmptyInterior);
    }
    let i0 = (0..n)
        .min_by(|&a, &b| p[a].partial_cmp(&p[b]).unwrap())
        .unwrap();
    let i1 = (0..n)
        .max_by(|&a, &b| {
            norm3(sub3(p[a], p[i0]))
                .partial_cmp(&norm3(sub3(p[b], p[i0])))
                .unwrap()
        })
        .unwrap();
    let dir = sub3(p[i1], p[i0]);
    if norm3(dir) <= eps {
        return Err(Error::EmptyInterior);
    }
    let line_dist = |q: P3| norm3(cross3(sub3(q, p[i0]), dir)) / norm3(dir);
    let i2 = (0..n)
        .max_by(|&a, &b| line_dist(p[a]).partial_cmp(&line_dist(p[b])).unwrap())
        .unwrap();
    if line_dist(p[i2]) <= eps {
        return Err(Error::EmptyInterior);
    }
    let pn = cross3(dir, sub3(p[i2], p[i0]));
    let pn_len = norm3(pn);
    let plane_dist = |q: P3| dot3(sub3(q, p[i0]), pn).abs() / pn_len;
    let i3 = (0..n)
        .max_by(|&a, &b| plane_dist(p[a]).partial_cmp(&plane_dist(p[b])).unwrap())
        .unwrap();
    if plane_dist(p[i3]) <= eps {
        return Err(Error::EmptyInterior);
    }
    let interior = {
        let mut c = [0.0; 3];
        for &i in &[i0, i1, i2, i3] {
            for k in 0..3 {
                c[k] += p[i][k] / 4.0;
            }
        }
        c
    };
    let mut tris = vec![
        make_tri(&p, [i0, i1, i2], interior),
        make_tri(&p, [i0, i1, i3], interior),
        make_tri(&p, [i0, i2, i3], interior),
        make_tri(&p, [i1, i2, i3], interior),
    ];
    let seed = [i0, i1, i2, i3];
    for k in 0..n {
        if seed.contains(&k) {
            continue;
        }
        let q = p[k];
        let visible: Vec<bool> = tris.iter().map(|t| dot3(t.n, q) - t.off > eps).collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut edges: HashSet<(usize, usize)> = HashSet::new();
        for (t, _) in tris.iter().zip(&visible).filter(|(_, &v)| v) {
            for e in 0..3 {
                edges.insert((t.v[e], t.v[(e + 1) % 3]));
            }
        }
        let mut horizon: Vec<(usize, usize)> = edges
            .iter()
            .copied()
            .filter(|&(a, b)| !edges.contains(&(b, a)))
            .collect();
        horizon.sort_unstable();
        let mut kept: Vec<Tri> = tris
            .into_iter()
            .zip(visible)
            .filter(|(_, v)| !v)
            .map(|(t, _)| t)
            .collect();
        for (a, b) in horizon {
            kept.push(make_tri(&p, [a, b, k], interior));
        }
        tris = kept;
    }

    // merge coplanar triangles into facets
    let mut facets: Vec<Facet> = Vec::new();
    for t in &tris {
        let normal = DVector::from_vec(t.n.to_vec());
        let dup = facets
            .iter()
            .any(|f| (&f.normal - &normal).norm() < 1e-7 && (f.offset - t.off).abs() < 1e2 * eps);
        if !dup {
            facets.push(Facet {
                normal,
                offset: t.off,
            });
        }
    }
    let mut candidates: Vec<usize> = tris.iter().flat_map(|t| t.v).collect();
    candidates.sort_unstable();
    candidates.dedup();
    let vertices = extreme_filter(points, &candidates, &facets, 1e2 * eps);
    Ok(Hull { vertices, facets })
}

/// Keeps the candidates whose active facet normals span the space.
fn extreme_filter(points: &[Vector], candidates: &[usize], facets: &[Facet], tol: f64) -> Vec<usize> {
    let d = points[0].len();
    let mut out: Vec<usize> = Vec::new();
    for &i in candidates {
        let x = &points[i];
        if out.iter().any(|&j| (&points[j] - x).norm() <= tol) {
            continue;
        }
        let active: Vec<&Facet> = facets.iter().filter(|f| f.slack(x).abs() <= tol).collect();
        if active.len() < d {
            continue;
        }
        let m = DMatrix::from_fn(active.len(), d, |r, c| active[r].normal[c]);
        if m.rank(1e-7) == d {
            out.push(i);
        }
    }
    out
}

fn combinations(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f);
}

/// Generalized cross product of the rows of a (d-1) x d matrix.
fn null_normal(m: &DMatrix<f64>) -> DVector<f64> {
    let d = m.ncols();
    DVector::from_fn(d, |c, _| {
        let minor = m.clone().remove_column(c);
        let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
        sign * minor.determinant()
    })
}

fn hull_brute(points: &[Vector], eps: f64) -> Result<Hull> {
    let d = points[0].len();
    let n = points.len();
    let scale = scale_of(points);
    let mut facets: Vec<Facet> = Vec::new();
    combinations(n, d, &mut |sub| {
        let base = &points[sub[0]];
        let m = DMatrix::from_fn(d - 1, d, |r, c| points[sub[r + 1]][c] - base[c]);
        let normal = null_normal(&m);
        let len = normal.norm();
        if len <= 1e-9 * scale.powi(d as i32 - 1) {
            return;
        }
        let normal = normal / len;
        let off = normal.dot(base);
        let (mut above, mut below) = (false, false);
        for p in points {
            let s = normal.dot(p) - off;
            above |= s > eps;
            below |= s < -eps;
        }
        if above && below {
            return;
        }
        let (normal, off) = if above { (-normal, -off) } else { (normal, off) };
        if !facets
            .iter()
            .any(|f| (&f.normal - &normal).norm() < 1e-7 && (f.offset - off).abs() < 1e2 * eps)
        {
            facets.push(Facet { normal, offset: off });
        }
    });
    if facets.len() < d + 1 {
        return Err(Error::EmptyInterior);
    }
    let candidates: Vec<usize> = (0..n).collect();
    let vertices = extreme_filter(points, &candidates, &facets, 1e2 * eps);
    if vertices.len() < d + 1 {
        return Err(Error::EmptyInterior);
    }
    Ok(Hull { vertices, facets })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[f64]) -> Vector {
        DVector::from_vec(xs.to_vec())
    }

    #[test]
    fn square_with_interior_and_edge_points() {
        let pts = vec![
            v(&[0.0, 0.0]),
            v(&[1.0, 0.0]),
            v(&[0.5, 0.0]),
            v(&[1.0, 1.0]),
            v(&[0.0, 1.0]),
            v(&[0.3, 0.4]),
        ];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.vertices.len(), 4);
        assert_eq!(h.facets.len(), 4);
        for f in &h.facets {
            for p in &pts {
                assert!(f.slack(p) >= -1e-12);
            }
        }
    }

    #[test]
    fn cube_merges_coplanar_triangles() {
        let mut pts = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    pts.push(v(&[x, y, z]));
                }
            }
        }
        pts.push(v(&[0.5, 0.5, 1.0]));
        pts.push(v(&[0.5, 0.5, 0.5]));
        pts.push(v(&[1.0, 0.5, 0.0]));
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.facets.len(), 6);
        assert_eq!(h.vertices.len(), 8);
    }

    #[test]
    fn brute_force_matches_in_4d() {
        let mut pts = Vec::new();
        for i in 0..4 {
            let mut e = vec![0.0; 4];
            e[i] = 1.0;
            pts.push(v(&e));
            e[i] = -1.0;
            pts.push(v(&e));
        }
        pts.push(v(&[0.1, 0.1, 0.0, 0.0]));
        let h = convex_hull(&pts).unwrap();
        // 4D cross-polytope: 8 vertices, 16 facets
        assert_eq!(h.vertices.len(), 8);
        assert_eq!(h.facets.len(), 16);
    }

    #[test]
    fn flat_input_rejected() {
        let pts = vec![v(&[0.0, 0.0]), v(&[1.0, 1.0]), v(&[2.0, 2.0])];
        assert!(matches!(convex_hull(&pts), Err(Error::EmptyInterior)));
        let pts = vec![
            v(&[0.0, 0.0, 0.0]),
            v(&[1.0, 0.0, 0.0]),
            v(&[0.0, 1.0, 0.0]),
            v(&[1.0, 1.0, 0.0]),
        ];
        assert!(matches!(convex_hull(&pts), Err(Error::EmptyInterior)));
    }
}

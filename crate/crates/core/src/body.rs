//! Convex bodies: polytopes (kept in both vertex and facet form) and
//! symbolic Euclidean balls.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, check_finite, Error, Result};
use crate::hull::{self, convex_hull, Facet};
use crate::lp::{LinearProgram, Relation};
use crate::special::unit_ball_volume;
use crate::Vector;

/// Vertex count used when a ball has to be replaced by a polytope.
pub const DEFAULT_BALL_POLYGON: usize = 720;

#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    vertices: Vec<Vector>,
    facets: Vec<Facet>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    center: Vector,
    radius: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConvexBody {
    Polytope(Polytope),
    Ball(Ball),
}

impl Polytope {
    /// Convex hull of the given points; non-extreme points are dropped.
    pub fn from_vertices(points: &[Vector]) -> Result<Self> {
        let h = convex_hull(points)?;
        Ok(Self {
            vertices: h.vertices.iter().map(|&i| points[i].clone()).collect(),
            facets: h.facets,
        })
    }

    /// Intersection of halfspaces `<normals[j], x> <= offsets[j]`.
    pub fn from_halfspaces(normals: &[Vector], offsets: &[f64]) -> Result<Self> {
        if normals.len() != offsets.len() {
            return Err(Error::InvalidParameter(format!(
                "{} normals but {} offsets",
                normals.len(),
                offsets.len()
            )));
        }
        if normals.is_empty() {
            return Err(Error::Unbounded);
        }
        let d = normals[0].len();
        let mut units = Vec::with_capacity(normals.len());
        let mut offs = Vec::with_capacity(normals.len());
        for (u, &b) in normals.iter().zip(offsets) {
            check_dim(d, u.len())?;
            check_finite(u.as_slice(), "halfspace normal")?;
            check_finite(&[b], "halfspace offset")?;
            let len = u.norm();
            if len == 0.0 {
                return Err(Error::InvalidParameter("zero halfspace normal".into()));
            }
            units.push(u / len);
            offs.push(b / len);
        }
        let (center, radius) = chebyshev_center(&units, &offs)?;
        let scale = offs.iter().map(|b| b.abs()).fold(1.0, f64::max);
        if radius <= 1e-9 * scale {
            return Err(Error::EmptyInterior);
        }
        // vertices are the polar facets of the shifted system
        let dual_points: Vec<Vector> = units
            .iter()
            .zip(&offs)
            .map(|(u, b)| u / (b - u.dot(&center)))
            .collect();
        let dual = convex_hull(&dual_points).map_err(|e| match e {
            Error::EmptyInterior => Error::Unbounded,
            other => other,
        })?;
        let dual_scale = hull::scale_of(&dual_points);
        if dual.facets.iter().any(|f| f.offset <= 1e-9 * dual_scale) {
            return Err(Error::Unbounded);
        }
        let vertices: Vec<Vector> = dual
            .facets
            .iter()
            .map(|f| &center + &f.normal / f.offset)
            .collect();
        Self::from_vertices(&vertices)
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn centroid(&self) -> Vector {
        let mut c = DVector::zeros(self.dim());
        for v in &self.vertices {
            c += v;
        }
        c / self.vertices.len() as f64
    }

    /// Facets whose hyperplane passes within `tol` of `x`.
    pub fn active_facets(&self, x: &Vector, tol: f64) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&j| self.facets[j].slack(x).abs() <= tol)
            .collect()
    }

    fn map_vertices(&self, f: impl Fn(&Vector) -> Vector) -> Self {
        let vertices: Vec<Vector> = self.vertices.iter().map(f).collect();
        Self::from_vertices(&vertices).expect("affine image of a full-dimensional polytope")
    }

    fn volume(&self) -> Result<f64> {
        match self.dim() {
            1 => Ok(self.facets.iter().map(|f| f.offset).sum()),
            2 => Ok(shoelace(&self.vertices)),
            3 => {
                // pyramids over the facets with apex at the centroid
                let c = self.centroid();
                let tol = 1e-9 * hull::scale_of(&self.vertices);
                let mut vol = 0.0;
                for f in &self.facets {
                    let on: Vec<&Vector> = self
                        .vertices
                        .iter()
                        .filter(|v| f.slack(v).abs() <= tol)
                        .collect();
                    vol += f.slack(&c) * planar_area(&f.normal, &on) / 3.0;
                }
                Ok(vol)
            }
            d => Err(Error::Unsupported(format!(
                "exact polytope volume in dimension {d}"
            ))),
        }
    }
}

/// Area of a convex polygon given by its counter-clockwise vertices.
pub(crate) fn shoelace(vertices: &[Vector]) -> f64 {
    let k = vertices.len();
    let mut a = 0.0;
    for i in 0..k {
        let p = &vertices[i];
        let q = &vertices[(i + 1) % k];
        a += p[0] * q[1] - q[0] * p[1];
    }
    0.5 * a.abs()
}

/// Area of the convex hull of coplanar points in R^3.
fn planar_area(normal: &Vector, points: &[&Vector]) -> f64 {
    if points.len() < 3 {
        return 0.0;
    }
    let n = normal;
    let seed = if n[0].abs() < 0.9 {
        DVector::from_vec(vec![1.0, 0.0, 0.0])
    } else {
        DVector::from_vec(vec![0.0, 1.0, 0.0])
    };
    let e1 = (&seed - n * n.dot(&seed)).normalize();
    let e2 = DVector::from_vec(vec![
        n[1] * e1[2] - n[2] * e1[1],
        n[2] * e1[0] - n[0] * e1[2],
        n[0] * e1[1] - n[1] * e1[0],
    ]);
    let flat: Vec<Vector> = points
        .iter()
        .map(|p| DVector::from_vec(vec![e1.dot(p), e2.dot(p)]))
        .collect();
    let order = hull::monotone_chain(&flat, 1e-12 * hull::scale_of(&flat));
    if order.len() < 3 {
        return 0.0;
    }
    let ring: Vec<Vector> = order.iter().map(|&i| flat[i].clone()).collect();
    shoelace(&ring)
}

/// Center and radius of the largest inscribed Euclidean ball (unit normals).
pub(crate) fn chebyshev_center(normals: &[Vector], offsets: &[f64]) -> Result<(Vector, f64)> {
    let d = normals[0].len();
    let mut obj = vec![0.0; d + 1];
    obj[d] = 1.0;
    let mut lp = LinearProgram::maximize(obj);
    lp.set_free_range(0..d);
    for (u, &b) in normals.iter().zip(offsets) {
        let mut row: Vec<f64> = u.iter().copied().collect();
        row.push(1.0);
        lp.add_row(row, Relation::Le, b);
    }
    let sol = lp.solve().map_err(|e| match e {
        crate::lp::LpError::Unbounded => Error::Unbounded,
        crate::lp::LpError::Infeasible => Error::EmptyInterior,
        other => Error::Lp(other),
    })?;
    Ok((DVector::from_vec(sol.x[..d].to_vec()), sol.x[d]))
}

impl Ball {
    pub fn new(center: Vector, radius: f64) -> Result<Self> {
        check_finite(center.as_slice(), "ball center")?;
        if center.is_empty() {
            return Err(Error::InvalidParameter("zero-dimensional ball".into()));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidParameter(format!("ball radius {radius}")));
        }
        Ok(Self { center, radius })
    }

    pub fn unit(dim: usize) -> Self {
        Self {
            center: DVector::zeros(dim),
            radius: 1.0,
        }
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Inscribed polytope: a regular `n`-gon in 2D, a Fibonacci point cloud hull
    /// in 3D.
    pub fn polygonize(&self, n: usize) -> Result<Polytope> {
        let d = self.center.len();
        let pts: Vec<Vector> = match d {
            2 => (0..n)
                .map(|k| {
                    let a = std::f64::consts::TAU * k as f64 / n as f64;
                    DVector::from_vec(vec![a.cos(), a.sin()])
                })
                .collect(),
            3 => {
                let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
                (0..n)
                    .map(|k| {
                        let z = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
                        let r = (1.0 - z * z).sqrt();
                        let a = golden * k as f64;
                        DVector::from_vec(vec![r * a.cos(), r * a.sin(), z])
                    })
                    .collect()
            }
            _ => return Err(Error::Unsupported(format!("ball polygonization in dimension {d}"))),
        };
        let pts: Vec<Vector> = pts.iter().map(|p| &self.center + p * self.radius).collect();
        Polytope::from_vertices(&pts)
    }
}

impl ConvexBody {
    pub fn from_vertices(points: &[Vector]) -> Result<Self> {
        Ok(Self::Polytope(Polytope::from_vertices(points)?))
    }

    pub fn from_halfspaces(normals: &[Vector], offsets: &[f64]) -> Result<Self> {
        Ok(Self::Polytope(Polytope::from_halfspaces(normals, offsets)?))
    }

    pub fn ball(center: Vector, radius: f64) -> Result<Self> {
        Ok(Self::Ball(Ball::new(center, radius)?))
    }

    pub fn unit_ball(dim: usize) -> Self {
        Self::Ball(Ball::unit(dim))
    }

    /// Convenience constructor from coordinate rows.
    pub fn polygon(rows: &[&[f64]]) -> Result<Self> {
        let pts: Vec<Vector> = rows.iter().map(|r| DVector::from_vec(r.to_vec())).collect();
        Self::from_vertices(&pts)
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Polytope(p) => p.dim(),
            Self::Ball(b) => b.center.len(),
        }
    }

    pub fn as_polytope(&self) -> Option<&Polytope> {
        match self {
            Self::Polytope(p) => Some(p),
            Self::Ball(_) => None,
        }
    }

    /// Polytope form, polygonizing balls with `n` vertices.
    pub fn to_polytope(&self, n: usize) -> Result<Polytope> {
        match self {
            Self::Polytope(p) => Ok(p.clone()),
            Self::Ball(b) => b.polygonize(n),
        }
    }

    /// Support function `sup_{x in body} <y, x>`.
    pub fn support(&self, y: &Vector) -> Result<f64> {
        check_dim(self.dim(), y.len())?;
        Ok(self.support_unchecked(y.as_slice()))
    }

    pub(crate) fn support_unchecked(&self, y: &[f64]) -> f64 {
        match self {
            Self::Polytope(p) => p
                .vertices
                .iter()
                .map(|v| dot(v.as_slice(), y))
                .fold(f64::NEG_INFINITY, f64::max),
            Self::Ball(b) => dot(b.center.as_slice(), y) + b.radius * norm(y),
        }
    }

    /// A maximizer of `<y, x>` over the body; ties go to the lowest vertex index.
    pub fn support_point(&self, y: &Vector) -> Result<Vector> {
        check_dim(self.dim(), y.len())?;
        Ok(match self {
            Self::Polytope(p) => {
                let h = self.support_unchecked(y.as_slice());
                let tol = 1e-12 * (1.0 + h.abs());
                p.vertices
                    .iter()
                    .find(|v| v.dot(y) >= h - tol)
                    .cloned()
                    .expect("support is attained at a vertex")
            }
            Self::Ball(b) => {
                let n = y.norm();
                if n == 0.0 {
                    b.center.clone()
                } else {
                    &b.center + y * (b.radius / n)
                }
            }
        })
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        match self {
            Self::Polytope(p) => p.facets.iter().all(|f| f.slack(x) >= -tol),
            Self::Ball(b) => (x - &b.center).norm() <= b.radius + tol,
        }
    }

    /// Signed distance-like boundary measure: positive inside, zero on the
    /// boundary, negative outside (exact Euclidean distance for interior
    /// points of polytopes and for balls).
    pub fn boundary_slack(&self, x: &Vector) -> f64 {
        match self {
            Self::Polytope(p) => p
                .facets
                .iter()
                .map(|f| f.slack(x))
                .fold(f64::INFINITY, f64::min),
            Self::Ball(b) => b.radius - (x - &b.center).norm(),
        }
    }

    pub fn interior_point(&self) -> Vector {
        match self {
            Self::Polytope(p) => p.centroid(),
            Self::Ball(b) => b.center.clone(),
        }
    }

    /// Largest `t >= 0` with `from + t * dir` in the body; `from` must be inside.
    pub fn ray_exit(&self, from: &Vector, dir: &Vector) -> f64 {
        match self {
            Self::Polytope(p) => p
                .facets
                .iter()
                .filter_map(|f| {
                    let rate = f.normal.dot(dir);
                    (rate > 1e-300).then(|| (f.slack(from) / rate).max(0.0))
                })
                .fold(f64::INFINITY, f64::min),
            Self::Ball(b) => {
                let w = from - &b.center;
                let a = dir.norm_squared();
                let bb = w.dot(dir);
                let c = w.norm_squared() - b.radius * b.radius;
                ((-bb + (bb * bb - a * c).max(0.0).sqrt()) / a).max(0.0)
            }
        }
    }

    pub fn bounding_box(&self) -> (Vector, Vector) {
        match self {
            Self::Polytope(p) => {
                let d = p.dim();
                let mut lo = DVector::from_element(d, f64::INFINITY);
                let mut hi = DVector::from_element(d, f64::NEG_INFINITY);
                for v in &p.vertices {
                    for k in 0..d {
                        lo[k] = lo[k].min(v[k]);
                        hi[k] = hi[k].max(v[k]);
                    }
                }
                (lo, hi)
            }
            Self::Ball(b) => (
                b.center.add_scalar(-b.radius),
                b.center.add_scalar(b.radius),
            ),
        }
    }

    /// Euclidean diameter of the bounding box.
    pub fn extent(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        (hi - lo).norm()
    }

    pub fn translate(&self, t: &Vector) -> Self {
        match self {
            Self::Polytope(p) => Self::Polytope(p.map_vertices(|v| v + t)),
            Self::Ball(b) => Self::Ball(Ball {
                center: &b.center + t,
                radius: b.radius,
            }),
        }
    }

    /// Homothety about the origin with ratio `alpha > 0`.
    pub fn scale(&self, alpha: f64) -> Self {
        assert!(alpha > 0.0, "scale factor must be positive");
        match self {
            Self::Polytope(p) => Self::Polytope(p.map_vertices(|v| v * alpha)),
            Self::Ball(b) => Self::Ball(Ball {
                center: &b.center * alpha,
                radius: b.radius * alpha,
            }),
        }
    }

    /// Reflection `x -> -x`.
    pub fn negate(&self) -> Self {
        match self {
            Self::Polytope(p) => Self::Polytope(p.map_vertices(|v| -v)),
            Self::Ball(b) => Self::Ball(Ball {
                center: -&b.center,
                radius: b.radius,
            }),
        }
    }

    /// Minkowski sum `K + (-K)`.
    pub fn difference_body(&self) -> Result<Self> {
        match self {
            Self::Polytope(p) => {
                let vs = &p.vertices;
                let mut diffs = Vec::with_capacity(vs.len() * vs.len());
                for a in vs {
                    for b in vs {
                        if !std::ptr::eq(a, b) {
                            diffs.push(a - b);
                        }
                    }
                }
                Self::from_vertices(&diffs)
            }
            Self::Ball(b) => Ok(Self::Ball(Ball {
                center: DVector::zeros(b.center.len()),
                radius: 2.0 * b.radius,
            })),
        }
    }

    /// Polar body `{y : <y, x> <= 1 for all x in body}`.
    pub fn polar(&self) -> Result<Self> {
        match self {
            Self::Polytope(p) => {
                let scale = hull::scale_of(&p.vertices);
                if p.facets.iter().any(|f| f.offset <= 1e-9 * scale) {
                    return Err(Error::OriginNotInterior);
                }
                let pts: Vec<Vector> = p.facets.iter().map(|f| &f.normal / f.offset).collect();
                Self::from_vertices(&pts)
            }
            Self::Ball(b) => {
                if b.center.norm() > 1e-12 * b.radius {
                    if b.center.norm() >= b.radius {
                        return Err(Error::OriginNotInterior);
                    }
                    return Err(Error::Unsupported(
                        "polar of an off-center ball is an ellipsoid".into(),
                    ));
                }
                Ok(Self::Ball(Ball {
                    center: b.center.clone(),
                    radius: 1.0 / b.radius,
                }))
            }
        }
    }

    /// Exact volume: shoelace in 2D, facet pyramids in 3D, closed form for balls.
    pub fn volume(&self) -> Result<f64> {
        match self {
            Self::Polytope(p) => p.volume(),
            Self::Ball(b) => {
                let d = b.center.len();
                Ok(unit_ball_volume(d) * b.radius.powi(d as i32))
            }
        }
    }

    /// True when the origin lies in the interior with margin `tol`.
    pub fn origin_interior(&self, tol: f64) -> bool {
        let o = DVector::zeros(self.dim());
        self.boundary_slack(&o) > tol
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// JSON body schema.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BodySpec {
    Vpolytope { vertices: Vec<Vec<f64>> },
    Hpolytope { normals: Vec<Vec<f64>>, offsets: Vec<f64> },
    Ball { center: Vec<f64>, radius: f64 },
}

fn to_vectors(rows: &[Vec<f64>], what: &'static str) -> Result<Vec<Vector>> {
    rows.iter()
        .map(|r| {
            check_finite(r, what)?;
            Ok(DVector::from_vec(r.clone()))
        })
        .collect()
}

impl TryFrom<BodySpec> for ConvexBody {
    type Error = Error;

    fn try_from(spec: BodySpec) -> Result<Self> {
        match spec {
            BodySpec::Vpolytope { vertices } => {
                Self::from_vertices(&to_vectors(&vertices, "vertices")?)
            }
            BodySpec::Hpolytope { normals, offsets } => {
                check_finite(&offsets, "offsets")?;
                Self::from_halfspaces(&to_vectors(&normals, "normals")?, &offsets)
            }
            BodySpec::Ball { center, radius } => {
                check_finite(&center, "center")?;
                check_finite(&[radius], "radius")?;
                Self::ball(DVector::from_vec(center), radius)
            }
        }
    }
}

impl From<&ConvexBody> for BodySpec {
    fn from(body: &ConvexBody) -> Self {
        match body {
            ConvexBody::Polytope(p) => BodySpec::Vpolytope {
                vertices: p.vertices.iter().map(|v| v.iter().copied().collect()).collect(),
            },
            ConvexBody::Ball(b) => BodySpec::Ball {
                center: b.center.iter().copied().collect(),
                radius: b.radius,
            },
        }
    }
}

impl Serialize for ConvexBody {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BodySpec::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConvexBody {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = BodySpec::deserialize(d)?;
        ConvexBody::try_from(spec).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn v(xs: &[f64]) -> Vector {
        DVector::from_vec(xs.to_vec())
    }

    fn triangle() -> ConvexBody {
        ConvexBody::polygon(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]).unwrap()
    }

    fn square(lo: f64, hi: f64) -> ConvexBody {
        ConvexBody::polygon(&[&[lo, lo], &[hi, lo], &[hi, hi], &[lo, hi]]).unwrap()
    }

    #[test]
    fn support_examples() {
        let sq = square(-1.0, 1.0);
        assert_eq!(sq.support(&v(&[1.0, 0.0])).unwrap(), 1.0);
        assert_eq!(sq.support(&v(&[1.0, 1.0])).unwrap(), 2.0);
        assert_eq!(triangle().support(&v(&[1.0, 1.0])).unwrap(), 1.0);
        assert!(matches!(
            sq.support(&v(&[1.0, 0.0, 0.0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn difference_body_examples() {
        let dt = triangle().difference_body().unwrap();
        let p = dt.as_polytope().unwrap();
        assert_eq!(p.vertices().len(), 6);
        for w in [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0], [1.0, -1.0], [-1.0, 1.0]] {
            assert!(p.vertices().iter().any(|x| (x - v(&w)).norm() < 1e-12));
        }
        let ds = square(0.0, 1.0).difference_body().unwrap();
        assert_eq!(ds, square(-1.0, 1.0));
        let b = ConvexBody::ball(v(&[3.0, -1.0]), 0.5).unwrap();
        assert_eq!(b.difference_body().unwrap(), ConvexBody::ball(v(&[0.0, 0.0]), 1.0).unwrap());
    }

    #[test]
    fn polar_examples() {
        let cross = square(-1.0, 1.0).polar().unwrap();
        let p = cross.as_polytope().unwrap();
        assert_eq!(p.vertices().len(), 4);
        for w in [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]] {
            assert!(p.vertices().iter().any(|x| (x - v(&w)).norm() < 1e-12));
        }
        let b = ConvexBody::ball(v(&[0.0, 0.0]), 4.0).unwrap();
        assert_eq!(b.polar().unwrap(), ConvexBody::ball(v(&[0.0, 0.0]), 0.25).unwrap());
        assert!(matches!(triangle().polar(), Err(Error::OriginNotInterior)));
    }

    #[test]
    fn volume_examples() {
        assert_abs_diff_eq!(triangle().volume().unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(square(-1.0, 1.0).volume().unwrap(), 4.0, epsilon = 1e-15);
        let cube = ConvexBody::from_halfspaces(
            &[
                v(&[1.0, 0.0, 0.0]),
                v(&[-1.0, 0.0, 0.0]),
                v(&[0.0, 1.0, 0.0]),
                v(&[0.0, -1.0, 0.0]),
                v(&[0.0, 0.0, 1.0]),
                v(&[0.0, 0.0, -1.0]),
            ],
            &[1.0, 1.0, 2.0, 0.0, 0.5, 0.5],
        )
        .unwrap();
        assert_abs_diff_eq!(cube.volume().unwrap(), 4.0, epsilon = 1e-12);
        let simplex = ConvexBody::from_vertices(&[
            v(&[0.0, 0.0, 0.0]),
            v(&[1.0, 0.0, 0.0]),
            v(&[0.0, 1.0, 0.0]),
            v(&[0.0, 0.0, 1.0]),
        ])
        .unwrap();
        assert_abs_diff_eq!(simplex.volume().unwrap(), 1.0 / 6.0, epsilon = 1e-14);
        let disk = ConvexBody::unit_ball(2);
        assert_abs_diff_eq!(disk.volume().unwrap(), std::f64::consts::PI, epsilon = 1e-14);
        let b4 = ConvexBody::unit_ball(4);
        assert!(matches!(
            ConvexBody::Polytope(square(0.0, 1.0).as_polytope().unwrap().clone())
                .volume()
                .map(|_| ()),
            Ok(())
        ));
        assert_abs_diff_eq!(
            b4.volume().unwrap(),
            std::f64::consts::PI.powi(2) / 2.0,
            epsilon = 1e-13
        );
    }

    #[test]
    fn halfspace_errors() {
        // strip: unbounded
        let r = ConvexBody::from_halfspaces(&[v(&[1.0, 0.0]), v(&[-1.0, 0.0])], &[1.0, 1.0]);
        assert!(matches!(r, Err(Error::Unbounded)));
        // empty
        let r = ConvexBody::from_halfspaces(
            &[v(&[1.0, 0.0]), v(&[-1.0, 0.0]), v(&[0.0, 1.0]), v(&[0.0, -1.0])],
            &[-1.0, -1.0, 1.0, 1.0],
        );
        assert!(matches!(r, Err(Error::EmptyInterior)));
        // redundant halfspaces are dropped
        let sq = ConvexBody::from_halfspaces(
            &[
                v(&[1.0, 0.0]),
                v(&[-1.0, 0.0]),
                v(&[0.0, 1.0]),
                v(&[0.0, -1.0]),
                v(&[1.0, 1.0]),
            ],
            &[1.0, 1.0, 1.0, 1.0, 5.0],
        )
        .unwrap();
        assert_eq!(sq.as_polytope().unwrap().facets().len(), 4);
    }

    #[test]
    fn json_round_trip_and_rejects_garbage() {
        let body: ConvexBody =
            serde_json::from_str(r#"{"type":"vpolytope","vertices":[[0,0],[1,0],[0,1],[0.2,0.2]]}"#)
                .unwrap();
        assert_eq!(body, triangle());
        let text = serde_json::to_string(&body).unwrap();
        let again: ConvexBody = serde_json::from_str(&text).unwrap();
        assert_eq!(again, body);
        let h: ConvexBody = serde_json::from_str(
            r#"{"type":"hpolytope","normals":[[-1,0],[0,-1],[1,1]],"offsets":[0,0,1]}"#,
        )
        .unwrap();
        assert_abs_diff_eq!(h.volume().unwrap(), 0.5, epsilon = 1e-12);
        assert!(serde_json::from_str::<ConvexBody>(r#"{"type":"ball","center":[0,0],"radius":-1}"#).is_err());
        assert!(serde_json::from_str::<ConvexBody>(r#"{"type":"ball","center":[0,0],"radius":1e999}"#).is_err());
        assert!(serde_json::from_str::<ConvexBody>(r#"{"type":"blob"}"#).is_err());
    }

    #[test]
    fn ray_exit_hits_boundary() {
        let t = triangle();
        let from = v(&[0.2, 0.2]);
        let dir = v(&[1.0, 1.0]);
        let s = t.ray_exit(&from, &dir);
        assert_abs_diff_eq!(s, 0.3, epsilon = 1e-12);
        let disk = ConvexBody::unit_ball(2);
        assert_abs_diff_eq!(disk.ray_exit(&v(&[0.0, 0.0]), &v(&[3.0, 4.0])), 0.2, epsilon = 1e-15);
    }
}

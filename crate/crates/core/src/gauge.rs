//! Gauges (Minkowski functionals) of convex bodies containing the origin.

use crate::body::{dot, ConvexBody};
use crate::error::{check_dim, check_finite, Error, Result};
use crate::hull;
use crate::Vector;

/// Origin margin, relative to the body's extent, below which a body is not
/// accepted as a unit ball.
const ORIGIN_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone)]
enum Repr {
    /// Facet normals divided by their offsets, row-major.
    Facets { dim: usize, rows: Vec<f64> },
    Ball { center: Vector, radius: f64 },
}

/// A possibly non-symmetric norm whose unit ball is a convex body with the
/// origin in its interior.
#[derive(Debug, Clone)]
pub struct Gauge {
    unit_ball: ConvexBody,
    symmetric: bool,
    repr: Repr,
}

impl PartialEq for Gauge {
    fn eq(&self, other: &Self) -> bool {
        self.unit_ball == other.unit_ball
    }
}

impl Gauge {
    pub fn new(unit_ball: ConvexBody) -> Result<Self> {
        let repr = match &unit_ball {
            ConvexBody::Polytope(p) => {
                let scale = hull::scale_of(p.vertices());
                if p.facets().iter().any(|f| f.offset <= ORIGIN_MARGIN * scale) {
                    return Err(Error::OriginNotInterior);
                }
                let mut rows = Vec::with_capacity(p.facets().len() * p.dim());
                for f in p.facets() {
                    rows.extend(f.normal.iter().map(|u| u / f.offset));
                }
                Repr::Facets { dim: p.dim(), rows }
            }
            ConvexBody::Ball(b) => {
                if b.center().norm() >= b.radius() * (1.0 - ORIGIN_MARGIN) {
                    return Err(Error::OriginNotInterior);
                }
                Repr::Ball {
                    center: b.center().clone(),
                    radius: b.radius(),
                }
            }
        };
        let symmetric = match &unit_ball {
            ConvexBody::Polytope(p) => {
                let tol = 1e-9 * hull::scale_of(p.vertices());
                p.vertices().iter().all(|v| unit_ball.contains(&-v, tol))
            }
            ConvexBody::Ball(b) => b.center().norm() <= 1e-12 * b.radius(),
        };
        Ok(Self {
            unit_ball,
            symmetric,
            repr,
        })
    }

    /// The Euclidean norm in R^d.
    pub fn euclidean(dim: usize) -> Self {
        Self::new(ConvexBody::unit_ball(dim)).expect("unit ball is a valid gauge ball")
    }

    /// The norm whose unit ball is `K - K`.
    pub fn difference(k: &ConvexBody) -> Result<Self> {
        Self::new(k.difference_body()?)
    }

    pub fn unit_ball(&self) -> &ConvexBody {
        &self.unit_ball
    }

    pub fn dim(&self) -> usize {
        self.unit_ball.dim()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Same norm with unit ball scaled by `alpha`.
    pub fn scaled(&self, alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidParameter(format!("gauge scale {alpha}")));
        }
        Self::new(self.unit_ball.scale(alpha))
    }

    /// `min { t > 0 : x in t B }`, zero at the origin.
    pub fn eval(&self, x: &Vector) -> Result<f64> {
        check_dim(self.dim(), x.len())?;
        check_finite(x.as_slice(), "gauge argument")?;
        Ok(self.eval_slice(x.as_slice()))
    }

    /// Unchecked evaluation for hot loops; `x` must have the gauge dimension.
    pub fn eval_slice(&self, x: &[f64]) -> f64 {
        match &self.repr {
            Repr::Facets { dim, rows } => rows
                .chunks_exact(*dim)
                .map(|a| dot(a, x))
                .fold(0.0, f64::max),
            Repr::Ball { center, radius } => {
                let xx = dot(x, x);
                if xx == 0.0 {
                    return 0.0;
                }
                let b = dot(center.as_slice(), x);
                let a = center.norm_squared() - radius * radius;
                ((b * b - a * xx).sqrt() - b) / -a
            }
        }
    }

    /// Dual norm: the support function of the unit ball.
    pub fn dual_eval(&self, y: &Vector) -> Result<f64> {
        self.unit_ball.support(y)
    }

    pub(crate) fn dual_eval_slice(&self, y: &[f64]) -> f64 {
        self.unit_ball.support_unchecked(y)
    }

    /// Generators of the subdifferential of the gauge at `x != 0`.
    ///
    /// For polytopal balls every facet whose functional comes within `band`
    /// of the maximum at `x / gauge(x)` contributes its generator; round balls
    /// have a single gradient.
    pub fn subgradients(&self, x: &Vector, band: f64) -> Vec<Vector> {
        let g = self.eval_slice(x.as_slice());
        if g == 0.0 {
            return Vec::new();
        }
        match &self.repr {
            Repr::Facets { dim, rows } => rows
                .chunks_exact(*dim)
                .filter(|a| dot(a, x.as_slice()) / g >= 1.0 - band)
                .map(Vector::from_column_slice)
                .collect(),
            Repr::Ball { center, radius } => {
                // implicit differentiation of |x - g c| = r g
                let w = x - center * g;
                let denom = w.dot(center) + radius * radius * g;
                vec![w / denom]
            }
        }
    }

    /// A unit vector `y` of this gauge maximizing `<p, y>`; the rate of
    /// increase along it equals the dual norm of `p`.
    pub fn steepest_direction(&self, p: &Vector) -> Result<Vector> {
        self.unit_ball.support_point(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector as v;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn skew_triangle() -> Gauge {
        Gauge::new(ConvexBody::polygon(&[&[1.0, 0.0], &[0.0, 1.0], &[-1.0, -1.0]]).unwrap()).unwrap()
    }

    fn hexagon() -> Gauge {
        let t = ConvexBody::polygon(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]).unwrap();
        Gauge::difference(&t).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_abs_diff_eq!(Gauge::euclidean(2).eval(&v(&[3.0, 4.0])).unwrap(), 5.0, epsilon = 1e-15);
        let sq = Gauge::new(ConvexBody::polygon(&[&[-1.0, -1.0], &[1.0, -1.0], &[1.0, 1.0], &[-1.0, 1.0]]).unwrap())
            .unwrap();
        assert_abs_diff_eq!(sq.eval(&v(&[2.0, 1.0])).unwrap(), 2.0, epsilon = 1e-15);
        assert!(sq.is_symmetric());
        let g = skew_triangle();
        assert!(!g.is_symmetric());
        assert_abs_diff_eq!(g.eval(&v(&[2.0, 0.0])).unwrap(), 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(g.eval(&v(&[-2.0, 0.0])).unwrap(), 4.0, epsilon = 1e-14);
        assert_eq!(g.eval(&v(&[0.0, 0.0])).unwrap(), 0.0);
    }

    #[test]
    fn dual_examples() {
        assert_abs_diff_eq!(Gauge::euclidean(2).dual_eval(&v(&[0.0, 2.0])).unwrap(), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(hexagon().dual_eval(&v(&[1.0, 0.0])).unwrap(), 1.0, epsilon = 1e-15);
        assert!(hexagon().is_symmetric());
    }

    #[test]
    fn rejects_origin_outside() {
        let t = ConvexBody::polygon(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(Gauge::new(t), Err(Error::OriginNotInterior)));
        let b = ConvexBody::ball(v(&[2.0, 0.0]), 1.0).unwrap();
        assert!(matches!(Gauge::new(b), Err(Error::OriginNotInterior)));
    }

    #[test]
    fn off_center_ball_gauge() {
        let g = Gauge::new(ConvexBody::ball(v(&[0.5, 0.0]), 1.0).unwrap()).unwrap();
        // boundary hits (1.5, 0), (-0.5, 0)
        assert_abs_diff_eq!(g.eval(&v(&[3.0, 0.0])).unwrap(), 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(g.eval(&v(&[-1.0, 0.0])).unwrap(), 2.0, epsilon = 1e-14);
        let s = g.subgradients(&v(&[0.0, 1.0]), 0.0);
        // finite-difference check of the gradient
        let h = 1e-6;
        let x = v(&[0.0, 1.0]);
        for k in 0..2 {
            let mut xp = x.clone();
            xp[k] += h;
            let mut xm = x.clone();
            xm[k] -= h;
            let fd = (g.eval(&xp).unwrap() - g.eval(&xm).unwrap()) / (2.0 * h);
            assert_abs_diff_eq!(s[0][k], fd, epsilon = 1e-8);
        }
    }

    #[test]
    fn subgradients_at_hexagon_vertex() {
        let s = hexagon().subgradients(&v(&[-1.0, 1.0]), 1e-9);
        assert_eq!(s.len(), 2);
        for a in &s {
            assert_abs_diff_eq!(a.dot(&v(&[-1.0, 1.0])), 1.0, epsilon = 1e-12);
        }
    }

    fn arb_vec(d: usize) -> impl Strategy<Value = Vector> {
        prop::collection::vec(-3.0f64..3.0, d).prop_map(Vector::from_vec)
    }

    proptest! {
        #[test]
        fn gauge_is_sublinear(x in arb_vec(2), y in arb_vec(2), t in 0.01f64..10.0) {
            for g in [skew_triangle(), hexagon(), Gauge::euclidean(2)] {
                let gx = g.eval(&x).unwrap();
                let gy = g.eval(&y).unwrap();
                prop_assert!(g.eval(&(&x + &y)).unwrap() <= gx + gy + 1e-12);
                prop_assert!((g.eval(&(&x * t)).unwrap() - t * gx).abs() <= 1e-12 * (1.0 + t * gx));
                if g.is_symmetric() {
                    prop_assert!((g.eval(&-&x).unwrap() - gx).abs() <= 1e-12);
                }
            }
        }

        #[test]
        fn bipolar_identity(x in arb_vec(2)) {
            for g in [skew_triangle(), hexagon()] {
                let polar = g.unit_ball().polar().unwrap();
                let via_polar = polar.support(&x).unwrap();
                prop_assert!((g.eval(&x).unwrap() - via_polar).abs() <= 1e-9 * (1.0 + via_polar));
            }
        }

        #[test]
        fn support_is_sublinear(y1 in arb_vec(2), y2 in arb_vec(2), a in 0.01f64..10.0) {
            let k = ConvexBody::polygon(&[&[0.3, -1.0], &[2.0, 0.5], &[-0.5, 1.5], &[-1.0, 0.0]]).unwrap();
            let h = |y: &Vector| k.support(y).unwrap();
            prop_assert!(h(&(&y1 + &y2)) <= h(&y1) + h(&y2) + 1e-12);
            prop_assert!((h(&(&y1 * a)) - a * h(&y1)).abs() <= 1e-12 * (1.0 + a * h(&y1).abs()));
        }
    }
}

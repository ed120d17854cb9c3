//! Shortest closed Minkowski billiard trajectories.
//!
//! A closed polygon `q_1..q_m` in `K` is a generalized billiard trajectory
//! when it cannot be covered by a smaller positive homothet of `K`, and the
//! shortest one (measured in the gauge) has at most `dim + 1` vertices. Both
//! the length `L(q)` and the covering ratio `lambda(q)` are positively
//! homogeneous and translation invariant, so the search minimizes the ratio
//! `L(q) / lambda(q)` over unconstrained polygons and rescales the winner
//! into `K` afterwards.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::body::ConvexBody;
use crate::error::{check_dim, Error, Result};
use crate::gauge::Gauge;
use crate::homothet::{cover_ratio, min_homothet_cover};
use crate::lp::{LinearProgram, Relation};
use crate::optim::{compass_search, NelderMead};
use crate::Vector;

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// Bounce points, closed cyclically.
    pub points: Vec<Vector>,
    /// Gauge length of the closed polygon.
    pub length: f64,
    /// Covering ratio of the bounce points with respect to the body.
    pub lambda: f64,
    /// False when the local searches behind the winner hit their budget.
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReflectionCertificate {
    /// `momenta[i]` belongs to the edge from `q_i` to `q_{i+1}`.
    pub momenta: Vec<Vec<f64>>,
    /// Size of the normal-cone kick `p_i - p_{i-1}` at each bounce point.
    pub multipliers: Vec<f64>,
    pub max_violation: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    /// Random starts per polygon size.
    pub starts: usize,
    pub seed: u64,
    /// Relative tolerance of the local searches.
    pub tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            starts: 64,
            seed: 0,
            tol: 1e-10,
        }
    }
}

/// Cyclic gauge length of a closed polygon.
pub fn trajectory_length(points: &[Vector], g: &Gauge) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::InvalidParameter("a closed polygon needs two points".into()));
    }
    let m = points.len();
    let mut total = 0.0;
    for i in 0..m {
        let e = &points[(i + 1) % m] - &points[i];
        total += g.eval(&e)?;
    }
    Ok(total)
}

/// True iff no homothet `lambda K + t` with `lambda < 1 - tol` covers the points.
pub fn is_noncoverable(points: &[Vector], k: &ConvexBody, tol: f64) -> Result<bool> {
    Ok(cover_ratio(k, points)? >= 1.0 - tol)
}

struct RatioObjective<'a> {
    k: &'a ConvexBody,
    g: &'a Gauge,
    d: usize,
    m: usize,
    pts: Vec<Vector>,
}

impl RatioObjective<'_> {
    /// Coordinates are `q_2 - q_1, ..., q_m - q_1`.
    fn load(&mut self, x: &[f64]) {
        self.pts[0].fill(0.0);
        for i in 1..self.m {
            self.pts[i].copy_from_slice(&x[(i - 1) * self.d..i * self.d]);
        }
    }

    fn value(&mut self, x: &[f64]) -> f64 {
        self.load(x);
        let mut len = 0.0;
        let mut e = vec![0.0; self.d];
        for i in 0..self.m {
            let a = &self.pts[i];
            let b = &self.pts[(i + 1) % self.m];
            for k in 0..self.d {
                e[k] = b[k] - a[k];
            }
            len += self.g.eval_slice(&e);
        }
        match cover_ratio(self.k, &self.pts) {
            Ok(lambda) if lambda > 1e-12 * len && len > 0.0 => len / lambda,
            _ => f64::INFINITY,
        }
    }
}

/// Random point on the boundary of `k`, seen from its interior point.
fn boundary_point(k: &ConvexBody, rng: &mut impl Rng) -> Vector {
    let c = k.interior_point();
    let d = k.dim();
    loop {
        let dir = Vector::from_fn(d, |_, _| rng.random_range(-1.0..1.0));
        let n = dir.norm();
        if n > 1e-3 && n <= 1.0 {
            let t = k.ray_exit(&c, &dir);
            return &c + dir * t;
        }
    }
}

fn lexicographic(a: &[Vector], b: &[Vector]) -> std::cmp::Ordering {
    for (p, q) in a.iter().zip(b) {
        for (x, y) in p.iter().zip(q.iter()) {
            match x.total_cmp(y) {
                std::cmp::Ordering::Equal => {}
                o => return o,
            }
        }
    }
    a.len().cmp(&b.len())
}

/// Best closed polygon with `2..=dim+1` vertices found by multi-start local
/// search of the length-to-covering-ratio quotient.
pub fn shortest_trajectory(k: &ConvexBody, g: &Gauge, opts: &SolverOptions) -> Result<Trajectory> {
    let d = k.dim();
    check_dim(d, g.dim())?;
    if opts.starts == 0 {
        return Err(Error::InvalidParameter("need at least one start".into()));
    }
    let extent = k.extent();
    let mut best: Option<(f64, Vec<Vector>, bool)> = None;
    for m in 2..=d + 1 {
        for start in 0..opts.starts {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(((m as u64) << 32) | start as u64);
            let q: Vec<Vector> = (0..m).map(|_| boundary_point(k, &mut rng)).collect();
            let x0: Vec<f64> = q[1..].iter().flat_map(|p| (p - &q[0]).iter().copied().collect::<Vec<_>>()).collect();
            let mut obj = RatioObjective {
                k,
                g,
                d,
                m,
                pts: vec![Vector::zeros(d); m],
            };
            let mut f = |x: &[f64]| obj.value(x);
            let (x, value, converged) = local_search(&mut f, &x0, extent, opts.tol);
            if !value.is_finite() {
                continue;
            }
            obj.load(&x);
            let pts = obj.pts.clone();
            let cand = simplify(k, g, normalize(k, &pts)?);
            let better = match &best {
                None => true,
                Some((bv, bp, _)) => {
                    let tie = 1e-9 * bv.abs();
                    value < bv - tie
                        || (value <= bv + tie
                            && cand.len().cmp(&bp.len()).then_with(|| lexicographic(&cand, bp)).is_lt())
                }
            };
            if better {
                best = Some((value, cand, converged));
            }
        }
    }
    let (_, points, converged) =
        best.ok_or_else(|| Error::InvalidParameter("no start produced a finite polygon".into()))?;
    let length = trajectory_length(&points, g)?;
    let lambda = cover_ratio(k, &points)?;
    Ok(Trajectory {
        points,
        length,
        lambda,
        converged,
    })
}

/// Repeated Nelder-Mead followed by a compass polish.
fn local_search(
    f: &mut impl FnMut(&[f64]) -> f64,
    x0: &[f64],
    extent: f64,
    tol: f64,
) -> (Vec<f64>, f64, bool) {
    let mut nm = NelderMead {
        step: 0.25 * extent,
        ftol: tol,
        xtol: tol * extent,
        max_evals: 4000 * x0.len(),
    };
    let mut m = nm.minimize(f, x0);
    let mut converged = m.converged;
    for _ in 0..3 {
        nm.step = 0.05 * extent;
        let again = nm.minimize(f, &m.x);
        let gain = m.value - again.value;
        converged = again.converged;
        m = again;
        if gain <= tol * m.value.abs() {
            break;
        }
    }
    let polished = compass_search(f, &m.x, 1e-3 * extent, tol * extent, 2000 * x0.len());
    if polished.value <= m.value {
        (polished.x, polished.value, converged)
    } else {
        (m.x, m.value, converged)
    }
}

/// Rescale and translate a polygon so that its covering homothet is `K` itself.
fn normalize(k: &ConvexBody, pts: &[Vector]) -> Result<Vec<Vector>> {
    let fit = min_homothet_cover(k, pts)?;
    let t = fit.translation();
    Ok(pts.iter().map(|p| (p - &t) / fit.lambda).collect())
}

/// Drops bounce points that do not touch the boundary or repeat their
/// neighbor, as long as the polygon stays uncoverable. Removing a point never
/// lengthens the polygon.
fn simplify(k: &ConvexBody, g: &Gauge, mut pts: Vec<Vector>) -> Vec<Vector> {
    let scale = k.extent();
    let mut i = 0;
    while pts.len() > 2 && i < pts.len() {
        let next = &pts[(i + 1) % pts.len()];
        let idle = k.boundary_slack(&pts[i]) > 1e-7 * scale || (&pts[i] - next).norm() <= 1e-9 * scale;
        if idle {
            let mut fewer = pts.clone();
            fewer.remove(i);
            let keeps = cover_ratio(k, &fewer).is_ok_and(|l| l >= 1.0 - 1e-9)
                && matches!(
                    (trajectory_length(&fewer, g), trajectory_length(&pts, g)),
                    (Ok(a), Ok(b)) if a <= b + 1e-12 * b
                );
            if keeps {
                pts = fewer;
                continue;
            }
        }
        i += 1;
    }
    pts
}

/// The Hofer-Zehnder capacity of `K x B°`, i.e. the length of the shortest
/// closed billiard trajectory in `K` for the gauge with unit ball `B`.
pub fn capacity(k: &ConvexBody, g: &Gauge, opts: &SolverOptions) -> Result<f64> {
    Ok(shortest_trajectory(k, g, opts)?.length)
}

/// Outward normal-cone generators of `k` at a boundary point.
fn normal_generators(k: &ConvexBody, q: &Vector, band: f64) -> Vec<Vector> {
    match k {
        ConvexBody::Polytope(p) => p
            .active_facets(q, band)
            .into_iter()
            .map(|j| p.facets()[j].normal.clone())
            .collect(),
        ConvexBody::Ball(b) => vec![(q - b.center()) / b.radius()],
    }
}

/// Checks the Minkowski reflection law at every bounce point.
///
/// Each edge gets a momentum from the subdifferential of the gauge at the
/// edge vector; consecutive momenta must differ by an inward normal of `K`
/// at the bounce point. The smallest L-infinity residual of that system is
/// found by linear programming and reported as the violation.
pub fn verify_reflection(
    points: &[Vector],
    k: &ConvexBody,
    g: &Gauge,
    tol: f64,
) -> Result<ReflectionCertificate> {
    let m = points.len();
    if m < 2 {
        return Err(Error::InvalidParameter("a closed polygon needs two points".into()));
    }
    let d = k.dim();
    check_dim(d, g.dim())?;
    let scale = k.extent().max(1e-300);
    let band = tol.max(1e-7);
    let mut normals = Vec::with_capacity(m);
    for (i, q) in points.iter().enumerate() {
        check_dim(d, q.len())?;
        let off = k.boundary_slack(q).abs();
        if off > tol * scale {
            return Err(Error::OffBoundary { index: i, distance: off });
        }
        let gens = normal_generators(k, q, band * scale);
        if gens.is_empty() {
            return Err(Error::EmptyNormalCone(i));
        }
        normals.push(gens);
    }
    let mut subgrads = Vec::with_capacity(m);
    for i in 0..m {
        let e = &points[(i + 1) % m] - &points[i];
        let gens = g.subgradients(&e, band);
        if gens.is_empty() {
            return Err(Error::DegenerateEdge(i));
        }
        subgrads.push(gens);
    }

    // variables: theta per (edge, generator), mu per (point, normal), residual
    let mut theta_at = Vec::with_capacity(m);
    let mut n = 0;
    for s in &subgrads {
        theta_at.push(n);
        n += s.len();
    }
    let mut mu_at = Vec::with_capacity(m);
    for nn in &normals {
        mu_at.push(n);
        n += nn.len();
    }
    let r = n;
    n += 1;
    let mut obj = vec![0.0; n];
    obj[r] = 1.0;
    let mut lp = LinearProgram::minimize(obj);
    for (i, s) in subgrads.iter().enumerate() {
        let entries: Vec<(usize, f64)> = (0..s.len()).map(|a| (theta_at[i] + a, 1.0)).collect();
        lp.add_sparse_row(&entries, Relation::Eq, 1.0);
    }
    for i in 0..m {
        let prev = (i + m - 1) % m;
        for axis in 0..d {
            // p_i - p_prev + sum mu n = residual component
            let mut entries = Vec::new();
            for (a, gen) in subgrads[i].iter().enumerate() {
                entries.push((theta_at[i] + a, gen[axis]));
            }
            for (a, gen) in subgrads[prev].iter().enumerate() {
                entries.push((theta_at[prev] + a, -gen[axis]));
            }
            for (b, nv) in normals[i].iter().enumerate() {
                entries.push((mu_at[i] + b, nv[axis]));
            }
            let mut hi = entries.clone();
            hi.push((r, -1.0));
            lp.add_sparse_row(&hi, Relation::Le, 0.0);
            let mut lo = entries;
            lo.push((r, 1.0));
            lp.add_sparse_row(&lo, Relation::Ge, 0.0);
        }
    }
    let sol = lp.solve()?;
    let momenta: Vec<Vector> = (0..m)
        .map(|i| {
            let mut p = Vector::zeros(d);
            for (a, gen) in subgrads[i].iter().enumerate() {
                p += gen * sol.x[theta_at[i] + a];
            }
            p
        })
        .collect();
    let multipliers = (0..m)
        .map(|i| {
            let mut kick = Vector::zeros(d);
            for (b, nv) in normals[i].iter().enumerate() {
                kick += nv * sol.x[mu_at[i] + b];
            }
            kick.norm()
        })
        .collect();
    Ok(ReflectionCertificate {
        momenta: momenta.iter().map(|p| p.iter().copied().collect()).collect(),
        multipliers,
        max_violation: sol.x[r].max(0.0),
    })
}

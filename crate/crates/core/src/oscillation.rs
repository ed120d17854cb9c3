//! Oscillation of polynomial fields over convex bodies, steepest-ascent flows
//! in a gauge, and covering of embedded graphs by homothets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::billiards::{capacity, SolverOptions};
use crate::body::ConvexBody;
use crate::error::{check_dim, check_finite, Error, Result};
use crate::gauge::Gauge;
use crate::homothet::min_homothet_cover;
use crate::optim::{compass_search, golden_section};
use crate::Vector;

/// A multivariate polynomial; gradients are exact.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    dim: usize,
    terms: Vec<(Vec<u32>, f64)>,
}

impl Polynomial {
    pub fn new(dim: usize, terms: Vec<(Vec<u32>, f64)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("polynomial in zero variables".into()));
        }
        for (e, c) in &terms {
            check_dim(dim, e.len())?;
            check_finite(&[*c], "polynomial coefficient")?;
        }
        Ok(Self { dim, terms })
    }

    /// `<a, x> + c`.
    pub fn linear(a: &[f64], c: f64) -> Self {
        let d = a.len();
        let mut terms = vec![(vec![0; d], c)];
        for (i, &ai) in a.iter().enumerate() {
            let mut e = vec![0; d];
            e[i] = 1;
            terms.push((e, ai));
        }
        Self { dim: d, terms }
    }

    /// `|x|^2 / 2`.
    pub fn half_square_norm(dim: usize) -> Self {
        let terms = (0..dim)
            .map(|i| {
                let mut e = vec![0; dim];
                e[i] = 2;
                (e, 0.5)
            })
            .collect();
        Self { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .filter(|(_, c)| *c != 0.0)
            .map(|(e, _)| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> &[(Vec<u32>, f64)] {
        &self.terms
    }

    pub fn eval(&self, x: &Vector) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c * e.iter().zip(x.iter()).map(|(&k, &xi)| xi.powi(k as i32)).product::<f64>())
            .sum()
    }

    pub fn grad(&self, x: &Vector) -> Vector {
        let mut g = Vector::zeros(self.dim);
        for (e, c) in &self.terms {
            for i in 0..self.dim {
                if e[i] == 0 {
                    continue;
                }
                let mut t = c * e[i] as f64;
                for (j, (&k, &xj)) in e.iter().zip(x.iter()).enumerate() {
                    let p = if j == i { k - 1 } else { k };
                    t *= xj.powi(p as i32);
                }
                g[i] += t;
            }
        }
        g
    }

    /// Largest relative mismatch between the gradient and central differences
    /// over the given points.
    pub fn gradient_mismatch(&self, points: &[Vector]) -> f64 {
        let h = 1e-6;
        let mut worst: f64 = 0.0;
        for x in points {
            let g = self.grad(x);
            for i in 0..self.dim {
                let mut xp = x.clone();
                xp[i] += h;
                let mut xm = x.clone();
                xm[i] -= h;
                let fd = (self.eval(&xp) - self.eval(&xm)) / (2.0 * h);
                worst = worst.max((fd - g[i]).abs() / (1.0 + g[i].abs()));
            }
        }
        worst
    }
}

/// JSON form: `{"poly": {"[1,0]": 2.0, ...}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct PolySpec {
    poly: BTreeMap<String, f64>,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut poly = BTreeMap::new();
        for (e, c) in &self.terms {
            let key = serde_json::to_string(e).map_err(serde::ser::Error::custom)?;
            *poly.entry(key).or_insert(0.0) += c;
        }
        PolySpec { poly }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let spec = PolySpec::deserialize(d)?;
        let mut terms = Vec::with_capacity(spec.poly.len());
        let mut dim = None;
        for (k, c) in spec.poly {
            let e: Vec<u32> = serde_json::from_str(&k).map_err(|err| D::Error::custom(format!("monomial key {k}: {err}")))?;
            match dim {
                None => dim = Some(e.len()),
                Some(n) if n != e.len() => return Err(D::Error::custom(format!("monomial key {k} has wrong length"))),
                _ => {}
            }
            terms.push((e, c));
        }
        let dim = dim.ok_or_else(|| D::Error::custom("empty polynomial"))?;
        Polynomial::new(dim, terms).map_err(D::Error::custom)
    }
}

/// Radical-inverse (Halton) points of `k`, rejection-sampled from its box.
pub fn halton_points(k: &ConvexBody, count: usize) -> Vec<Vector> {
    const PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];
    let d = k.dim();
    assert!(d <= PRIMES.len(), "Halton sampling up to dimension 6");
    let (lo, hi) = k.bounding_box();
    let mut out = Vec::with_capacity(count);
    let mut i: u64 = 1;
    let limit = 1000 * count as u64 + 1000;
    while out.len() < count && i < limit {
        let x = Vector::from_fn(d, |a, _| lo[a] + (hi[a] - lo[a]) * radical_inverse(i, PRIMES[a]));
        if k.contains(&x, 0.0) {
            out.push(x);
        }
        i += 1;
    }
    out
}

fn radical_inverse(mut i: u64, base: u32) -> f64 {
    let b = base as u64;
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % b) as f64;
        i /= b;
    }
    r
}

/// Candidate points: Halton samples plus polytope vertices and the center.
fn candidates(k: &ConvexBody, samples: usize) -> Vec<Vector> {
    let mut pts = halton_points(k, samples);
    pts.push(k.interior_point());
    if let Some(p) = k.as_polytope() {
        pts.extend(p.vertices().iter().cloned());
    }
    pts
}

/// Frank-Wolfe ascent of `sign * F` over `k`, with exact line search.
fn frank_wolfe(f: &Polynomial, k: &ConvexBody, x0: &Vector, sign: f64) -> Result<Vector> {
    let mut x = x0.clone();
    for _ in 0..200 {
        let g = f.grad(&x) * sign;
        if g.norm() == 0.0 {
            break;
        }
        let s = k.support_point(&g)?;
        let dir = &s - &x;
        let gap = g.dot(&dir);
        if gap <= 1e-15 * (1.0 + f.eval(&x).abs()) {
            break;
        }
        let mut phi = |t: f64| -sign * f.eval(&(&x + &dir * t));
        let (t, v) = golden_section(&mut phi, 0.0, 1.0, 1e-12);
        let (t, _) = if phi(1.0) <= v { (1.0, phi(1.0)) } else { (t, v) };
        x += dir * t;
    }
    Ok(x)
}

/// `max F - min F` over `k`, from low-discrepancy samples refined by
/// Frank-Wolfe from the best few.
pub fn oscillation(f: &Polynomial, k: &ConvexBody, samples: usize) -> Result<f64> {
    check_dim(k.dim(), f.dim())?;
    let pts = candidates(k, samples);
    let mut vals: Vec<(f64, usize)> = pts.iter().enumerate().map(|(i, x)| (f.eval(x), i)).collect();
    vals.sort_by(|a, b| a.0.total_cmp(&b.0));
    let seeds = 4.min(vals.len());
    let mut hi = vals[vals.len() - 1].0;
    let mut lo = vals[0].0;
    for j in 0..seeds {
        let top = &pts[vals[vals.len() - 1 - j].1];
        hi = hi.max(f.eval(&frank_wolfe(f, k, top, 1.0)?));
        let bottom = &pts[vals[j].1];
        lo = lo.min(f.eval(&frank_wolfe(f, k, bottom, -1.0)?));
    }
    Ok(hi - lo)
}

/// `min_x ||dF(x)||_*` over `k`, from samples refined by a compass search
/// that rejects points outside `k`.
pub fn min_dual_grad(f: &Polynomial, k: &ConvexBody, g: &Gauge, samples: usize) -> Result<f64> {
    check_dim(k.dim(), f.dim())?;
    check_dim(k.dim(), g.dim())?;
    let pts = candidates(k, samples);
    let mut phi = |x: &[f64]| {
        let x = Vector::from_column_slice(x);
        if !k.contains(&x, 0.0) {
            return f64::INFINITY;
        }
        g.dual_eval_slice(f.grad(&x).as_slice())
    };
    let mut vals: Vec<(f64, usize)> = pts.iter().enumerate().map(|(i, x)| (phi(x.as_slice()), i)).collect();
    vals.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best = vals[0].0;
    let step = 0.05 * k.extent();
    for &(_, i) in vals.iter().take(4) {
        let m = compass_search(&mut phi, pts[i].as_slice(), step, 1e-12 * k.extent(), 20_000);
        best = best.min(m.value);
    }
    Ok(best)
}

/// Explicit Euler integration of `x' = y(x)`, where `y(x)` is a unit vector of
/// the gauge with `<dF(x), y> = ||dF(x)||_*`.
pub fn flow_trace(f: &Polynomial, g: &Gauge, x0: &Vector, horizon: f64, dt: f64) -> Result<Vec<Vector>> {
    check_dim(g.dim(), f.dim())?;
    check_dim(g.dim(), x0.len())?;
    if !(dt > 0.0 && horizon >= 0.0 && dt.is_finite() && horizon.is_finite()) {
        return Err(Error::InvalidParameter(format!("horizon {horizon}, dt {dt}")));
    }
    let steps = (horizon / dt).round() as usize;
    let mut trace = Vec::with_capacity(steps + 1);
    let mut x = x0.clone();
    trace.push(x.clone());
    for _ in 0..steps {
        let grad = f.grad(&x);
        if grad.norm() <= 1e-12 {
            return Err(Error::Stall(x.iter().copied().collect()));
        }
        let y = g.steepest_direction(&grad)?;
        x += y * dt;
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("flow state"));
        }
        trace.push(x.clone());
    }
    Ok(trace)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `K` is the unit ball of the gauge; factor 2.
    Ball2x,
    /// The gauge has unit ball `K - K`; factor 1.
    Diff1x,
    /// Factor `xi / 2`, `xi` the shortest billiard trajectory length.
    Billiard,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscillationCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub factor: f64,
    pub ok: bool,
}

/// Options for [`verify_oscillation_bound`].
#[derive(Debug, Clone, Copy)]
pub struct OscillationOptions {
    pub samples: usize,
    /// Relative slack granted to the sampled estimates.
    pub tol: f64,
    /// Billiard length for the `Billiard` variant; computed when absent.
    pub xi: Option<f64>,
    pub solver: SolverOptions,
}

impl Default for OscillationOptions {
    fn default() -> Self {
        Self {
            samples: 2000,
            tol: 1e-9,
            xi: None,
            solver: SolverOptions::default(),
        }
    }
}

/// Compares `max F - min F` on `k` with `factor * min ||dF||_*`.
pub fn verify_oscillation_bound(
    f: &Polynomial,
    k: &ConvexBody,
    variant: Variant,
    g: &Gauge,
    opts: &OscillationOptions,
) -> Result<OscillationCheck> {
    let factor = match variant {
        Variant::Ball2x => {
            if !same_body(k, g.unit_ball()) {
                return Err(Error::Precondition("body must be the unit ball of the gauge".into()));
            }
            2.0
        }
        Variant::Diff1x => {
            if !same_body(g.unit_ball(), &k.difference_body()?) {
                return Err(Error::Precondition("gauge must have unit ball K - K".into()));
            }
            1.0
        }
        Variant::Billiard => {
            let xi = match opts.xi {
                Some(xi) => xi,
                None => capacity(k, g, &opts.solver)?,
            };
            xi / 2.0
        }
    };
    let lhs = oscillation(f, k, opts.samples)?;
    let rhs = factor * min_dual_grad(f, k, g, opts.samples)?;
    let ok = lhs >= rhs - opts.tol * (1.0 + rhs.abs());
    Ok(OscillationCheck { lhs, rhs, factor, ok })
}

/// Compares support functions on a fixed set of directions.
fn same_body(a: &ConvexBody, b: &ConvexBody) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    let d = a.dim();
    let tol = 1e-9 * (1.0 + a.extent());
    let dirs = halton_points(&ConvexBody::unit_ball(d), 256);
    dirs.iter()
        .chain(std::iter::once(&Vector::from_element(d, 1.0)))
        .filter(|u| u.norm() > 1e-3)
        .all(|u| (a.support_unchecked(u.as_slice()) - b.support_unchecked(u.as_slice())).abs() <= tol * u.norm())
}

/// A connected graph with straight edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GraphSpec", into = "GraphSpec")]
pub struct EmbeddedGraph {
    nodes: Vec<Vector>,
    edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GraphSpec {
    nodes: Vec<Vec<f64>>,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphSpec> for EmbeddedGraph {
    type Error = Error;

    fn try_from(s: GraphSpec) -> Result<Self> {
        EmbeddedGraph::new(s.nodes.into_iter().map(Vector::from_vec).collect(), s.edges)
    }
}

impl From<EmbeddedGraph> for GraphSpec {
    fn from(g: EmbeddedGraph) -> Self {
        GraphSpec {
            nodes: g.nodes.iter().map(|v| v.iter().copied().collect()).collect(),
            edges: g.edges,
        }
    }
}

impl EmbeddedGraph {
    pub fn new(nodes: Vec<Vector>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidParameter("graph without nodes".into()));
        }
        let d = nodes[0].len();
        for p in &nodes {
            check_dim(d, p.len())?;
            check_finite(p.as_slice(), "graph node")?;
        }
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a >= nodes.len() || b >= nodes.len() {
                return Err(Error::InvalidParameter(format!("edge {i} references a missing node")));
            }
            if (&nodes[a] - &nodes[b]).norm() == 0.0 {
                return Err(Error::DegenerateEdge(i));
            }
        }
        // union-find connectivity
        let mut parent: Vec<usize> = (0..nodes.len()).collect();
        fn root(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for &(a, b) in &edges {
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            parent[ra] = rb;
        }
        let r0 = root(&mut parent, 0);
        if (0..nodes.len()).any(|i| root(&mut parent, i) != r0) {
            return Err(Error::Disconnected);
        }
        Ok(Self { nodes, edges })
    }

    pub fn nodes(&self) -> &[Vector] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphCoverReport {
    /// Total edge length in the norm with unit ball `K - K`.
    pub h: f64,
    /// Smallest homothet ratio covering the graph.
    pub lambda: f64,
    pub ok: bool,
    /// Ratio and translation of the homothet built by merging edge covers.
    pub merge_lambda: f64,
    pub merge_translation: Vec<f64>,
}

/// Covers a connected graph by a homothet of `K` and compares the ratio with
/// the graph's total `K - K` length.
pub fn graph_cover_check(graph: &EmbeddedGraph, k: &ConvexBody) -> Result<GraphCoverReport> {
    check_dim(k.dim(), graph.nodes[0].len())?;
    let g = Gauge::difference(k)?;
    let mut h = 0.0;
    let mut points: Vec<Vector> = graph.nodes.clone();
    for &(a, b) in &graph.edges {
        let (p, q) = (&graph.nodes[a], &graph.nodes[b]);
        let len = g.eval(&(q - p))?;
        h += len;
        let pieces = (len / 1e-3).ceil() as usize;
        for s in 1..pieces {
            let t = s as f64 / pieces as f64;
            points.push(p + (q - p) * t);
        }
    }
    // a homothet covers the points iff it covers their hull
    let extreme = match crate::hull::convex_hull(&points) {
        Ok(hull) => hull.vertices.iter().map(|&i| points[i].clone()).collect(),
        Err(_) => points,
    };
    let lambda = min_homothet_cover(k, &extreme)?.lambda;
    let (merge_lambda, merge_t) = merge_cover(graph, k)?;
    Ok(GraphCoverReport {
        h,
        lambda,
        ok: lambda <= h + 1e-9 * (1.0 + h),
        merge_lambda,
        merge_translation: merge_t.iter().copied().collect(),
    })
}

/// Homothet built edge by edge: two intersecting homothets `aK + s` and
/// `bK + t` sharing a point `z` lie in `(a + b)K + (s + t - z)`.
pub fn merge_cover(graph: &EmbeddedGraph, k: &ConvexBody) -> Result<(f64, Vector)> {
    let mut reached = vec![false; graph.nodes.len()];
    reached[0] = true;
    let mut used = vec![false; graph.edges.len()];
    // a lone node is covered by 0*K + node
    let mut lambda = 0.0;
    let mut u = graph.nodes[0].clone();
    let mut first = true;
    loop {
        let next = graph
            .edges
            .iter()
            .enumerate()
            .find(|&(i, &(a, b))| !used[i] && (reached[a] || reached[b]));
        let Some((i, &(a, b))) = next else { break };
        used[i] = true;
        let z = if reached[a] { &graph.nodes[a] } else { &graph.nodes[b] };
        let fit = min_homothet_cover(k, &[graph.nodes[a].clone(), graph.nodes[b].clone()])?;
        let t = fit.translation();
        if first {
            lambda = fit.lambda;
            u = t;
            first = false;
        } else {
            u = &u + &t - z;
            lambda += fit.lambda;
        }
        reached[a] = true;
        reached[b] = true;
    }
    Ok((lambda, u))
}

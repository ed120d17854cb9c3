//! Planks, their widths, and exact verification of plank coverings.
//!
//! A family of planks cuts space into cells indexed by sign patterns
//! (below / inside / above for each plank). Every cell meeting `K` is a convex
//! polytope, so the covering multiplicity is minimized by a depth-first walk
//! over patterns in which each partial pattern is tested for a nonempty
//! interior by a Chebyshev-center LP.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::body::{ConvexBody, DEFAULT_BALL_POLYGON};
use crate::error::{check_dim, check_finite, Error, Result};
use crate::gauge::Gauge;
use crate::lp::{LinearProgram, Relation};
use crate::Vector;

/// Planks are closed; points count as uncovered only beyond this margin
/// (relative to the body's extent).
const OPEN_MARGIN: f64 = 1e-9;
/// Largest family verified cell by cell.
pub const EXACT_LIMIT: usize = 12;
/// Largest family accepted at all.
pub const BUDGET_LIMIT: usize = 20;
const GRID_SAMPLES: usize = 10_000;

/// `{x : lo <= <normal, x> <= hi}` with a nonnegative weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PlankSpec", into = "PlankSpec")]
pub struct Plank {
    normal: Vector,
    lo: f64,
    hi: f64,
    weight: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PlankSpec {
    normal: Vec<f64>,
    lo: f64,
    hi: f64,
    #[serde(default = "unit_weight")]
    weight: f64,
}

fn unit_weight() -> f64 {
    1.0
}

impl TryFrom<PlankSpec> for Plank {
    type Error = Error;

    fn try_from(s: PlankSpec) -> Result<Self> {
        Plank::new(Vector::from_vec(s.normal), s.lo, s.hi)?.with_weight(s.weight)
    }
}

impl From<Plank> for PlankSpec {
    fn from(p: Plank) -> Self {
        PlankSpec {
            normal: p.normal.iter().copied().collect(),
            lo: p.lo,
            hi: p.hi,
            weight: p.weight,
        }
    }
}

impl Plank {
    pub fn new(normal: Vector, lo: f64, hi: f64) -> Result<Self> {
        check_finite(normal.as_slice(), "plank normal")?;
        check_finite(&[lo, hi], "plank offsets")?;
        if normal.is_empty() || normal.iter().all(|&x| x == 0.0) {
            return Err(Error::InvalidParameter("zero plank normal".into()));
        }
        if lo > hi {
            return Err(Error::InvalidParameter(format!("plank offsets {lo} > {hi}")));
        }
        Ok(Self {
            normal,
            lo,
            hi,
            weight: 1.0,
        })
    }

    pub fn with_weight(mut self, weight: f64) -> Result<Self> {
        if !(weight.is_finite() && weight >= 0.0) {
            return Err(Error::InvalidParameter(format!("plank weight {weight}")));
        }
        self.weight = weight;
        Ok(self)
    }

    /// Axis-parallel plank `lo <= x_axis <= hi` in R^dim.
    pub fn axis(dim: usize, axis: usize, lo: f64, hi: f64) -> Result<Self> {
        let mut n = Vector::zeros(dim);
        n[axis] = 1.0;
        Self::new(n, lo, hi)
    }

    pub fn normal(&self) -> &Vector {
        &self.normal
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        let s = self.normal.dot(x);
        let n = self.normal.norm();
        s >= self.lo - tol * n && s <= self.hi + tol * n
    }
}

/// Width of the plank in the norm of `g`: `(hi - lo) / ||normal||_*`.
pub fn plank_width(p: &Plank, g: &Gauge) -> Result<f64> {
    check_dim(g.dim(), p.dim())?;
    Ok((p.hi - p.lo) / g.dual_eval(&p.normal)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveringReport {
    pub covered: bool,
    /// Smallest total weight of planks over a point of `K`.
    pub min_multiplicity: f64,
    /// A point of `K` realizing the deficit when not covered.
    pub witness: Option<Vec<f64>>,
    /// Weighted sum of Euclidean widths.
    pub width_sum: f64,
    /// Weighted sum of widths relative to `K` (norm with unit ball `K - K`).
    pub relative_width_sum: f64,
    /// False when the family was too large for cell enumeration and the
    /// multiplicity comes from grid sampling.
    pub exact: bool,
}

/// Polytope used for the LP cells; balls are replaced by an inscribed polytope.
fn cell_body(k: &ConvexBody) -> Result<crate::body::Polytope> {
    k.to_polytope(DEFAULT_BALL_POLYGON)
}

struct Cells<'a> {
    base: Vec<(Vector, f64)>,
    planks: &'a [Plank],
    margin: f64,
    best: f64,
    best_point: Option<Vector>,
    lps: usize,
}

#[derive(Clone, Copy)]
enum Side {
    Below,
    Inside,
    Above,
}

impl Cells<'_> {
    /// Chebyshev center and radius of `K` intersected with the chosen sides.
    fn probe(&mut self, sides: &[Side]) -> Result<Option<(Vector, f64)>> {
        self.lps += 1;
        let d = self.base[0].0.len();
        let mut obj = vec![0.0; d + 1];
        obj[d] = 1.0;
        let mut lp = LinearProgram::maximize(obj);
        lp.set_free_range(0..d + 1);
        let push = |a: &Vector, b: f64, lp: &mut LinearProgram| {
            let mut row: Vec<f64> = a.iter().copied().collect();
            row.push(a.norm());
            lp.add_row(row, Relation::Le, b);
        };
        for (a, b) in &self.base {
            push(a, *b, &mut lp);
        }
        for (p, side) in self.planks.iter().zip(sides) {
            let n = &p.normal;
            let slack = self.margin * n.norm();
            match side {
                Side::Below => push(n, p.lo - slack, &mut lp),
                Side::Above => push(&-n, -(p.hi + slack), &mut lp),
                Side::Inside => {
                    push(n, p.hi, &mut lp);
                    push(&-n, -p.lo, &mut lp);
                }
            }
        }
        let sol = lp.solve()?;
        let r = sol.x[d];
        if r >= 0.0 {
            Ok(Some((Vector::from_column_slice(&sol.x[..d]), r)))
        } else {
            Ok(None)
        }
    }

    fn walk(&mut self, sides: &mut Vec<Side>, weight: f64) -> Result<()> {
        if weight >= self.best {
            return Ok(());
        }
        let Some((center, _)) = self.probe(sides)? else {
            return Ok(());
        };
        let i = sides.len();
        if i == self.planks.len() {
            self.best = weight;
            self.best_point = Some(center);
            return Ok(());
        }
        for side in [Side::Below, Side::Above, Side::Inside] {
            let w = match side {
                Side::Inside => weight + self.planks[i].weight,
                _ => weight,
            };
            sides.push(side);
            self.walk(sides, w)?;
            sides.pop();
        }
        Ok(())
    }
}

fn width_sums(k: &ConvexBody, planks: &[Plank]) -> Result<(f64, f64)> {
    let euclid = Gauge::euclidean(k.dim());
    let rel = Gauge::difference(k)?;
    let mut ws = 0.0;
    let mut rs = 0.0;
    for p in planks {
        ws += p.weight * plank_width(p, &euclid)?;
        rs += p.weight * plank_width(p, &rel)?;
    }
    Ok((ws, rs))
}

/// Minimum weighted multiplicity of the planks over `K`, and whether it
/// reaches `threshold`.
pub fn covering_check(k: &ConvexBody, planks: &[Plank], threshold: f64) -> Result<CoveringReport> {
    if planks.len() > BUDGET_LIMIT {
        return Err(Error::BudgetExceeded(planks.len()));
    }
    for p in planks {
        check_dim(k.dim(), p.dim())?;
    }
    let (width_sum, relative_width_sum) = width_sums(k, planks)?;
    let poly = cell_body(k)?;
    let margin = OPEN_MARGIN * k.extent();
    let (min_mult, point, exact) = if planks.len() <= EXACT_LIMIT {
        let mut cells = Cells {
            base: poly
                .facets()
                .iter()
                .map(|f| (f.normal.clone(), f.offset))
                .collect(),
            planks,
            margin,
            best: f64::INFINITY,
            best_point: None,
            lps: 0,
        };
        cells.walk(&mut Vec::with_capacity(planks.len()), 0.0)?;
        log::debug!("cell enumeration used {} LPs", cells.lps);
        match cells.best_point {
            Some(x) => (cells.best, x, true),
            None => return Err(Error::EmptyInterior),
        }
    } else {
        log::warn!(
            "{} planks exceed exact enumeration limit {}; sampling a grid",
            planks.len(),
            EXACT_LIMIT
        );
        let (m, x) = grid_min_multiplicity(k, planks, GRID_SAMPLES);
        (m, x, false)
    };
    let covered = min_mult >= threshold - 1e-12;
    Ok(CoveringReport {
        covered,
        min_multiplicity: min_mult,
        witness: (!covered).then(|| point.iter().copied().collect()),
        width_sum,
        relative_width_sum,
        exact,
    })
}

/// Multiplicity of the planks at `x` (closed planks, tolerance `tol`).
pub fn multiplicity(planks: &[Plank], x: &Vector, tol: f64) -> f64 {
    planks
        .iter()
        .filter(|p| p.contains(x, tol))
        .map(|p| p.weight)
        .sum()
}

/// Smallest multiplicity over a regular grid of roughly `samples` points of `K`.
pub fn grid_min_multiplicity(k: &ConvexBody, planks: &[Plank], samples: usize) -> (f64, Vector) {
    let (lo, hi) = k.bounding_box();
    let d = k.dim();
    let per_axis = (samples as f64).powf(1.0 / d as f64).ceil().max(2.0) as usize;
    let mut best = f64::INFINITY;
    let mut best_x = k.interior_point();
    let mut idx = vec![0usize; d];
    loop {
        let x = Vector::from_fn(d, |i, _| {
            lo[i] + (hi[i] - lo[i]) * (idx[i] as f64 + 0.5) / per_axis as f64
        });
        if k.contains(&x, 0.0) {
            let m = multiplicity(planks, &x, 0.0);
            if m < best {
                best = m;
                best_x = x;
            }
        }
        let mut i = 0;
        loop {
            if i == d {
                return (best, best_x);
            }
            idx[i] += 1;
            if idx[i] < per_axis {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BangReport {
    #[serde(flatten)]
    pub report: CoveringReport,
    /// Set when a verified covering has relative width sum below one.
    pub alarm: bool,
}

/// Plain covering check with unit weights, reporting relative widths and
/// flagging any covering whose relative widths sum to less than one.
pub fn bang_report(k: &ConvexBody, planks: &[Plank]) -> Result<BangReport> {
    let unit: Vec<Plank> = planks
        .iter()
        .map(|p| Plank {
            weight: 1.0,
            ..p.clone()
        })
        .collect();
    let report = covering_check(k, &unit, 1.0)?;
    let alarm = report.covered && report.relative_width_sum < 1.0 - 1e-9;
    if alarm {
        log::error!(
            "covering with relative width sum {} < 1",
            report.relative_width_sum
        );
    }
    Ok(BangReport { report, alarm })
}

/// Checks that for every `j` the dual norm of `sum c_i n_i` with `c >= 0`,
/// `c_j = 1` never drops below one (up to `tol`).
///
/// The convex minimization is done by projected subgradient descent, 256
/// iterations from 8 starts per `j`.
pub fn almost_parallel_check(normals: &[Vector], g: &Gauge, tol: f64) -> Result<bool> {
    Ok(almost_parallel_minima(normals, g, tol)?
        .iter()
        .all(|&m| m >= 1.0 - tol))
}

/// The minima behind [`almost_parallel_check`], one per normal.
pub fn almost_parallel_minima(normals: &[Vector], g: &Gauge, tol: f64) -> Result<Vec<f64>> {
    const ITERS: usize = 256;
    const STARTS: usize = 8;
    for (i, n) in normals.iter().enumerate() {
        check_dim(g.dim(), n.len())?;
        let norm = g.dual_eval(n)?;
        if (norm - 1.0).abs() > tol {
            return Err(Error::NotNormalized { index: i, norm });
        }
    }
    let k = normals.len();
    let d = g.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut minima = Vec::with_capacity(k);
    let combo = |c: &[f64]| {
        let mut y = Vector::zeros(d);
        for (ci, n) in c.iter().zip(normals) {
            y += n * *ci;
        }
        y
    };
    for j in 0..k {
        let mut best = 1.0f64;
        for start in 0..STARTS {
            let mut c: Vec<f64> = (0..k)
                .map(|i| {
                    if i == j {
                        1.0
                    } else if start == 0 {
                        0.0
                    } else {
                        rng.random_range(0.0..2.0)
                    }
                })
                .collect();
            for it in 0..ITERS {
                let y = combo(&c);
                let val = g.dual_eval_slice(y.as_slice());
                best = best.min(val);
                if val <= 0.0 {
                    break;
                }
                let x = g.unit_ball().support_point(&y)?;
                let grad: Vec<f64> = normals.iter().map(|n| n.dot(&x)).collect();
                let gn = grad
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(_, v)| v * v)
                    .sum::<f64>()
                    .sqrt();
                if gn == 0.0 {
                    break;
                }
                // Polyak-type step toward zero, damped over time
                let step = val / (gn * gn) / (1.0 + it as f64).sqrt();
                for i in 0..k {
                    if i != j {
                        c[i] = (c[i] - step * grad[i]).max(0.0);
                    }
                }
            }
            let val = g.dual_eval_slice(combo(&c).as_slice());
            best = best.min(val);
        }
        minima.push(best);
    }
    Ok(minima)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoDirectionsReport {
    /// Smallest relative width sum over the verified coverings found.
    pub min_width_sum: f64,
    pub coverings_found: usize,
    /// Set when a verified covering beats one by more than 1e-6.
    pub alarm: bool,
}

/// Randomized search for coverings of a planar body inscribed in the unit
/// square by horizontal and vertical planks of small total width.
///
/// Each trial tiles the x-range with a few vertical strips whose cut points
/// come from vertex projections plus jitter, drops some of them, covers what
/// the dropped strips exposed with horizontal strips, and then shrinks every
/// strip as far as coverage allows. Survivors are re-verified with
/// [`covering_check`].
pub fn two_directions_probe(k: &ConvexBody, trials: usize, seed: u64) -> Result<TwoDirectionsReport> {
    if k.dim() != 2 {
        return Err(Error::NotInscribed(format!("body has dimension {}", k.dim())));
    }
    let (lo, hi) = k.bounding_box();
    let off = (lo[0].abs()).max(lo[1].abs()).max((hi[0] - 1.0).abs()).max((hi[1] - 1.0).abs());
    if off > 1e-6 {
        return Err(Error::NotInscribed(format!(
            "bounding box [{}, {}] x [{}, {}]",
            lo[0], hi[0], lo[1], hi[1]
        )));
    }
    let poly = cell_body(k)?;
    let verts: Vec<[f64; 2]> = poly.vertices().iter().map(|v| [v[0], v[1]]).collect();
    let rel = Gauge::difference(k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::INFINITY;
    let mut found = 0;
    for _ in 0..trials {
        let Some((xs, ys)) = random_axis_cover(&verts, &mut rng) else {
            continue;
        };
        let (xs, ys) = shrink_axis_cover(&verts, xs, ys);
        let mut planks = Vec::with_capacity(xs.len() + ys.len());
        for &(a, b) in &xs {
            planks.push(Plank::axis(2, 0, a, b)?);
        }
        for &(a, b) in &ys {
            planks.push(Plank::axis(2, 1, a, b)?);
        }
        if !covering_check(k, &planks, 1.0)?.covered {
            continue;
        }
        found += 1;
        let mut sum = 0.0;
        for p in &planks {
            sum += plank_width(p, &rel)?;
        }
        best = best.min(sum);
    }
    Ok(TwoDirectionsReport {
        min_width_sum: best,
        coverings_found: found,
        alarm: best < 1.0 - 1e-6,
    })
}

type Intervals = Vec<(f64, f64)>;

/// Range of the `axis` coordinate over the part of a convex polygon where the
/// other coordinate lies in `[a, b]`.
fn slab_range(verts: &[[f64; 2]], axis: usize, a: f64, b: f64) -> Option<(f64, f64)> {
    let other = 1 - axis;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let n = verts.len();
    for i in 0..n {
        let p = verts[i];
        let q = verts[(i + 1) % n];
        if p[other] >= a && p[other] <= b {
            lo = lo.min(p[axis]);
            hi = hi.max(p[axis]);
        }
        for cut in [a, b] {
            let (u, v) = (p[other] - cut, q[other] - cut);
            if (u < 0.0 && v > 0.0) || (u > 0.0 && v < 0.0) {
                let t = u / (u - v);
                let y = p[axis] + t * (q[axis] - p[axis]);
                lo = lo.min(y);
                hi = hi.max(y);
            }
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// Open gaps of `[lo, hi]` not covered by the intervals.
fn gaps(intervals: &[(f64, f64)], lo: f64, hi: f64) -> Intervals {
    let mut iv = intervals.to_vec();
    iv.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out = Vec::new();
    let mut cur = lo;
    for (a, b) in iv {
        if a > cur {
            out.push((cur, a.min(hi)));
        }
        cur = cur.max(b);
        if cur >= hi {
            break;
        }
    }
    if cur < hi {
        out.push((cur, hi));
    }
    out.retain(|(a, b)| b > a);
    out
}

/// Whether vertical strips `xs` and horizontal strips `ys` leave part of the
/// polygon uncovered (beyond a tiny margin).
fn axis_uncovered(verts: &[[f64; 2]], xs: &[(f64, f64)], ys: &[(f64, f64)]) -> bool {
    let eps = 1e-12;
    let (x0, x1) = slab_range(verts, 0, f64::NEG_INFINITY, f64::INFINITY).expect("nonempty polygon");
    for (a, b) in gaps(xs, x0, x1) {
        if b - a <= 2.0 * eps {
            continue;
        }
        let Some((y0, y1)) = slab_range(verts, 1, a + eps, b - eps) else {
            continue;
        };
        if gaps(ys, y0, y1).iter().any(|(c, d)| d - c > 2.0 * eps) {
            return true;
        }
    }
    false
}

fn random_axis_cover(verts: &[[f64; 2]], rng: &mut impl Rng) -> Option<(Intervals, Intervals)> {
    let k1 = rng.random_range(1..=4usize);
    let pick = |rng: &mut dyn rand::RngCore, axis: usize| -> f64 {
        let v = verts[rng.random_range(0..verts.len())][axis];
        (v + rng.random_range(-0.05..0.05)).clamp(0.0, 1.0)
    };
    let mut cuts: Vec<f64> = (0..k1.saturating_sub(1)).map(|_| pick(rng, 0)).collect();
    cuts.push(0.0);
    cuts.push(1.0);
    cuts.sort_by(f64::total_cmp);
    let mut xs: Intervals = cuts.windows(2).map(|w| (w[0], w[1])).collect();
    // drop a random subset of the vertical strips
    let mut dropped = Vec::new();
    xs.retain(|iv| {
        let keep = rng.random_bool(0.5);
        if !keep {
            dropped.push(*iv);
        }
        keep
    });
    let mut need: Option<(f64, f64)> = None;
    for &(a, b) in &dropped {
        if let Some((y0, y1)) = slab_range(verts, 1, a, b) {
            need = Some(match need {
                None => (y0, y1),
                Some((c, d)) => (c.min(y0), d.max(y1)),
            });
        }
    }
    let mut ys = Intervals::new();
    if let Some((c, d)) = need {
        let k2 = rng.random_range(1..=4usize);
        let mut cuts: Vec<f64> = (0..k2 - 1).map(|_| pick(rng, 1).clamp(c, d)).collect();
        cuts.push(c);
        cuts.push(d);
        cuts.sort_by(f64::total_cmp);
        ys = cuts.windows(2).map(|w| (w[0], w[1])).collect();
    }
    if xs.is_empty() && ys.is_empty() {
        return None;
    }
    Some((xs, ys))
}

/// Greedily removes strips and pulls strip ends inward while the polygon
/// stays covered.
fn shrink_axis_cover(verts: &[[f64; 2]], mut xs: Intervals, mut ys: Intervals) -> (Intervals, Intervals) {
    let covered = |xs: &Intervals, ys: &Intervals| !axis_uncovered(verts, xs, ys);
    if !covered(&xs, &ys) {
        return (xs, ys);
    }
    for vertical in [true, false] {
        let mut i = 0;
        loop {
            let len = if vertical { xs.len() } else { ys.len() };
            if i >= len {
                break;
            }
            let (mut tx, mut ty) = (xs.clone(), ys.clone());
            if vertical {
                tx.remove(i);
            } else {
                ty.remove(i);
            }
            if covered(&tx, &ty) {
                xs = tx;
                ys = ty;
            } else {
                i += 1;
            }
        }
    }
    for vertical in [true, false] {
        let len = if vertical { xs.len() } else { ys.len() };
        for i in 0..len {
            for end in [0, 1] {
                let (a, b) = if vertical { xs[i] } else { ys[i] };
                // bisection on how far this end can move toward the other
                let (mut ok, mut bad) = (0.0, 1.0);
                for _ in 0..40 {
                    let t = 0.5 * (ok + bad);
                    let iv = if end == 0 { (a + t * (b - a), b) } else { (a, b - t * (b - a)) };
                    let (mut tx, mut ty) = (xs.clone(), ys.clone());
                    if vertical {
                        tx[i] = iv;
                    } else {
                        ty[i] = iv;
                    }
                    if covered(&tx, &ty) {
                        ok = t;
                    } else {
                        bad = t;
                    }
                }
                let iv = if end == 0 { (a + ok * (b - a), b) } else { (a, b - ok * (b - a)) };
                if vertical {
                    xs[i] = iv;
                } else {
                    ys[i] = iv;
                }
            }
        }
    }
    (xs, ys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector as v;
    use approx::assert_abs_diff_eq;

    fn unit_square() -> ConvexBody {
        ConvexBody::polygon(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]]).unwrap()
    }

    fn triangle() -> ConvexBody {
        ConvexBody::polygon(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]).unwrap()
    }

    #[test]
    fn width_examples() {
        let hex = Gauge::difference(&triangle()).unwrap();
        let e = Gauge::euclidean(2);
        assert_abs_diff_eq!(plank_width(&Plank::axis(2, 0, 0.0, 0.5).unwrap(), &hex).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(plank_width(&Plank::axis(2, 0, 0.0, 1.0).unwrap(), &e).unwrap(), 1.0, epsilon = 1e-15);
        let diag = Plank::new(v(&[1.0, 1.0]), 0.0, 1.0).unwrap();
        assert_abs_diff_eq!(plank_width(&diag, &e).unwrap(), 0.5f64.sqrt(), epsilon = 1e-15);
        assert!(Plank::new(v(&[0.0, 0.0]), 0.0, 1.0).is_err());
        assert!(Plank::new(v(&[1.0, 0.0]), 1.0, 0.0).is_err());
    }

    #[test]
    fn covering_examples() {
        let sq = unit_square();
        let r = covering_check(&sq, &[Plank::axis(2, 0, 0.0, 0.6).unwrap(), Plank::axis(2, 0, 0.5, 1.0).unwrap()], 1.0)
            .unwrap();
        assert!(r.covered);
        assert_eq!(r.min_multiplicity, 1.0);
        assert!(r.exact);

        let r = covering_check(&sq, &[Plank::axis(2, 0, 0.0, 0.9).unwrap()], 1.0).unwrap();
        assert!(!r.covered);
        let w = r.witness.unwrap();
        assert!(w[0] > 0.9);
        assert!(sq.contains(&Vector::from_vec(w), 1e-12));

        let r = covering_check(
            &sq,
            &[
                Plank::axis(2, 0, 0.0, 0.7).unwrap(),
                Plank::axis(2, 0, 0.3, 1.0).unwrap(),
                Plank::axis(2, 1, 0.0, 1.0).unwrap(),
            ],
            2.0,
        )
        .unwrap();
        assert_eq!(r.min_multiplicity, 2.0);
        assert!(r.covered);
    }

    #[test]
    fn touching_planks_cover() {
        let sq = unit_square();
        let r = covering_check(&sq, &[Plank::axis(2, 0, 0.0, 0.5).unwrap(), Plank::axis(2, 0, 0.5, 1.0).unwrap()], 1.0)
            .unwrap();
        assert!(r.covered);
        assert_abs_diff_eq!(r.relative_width_sum, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn bang_examples() {
        let sq = unit_square();
        let b = bang_report(&sq, &[Plank::axis(2, 0, 0.0, 0.5).unwrap(), Plank::axis(2, 0, 0.5, 1.0).unwrap()]).unwrap();
        assert!(b.report.covered && !b.alarm);
        assert_eq!(b.report.relative_width_sum, 1.0);
        let t = triangle();
        let b = bang_report(&t, &[Plank::axis(2, 0, 0.0, 0.5).unwrap(), Plank::axis(2, 0, 0.5, 1.0).unwrap()]).unwrap();
        assert!(b.report.covered && !b.alarm);
        assert_abs_diff_eq!(b.report.relative_width_sum, 1.0, epsilon = 1e-15);
        let b = bang_report(&sq, &[Plank::axis(2, 0, 0.0, 0.45).unwrap(), Plank::axis(2, 0, 0.55, 1.0).unwrap()]).unwrap();
        assert!(!b.report.covered);
        let w = b.report.witness.unwrap();
        assert!(w[0] > 0.45 && w[0] < 0.55);
    }

    #[test]
    fn weights_scale_multiplicity() {
        let sq = unit_square();
        let planks = [Plank::axis(2, 0, 0.0, 0.7).unwrap(), Plank::axis(2, 1, 0.2, 1.0).unwrap()];
        let base = covering_check(&sq, &planks, 1.0).unwrap().min_multiplicity;
        let scaled: Vec<Plank> = planks.iter().map(|p| p.clone().with_weight(2.5).unwrap()).collect();
        assert_abs_diff_eq!(covering_check(&sq, &scaled, 1.0).unwrap().min_multiplicity, 2.5 * base, epsilon = 1e-12);
    }

    #[test]
    fn budget_and_grid_fallback() {
        let sq = unit_square();
        let many: Vec<Plank> = (0..21).map(|i| Plank::axis(2, 0, i as f64 / 21.0, (i + 1) as f64 / 21.0).unwrap()).collect();
        assert!(matches!(covering_check(&sq, &many, 1.0), Err(Error::BudgetExceeded(21))));
        let r = covering_check(&sq, &many[..14], 1.0).unwrap();
        assert!(!r.exact);
        assert!(!r.covered);
    }

    #[test]
    fn almost_parallel_examples() {
        let e = Gauge::euclidean(2);
        assert!(almost_parallel_check(&[v(&[1.0, 0.0]), v(&[0.0, 1.0])], &e, 1e-9).unwrap());
        assert!(!almost_parallel_check(&[v(&[1.0, 0.0]), v(&[-1.0, 0.0])], &e, 1e-9).unwrap());
        assert!(almost_parallel_check(&[v(&[1.0, 0.0])], &e, 1e-9).unwrap());
        assert!(matches!(
            almost_parallel_check(&[v(&[2.0, 0.0])], &e, 1e-9),
            Err(Error::NotNormalized { index: 0, .. })
        ));
    }

    #[test]
    fn two_directions_on_square() {
        let r = two_directions_probe(&unit_square(), 200, 1).unwrap();
        assert!(r.coverings_found > 0);
        assert_abs_diff_eq!(r.min_width_sum, 1.0, epsilon = 1e-6);
        assert!(!r.alarm);
        assert!(matches!(two_directions_probe(&triangle().scale(2.0), 10, 1), Err(Error::NotInscribed(_))));
    }

    #[test]
    fn json_planks() {
        let p: Vec<Plank> = serde_json::from_str(r#"[{"normal":[1,0],"lo":0,"hi":0.5},{"normal":[0,1],"lo":0,"hi":1,"weight":2}]"#)
            .unwrap();
        assert_eq!(p[0].weight(), 1.0);
        assert_eq!(p[1].weight(), 2.0);
        assert!(serde_json::from_str::<Vec<Plank>>(r#"[{"normal":[0,0],"lo":0,"hi":1}]"#).is_err());
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<Vec<Plank>>(&text).unwrap(), p);
    }
}

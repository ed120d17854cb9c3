//! The acceptance criteria, one function each.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::time::Instant;

use plankcap::ballcut::{
    cap_action, orbit_action, principal_action, tau0_grid, verify_cut_additivity, verify_key_inequalities,
    BallCutParams,
};
use plankcap::billiards::{shortest_trajectory, verify_reflection, SolverOptions};
use plankcap::fractional::{
    cylinder_bound, fractional_bang_bound, mahler_product, rho_density, sum_norm_lower, w_constant,
};
use plankcap::oscillation::{
    graph_cover_check, verify_oscillation_bound, EmbeddedGraph, OscillationOptions, Polynomial, Variant,
};
use plankcap::planks::{almost_parallel_check, bang_report, covering_check, Plank};
use plankcap::{vector as v, ConvexBody, Gauge, Result, Vector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::oracles;
use crate::random;

/// Seed and tolerance overrides for a suite run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Overrides by name; see [`TOLERANCES`].
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
}

/// Tolerance names and defaults.
pub const TOLERANCES: &[(&str, f64)] = &[
    ("billiard", 1e-3),
    ("simplex", 1e-2),
    ("lower_bound", 1e-2),
    ("bang", 1e-6),
    ("oscillation", 1e-9),
    ("graph", 1e-9),
    ("constants", 1e-12),
    ("quadrature", 1e-10),
    ("pushforward", 0.03),
    ("additivity", 1e-9),
    ("minimality", 1e-12),
    ("integrator", 1e-6),
];

impl SuiteConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            tolerances: BTreeMap::new(),
        }
    }

    pub fn tol(&self, name: &str) -> f64 {
        if let Some(&t) = self.tolerances.get(name) {
            return t;
        }
        TOLERANCES
            .iter()
            .find(|(n, _)| *n == name)
            .map(|&(_, t)| t)
            .unwrap_or_else(|| panic!("unknown tolerance {name}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Wall-clock time; left out of serialized reports so they stay
    /// reproducible.
    #[serde(skip)]
    pub seconds: f64,
}

pub const CRITERIA: &[(u32, &str)] = &[
    (1, "triangle relative billiard"),
    (2, "equilateral triangle euclidean billiard"),
    (3, "symmetric self-gauge lower bound"),
    (4, "simplex and difference-body lower bound"),
    (5, "non-symmetric self-gauge lower bound"),
    (6, "bang probe on random coverings"),
    (7, "almost-parallel checker"),
    (8, "oscillation inequalities"),
    (9, "graph covering lemma"),
    (10, "constants"),
    (11, "fractional bang bound"),
    (12, "ball cut"),
    (13, "volume product probe"),
    (14, "suite runtime and determinism"),
];

type Check = (bool, String);

/// Runs a single criterion. Criterion 14 needs the others' outcomes and is
/// produced by [`run_all`].
pub fn run_criterion(id: u32, cfg: &SuiteConfig) -> Outcome {
    let name = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, n)| n.to_string())
        .unwrap_or_else(|| format!("unknown criterion {id}"));
    let start = Instant::now();
    let res: Result<Check> = match id {
        1 => triangle_billiard(cfg),
        2 => equilateral_billiard(cfg),
        3 => symmetric_self_gauge(cfg),
        4 => simplex_and_difference(cfg),
        5 => nonsymmetric_self_gauge(cfg),
        6 => bang_probe(cfg),
        7 => almost_parallel(cfg),
        8 => oscillation_suite(cfg),
        9 => graph_lemma(cfg),
        10 => constants(cfg),
        11 => fractional_bound(cfg),
        12 => ball_cut(cfg),
        13 => volume_product(cfg),
        _ => Ok((false, "no such criterion".into())),
    };
    let (passed, detail) = res.unwrap_or_else(|e| (false, format!("error: {e}")));
    Outcome {
        id,
        name,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Budget for the whole suite.
pub const SUITE_SECONDS: f64 = 300.0;

/// Runs criteria 1 to 13, then criterion 14: a second run with the same seed
/// reproduces every detail line, and both runs fit in the time budget.
pub fn run_all(cfg: &SuiteConfig, mut progress: impl FnMut(&Outcome)) -> Vec<Outcome> {
    let start = Instant::now();
    let mut out = Vec::new();
    for &(id, _) in &CRITERIA[..13] {
        let o = run_criterion(id, cfg);
        progress(&o);
        out.push(o);
    }
    let first = start.elapsed().as_secs_f64();
    let mut mismatched = Vec::new();
    for &(id, _) in &CRITERIA[..13] {
        let again = run_criterion(id, cfg);
        let before = out.iter().find(|o| o.id == id).expect("ran above");
        if again.detail != before.detail || again.passed != before.passed {
            mismatched.push(id);
        }
    }
    let total = start.elapsed().as_secs_f64();
    let passed = total < SUITE_SECONDS && mismatched.is_empty();
    log::info!("criteria 1-13 in {first:.1} s, with a full repeat {total:.1} s");
    // timings stay out of the detail so that reports are reproducible
    let detail = format!(
        "second run differs on criteria {mismatched:?}; {} the {SUITE_SECONDS} s budget",
        if total < SUITE_SECONDS { "within" } else { "over" }
    );
    let o = Outcome {
        id: 14,
        name: CRITERIA[13].1.to_string(),
        passed,
        detail,
        seconds: total,
    };
    progress(&o);
    out.push(o);
    out
}

fn triangle() -> ConvexBody {
    ConvexBody::polygon(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]).expect("triangle")
}

fn solver(cfg: &SuiteConfig, starts: usize) -> SolverOptions {
    SolverOptions {
        starts,
        seed: cfg.seed,
        ..Default::default()
    }
}

fn triangle_billiard(cfg: &SuiteConfig) -> Result<Check> {
    let tol = cfg.tol("billiard");
    let t = triangle();
    let g = Gauge::difference(&t)?;
    let start = Instant::now();
    let traj = shortest_trajectory(&t, &g, &solver(cfg, 64))?;
    let secs = start.elapsed().as_secs_f64();
    let cert = verify_reflection(&traj.points, &t, &g, 1e-4)?;
    let ok = (traj.length - 1.5).abs() <= tol && secs < 10.0 && cert.max_violation <= 1e-4;
    Ok((
        ok,
        format!(
            "length {:.9} (target 1.5 +- {tol:e}), {} bounces, reflection violation {:.1e}, under 10 s: {}",
            traj.length,
            traj.points.len(),
            cert.max_violation,
            secs < 10.0
        ),
    ))
}

fn equilateral_billiard(cfg: &SuiteConfig) -> Result<Check> {
    let tol = cfg.tol("billiard");
    let side = 2.0 / 3f64.sqrt();
    let k = ConvexBody::polygon(&[&[0.0, 0.0], &[side, 0.0], &[side / 2.0, 1.0]])?;
    let g = Gauge::euclidean(2);
    let traj = shortest_trajectory(&k, &g, &solver(cfg, 64))?;
    let target = 3f64.sqrt();
    Ok((
        (traj.length - target).abs() <= tol,
        format!("length {:.9} (target sqrt 3 = {target:.9} +- {tol:e})", traj.length),
    ))
}

fn symmetric_self_gauge(cfg: &SuiteConfig) -> Result<Check> {
    let tol = cfg.tol("billiard");
    let lb = cfg.tol("lower_bound");
    let disk = ConvexBody::unit_ball(2);
    let len = shortest_trajectory(&disk, &Gauge::euclidean(2), &solver(cfg, 64))?.length;
    let mut ok = (len - 4.0).abs() <= tol;
    let mut detail = format!("disk {len:.9} (target 4 +- {tol:e}); random instances:");
    let mut rng = random::rng_for(cfg.seed, 3);
    let mut worst = f64::INFINITY;
    for i in 0..20 {
        let (dim, b) = if i < 14 {
            let n = rng.random_range(2..=5);
            (2, random::symmetric_polytope(&mut rng, 2, n))
        } else {
            let n = rng.random_range(3..=5);
            (3, random::symmetric_polytope(&mut rng, 3, n))
        };
        let starts = if dim == 2 { 16 } else { 6 };
        let g = Gauge::new(b.clone())?;
        let l = shortest_trajectory(&b, &g, &solver(cfg, starts))?.length;
        worst = worst.min(l);
        if l < 4.0 - lb {
            ok = false;
            let _ = write!(detail, " [#{i} dim {dim}: {l:.6}]");
        }
    }
    let _ = write!(detail, " 20 bodies, min {worst:.6} (bound 4 - {lb:e})");
    Ok((ok, detail))
}

fn simplex_and_difference(cfg: &SuiteConfig) -> Result<Check> {
    let tol = cfg.tol("simplex");
    let lb = cfg.tol("lower_bound");
    let simplex = ConvexBody::from_vertices(&[
        v(&[0.0, 0.0, 0.0]),
        v(&[1.0, 0.0, 0.0]),
        v(&[0.0, 1.0, 0.0]),
        v(&[0.0, 0.0, 1.0]),
    ])?;
    let len = shortest_trajectory(&simplex, &Gauge::difference(&simplex)?, &solver(cfg, 16))?.length;
    let mut ok = (len - 4.0 / 3.0).abs() <= tol;
    let mut detail = format!("simplex {len:.6} (target 4/3 +- {tol:e});");
    let mut rng = random::rng_for(cfg.seed, 4);
    let mut worst = f64::INFINITY;
    for i in 0..20 {
        let n = rng.random_range(3..=7);
        let k = random::skewed_polygon(&mut rng, n);
        let l = shortest_trajectory(&k, &Gauge::difference(&k)?, &solver(cfg, 16))?.length;
        worst = worst.min(l);
        if l < 1.5 - lb {
            ok = false;
            let _ = write!(detail, " [#{i}: {l:.6}]");
        }
    }
    let _ = write!(detail, " 20 random bodies, min {worst:.6} (bound 1.5 - {lb:e})");
    Ok((ok, detail))
}

fn nonsymmetric_self_gauge(cfg: &SuiteConfig) -> Result<Check> {
    let lb = cfg.tol("lower_bound");
    let mut rng = random::rng_for(cfg.seed, 5);
    let mut ok = true;
    let mut detail = String::new();
    let mut worst = f64::INFINITY;
    for i in 0..30 {
        let n = rng.random_range(3..=7);
        let k = random::polygon(&mut rng, n, 0.3);
        let l = shortest_trajectory(&k, &Gauge::new(k.clone())?, &solver(cfg, 16))?.length;
        worst = worst.min(l);
        if l < 3.0 - lb {
            ok = false;
            let _ = write!(detail, "[#{i}: {l:.6}] ");
        }
    }
    let _ = write!(detail, "30 random bodies, min {worst:.6} (bound 3 - {lb:e})");
    Ok((ok, detail))
}

/// Widens all planks of a random family about their centers until the family
/// covers `k`, then bisects the widening factor back toward the threshold.
fn random_covering(rng: &mut impl Rng, k: &ConvexBody) -> Result<Option<Vec<Plank>>> {
    let count = rng.random_range(1..=6);
    let base = random::planks_for(rng, k, count);
    let widen = |s: f64| -> Result<Vec<Plank>> {
        base.iter()
            .map(|p| {
                let c = 0.5 * (p.lo() + p.hi());
                let h = 0.5 * (p.hi() - p.lo()) * s;
                Plank::new(p.normal().clone(), c - h, c + h)
            })
            .collect()
    };
    let mut hi = 1.0;
    let mut tries = 0;
    while !covering_check(k, &widen(hi)?, 1.0)?.covered {
        hi *= 2.0;
        tries += 1;
        if tries > 5 {
            return Ok(None);
        }
    }
    let mut lo = hi / 2.0;
    for _ in 0..6 {
        let mid = 0.5 * (lo + hi);
        if covering_check(k, &widen(mid)?, 1.0)?.covered {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(widen(hi)?))
}

fn bang_probe(cfg: &SuiteConfig) -> Result<Check> {
    let tol = cfg.tol("bang");
    let sq = ConvexBody::polygon(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]])?;
    let tight = bang_report(&sq, &[Plank::axis(2, 0, 0.0, 0.5)?, Plank::axis(2, 0, 0.5, 1.0)?])?;
    let mut ok = tight.report.covered && tight.report.relative_width_sum == 1.0;
    let mut detail = format!(
        "square fixture covered {} with relative width sum {};",
        tight.report.covered, tight.report.relative_width_sum
    );
    let mut rng = random::rng_for(cfg.seed, 6);
    let mut verified = 0;
    let mut worst = f64::INFINITY;
    let mut alarms = 0;
    while verified < 500 {
        let n = rng.random_range(3..=7);
        let k = random::skewed_polygon(&mut rng, n);
        let Some(planks) = random_covering(&mut rng, &k)? else { continue };
        let r = bang_report(&k, &planks)?;
        if !r.report.covered {
            continue;
        }
        verified += 1;
        worst = worst.min(r.report.relative_width_sum);
        if r.report.relative_width_sum < 1.0 - tol {
            alarms += 1;
            ok = false;
        }
    }
    let _ = write!(
        detail,
        " {verified} verified random coverings, min relative width sum {worst:.9} (bound 1 - {tol:e}), {alarms} alarms"
    );
    Ok((ok, detail))
}

fn almost_parallel(cfg: &SuiteConfig) -> Result<Check> {
    let e = Gauge::euclidean(2);
    let fixtures = [
        almost_parallel_check(&[v(&[1.0, 0.0]), v(&[0.0, 1.0])], &e, 1e-9)?,
        !almost_parallel_check(&[v(&[1.0, 0.0]), v(&[-1.0, 0.0])], &e, 1e-9)?,
        almost_parallel_check(&[v(&[1.0, 0.0])], &e, 1e-9)?,
    ];
    let mut ok = fixtures.iter().all(|&b| b);
    let mut rng = random::rng_for(cfg.seed, 7);
    let mut failures = 0;
    for _ in 0..200 {
        let dim = rng.random_range(2..=3);
        let count = rng.random_range(2..=5);
        let normals = random::acute_normals(&mut rng, dim, count);
        if !almost_parallel_check(&normals, &Gauge::euclidean(dim), 1e-6)? {
            failures += 1;
            ok = false;
        }
    }
    Ok((
        ok,
        format!("fixtures {fixtures:?} (true = expected verdict); 200 random acute normal sets, {failures} rejected"),
    ))
}

fn oscillation_suite(cfg: &SuiteConfig) -> Result<Check> {
    let tol = cfg.tol("oscillation");
    let opts = OscillationOptions {
        samples: 400,
        tol,
        ..Default::default()
    };
    // equality fixtures
    let disk = ConvexBody::unit_ball(2);
    let a = [0.6, -0.8];
    let c1 = verify_oscillation_bound(&Polynomial::linear(&a, 0.2), &disk, Variant::Ball2x, &Gauge::euclidean(2), &opts)?;
    let t = triangle();
    let hex = Gauge::difference(&t)?;
    let c2 = verify_oscillation_bound(&Polynomial::linear(&[1.0, 0.0], 0.0), &t, Variant::Diff1x, &hex, &opts)?;
    let eq_ok = (c1.lhs - 2.0).abs() <= 1e-9
        && (c1.rhs - 2.0).abs() <= 1e-9
        && (c2.lhs - 1.0).abs() <= 1e-9
        && (c2.rhs - 1.0).abs() <= 1e-9;
    let mut detail = format!(
        "equality fixtures: ball {:.12}/{:.12}, triangle {:.12}/{:.12};",
        c1.lhs, c1.rhs, c2.lhs, c2.rhs
    );

    // a pool of bodies, billiard lengths computed once per body
    let mut rng = random::rng_for(cfg.seed, 8);
    let mut pool = Vec::new();
    for i in 0..6 {
        let n = rng.random_range(3..=6);
        let sym = random::symmetric_polytope(&mut rng, 2, n);
        let k = if i == 0 { triangle() } else { random::polygon(&mut rng, n, 0.3) };
        let diff = Gauge::difference(&k)?;
        let xi = shortest_trajectory(&k, &diff, &solver(cfg, 16))?.length;
        pool.push((Gauge::new(sym.clone())?, sym, k, diff, xi));
    }
    let mut violations = 0;
    let mut min_margin = [f64::INFINITY; 3];
    for trial in 0..500 {
        let (ball_gauge, sym, k, diff, xi) = &pool[trial % pool.len()];
        let f = random::polynomial(&mut rng, 2, 3);
        let checks = [
            verify_oscillation_bound(&f, sym, Variant::Ball2x, ball_gauge, &opts)?,
            verify_oscillation_bound(&f, k, Variant::Diff1x, diff, &opts)?,
            verify_oscillation_bound(&f, k, Variant::Billiard, diff, &OscillationOptions { xi: Some(*xi), ..opts })?,
        ];
        for (j, c) in checks.iter().enumerate() {
            min_margin[j] = min_margin[j].min(c.lhs - c.rhs);
            if !c.ok {
                violations += 1;
            }
        }
    }
    let _ = write!(
        detail,
        " 500 random cubics x 3 variants, {violations} violations, min lhs - rhs per variant {:.3e} {:.3e} {:.3e}",
        min_margin[0], min_margin[1], min_margin[2]
    );
    Ok((eq_ok && violations == 0, detail))
}

fn graph_lemma(cfg: &SuiteConfig) -> Result<Check> {
    let tol = cfg.tol("graph");
    let t = triangle();
    let seg = EmbeddedGraph::new(vec![v(&[0.1, 0.2]), v(&[0.7, -0.4])], vec![(0, 1)])?;
    let r = graph_cover_check(&seg, &t)?;
    let mut ok = (r.lambda - r.h).abs() <= tol;
    let mut detail = format!("segment lambda {:.12} vs h {:.12};", r.lambda, r.h);
    let mut rng = random::rng_for(cfg.seed, 9);
    let mut failures = 0;
    let mut max_ratio: f64 = 0.0;
    for _ in 0..500 {
        let n = rng.random_range(3..=7);
        let k = random::polygon(&mut rng, n, 0.3);
        let g = random::graph(&mut rng, 6, 1.0);
        let r = graph_cover_check(&g, &k)?;
        max_ratio = max_ratio.max(r.lambda / r.h);
        if r.lambda > r.h + tol {
            failures += 1;
            ok = false;
        }
    }
    let _ = write!(detail, " 500 random graphs, {failures} failures, max lambda/h {max_ratio:.9}");
    Ok((ok, detail))
}

fn constants(cfg: &SuiteConfig) -> Result<Check> {
    let exact = cfg.tol("constants");
    let quad = cfg.tol("quadrature");
    let mc = cfg.tol("pushforward");
    let w3 = w_constant(3)?;
    let mut ok = (w3 - 2.0).abs() <= exact;
    let mut worst_quad: f64 = 0.0;
    for n in 2..=30 {
        worst_quad = worst_quad.max((w_constant(n)? - oracles::w_quadrature(n, 20_000)).abs());
    }
    ok &= worst_quad <= quad;
    let cyl = cylinder_bound(4, 2)?;
    ok &= (cyl - PI).abs() <= exact;
    let mut rho2_dev: f64 = 0.0;
    for x in [v(&[0.0, 0.0]), v(&[0.3, -0.4]), v(&[0.9, 0.1]), v(&[0.0, 0.999])] {
        rho2_dev = rho2_dev.max((rho_density(2, &x)? - 2.0 * PI).abs());
    }
    ok &= rho2_dev <= exact;
    let mut rng = random::rng_for(cfg.seed, 10);
    let mut worst_mc: f64 = 0.0;
    for (n, m) in [(4, 2), (5, 2), (5, 3)] {
        let k = n - m;
        let hist = oracles::pushforward_histogram(&mut rng, n, m, 1_000_000, 10);
        for &(r0, r1, emp) in hist.iter().take(9) {
            // average of the density over the shell, by fine radial quadrature
            let steps = 200;
            let (mut num, mut den) = (0.0, 0.0);
            for s in 0..steps {
                let r = r0 + (r1 - r0) * (s as f64 + 0.5) / steps as f64;
                let wgt = r.powi(k as i32 - 1);
                let mut x = Vector::zeros(k);
                x[0] = r;
                num += rho_density(m, &x)? * wgt;
                den += wgt;
            }
            worst_mc = worst_mc.max((emp / (num / den) - 1.0).abs());
        }
    }
    ok &= worst_mc <= mc;
    Ok((
        ok,
        format!(
            "W3 = {w3:.15}; max |W_n - quadrature| over n = 2..30 {worst_quad:.2e}; cylinder(4,2) - pi = {:.2e}; rho_2 deviation {rho2_dev:.2e}; pushforward max relative error {worst_mc:.4} (limit {mc})",
            cyl - PI
        ),
    ))
}

fn fractional_bound(cfg: &SuiteConfig) -> Result<Check> {
    let mut ok = true;
    for k in 1..=100 {
        ok &= fractional_bang_bound(k, 0.0)? == 2.0 * (k as f64).sqrt();
        ok &= fractional_bang_bound(k, 1.0)? == 2.0 * k as f64;
    }
    let endpoints = ok;
    let mut rng = random::rng_for(cfg.seed, 11);
    let mut failures = 0;
    let mut min_gap = f64::INFINITY;
    for _ in 0..500 {
        let c = rng.random_range(0.0..0.6);
        let count = rng.random_range(2..=5);
        let vs = random::cone_vectors(&mut rng, 3, count, c);
        let r = sum_norm_lower(&vs, c, 1e-12)?;
        min_gap = min_gap.min(r.lhs - r.rhs);
        if !r.ok {
            failures += 1;
            ok = false;
        }
    }
    Ok((
        ok,
        format!("endpoint identities exact for k = 1..100: {endpoints}; 500 random trials, {failures} failures, min lhs - rhs {min_gap:.3e}"),
    ))
}

fn ball_cut(cfg: &SuiteConfig) -> Result<Check> {
    let add_tol = cfg.tol("additivity");
    let min_tol = cfg.tol("minimality");
    let int_tol = cfg.tol("integrator");
    let grid = tau0_grid(97);
    let mut worst_add: f64 = 0.0;
    let mut add_ok = true;
    for &tau0 in &grid {
        let r = verify_cut_additivity(tau0)?;
        worst_add = worst_add.max((r.sum - PI).abs());
        add_ok &= (r.sum - PI).abs() <= add_tol;
    }
    let mut min_ok = true;
    let mut pairs = 0;
    for &tau0 in &grid {
        let principal = principal_action(tau0)?;
        for m in 2..=40u32 {
            for k in 1..m {
                if let Some(p) = BallCutParams::for_cut(k, m, tau0)? {
                    if p.rho < 1.0 {
                        pairs += 1;
                        min_ok &= cap_action(&p) >= principal - min_tol;
                    }
                }
            }
        }
    }
    let key_ok = verify_key_inequalities(100)?;
    let mut worst_int: f64 = 0.0;
    for &tau0 in grid.iter().step_by(8) {
        let a = principal_action(tau0)?;
        worst_int = worst_int.max((a - oracles::principal_action_by_integration(tau0, 10_000)).abs());
    }
    for (k, m, rho) in [(1, 2, 0.5), (1, 3, 0.8), (2, 5, 0.3), (3, 7, 0.9), (1, 6, 0.6)] {
        let p = BallCutParams::new(k, m, rho)?;
        worst_int = worst_int.max((orbit_action(&p) - oracles::orbit_action_by_integration(&p, 10_000)).abs());
    }
    let int_ok = worst_int <= int_tol;
    Ok((
        add_ok && min_ok && key_ok && int_ok,
        format!(
            "additivity over 97 cuts max |c1 + c2 - pi| {worst_add:.2e}; minimality over {pairs} admissible (tau0, k, m): {min_ok}; key inequalities on 10^4 grid: {key_ok}; integrator max deviation {worst_int:.2e}"
        ),
    ))
}

fn volume_product(cfg: &SuiteConfig) -> Result<Check> {
    let r = mahler_product(&triangle())?;
    let mut ok = (r.product - 1.5).abs() <= 1e-12 && r.ok;
    let mut rng = random::rng_for(cfg.seed, 13);
    let mut alarms = 0;
    let mut min_ratio = f64::INFINITY;
    for _ in 0..100 {
        let n = rng.random_range(3..=9);
        let k = random::skewed_polygon(&mut rng, n);
        let m = mahler_product(&k)?;
        min_ratio = min_ratio.min(m.product / m.bound);
        if !m.ok {
            alarms += 1;
            ok = false;
        }
    }
    Ok((
        ok,
        format!(
            "triangle product {:.12} vs bound {:.6}; 100 random bodies, {alarms} alarms, min product/bound {min_ratio:.6}",
            r.product, r.bound
        ),
    ))
}

//! Seeded generators of random instances.

use nalgebra::DMatrix;
use plankcap::fractional::sphere_point;
use plankcap::oscillation::{EmbeddedGraph, Polynomial};
use plankcap::planks::Plank;
use plankcap::{ConvexBody, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Generator for criterion `id`, independent of every other criterion.
pub fn rng_for(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// Convex polygon from `n` points at jittered angles and radii around the
/// origin, shifted by a random offset of size up to `shift`.
pub fn polygon(rng: &mut impl Rng, n: usize, shift: f64) -> ConvexBody {
    loop {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let pts: Vec<Vector> = angles
            .iter()
            .map(|a| {
                let r = rng.random_range(0.5..1.5);
                Vector::from_vec(vec![r * a.cos(), r * a.sin()])
            })
            .collect();
        let Ok(body) = ConvexBody::from_vertices(&pts) else { continue };
        let t = Vector::from_vec(vec![rng.random_range(-shift..=shift), rng.random_range(-shift..=shift)]);
        // reject slivers and bodies missing the origin
        if body.volume().map_or(true, |v| v < 0.5) || !body.origin_interior(0.2) {
            continue;
        }
        let moved = body.translate(&t);
        if shift == 0.0 || moved.origin_interior(0.05) {
            return moved;
        }
    }
}

/// Random polygon mapped by a random linear map of bounded distortion.
pub fn skewed_polygon(rng: &mut impl Rng, n: usize) -> ConvexBody {
    let body = polygon(rng, n, 0.0);
    let a = DMatrix::from_fn(2, 2, |i, j| if i == j { 1.0 } else { 0.0 } + rng.random_range(-0.6..0.6));
    let p = body.as_polytope().expect("polygon");
    let pts: Vec<Vector> = p.vertices().iter().map(|v| &a * v).collect();
    ConvexBody::from_vertices(&pts).unwrap_or(body)
}

/// Centrally symmetric polytope: hull of `±v_i` for `n` random directions.
pub fn symmetric_polytope(rng: &mut impl Rng, dim: usize, n: usize) -> ConvexBody {
    loop {
        let mut pts = Vec::with_capacity(2 * n);
        for _ in 0..n {
            let v = sphere_point(rng, dim) * rng.random_range(0.6..1.4);
            pts.push(-&v);
            pts.push(v);
        }
        if let Ok(b) = ConvexBody::from_vertices(&pts) {
            if b.origin_interior(0.3) {
                return b;
            }
        }
    }
}

/// Random polytope in R^3 with the origin well inside.
pub fn polytope3(rng: &mut impl Rng, n: usize) -> ConvexBody {
    loop {
        let pts: Vec<Vector> = (0..n).map(|_| sphere_point(rng, 3) * rng.random_range(0.7..1.3)).collect();
        if let Ok(b) = ConvexBody::from_vertices(&pts) {
            if b.origin_interior(0.3) {
                return b;
            }
        }
    }
}

/// Polynomial in `dim` variables with all monomials of degree at most
/// `degree` and coefficients uniform in `[-1, 1]`.
pub fn polynomial(rng: &mut impl Rng, dim: usize, degree: u32) -> Polynomial {
    let mut terms = Vec::new();
    let mut e = vec![0u32; dim];
    loop {
        if e.iter().sum::<u32>() <= degree {
            terms.push((e.clone(), rng.random_range(-1.0..1.0)));
        }
        // odometer over exponent vectors in [0, degree]^dim
        let mut i = 0;
        while i < dim {
            e[i] += 1;
            if e[i] <= degree {
                break;
            }
            e[i] = 0;
            i += 1;
        }
        if i == dim {
            break;
        }
    }
    Polynomial::new(dim, terms).expect("well-formed terms")
}

/// Uniform point of a body by rejection from its bounding box.
pub fn point_in(rng: &mut impl Rng, k: &ConvexBody) -> Vector {
    let (lo, hi) = k.bounding_box();
    loop {
        let x = Vector::from_fn(k.dim(), |i, _| rng.random_range(lo[i]..=hi[i]));
        if k.contains(&x, 0.0) {
            return x;
        }
    }
}

/// Connected graph with at most `max_edges` edges: a random spanning tree
/// plus random chords, nodes drawn from the box `[-r, r]^2`.
pub fn graph(rng: &mut impl Rng, max_edges: usize, r: f64) -> EmbeddedGraph {
    loop {
        let edges_wanted = rng.random_range(1..=max_edges);
        let nodes_count = rng.random_range(2..=edges_wanted + 1);
        let edges_target = edges_wanted.min(nodes_count * (nodes_count - 1) / 2);
        let nodes: Vec<Vector> = (0..nodes_count)
            .map(|_| Vector::from_vec(vec![rng.random_range(-r..r), rng.random_range(-r..r)]))
            .collect();
        let mut edges: Vec<(usize, usize)> = (1..nodes_count).map(|i| (rng.random_range(0..i), i)).collect();
        while edges.len() < edges_target {
            let a = rng.random_range(0..nodes_count);
            let b = rng.random_range(0..nodes_count);
            if a != b && !edges.contains(&(a, b)) && !edges.contains(&(b, a)) {
                edges.push((a, b));
            }
        }
        if let Ok(g) = EmbeddedGraph::new(nodes, edges) {
            return g;
        }
    }
}

/// Random orthogonal matrix from the QR factorization of a Gaussian-like
/// matrix.
pub fn rotation(rng: &mut impl Rng, dim: usize) -> DMatrix<f64> {
    let cols: Vec<Vector> = (0..dim).map(|_| sphere_point(rng, dim)).collect();
    let m = DMatrix::from_columns(&cols);
    m.qr().q()
}

/// Unit vectors with pairwise nonnegative inner products: nonnegative
/// orthant directions under a random rotation.
pub fn acute_normals(rng: &mut impl Rng, dim: usize, count: usize) -> Vec<Vector> {
    let q = rotation(rng, dim);
    (0..count)
        .map(|_| {
            let v = sphere_point(rng, dim).map(f64::abs);
            &q * v
        })
        .collect()
}

/// `count` unit vectors in R^dim with pairwise inner products at least `c`,
/// by rejection around a random axis.
pub fn cone_vectors(rng: &mut impl Rng, dim: usize, count: usize, c: f64) -> Vec<Vector> {
    let axis = sphere_point(rng, dim);
    loop {
        let spread = rng.random_range(0.2..1.5);
        let vs: Vec<Vector> = (0..count)
            .map(|_| (&axis + sphere_point(rng, dim) * spread).normalize())
            .collect();
        let ok = (0..count).all(|i| (i + 1..count).all(|j| vs[i].dot(&vs[j]) >= c));
        if ok {
            return vs;
        }
    }
}

/// Planks with random normals, each spanning a random 10% to 70% of the
/// width of `k` in its normal direction.
pub fn planks_for(rng: &mut impl Rng, k: &ConvexBody, count: usize) -> Vec<Plank> {
    (0..count)
        .map(|_| {
            let u = sphere_point(rng, k.dim());
            let hi = k.support(&u).expect("dimension");
            let lo = -k.support(&(-&u)).expect("dimension");
            let w = hi - lo;
            let fill = rng.random_range(0.1..0.7);
            let a = lo + rng.random_range(0.0..(1.0 - fill)) * w;
            Plank::new(u, a, a + fill * w).expect("nonzero normal")
        })
        .collect()
}

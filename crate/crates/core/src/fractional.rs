//! Constants for fractional plank and cylinder coverings of the Euclidean
//! ball, and a volume-product probe.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::body::ConvexBody;
use crate::error::{check_finite, Error, Result};
use crate::special::{ln_gamma, unit_ball_volume};
use crate::Vector;

/// `W_n = Γ((n-1)/2) Γ(1/2) / Γ(n/2)`, the integral of `(1 - x^2)^((n-3)/2)`
/// over `[-1, 1]`.
pub fn w_constant(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("W_n needs n >= 2, got {n}")));
    }
    let h = n as f64 / 2.0;
    Ok((ln_gamma(h - 0.5) + 0.5 * PI.ln() - ln_gamma(h)).exp())
}

/// Density of the projection of surface measure on `S^{n-1}` along an
/// `m`-dimensional subspace: `|S^{m-1}| (1 - |x|^2)^(m/2 - 1)`.
pub fn rho_density(m: usize, x: &Vector) -> Result<f64> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("rho needs m >= 2, got {m}")));
    }
    check_finite(x.as_slice(), "rho argument")?;
    let r2 = x.norm_squared();
    if r2 > 1.0 {
        return Err(Error::InvalidParameter(format!("|x| = {} exceeds 1", r2.sqrt())));
    }
    let h = m as f64 / 2.0;
    let area = 2.0 * (h * PI.ln() - ln_gamma(h)).exp();
    if m == 2 {
        return Ok(area);
    }
    Ok(area * (1.0 - r2).powf(h - 1.0))
}

fn check_cylinder(n: usize, m: usize) -> Result<()> {
    if m < 2 || m >= n {
        return Err(Error::InvalidParameter(format!("cylinders need 2 <= m < n, got n = {n}, m = {m}")));
    }
    Ok(())
}

/// Lower bound `π^((n-m)/2) Γ(m/2) / Γ(n/2)` on the weighted cross-section sum
/// of a fractional covering of `B^n` by `m`-dimensional cylinders.
pub fn cylinder_bound(n: usize, m: usize) -> Result<f64> {
    check_cylinder(n, m)?;
    let (nf, mf) = (n as f64, m as f64);
    Ok(((nf - mf) / 2.0 * PI.ln() + ln_gamma(mf / 2.0) - ln_gamma(nf / 2.0)).exp())
}

/// The conjectured sharp value `vol B^{n-m}` for the same covering problem.
pub fn cylinder_target(n: usize, m: usize) -> Result<f64> {
    check_cylinder(n, m)?;
    Ok(unit_ball_volume(n - m))
}

/// `2 sqrt((c(k-1) + 1) k)`: total width needed for a `k`-fold plank covering
/// of the unit ball when plank normals pairwise satisfy `<n_i, n_j> >= c`.
pub fn fractional_bang_bound(k: usize, c: f64) -> Result<f64> {
    if k == 0 || !(0.0..=1.0).contains(&c) {
        return Err(Error::InvalidParameter(format!("need k >= 1 and 0 <= c <= 1, got k = {k}, c = {c}")));
    }
    let k = k as f64;
    Ok(2.0 * ((c * (k - 1.0) + 1.0) * k).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SumNormReport {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

/// `|Σ v_i|` against `sqrt(k + c k (k-1))` for unit vectors with pairwise
/// inner products at least `c`.
pub fn sum_norm_lower(vectors: &[Vector], c: f64, tol: f64) -> Result<SumNormReport> {
    if vectors.is_empty() {
        return Err(Error::InvalidParameter("no vectors".into()));
    }
    let d = vectors[0].len();
    for (i, v) in vectors.iter().enumerate() {
        crate::error::check_dim(d, v.len())?;
        check_finite(v.as_slice(), "vector")?;
        let norm = v.norm();
        if (norm - 1.0).abs() > tol {
            return Err(Error::NotNormalized { index: i, norm });
        }
    }
    for i in 0..vectors.len() {
        for j in i + 1..vectors.len() {
            let dot = vectors[i].dot(&vectors[j]);
            if dot < c - tol {
                return Err(Error::Precondition(format!("<v{i}, v{j}> = {dot} is below {c}")));
            }
        }
    }
    let sum = vectors.iter().fold(Vector::zeros(d), |acc, v| acc + v);
    let k = vectors.len() as f64;
    let lhs = sum.norm();
    let rhs = (k + c * k * (k - 1.0)).sqrt();
    Ok(SumNormReport { lhs, rhs, ok: lhs >= rhs - tol })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MahlerReport {
    pub product: f64,
    pub bound: f64,
    pub ok: bool,
}

/// `vol K · vol (K - K)°` against `(1 + 1/n)^n / n!`.
pub fn mahler_product(k: &ConvexBody) -> Result<MahlerReport> {
    let n = k.dim();
    if !(2..=3).contains(&n) {
        return Err(Error::Unsupported(format!("volume product in dimension {n}")));
    }
    let product = k.volume()? * k.difference_body()?.polar()?.volume()?;
    let nf = n as f64;
    let fact: f64 = (1..=n).map(|i| i as f64).product();
    let bound = (1.0 + 1.0 / nf).powi(n as i32) / fact;
    let ok = product >= bound - 1e-12 * bound;
    if !ok {
        log::warn!("volume product {product} is below {bound}");
    }
    Ok(MahlerReport { product, bound, ok })
}

/// Uniform point on `S^{n-1}` from a normalized Gaussian vector.
pub fn sphere_point(rng: &mut impl Rng, n: usize) -> Vector {
    loop {
        let g = Vector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
        let r = g.norm();
        if r > 1e-12 {
            return g / r;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlankProbe {
    /// `δN / W_n`.
    pub expected: f64,
    pub mean: f64,
    pub min: usize,
}

/// Covers `S^{n-1}` by `planks` random centrally symmetric planks of width
/// `delta` and records the covering multiplicity at `samples` random points.
pub fn random_plank_probe(n: usize, planks: usize, delta: f64, samples: usize, seed: u64) -> Result<PlankProbe> {
    let w = w_constant(n)?;
    if !(delta > 0.0 && delta < 2.0) || planks == 0 || samples == 0 {
        return Err(Error::InvalidParameter("probe needs 0 < delta < 2 and nonzero counts".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normals: Vec<Vector> = (0..planks).map(|_| sphere_point(&mut rng, n)).collect();
    let mut total = 0usize;
    let mut min = usize::MAX;
    for _ in 0..samples {
        let x = sphere_point(&mut rng, n);
        let count = normals.iter().filter(|u| u.dot(&x).abs() <= delta / 2.0).count();
        total += count;
        min = min.min(count);
    }
    Ok(PlankProbe {
        expected: delta * planks as f64 / w,
        mean: total as f64 / samples as f64,
        min,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector as v;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn w_examples() {
        assert_abs_diff_eq!(w_constant(3).unwrap(), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(w_constant(2).unwrap(), PI, epsilon = 1e-12);
        assert_abs_diff_eq!(w_constant(4).unwrap(), PI / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(w_constant(5).unwrap(), 4.0 / 3.0, epsilon = 1e-12);
        assert!(w_constant(1).is_err());
        for n in 3..30 {
            assert!(w_constant(n + 1).unwrap() < w_constant(n).unwrap());
        }
    }

    #[test]
    fn rho_examples() {
        for x in [v(&[0.0, 0.0]), v(&[0.5, -0.3]), v(&[0.99])] {
            assert_abs_diff_eq!(rho_density(2, &x).unwrap(), 2.0 * PI, epsilon = 1e-12);
        }
        assert_relative_eq!(rho_density(4, &v(&[0.0])).unwrap(), 2.0 * PI * PI, max_relative = 1e-12);
        let x = v(&[0.75f64.sqrt(), 0.0]);
        assert_relative_eq!(rho_density(3, &x).unwrap(), 2.0 * PI, max_relative = 1e-12);
        assert!(rho_density(3, &v(&[1.1])).is_err());
    }

    #[test]
    fn cylinder_examples() {
        assert_relative_eq!(cylinder_bound(4, 2).unwrap(), PI, max_relative = 1e-12);
        assert_relative_eq!(cylinder_bound(5, 2).unwrap(), 4.0 * PI / 3.0, max_relative = 1e-12);
        assert_relative_eq!(cylinder_bound(5, 3).unwrap(), 2.0 * PI / 3.0, max_relative = 1e-12);
        assert_relative_eq!(cylinder_target(5, 3).unwrap(), PI, max_relative = 1e-12);
        for n in 3..12 {
            assert_relative_eq!(cylinder_bound(n, 2).unwrap(), cylinder_target(n, 2).unwrap(), max_relative = 1e-12);
        }
        assert!(cylinder_bound(4, 4).is_err());
        assert!(cylinder_bound(4, 1).is_err());
    }

    #[test]
    fn bang_bound_examples() {
        assert_eq!(fractional_bang_bound(1, 0.0).unwrap(), 2.0);
        for k in 1..50 {
            assert_eq!(fractional_bang_bound(k, 0.0).unwrap(), 2.0 * (k as f64).sqrt());
            assert_eq!(fractional_bang_bound(k, 1.0).unwrap(), 2.0 * k as f64);
        }
        assert_abs_diff_eq!(fractional_bang_bound(3, 0.5).unwrap(), 2.0 * 6f64.sqrt(), epsilon = 1e-15);
        assert!(fractional_bang_bound(0, 0.5).is_err());
        assert!(fractional_bang_bound(2, 1.5).is_err());
    }

    #[test]
    fn sum_norm_examples() {
        let e: Vec<Vector> = (0..4).map(|i| Vector::from_fn(4, |j, _| if i == j { 1.0 } else { 0.0 })).collect();
        let r = sum_norm_lower(&e, 0.0, 1e-12).unwrap();
        assert_abs_diff_eq!(r.lhs, 2.0, epsilon = 1e-15);
        assert_eq!(r.lhs, r.rhs);
        assert!(r.ok);
        let copies = vec![v(&[1.0, 0.0]); 5];
        let r = sum_norm_lower(&copies, 1.0, 1e-12).unwrap();
        assert_eq!((r.lhs, r.rhs, r.ok), (5.0, 5.0, true));
        assert!(matches!(sum_norm_lower(&e, 0.5, 1e-12), Err(Error::Precondition(_))));
        assert!(matches!(sum_norm_lower(&[v(&[2.0, 0.0])], 0.0, 1e-12), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn mahler_examples() {
        let t = ConvexBody::polygon(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]).unwrap();
        let r = mahler_product(&t).unwrap();
        assert_abs_diff_eq!(r.product, 1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(r.bound, 9.0 / 8.0, epsilon = 1e-15);
        assert!(r.ok);
        let sq = ConvexBody::polygon(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        assert_abs_diff_eq!(mahler_product(&sq).unwrap().product, 2.0, epsilon = 1e-12);
        let disk = ConvexBody::unit_ball(2);
        assert_abs_diff_eq!(mahler_product(&disk).unwrap().product, PI * PI / 4.0, epsilon = 1e-12);
        assert!(matches!(mahler_product(&ConvexBody::unit_ball(4)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn sphere_points_are_unit() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..6 {
            assert_abs_diff_eq!(sphere_point(&mut rng, n).norm(), 1.0, epsilon = 1e-14);
        }
    }
}

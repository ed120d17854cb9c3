//! Capacities of the two pieces of the unit ball in `C^n` cut by the
//! hyperplane `Re z_1 = cos τ0`, via actions of closed characteristics.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Winding data of a non-principal characteristic on the cap
/// `Re z_1 >= cos τ0`: `τ = π k / m` and `|z_1| = ρ` on the cut.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallCutParams {
    pub k: u32,
    pub m: u32,
    pub rho: f64,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl BallCutParams {
    /// Reduces `k/m` to lowest terms.
    pub fn new(k: u32, m: u32, rho: f64) -> Result<Self> {
        if k == 0 || m <= k {
            return Err(Error::InvalidParameter(format!("need 1 <= k < m, got k = {k}, m = {m}")));
        }
        if !(rho > 0.0 && rho <= 1.0) {
            return Err(Error::InvalidParameter(format!("rho = {rho} outside (0, 1]")));
        }
        let g = gcd(k, m);
        Ok(Self { k: k / g, m: m / g, rho })
    }

    /// Binds `ρ` to the cut through `ρ cos τ = cos τ0`; `None` when that `ρ`
    /// falls outside `(0, 1]`.
    pub fn for_cut(k: u32, m: u32, tau0: f64) -> Result<Option<Self>> {
        check_tau0(tau0)?;
        if k == 0 || m <= k {
            return Err(Error::InvalidParameter(format!("need 1 <= k < m, got k = {k}, m = {m}")));
        }
        let tau = PI * k as f64 / m as f64;
        let rho = tau0.cos() / tau.cos();
        if !(rho > 0.0 && rho <= 1.0) || !rho.is_finite() {
            return Ok(None);
        }
        Self::new(k, m, rho).map(Some)
    }

    pub fn tau(&self) -> f64 {
        PI * self.k as f64 / self.m as f64
    }
}

fn check_tau0(tau0: f64) -> Result<()> {
    if !(tau0 > 0.0 && tau0 < PI) {
        return Err(Error::InvalidParameter(format!("tau0 = {tau0} outside (0, pi)")));
    }
    Ok(())
}

/// Area of the circular segment of half-angle `x`: `x - sin x cos x`.
pub fn segment(x: f64) -> f64 {
    x - x.sin() * x.cos()
}

/// Action of the principal circle broken by the cut.
pub fn principal_action(tau0: f64) -> Result<f64> {
    check_tau0(tau0)?;
    Ok(segment(tau0))
}

/// `k (ρ^2 (τ - sin τ cos τ) + π (1 - ρ^2))`.
pub fn cap_action(p: &BallCutParams) -> f64 {
    let r2 = p.rho * p.rho;
    p.k as f64 * (r2 * segment(p.tau()) + PI * (1.0 - r2))
}

/// Action of the full closed orbit: `m` segments of radius `ρ` in the `z_1`
/// plane plus `k` turns of the remaining coordinates.
pub fn orbit_action(p: &BallCutParams) -> f64 {
    let r2 = p.rho * p.rho;
    p.m as f64 * r2 * segment(p.tau()) + p.k as f64 * PI * (1.0 - r2)
}

/// Minimal action over the principal characteristic and all admissible
/// `(k, m)` with `m <= mmax`, `k <= kmax`.
pub fn cap_capacity(tau0: f64, kmax: u32, mmax: u32) -> Result<f64> {
    let mut best = principal_action(tau0)?;
    for m in 2..=mmax {
        for k in 1..m.min(kmax + 1) {
            if gcd(k, m) != 1 {
                continue;
            }
            if let Some(p) = BallCutParams::for_cut(k, m, tau0)? {
                if p.rho < 1.0 {
                    best = best.min(cap_action(&p));
                }
            }
        }
    }
    Ok(best)
}

pub const DEFAULT_KMAX: u32 = 40;
pub const DEFAULT_MMAX: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutAdditivity {
    pub c1: f64,
    pub c2: f64,
    pub sum: f64,
    pub ok: bool,
}

/// Capacities of both pieces and whether they add up to `π`.
pub fn verify_cut_additivity(tau0: f64) -> Result<CutAdditivity> {
    let c1 = cap_capacity(tau0, DEFAULT_KMAX, DEFAULT_MMAX)?;
    let c2 = cap_capacity(PI - tau0, DEFAULT_KMAX, DEFAULT_MMAX)?;
    let sum = c1 + c2;
    Ok(CutAdditivity {
        c1,
        c2,
        sum,
        ok: (sum - PI).abs() <= 1e-9,
    })
}

/// Interior grid of `(0, π)` with `n` points.
pub fn tau0_grid(n: usize) -> Vec<f64> {
    (1..=n).map(|i| PI * i as f64 / (n + 1) as f64).collect()
}

/// Checks `π(1 - cos x) >= x - sin x` on `grid` points of `[0, π]`, and
/// `ρ^2 (τ - sin τ cos τ) + π(1 - ρ^2) >= τ0 - sin τ0 cos τ0` on a
/// `grid x grid` set of `(τ, τ0)` with `ρ = cos τ0 / cos τ` in `(0, 1]`.
pub fn verify_key_inequalities(grid: usize) -> Result<bool> {
    if grid < 2 {
        return Err(Error::InvalidParameter(format!("grid = {grid} below 2")));
    }
    let tol = 1e-12;
    let step = PI / (grid - 1) as f64;
    for i in 0..grid {
        let x = i as f64 * step;
        if PI * (1.0 - x.cos()) < x - x.sin() - tol {
            return Ok(false);
        }
    }
    let inner = tau0_grid(grid);
    for &tau in &inner {
        for &tau0 in &inner {
            let rho = tau0.cos() / tau.cos();
            if !(rho > 0.0 && rho <= 1.0) {
                continue;
            }
            let r2 = rho * rho;
            if r2 * segment(tau) + PI * (1.0 - r2) < segment(tau0) - tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubadditivityGap {
    pub parts_sum: f64,
    pub whole: f64,
    pub gap: f64,
}

/// Displacement-energy bounds `2 - 2r` and `4r` of the two parts of
/// `B × B` against the capacity `4` of the whole.
pub fn subadditivity_gap(r: f64) -> Result<SubadditivityGap> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParameter(format!("r = {r} outside (0, 1)")));
    }
    let parts_sum = (2.0 - 2.0 * r) + 4.0 * r;
    let whole = 4.0;
    Ok(SubadditivityGap {
        parts_sum,
        whole,
        gap: whole - parts_sum,
    })
}

//! Derivative-free local minimizers.

/// Result of a local minimization.
#[derive(Debug, Clone)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct NelderMead {
    /// Initial simplex edge length.
    pub step: f64,
    /// Stop when the spread of simplex values drops below this.
    pub ftol: f64,
    /// Stop when the simplex diameter drops below this.
    pub xtol: f64,
    pub max_evals: usize,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            step: 0.1,
            ftol: 1e-12,
            xtol: 1e-10,
            max_evals: 20_000,
        }
    }
}

impl NelderMead {
    /// Adaptive-parameter Nelder-Mead (coefficients scaled with dimension).
    pub fn minimize(&self, f: &mut impl FnMut(&[f64]) -> f64, x0: &[f64]) -> Minimum {
        let n = x0.len();
        let nf = n as f64;
        let (alpha, gamma, rho, sigma) = (1.0, 1.0 + 2.0 / nf, 0.75 - 1.0 / (2.0 * nf), 1.0 - 1.0 / nf);
        let mut evals = 0;
        let mut eval = |x: &[f64], evals: &mut usize| {
            *evals += 1;
            let v = f(x);
            if v.is_nan() {
                f64::INFINITY
            } else {
                v
            }
        };
        let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        simplex.push(x0.to_vec());
        for i in 0..n {
            let mut x = x0.to_vec();
            x[i] += self.step;
            simplex.push(x);
        }
        let mut values: Vec<f64> = simplex.iter().map(|x| eval(x, &mut evals)).collect();
        let mut converged = false;
        let mut centroid = vec![0.0; n];
        let mut trial = vec![0.0; n];
        while evals < self.max_evals {
            let mut order: Vec<usize> = (0..=n).collect();
            order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
            simplex = order.iter().map(|&i| simplex[i].clone()).collect();
            values = order.iter().map(|&i| values[i]).collect();

            let spread = values[n] - values[0];
            let diam = simplex[1..]
                .iter()
                .map(|x| {
                    x.iter()
                        .zip(&simplex[0])
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0, f64::max)
                })
                .fold(0.0, f64::max);
            if spread.abs() <= self.ftol * (1.0 + values[0].abs()) && diam <= self.xtol {
                converged = true;
                break;
            }
            if diam <= self.xtol * 1e-3 {
                converged = true;
                break;
            }

            centroid.iter_mut().for_each(|c| *c = 0.0);
            for x in &simplex[..n] {
                for (c, xi) in centroid.iter_mut().zip(x) {
                    *c += xi / nf;
                }
            }
            let along = |t: f64, out: &mut Vec<f64>, worst: &[f64], centroid: &[f64]| {
                for i in 0..n {
                    out[i] = centroid[i] + t * (centroid[i] - worst[i]);
                }
            };
            along(alpha, &mut trial, &simplex[n], &centroid);
            let fr = eval(&trial, &mut evals);
            if fr < values[0] {
                let reflected = trial.clone();
                along(alpha * gamma, &mut trial, &simplex[n], &centroid);
                let fe = eval(&trial, &mut evals);
                if fe < fr {
                    simplex[n].copy_from_slice(&trial);
                    values[n] = fe;
                } else {
                    simplex[n] = reflected;
                    values[n] = fr;
                }
                continue;
            }
            if fr < values[n - 1] {
                simplex[n].copy_from_slice(&trial);
                values[n] = fr;
                continue;
            }
            let outside = fr < values[n];
            let t = if outside { alpha * rho } else { -rho };
            along(t, &mut trial, &simplex[n], &centroid);
            let fc = eval(&trial, &mut evals);
            if fc < if outside { fr } else { values[n] } {
                simplex[n].copy_from_slice(&trial);
                values[n] = fc;
                continue;
            }
            // shrink toward the best vertex
            let best = simplex[0].clone();
            for j in 1..=n {
                for i in 0..n {
                    simplex[j][i] = best[i] + sigma * (simplex[j][i] - best[i]);
                }
                values[j] = eval(&simplex[j], &mut evals);
            }
        }
        let (ib, _) = values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("nonempty simplex");
        Minimum {
            x: simplex[ib].clone(),
            value: values[ib],
            evals,
            converged,
        }
    }
}

/// Coordinate pattern search with step halving; robust on non-smooth
/// objectives where the simplex collapses early.
pub fn compass_search(
    f: &mut impl FnMut(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    min_step: f64,
    max_evals: usize,
) -> Minimum {
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    let mut evals = 1;
    let mut h = step;
    while h > min_step && evals < max_evals {
        let mut improved = false;
        for i in 0..n {
            for s in [1.0, -1.0] {
                let old = x[i];
                x[i] = old + s * h;
                let v = f(&x);
                evals += 1;
                if v < fx {
                    fx = v;
                    improved = true;
                    break;
                }
                x[i] = old;
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    Minimum {
        x,
        value: fx,
        evals,
        converged: h <= min_step,
    }
}

/// Golden-section search for a minimizer of a unimodal function on `[a, b]`.
pub fn golden_section(f: &mut impl FnMut(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn nelder_mead_rosenbrock() {
        let mut f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let m = NelderMead::default().minimize(&mut f, &[-1.2, 1.0]);
        assert!(m.converged);
        assert_abs_diff_eq!(m.x[0], 1.0, epsilon = 1e-5);
        assert_abs_diff_eq!(m.x[1], 1.0, epsilon = 1e-5);
    }

    #[test]
    fn compass_on_l1() {
        let mut f = |x: &[f64]| (x[0] - 0.3).abs() + 2.0 * (x[1] + 0.7).abs();
        let m = compass_search(&mut f, &[0.0, 0.0], 0.5, 1e-10, 10_000);
        assert_abs_diff_eq!(m.value, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn golden_on_parabola() {
        let (x, fx) = golden_section(&mut |x| (x - 1.25).powi(2) + 3.0, -4.0, 4.0, 1e-10);
        assert_abs_diff_eq!(x, 1.25, epsilon = 1e-7);
        assert_abs_diff_eq!(fx, 3.0, epsilon = 1e-14);
    }
}

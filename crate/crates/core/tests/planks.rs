use approx::assert_abs_diff_eq;
use plankcap::planks::{almost_parallel_check, bang_report, covering_check, plank_width, Plank};
use plankcap::{vector as v, ConvexBody, Gauge, Vector};
use proptest::prelude::*;

fn unit_square() -> ConvexBody {
    ConvexBody::polygon(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]]).unwrap()
}

/// Minimum weighted multiplicity of axis-parallel planks over the unit
/// square: the multiplicity is constant on the open grid cells cut out by
/// the plank ends and only grows on their boundaries, so cell midpoints
/// suffice.
fn axis_min_multiplicity(planks: &[(usize, f64, f64, f64)]) -> f64 {
    let mids = |axis: usize| {
        let mut cuts = vec![0.0, 1.0];
        for &(a, lo, hi, _) in planks {
            if a == axis {
                cuts.extend([lo, hi].iter().map(|c| c.clamp(0.0, 1.0)));
            }
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        cuts.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect::<Vec<_>>()
    };
    let (xs, ys) = (mids(0), mids(1));
    let mut best = f64::INFINITY;
    for &x in &xs {
        for &y in &ys {
            let m: f64 = planks
                .iter()
                .filter(|&&(a, lo, hi, _)| {
                    let c = if a == 0 { x } else { y };
                    lo <= c && c <= hi
                })
                .map(|p| p.3)
                .sum();
            best = best.min(m);
        }
    }
    best
}

fn axis_plank() -> impl Strategy<Value = (usize, f64, f64, f64)> {
    (0usize..2, -0.2f64..1.0, 0.05f64..0.8, 0.25f64..2.0).prop_map(|(a, lo, w, t)| (a, lo, lo + w, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn axis_planks_match_the_cell_oracle(planks in prop::collection::vec(axis_plank(), 1..7)) {
        let family: Vec<Plank> = planks
            .iter()
            .map(|&(a, lo, hi, t)| Plank::axis(2, a, lo, hi).unwrap().with_weight(t).unwrap())
            .collect();
        let expected = axis_min_multiplicity(&planks);
        let r = covering_check(&unit_square(), &family, 1.0).unwrap();
        prop_assert!(r.exact);
        prop_assert!((r.min_multiplicity - expected).abs() <= 1e-9, "{} vs {}", r.min_multiplicity, expected);
        prop_assert_eq!(r.covered, expected >= 1.0 - 1e-12);
    }

    #[test]
    fn strip_partitions_cover_with_unit_relative_width(
        angle in 0.0f64..std::f64::consts::PI,
        cuts in prop::collection::vec(0.05f64..0.95, 1..5),
    ) {
        // strips across the full width of K in direction u partition K, so
        // they cover it and their relative widths add up to exactly one
        let k = ConvexBody::polygon(&[&[0.0, 0.0], &[2.0, 0.0], &[1.5, 1.0], &[0.2, 1.3]]).unwrap();
        let u = v(&[angle.cos(), angle.sin()]);
        let lo = -k.support(&(-&u)).unwrap();
        let hi = k.support(&u).unwrap();
        let mut ts: Vec<f64> = cuts;
        ts.sort_by(f64::total_cmp);
        let mut edges = vec![lo];
        edges.extend(ts.iter().map(|t| lo + t * (hi - lo)));
        edges.push(hi);
        let planks: Vec<Plank> = edges.windows(2).map(|w| Plank::new(u.clone(), w[0], w[1]).unwrap()).collect();
        let r = bang_report(&k, &planks).unwrap();
        prop_assert!(r.report.covered);
        prop_assert!(!r.alarm);
        prop_assert!((r.report.relative_width_sum - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn acute_euclidean_normals_are_almost_parallel(angles in prop::collection::vec(0.0f64..std::f64::consts::FRAC_PI_2, 2..6), turn in 0.0f64..6.3) {
        // all normals inside a quarter turn have pairwise nonnegative dot products
        let normals: Vec<Vector> = angles.iter().map(|a| v(&[(a + turn).cos(), (a + turn).sin()])).collect();
        prop_assert!(almost_parallel_check(&normals, &Gauge::euclidean(2), 1e-6).unwrap());
    }
}

#[test]
fn widths_in_relative_norms() {
    let e = Gauge::euclidean(2);
    let p = Plank::new(v(&[1.0, 1.0]), 0.0, 1.0).unwrap();
    assert_abs_diff_eq!(plank_width(&p, &e).unwrap(), 0.5f64.sqrt(), epsilon = 1e-15);
    // unit ball [-1, 1]^2 has the l1 dual norm, |(1, 1)|_1 = 2
    let sq = Gauge::new(ConvexBody::polygon(&[&[-1.0, -1.0], &[1.0, -1.0], &[1.0, 1.0], &[-1.0, 1.0]]).unwrap()).unwrap();
    assert_abs_diff_eq!(plank_width(&p, &sq).unwrap(), 0.5, epsilon = 1e-12);
    // relative to the unit square K, K - K = [-1, 1]^2
    let q = Plank::axis(2, 0, 0.0, 0.25).unwrap();
    let r = covering_check(&unit_square(), &[q], 1.0).unwrap();
    assert_abs_diff_eq!(r.relative_width_sum, 0.25, epsilon = 1e-12);
    assert_abs_diff_eq!(r.width_sum, 0.25, epsilon = 1e-15);
}

#[test]
fn opposite_normals_are_not_almost_parallel() {
    let e = Gauge::euclidean(2);
    assert!(almost_parallel_check(&[v(&[1.0, 0.0]), v(&[0.0, 1.0])], &e, 1e-6).unwrap());
    assert!(!almost_parallel_check(&[v(&[1.0, 0.0]), v(&[-1.0, 0.0])], &e, 1e-6).unwrap());
    assert!(almost_parallel_check(&[v(&[2.0, 0.0])], &e, 1e-6).is_err());
}

#[test]
fn uncovered_witness_lies_in_the_gap() {
    let planks = [Plank::axis(2, 0, 0.0, 0.4).unwrap(), Plank::axis(2, 0, 0.6, 1.0).unwrap()];
    let r = covering_check(&unit_square(), &planks, 1.0).unwrap();
    assert!(!r.covered);
    let w = r.witness.unwrap();
    assert!(w[0] > 0.4 && w[0] < 0.6, "{w:?}");
    assert!((0.0..=1.0).contains(&w[1]));
}

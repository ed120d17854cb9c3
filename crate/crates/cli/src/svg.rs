//! Static SVG pictures of planar bodies, planks and trajectories.

use std::fmt::Write;

use plankcap::planks::Plank;
use plankcap::{ConvexBody, Vector};

use crate::error::CliError;

/// What to draw on top of the body.
#[derive(Debug, Default)]
pub struct Scene<'a> {
    pub planks: &'a [Plank],
    /// Closed polygon of bounce points.
    pub trajectory: Option<&'a [Vector]>,
    pub witness: Option<&'a [f64]>,
}

/// Rejects bodies that cannot be drawn, before any work is done.
pub fn check_planar(body: &ConvexBody) -> Result<(), CliError> {
    if body.dim() != 2 {
        return Err(CliError::Input(format!("SVG output needs a planar body, got dimension {}", body.dim())));
    }
    Ok(())
}

/// Viewport in body coordinates: `(x, y, width, height)` of the bounding
/// box padded by 10% on each side.
fn viewport(body: &ConvexBody) -> (f64, f64, f64, f64) {
    let (lo, hi) = body.bounding_box();
    let (w, h) = (hi[0] - lo[0], hi[1] - lo[1]);
    let (px, py) = (0.1 * w, 0.1 * h);
    (lo[0] - px, lo[1] - py, w + 2.0 * px, h + 2.0 * py)
}

/// Clips a convex polygon to `lo <= <n, x> <= hi`.
fn clip_to_slab(poly: &[[f64; 2]], n: [f64; 2], lo: f64, hi: f64) -> Vec<[f64; 2]> {
    let half = |poly: &[[f64; 2]], s: f64, c: f64| -> Vec<[f64; 2]> {
        // keep s * <n, x> <= s * c
        let f = |p: &[f64; 2]| s * (n[0] * p[0] + n[1] * p[1] - c);
        let mut out = Vec::new();
        for i in 0..poly.len() {
            let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
            let (fa, fb) = (f(&a), f(&b));
            if fa <= 0.0 {
                out.push(a);
            }
            if (fa < 0.0) != (fb < 0.0) && fa != fb {
                let t = fa / (fa - fb);
                out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
            }
        }
        out
    };
    let upper = half(poly, 1.0, hi);
    half(&upper, -1.0, lo)
}

/// Six decimals, without a sign on zero.
fn num(x: f64) -> String {
    format!("{:.6}", (x * 1e6).round() / 1e6 + 0.0)
}

fn points_attr(pts: &[[f64; 2]]) -> String {
    pts.iter()
        .map(|p| format!("{},{}", num(p[0]), num(-p[1])))
        .collect::<Vec<_>>()
        .join(" ")
}

fn body_outline(body: &ConvexBody) -> Vec<[f64; 2]> {
    let poly = match body {
        ConvexBody::Polytope(p) => p.clone(),
        ConvexBody::Ball(b) => b.polygonize(256).expect("planar ball"),
    };
    let c = poly.centroid();
    let mut pts: Vec<[f64; 2]> = poly.vertices().iter().map(|v| [v[0], v[1]]).collect();
    pts.sort_by(|a, b| {
        let ta = (a[1] - c[1]).atan2(a[0] - c[0]);
        let tb = (b[1] - c[1]).atan2(b[0] - c[0]);
        ta.total_cmp(&tb)
    });
    pts
}

/// Renders the scene. The y axis points up; coordinates are written with
/// six decimals so the output is reproducible.
pub fn render(body: &ConvexBody, scene: &Scene) -> Result<String, CliError> {
    check_planar(body)?;
    let (x, y, w, h) = viewport(body);
    let unit = w.max(h);
    let stroke = 0.004 * unit;
    let mut s = String::new();
    // y is flipped, so the viewBox starts at -(y + h)
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.6} {:.6} {:.6} {:.6}" width="600" height="{:.0}">"#,
        x,
        -(y + h),
        w,
        h,
        600.0 * h / w
    )
    .unwrap();
    let frame = [[x, y], [x + w, y], [x + w, y + h], [x, y + h]];
    for p in scene.planks {
        let n = p.normal();
        let band = clip_to_slab(&frame, [n[0], n[1]], p.lo(), p.hi());
        if band.len() >= 3 {
            writeln!(
                s,
                r#"  <polygon points="{}" fill="steelblue" fill-opacity="0.25" stroke="none"/>"#,
                points_attr(&band)
            )
            .unwrap();
        }
    }
    writeln!(
        s,
        r#"  <polygon points="{}" fill="none" stroke="black" stroke-width="{stroke:.6}"/>"#,
        points_attr(&body_outline(body))
    )
    .unwrap();
    if let Some(traj) = scene.trajectory {
        let pts: Vec<[f64; 2]> = traj.iter().map(|q| [q[0], q[1]]).collect();
        writeln!(
            s,
            r#"  <polygon points="{}" fill="none" stroke="firebrick" stroke-width="{stroke:.6}"/>"#,
            points_attr(&pts)
        )
        .unwrap();
        for q in &pts {
            writeln!(
                s,
                r#"  <circle cx="{}" cy="{}" r="{:.6}" fill="firebrick"/>"#,
                num(q[0]),
                num(-q[1]),
                3.0 * stroke
            )
            .unwrap();
        }
    }
    if let Some(wit) = scene.witness {
        writeln!(
            s,
            r#"  <circle cx="{}" cy="{}" r="{:.6}" fill="none" stroke="darkorange" stroke-width="{stroke:.6}"/>"#,
            num(wit[0]),
            num(-wit[1]),
            4.0 * stroke
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use plankcap::vector as v;

    #[test]
    fn slab_clipping() {
        let sq = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let band = clip_to_slab(&sq, [1.0, 0.0], 0.25, 0.5);
        assert_eq!(band.len(), 4);
        assert!(band.iter().all(|p| p[0] >= 0.25 - 1e-15 && p[0] <= 0.5 + 1e-15));
        assert!(clip_to_slab(&sq, [1.0, 0.0], 2.0, 3.0).is_empty());
    }

    #[test]
    fn renders_planar_scenes_only() {
        let t = ConvexBody::polygon(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]).unwrap();
        let traj = [v(&[0.5, 0.0]), v(&[0.5, 0.5]), v(&[0.0, 0.5])];
        let planks = [Plank::axis(2, 0, 0.0, 0.3).unwrap()];
        let scene = Scene {
            planks: &planks,
            trajectory: Some(&traj),
            witness: None,
        };
        let svg = render(&t, &scene).unwrap();
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert!(svg.contains(r#"viewBox="-0.100000 -1.100000 1.200000 1.200000""#));
        assert_eq!(svg.matches("<circle").count(), 3);
        assert_eq!(svg.matches("fill-opacity").count(), 1);
        assert!(render(&ConvexBody::unit_ball(3), &Scene::default()).is_err());
    }
}
